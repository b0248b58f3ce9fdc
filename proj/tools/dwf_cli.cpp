// Batch CLI for the dwf library: group generation, end-to-end runs,
// witness verification, lemma checks, and benchmarks. Exit codes are a
// stable contract: 0 success, 1 failed verification/lemma, 2 infeasible
// parameters, 3 guarantee violation (a bug), 4 parse error, 5 cap exceeded.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dwf/dwf.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dwf::ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dwf::Error("cannot write file: " + path);
  out << content;
}

struct GroupOpts {
  std::int64_t cyclic = -1;
  std::vector<std::uint32_t> product;
  std::string cayley_file;
  std::string perm_file;
};

void add_group_flags(CLI::App* cmd, GroupOpts& opts) {
  cmd->add_option("--cyclic", opts.cyclic, "cyclic group Z_N");
  cmd->add_option("--product", opts.product,
                  "direct product of cyclic groups Z_M1 x Z_M2 x ...")
      ->expected(-1);
  cmd->add_option("--cayley", opts.cayley_file, "Cayley table file");
  cmd->add_option("--perm", opts.perm_file, "permutation generator file");
}

dwf::FiniteGroup build_group(const GroupOpts& opts) {
  int sources = (opts.cyclic >= 0 ? 1 : 0) + (opts.product.empty() ? 0 : 1) +
                (opts.cayley_file.empty() ? 0 : 1) +
                (opts.perm_file.empty() ? 0 : 1);
  if (sources != 1)
    throw dwf::Error(
        "exactly one of --cyclic/--product/--cayley/--perm is required");
  if (opts.cyclic >= 0) {
    if (opts.cyclic < 1) throw dwf::Error("--cyclic needs N >= 1");
    return dwf::FiniteGroup::cyclic_product(
        {static_cast<std::uint32_t>(opts.cyclic)});
  }
  if (!opts.product.empty())
    return dwf::FiniteGroup::cyclic_product(opts.product);
  if (!opts.cayley_file.empty())
    return dwf::load_cayley_table(read_file(opts.cayley_file));
  return dwf::load_permutation_group(read_file(opts.perm_file));
}

struct PairOpts {
  std::string pairs_file;
  std::string bernoulli;
  std::string block;
  bool full = false;
  std::uint64_t seed = 0;
};

void add_pair_flags(CLI::App* cmd, PairOpts& opts) {
  cmd->add_option("--pairs", opts.pairs_file, "load S from a pair file");
  cmd->add_option("--bernoulli", opts.bernoulli,
                  "random S with density C (rational like 1/4)");
  cmd->add_option("--block", opts.block, "block-structured S with density C");
  cmd->add_flag("--full", opts.full, "S = G x G");
  cmd->add_option("--seed", opts.seed, "seed for generated pair sets");
}

dwf::PairSet build_pairs(const dwf::FiniteGroup& g, const PairOpts& opts) {
  int sources = (opts.pairs_file.empty() ? 0 : 1) +
                (opts.bernoulli.empty() ? 0 : 1) +
                (opts.block.empty() ? 0 : 1) + (opts.full ? 1 : 0);
  if (sources != 1)
    throw dwf::Error(
        "exactly one of --pairs/--bernoulli/--block/--full is required");
  if (!opts.pairs_file.empty()) {
    auto s = dwf::load_pairs(read_file(opts.pairs_file));
    if (s.group_order() != g.order())
      throw dwf::Error("pair file order does not match the group");
    return s;
  }
  dwf::DensitySpec spec;
  spec.seed = opts.seed;
  if (opts.full) {
    spec.mode = dwf::PairMode::full;
  } else if (!opts.bernoulli.empty()) {
    spec.mode = dwf::PairMode::bernoulli;
    spec.c = dwf::parse_rational(opts.bernoulli);
  } else {
    spec.mode = dwf::PairMode::block;
    spec.c = dwf::parse_rational(opts.block);
  }
  return dwf::generate(g, spec);
}

std::string regime_text(const dwf::RegimeReport& r) {
  std::ostringstream out;
  out << "regime\n";
  out << "group_order " << r.group_order << "\n";
  out << "h_order " << r.h_order << "\n";
  out << "k " << r.k << "\n";
  out << "paper_regime " << (r.paper_regime ? "true" : "false") << "\n";
  out << "lambda " << r.lambda << "\n";
  out << "rho_max " << r.rho_max << "\n";
  out << "notes " << r.notes << "\n";
  return out.str();
}

dwf::OracleCaps caps_from_env() {
  dwf::OracleCaps caps;
  if (const char* env = std::getenv("DWF_ORACLE_CAP")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) {
      caps.lemma_cap = static_cast<std::uint32_t>(v);
      caps.quadratic_cap = static_cast<std::uint32_t>(v);
    }
  }
  return caps;
}

int cmd_gen_group(const GroupOpts& gopts, const std::string& out_path) {
  auto g = build_group(gopts);
  write_file(out_path, dwf::save_cayley_table(g));
  std::cout << "wrote order-" << g.order() << " table to " << out_path
            << "\n";
  return 0;
}

int cmd_run(const GroupOpts& gopts, const PairOpts& popts, std::uint32_t k,
            const std::string& out_dir, unsigned threads) {
  auto g = build_group(gopts);
  auto s = build_pairs(g, popts);

  dwf::PipelineOptions opts;
  opts.threads = threads;
  dwf::PipelineResult res;
  try {
    res = dwf::run_pipeline(g, s, k, opts);
  } catch (const dwf::InfeasibleParameters& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const dwf::InsufficientCosetSpace& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const dwf::GuaranteeViolated& e) {
    std::cerr << "guarantee violated (this is a bug): " << e.what() << "\n";
    return 3;
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file((fs::path(out_dir) / "group.cayley").string(),
               dwf::save_cayley_table(g));
    write_file((fs::path(out_dir) / "pairs.txt").string(), dwf::save_pairs(s));
    write_file((fs::path(out_dir) / "witness.txt").string(),
               dwf::witness_report(res.witness));
    write_file((fs::path(out_dir) / "regime.txt").string(),
               regime_text(res.regime));
  }
  std::cout << "dens " << res.coset.window_density.str() << " w "
            << res.params.window_size << " guarantee "
            << res.witness.guarantee << " count " << res.witness.triple_count
            << " E " << res.witness.spanning_set.size() << "\n";
  return 0;
}

int cmd_verify(const GroupOpts& gopts, const std::string& pairs_file,
               const std::string& witness_file) {
  dwf::FiniteGroup g = dwf::FiniteGroup::cyclic_product({1});
  dwf::PairSet s;
  dwf::Witness w;
  try {
    g = build_group(gopts);
    s = dwf::load_pairs(read_file(pairs_file));
    w = dwf::parse_witness_report(read_file(witness_file));
  } catch (const dwf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const dwf::MalformedHeader& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const dwf::PairOutOfRange& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const dwf::DuplicatePair& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const dwf::NonSquareTable& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  }
  if (s.group_order() != g.order()) {
    std::cerr << "parse error: pair file order does not match group\n";
    return 4;
  }
  try {
    auto rep = dwf::recount_witness(s, g, w);
    if (w.triple_count < w.guarantee) {
      std::cerr << "witness count " << w.triple_count
                << " is below its guarantee " << w.guarantee << "\n";
      return 1;
    }
    std::cout << "witness ok: count " << w.triple_count << " guarantee "
              << w.guarantee << " recount " << rep.count << "\n";
    return 0;
  } catch (const dwf::WitnessInconsistent& e) {
    std::cerr << "witness inconsistent: " << e.what() << "\n";
    return 1;
  }
}

int cmd_lemmas(const GroupOpts& gopts, std::uint32_t k) {
  auto g = build_group(gopts);
  auto h = dwf::find_large_abelian_subgroup(g);
  dwf::AbelianDecomposition d;
  dwf::WindowParams p;
  try {
    d = dwf::reorder_factors(dwf::decompose_abelian(h), k);
    p = dwf::select_parameters(k, d, dwf::CosetSpaceCheck::relaxed);
  } catch (const dwf::InfeasibleParameters& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  }
  std::cout << "group order " << g.order() << ", |H| = " << h.order()
            << ", case "
            << (p.kase == dwf::ConstructionCase::large_factor
                    ? "large_factor"
                    : "popular_factor")
            << ", m = " << p.m << ", t = " << p.t << ", rho = " << p.rho
            << ", w = " << p.window_size << (p.degraded ? " (degraded)" : "")
            << "\n";
  dwf::LemmaReport rep;
  try {
    rep = dwf::lemma_suite(g, d, p, caps_from_env());
  } catch (const dwf::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 5;
  }
  for (const auto& e : rep.lemmas) {
    std::cout << e.name << ": "
              << (e.skipped ? "SKIP" : (e.pass ? "PASS" : "FAIL"));
    if (!e.detail.empty()) std::cout << " (" << e.detail << ")";
    std::cout << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

int cmd_bench(const std::vector<std::uint32_t>& orders, std::uint32_t k,
              const std::string& c_str, std::uint64_t seed, unsigned threads) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  dwf::Rational c = dwf::parse_rational(c_str);
  std::cout << "# bench k=" << k << " c=" << c.str() << " seed=" << seed
            << " threads=" << threads << "\n";
  for (std::uint32_t order : orders) {
    auto g = dwf::FiniteGroup::cyclic_product({order});
    auto s = dwf::generate(g, {c, seed, dwf::PairMode::bernoulli});

    auto t0 = clock::now();
    auto h = dwf::find_large_abelian_subgroup(g);
    auto d = dwf::reorder_factors(dwf::decompose_abelian(h), k);
    auto p = dwf::select_parameters(k, d);
    auto t1 = clock::now();
    auto coset = dwf::choose_coset_pair(s, g, h);
    p.ell = coset.ell;
    p.r = coset.r;
    auto t2 = clock::now();
    auto wit = dwf::find_best_window(s, g, d, p, threads);
    auto t3 = clock::now();

    std::cout << "bench order=" << order << " w=" << p.window_size
              << " count=" << wit.triple_count << " guarantee="
              << wit.guarantee << " decompose_ms=" << ms(t0, t1)
              << " coset_ms=" << ms(t1, t2) << " window_ms=" << ms(t2, t3)
              << " total_ms=" << ms(t0, t3) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dense multiplication-triple windows in finite groups"};
  app.require_subcommand(1);

  GroupOpts gen_group_opts;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-group", "write a Cayley table file");
  add_group_flags(gen, gen_group_opts);
  gen->add_option("--out", gen_out, "output file")->required();

  GroupOpts run_group_opts;
  PairOpts run_pair_opts;
  std::uint32_t run_k = 0;
  std::string run_out;
  unsigned run_threads = 1;
  auto* run = app.add_subcommand(
      "run", "run the construction and emit witness + regime reports");
  add_group_flags(run, run_group_opts);
  add_pair_flags(run, run_pair_opts);
  run->add_option("--k", run_k, "requested element budget")->required();
  run->add_option("--out", run_out, "output directory");
  run->add_option("--threads", run_threads, "window scan workers");

  GroupOpts verify_group_opts;
  std::string verify_pairs, verify_witness;
  auto* verify =
      app.add_subcommand("verify", "recount a witness report against S");
  add_group_flags(verify, verify_group_opts);
  verify->add_option("--pairs", verify_pairs, "pair file")->required();
  verify->add_option("witness", verify_witness, "witness report file")
      ->required();

  GroupOpts lemma_group_opts;
  std::uint32_t lemma_k = 0;
  auto* lemmas = app.add_subcommand(
      "lemmas", "exhaustively check the four window conditions");
  add_group_flags(lemmas, lemma_group_opts);
  lemmas->add_option("--k", lemma_k, "requested element budget")->required();

  std::vector<std::uint32_t> bench_orders{256, 1024, 4096};
  std::uint32_t bench_k = 8;
  std::string bench_c = "1/4";
  std::uint64_t bench_seed = 1;
  unsigned bench_threads = 1;
  auto* bench = app.add_subcommand("bench", "time the pipeline stages");
  bench->add_option("--orders", bench_orders, "group orders to time")
      ->expected(-1);
  bench->add_option("--k", bench_k, "element budget");
  bench->add_option("--c", bench_c, "pair density");
  bench->add_option("--seed", bench_seed, "pair seed");
  bench->add_option("--threads", bench_threads, "window scan workers");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_group(gen_group_opts, gen_out);
    if (run->parsed())
      return cmd_run(run_group_opts, run_pair_opts, run_k, run_out,
                     run_threads);
    if (verify->parsed())
      return cmd_verify(verify_group_opts, verify_pairs, verify_witness);
    if (lemmas->parsed()) return cmd_lemmas(lemma_group_opts, lemma_k);
    if (bench->parsed())
      return cmd_bench(bench_orders, bench_k, bench_c, bench_seed,
                       bench_threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
