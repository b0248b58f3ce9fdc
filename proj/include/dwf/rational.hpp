#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dwf {

// Exact nonnegative rational with 64-bit parts. Comparisons cross-multiply
// in 128 bits, so density thresholds never touch floating point.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Rational() = default;
  Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  void normalize() {
    std::uint64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (unsigned __int128)a.num * b.den < (unsigned __int128)b.num * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  double approx() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::string str() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Parses "p/q", a bare integer, or a decimal like "0.25" (kept exact as
// 25/100). Used by the CLI for density flags.
inline Rational parse_rational(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto parse_u64 = [](std::string_view t) -> std::uint64_t {
    if (t.empty()) throw std::invalid_argument("empty integer");
    std::uint64_t v = 0;
    for (char ch : t) {
      if (ch < '0' || ch > '9')
        throw std::invalid_argument("bad digit in rational");
      std::uint64_t d = static_cast<std::uint64_t>(ch - '0');
      if (v > (UINT64_MAX - d) / 10)
        throw std::invalid_argument("rational component overflow");
      v = v * 10 + d;
    }
    return v;
  };

  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    return Rational(parse_u64(s.substr(0, slash)),
                    parse_u64(s.substr(slash + 1)));
  }
  auto dot = s.find('.');
  if (dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (frac.size() > 18) throw std::invalid_argument("decimal too long");
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::uint64_t w = whole.empty() ? 0 : parse_u64(whole);
    std::uint64_t f = frac.empty() ? 0 : parse_u64(frac);
    return Rational(w * den + f, den);
  }
  return Rational(parse_u64(s), 1);
}

}  // namespace dwf
