#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dwf {

// Base class for all recoverable library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- group construction / validation ----

class IdOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonSquareTable : public Error {
 public:
  using Error::Error;
};

class OverflowOrder : public Error {
 public:
  using Error::Error;
};

class ClosureCapExceeded : public Error {
 public:
  using Error::Error;
};

// Malformed text input (tables, pair files, witness reports, perm files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A Cayley table that fails one of the group axioms. Carries the axiom name
// ("latin-row", "latin-column", "identity", "associativity", "inverse",
// "closure") and a witness triple of element ids.
class NotAGroup : public Error {
 public:
  NotAGroup(std::string axiom, std::array<std::uint32_t, 3> witness,
            const std::string& what)
      : Error(what), axiom_(std::move(axiom)), witness_(witness) {}

  const std::string& axiom() const { return axiom_; }
  const std::array<std::uint32_t, 3>& witness() const { return witness_; }

 private:
  std::string axiom_;
  std::array<std::uint32_t, 3> witness_;
};

// ---- abelian structure ----

class NotAbelian : public Error {
 public:
  NotAbelian(std::uint32_t a, std::uint32_t b, const std::string& what)
      : Error(what), a_(a), b_(b) {}

  std::uint32_t a() const { return a_; }
  std::uint32_t b() const { return b_; }

 private:
  std::uint32_t a_, b_;
};

// ---- pair sets ----

class MalformedHeader : public Error {
 public:
  using Error::Error;
};

class PairOutOfRange : public Error {
 public:
  using Error::Error;
};

class DuplicatePair : public Error {
 public:
  using Error::Error;
};

// ---- window construction ----

class InfeasibleParameters : public Error {
 public:
  using Error::Error;
};

class InsufficientCosetSpace : public Error {
 public:
  using Error::Error;
};

// Internal consistency failure: the two-sided product set exceeded its
// provable bound, which can only happen if H is not abelian or the
// decomposition is corrupted.
class ProductBoundViolated : public Error {
 public:
  using Error::Error;
};

class IntervalTooLarge : public Error {
 public:
  using Error::Error;
};

// The pigeonhole lower bound failed. This is a theorem, so seeing this
// exception means a bug, never an expected runtime condition.
class GuaranteeViolated : public Error {
 public:
  using Error::Error;
};

// ---- oracles ----

class WitnessInconsistent : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class SearchSpaceTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace dwf
