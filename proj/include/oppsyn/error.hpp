#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oppsyn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `position()` is the byte offset of the
/// offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownAtomError : public Error {
 public:
  explicit UnknownAtomError(std::string atom)
      : Error("unknown atomic proposition '" + atom + "'"),
        atom_(std::move(atom)) {}
  const std::string& atom() const { return atom_; }

 private:
  std::string atom_;
};

class NotCosafeError : public Error {
 public:
  explicit NotCosafeError(std::string subformula)
      : Error("formula is not co-safe: '" + subformula +
              "' needs an always/release operator"),
        subformula_(std::move(subformula)) {}
  const std::string& subformula() const { return subformula_; }

 private:
  std::string subformula_;
};

class StateBudgetError : public Error {
 public:
  using Error::Error;
};

class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownStateError : public Error {
 public:
  using Error::Error;
};

class IncompleteDfaError : public Error {
 public:
  using Error::Error;
};

class StateNotWinningError : public Error {
 public:
  using Error::Error;
};

class StateNotInRegionError : public Error {
 public:
  using Error::Error;
};

/// Raised when the winning regions contradict each other (a solver bug).
class InconsistentRegionError : public Error {
 public:
  using Error::Error;
};

class EmptySafeSetError : public Error {
 public:
  using Error::Error;
};

class NoEnabledActionError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(std::size_t sweeps, double residual)
      : Error("value iteration did not converge after " +
              std::to_string(sweeps) + " sweeps (residual " +
              std::to_string(residual) + ")"),
        sweeps_(sweeps),
        residual_(residual) {}
  std::size_t sweeps() const { return sweeps_; }
  double residual() const { return residual_; }

 private:
  std::size_t sweeps_;
  double residual_;
};

class AbsorbingStateError : public Error {
 public:
  using Error::Error;
};

class ChecksumMismatchError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario, DFA or CSV file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace oppsyn
