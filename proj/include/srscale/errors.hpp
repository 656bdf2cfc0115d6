#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srscale {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be nonzero (determinant, smallest singular value) is
/// numerically zero.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A two-column block is rank deficient.
class RankError : public Error {
 public:
  using Error::Error;
};

/// Input lacks the structure an operation requires (skew symmetry,
/// triangularity, finite entries).
class StructureError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidScalingError : public Error {
 public:
  using Error::Error;
};

/// Requested common row/column norm is below the largest per-block minimum.
class InfeasibleTargetError : public Error {
 public:
  using Error::Error;
};

/// Symplectic elimination or skew Cholesky met a numerically zero pivot.
class BreakdownError : public Error {
 public:
  BreakdownError(const std::string& what, std::size_t stage)
      : Error(what), stage_(stage) {}
  std::size_t stage() const noexcept { return stage_; }

 private:
  std::size_t stage_;
};

}  // namespace srscale
