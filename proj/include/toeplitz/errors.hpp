#pragma once

#include <stdexcept>
#include <string>

namespace toeplitz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TOEPLITZ_DEFINE_ERROR(Name)          \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

TOEPLITZ_DEFINE_ERROR(ParameterError);
TOEPLITZ_DEFINE_ERROR(SingularSymbolError);
TOEPLITZ_DEFINE_ERROR(WindingError);
TOEPLITZ_DEFINE_ERROR(BoundaryError);
TOEPLITZ_DEFINE_ERROR(RangeError);
TOEPLITZ_DEFINE_ERROR(SpecError);
TOEPLITZ_DEFINE_ERROR(ShapeError);
TOEPLITZ_DEFINE_ERROR(IndexError);
TOEPLITZ_DEFINE_ERROR(PreconditionError);
TOEPLITZ_DEFINE_ERROR(UnsupportedSpecError);
TOEPLITZ_DEFINE_ERROR(ContourProximityError);
TOEPLITZ_DEFINE_ERROR(ConfigError);

#undef TOEPLITZ_DEFINE_ERROR

// Carries the last tail/convergence estimate seen before giving up.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double last_estimate)
      : Error(what), last_estimate_(last_estimate) {}
  double last_estimate() const noexcept { return last_estimate_; }

 private:
  double last_estimate_;
};

// A vanishing Toeplitz determinant D_k stops the construction at index k.
class DegenerateMomentError : public Error {
 public:
  DegenerateMomentError(const std::string& what, int index)
      : Error(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

}  // namespace toeplitz
