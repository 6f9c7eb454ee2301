#pragma once

#include <complex>
#include <limits>
#include <span>

namespace toeplitz {

using cplx = std::complex<double>;

// Nonzero complex value stored as (log|z|, arg z); zero is a separate state.
class LogComplex {
 public:
  LogComplex() = default;  // zero

  static LogComplex zero() { return {}; }
  static LogComplex one() { return polar_log(0.0, 0.0); }
  static LogComplex from(cplx z);
  static LogComplex polar_log(double log_modulus, double phase);

  bool is_zero() const noexcept { return zero_; }
  double log_modulus() const noexcept { return log_mod_; }
  double phase() const noexcept { return phase_; }

  // Linear-scale value; overflows to inf for huge log-moduli.
  cplx value() const;
  // value() * exp(-log_shift), for comparing terms on a common scale.
  cplx scaled(double log_shift) const;

  LogComplex operator-() const;
  friend LogComplex operator*(const LogComplex& a, const LogComplex& b);
  friend LogComplex operator/(const LogComplex& a, const LogComplex& b);
  LogComplex& operator*=(const LogComplex& o) { return *this = *this * o; }
  LogComplex& operator/=(const LogComplex& o) { return *this = *this / o; }

 private:
  double log_mod_ = -std::numeric_limits<double>::infinity();
  double phase_ = 0.0;
  bool zero_ = true;
};

// a / b in linear scale; b must be nonzero.
cplx ratio(const LogComplex& a, const LogComplex& b);

// Largest log-modulus among the nonzero entries (-inf if all are zero).
double max_log_modulus(std::span<const LogComplex> terms);

double reduce_phase(double phase);

}  // namespace toeplitz
