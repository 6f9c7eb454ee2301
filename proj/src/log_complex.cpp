#include "toeplitz/log_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toeplitz/errors.hpp"

namespace toeplitz {

double reduce_phase(double phase) {
  double p = std::remainder(phase, 2.0 * std::numbers::pi);
  if (p <= -std::numbers::pi) p += 2.0 * std::numbers::pi;
  return p;
}

LogComplex LogComplex::from(cplx z) {
  if (z == cplx(0.0)) return zero();
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ParameterError("LogComplex::from: non-finite value");
  return polar_log(std::log(std::abs(z)), std::arg(z));
}

LogComplex LogComplex::polar_log(double log_modulus, double phase) {
  LogComplex r;
  r.zero_ = false;
  r.log_mod_ = log_modulus;
  r.phase_ = reduce_phase(phase);
  return r;
}

cplx LogComplex::value() const { return scaled(0.0); }

cplx LogComplex::scaled(double log_shift) const {
  if (zero_) return {0.0, 0.0};
  return std::polar(std::exp(log_mod_ - log_shift), phase_);
}

LogComplex LogComplex::operator-() const {
  if (zero_) return *this;
  return polar_log(log_mod_, phase_ + std::numbers::pi);
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) {
  if (a.zero_ || b.zero_) return LogComplex::zero();
  return LogComplex::polar_log(a.log_mod_ + b.log_mod_, a.phase_ + b.phase_);
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) {
  if (b.zero_) throw PreconditionError("LogComplex: division by zero");
  if (a.zero_) return LogComplex::zero();
  return LogComplex::polar_log(a.log_mod_ - b.log_mod_, a.phase_ - b.phase_);
}

cplx ratio(const LogComplex& a, const LogComplex& b) { return (a / b).value(); }

double max_log_modulus(std::span<const LogComplex> terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (!t.is_zero()) m = std::max(m, t.log_modulus());
  return m;
}

}  // namespace toeplitz
