#include "toeplitz/szego.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "toeplitz/errors.hpp"
#include "toeplitz/quadrature.hpp"
#include "toeplitz/rhp.hpp"

namespace toeplitz {

namespace {

constexpr double kCircleGuard = 1e-12;

void check_pole(cplx c, const char* where) {
  if (std::abs(c) == 0.0) throw ParameterError(std::string(where) + ": pole at the origin");
  if (std::abs(std::abs(c) - 1.0) < kCircleGuard) {
    std::ostringstream msg;
    msg << where << ": pole " << c << " on the unit circle";
    throw BoundaryError(msg.str());
  }
}

bool inside(cplx c) { return std::abs(c) < 1.0; }

// [phi_-^{-1} psi]_k / G, with phi_-^{-1} = sum_j alpha_outside[j] z^{-j}.
cplx quotient_coefficient(const LogSymbolData& data, const Symbol& psi, long k) {
  const long reach = data.trunc;
  const FourierSeries s = fourier_coeffs(psi, k, k + reach);
  cplx acc = 0.0;
  for (long j = 0; j <= reach; ++j) acc += data.alpha_outside[static_cast<std::size_t>(j)] * s(k + j);
  return acc / data.G;
}

}  // namespace

void BorderSpec::validate() const {
  if (b.size() > poles.size() || bhat.size() > poles.size())
    throw ParameterError("BorderSpec: more pole coefficients than poles");
  for (cplx c : poles) check_pole(c, "BorderSpec");
}

Symbol BorderSpec::q1() const {
  validate();
  // b z / (z - c) = b + b c / (z - c)
  RationalSpec r;
  r.poly_min = -1;
  cplx constant = a0;
  for (std::size_t j = 0; j < poles.size(); ++j) {
    constant += b_at(j);
    r.poles.push_back({poles[j], b_at(j) * poles[j]});
  }
  r.poly = {b0, constant, a1};
  return rational(r);
}

Symbol BorderSpec::q2() const {
  validate();
  RationalSpec r;
  r.poly_min = -1;
  r.poly = {bhat0, ahat0, ahat1};
  for (std::size_t j = 0; j < poles.size(); ++j) r.poles.push_back({poles[j], bhat_at(j)});
  return rational(r);
}

Symbol BorderSpec::psi(const Symbol& phi) const { return rational_combo(q1(), phi, q2()); }

BorderSpec BorderSpec::scaled(cplx factor) const {
  BorderSpec out = *this;
  out.a0 *= factor;
  out.a1 *= factor;
  out.b0 *= factor;
  out.ahat0 *= factor;
  out.ahat1 *= factor;
  out.bhat0 *= factor;
  for (cplx& v : out.b) v *= factor;
  for (cplx& v : out.bhat) v *= factor;
  return out;
}

LogComplex predict_pure(const Symbol& phi, int n) {
  if (n < 0) throw ParameterError("predict_pure: n must be nonnegative");
  const LogSymbolData data = szego_data(phi);
  cplx log_e = 0.0;
  for (long k = 1; k <= data.trunc; ++k)
    log_e += static_cast<double>(k) * data.log_coeff(k) * data.log_coeff(-k);
  const cplx total = static_cast<double>(n) * data.log_coeff(0) + log_e;
  return LogComplex::polar_log(total.real(), total.imag());
}

cplx constant_F(const Symbol& phi, const BorderSpec& border) {
  border.validate();
  const LogSymbolData data = szego_data(phi);
  const cplx alpha0 = data.G;
  cplx inner = 0.0, outer = border.ahat0 - border.ahat1 * data.log_coeff(-1);
  for (std::size_t j = 0; j < border.poles.size(); ++j) {
    const cplx c = border.poles[j];
    if (inside(c))
      inner += border.b_at(j) * eval_alpha(data, c);
    else
      outer -= border.bhat_at(j) / c * eval_alpha(data, c);
  }
  return border.a0 + border.b0 * data.log_coeff(1) + inner / alpha0 + outer / alpha0;
}

cplx constant_F_quotient(const Symbol& phi, const Symbol& psi) {
  return quotient_coefficient(szego_data(phi), psi, 0);
}

cplx constant_H(const Symbol& phi, const BorderSpec& border) {
  border.validate();
  const LogSymbolData data = szego_data(phi);
  const cplx l1 = data.log_coeff(1), l2 = data.log_coeff(2);
  cplx local = border.a1 + border.a0 * l1 + border.b0 * l2 + 0.5 * border.b0 * l1 * l1;
  cplx scaled = border.ahat1;
  for (std::size_t j = 0; j < border.poles.size(); ++j) {
    const cplx c = border.poles[j];
    local -= border.b_at(j) / c;
    if (inside(c))
      scaled += border.b_at(j) / c * eval_alpha(data, c);
    else
      scaled -= border.bhat_at(j) / (c * c) * eval_alpha(data, c);
  }
  return local + scaled / data.G;
}

cplx constant_H_quotient(const Symbol& phi, const Symbol& psi) {
  return quotient_coefficient(szego_data(phi), psi, 1);
}

cplx constant_J1(const Symbol& phi, const BorderSpec& border1, const BorderSpec& border2) {
  const cplx f1 = constant_F(phi, border1), f2 = constant_F(phi, border2);
  const cplx h1 = constant_H(phi, border1), h2 = constant_H(phi, border2);
  return f2 * h1 - f1 * h2;
}

// ---- semi-framed -------------------------------------------------------------

const char* to_string(FrameSpec::Form form) {
  switch (form) {
    case FrameSpec::Form::Rational: return "rational";
    case FrameSpec::Form::TimesPhi: return "times-phi";
    case FrameSpec::Form::TimesReflectedPhi: return "times-reflected-phi";
  }
  return "?";
}

void FrameSpec::validate() const {
  for (const Pole& p : terms) {
    if (std::abs(std::abs(p.location) - 1.0) < kCircleGuard) {
      std::ostringstream msg;
      msg << "FrameSpec: pole " << p.location << " on the unit circle";
      throw BoundaryError(msg.str());
    }
  }
}

Symbol FrameSpec::symbol(const Symbol& phi) const {
  validate();
  RationalSpec r;
  r.poles = terms;
  const Symbol base = rational(r);
  switch (form) {
    case Form::Rational: return base;
    case Form::TimesPhi: return product(base, phi);
    case Form::TimesReflectedPhi: return product_reflected(base, phi);
  }
  throw ParameterError("FrameSpec: unknown form");
}

namespace {

// True for the pairings whose constant filters poles inside the disk.
bool weighted_pairing(const FrameSpec& psi, const FrameSpec& eta, SemiVariant v) {
  using F = FrameSpec::Form;
  if (v == SemiVariant::E) return psi.form == F::TimesReflectedPhi && eta.form == F::TimesPhi;
  if (v == SemiVariant::G) return psi.form == F::TimesPhi && eta.form == F::TimesReflectedPhi;
  return false;
}

}  // namespace

cplx semiframed_diagonal_term(const Symbol& phi, const FrameSpec& psi, const FrameSpec& eta,
                              SemiVariant v) {
  if (!weighted_pairing(psi, eta, v)) return 0.0;
  const Symbol p = psi.symbol(phi), e = eta.symbol(phi);
  const auto f = [&](cplx z) {
    return v == SemiVariant::E ? e(z) * p(1.0 / z) / phi(z) : p(z) * e(1.0 / z) / phi(z);
  };
  return circle_mean(f, 1.0).value;
}

cplx predict_semiframed(const Symbol& phi, const FrameSpec& psi, const FrameSpec& eta, cplx a,
                        SemiVariant v) {
  const cplx base = semiframed_alpha_sum(phi, psi, eta, a, v);
  return base - semiframed_diagonal_term(phi, psi, eta, v);
}

cplx semiframed_alpha_sum(const Symbol& phi, const FrameSpec& psi, const FrameSpec& eta, cplx a,
                          SemiVariant v) {
  psi.validate();
  eta.validate();
  using F = FrameSpec::Form;
  const auto pair_is = [&](F p, F e) { return psi.form == p && eta.form == e; };
  const auto unsupported = [&]() {
    std::ostringstream msg;
    msg << "predict_semiframed: variant " << to_string(v) << " with frames (" << to_string(psi.form)
        << ", " << to_string(eta.form) << ") has no closed-form constant";
    return UnsupportedSpecError(msg.str());
  };

  switch (v) {
    case SemiVariant::H:
      if (pair_is(F::Rational, F::Rational) || pair_is(F::TimesPhi, F::TimesPhi)) return a;
      throw unsupported();
    case SemiVariant::L:
      if (pair_is(F::Rational, F::Rational) || pair_is(F::TimesReflectedPhi, F::TimesReflectedPhi))
        return a;
      throw unsupported();
    case SemiVariant::E:
    case SemiVariant::G: break;
  }

  bool want_inside = false;
  if (v == SemiVariant::E) {
    if (pair_is(F::Rational, F::Rational))
      want_inside = false;
    else if (pair_is(F::TimesReflectedPhi, F::TimesPhi))
      want_inside = true;
    else
      throw unsupported();
  } else {
    if (pair_is(F::Rational, F::Rational))
      want_inside = false;
    else if (pair_is(F::TimesPhi, F::TimesReflectedPhi))
      want_inside = true;
    else
      throw unsupported();
  }

  const LogSymbolData data = szego_data(phi);
  cplx sum = 0.0;
  for (const Pole& pd : psi.terms) {
    const cplx d = pd.location;
    if (inside(d) != want_inside) continue;
    for (const Pole& pc : eta.terms) {
      const cplx c = pc.location;
      if (inside(c) != want_inside) continue;
      const cplx ratio = v == SemiVariant::E ? eval_alpha(data, c) / eval_alpha(data, 1.0 / d)
                                             : eval_alpha(data, d) / eval_alpha(data, 1.0 / c);
      sum += pd.coefficient * pc.coefficient * ratio / (1.0 - c * d);
    }
  }
  return a + sum;
}

// ---- z phi bulk -----------------------------------------------------------------

ZPhiPrediction predict_zphi_bordered_ratio(const Symbol& phi, const BorderSpec& border, int n) {
  if (n < 1) throw ParameterError("predict_zphi_bordered_ratio: n must be at least 1");
  const LogSymbolData data = szego_data(phi);
  const CircleMean cn = c_n_auto_mean(phi, data, n);
  const CircleMean cm = c_n_auto_mean(phi, data, n - 1);
  const double eps = std::numeric_limits<double>::epsilon();
  const auto negligible = [&](const CircleMean& m) {
    return std::abs(m.value) <= kCnNoiseFactor * eps * m.scale;
  };

  ZPhiPrediction out;
  out.conditional = negligible(cm);
  if (negligible(cn))
    out.c_ratio = 0.0;
  else
    out.c_ratio = cn.value / cm.value;
  out.value = data.G * (constant_F(phi, border) - constant_H(phi, border) * out.c_ratio);
  return out;
}

cplx predict_bordered_zl(const Symbol& phi, int ell) {
  if (ell < 0) throw ParameterError("predict_bordered_zl: l must be nonnegative");
  return alpha_taylor_at_zero(szego_data(phi), ell);
}

double fitted_decay(const std::vector<int>& ns, const std::vector<double>& errors,
                    double floor) {
  std::vector<std::pair<double, double>> usable;
  for (std::size_t i = 0; i < ns.size() && i < errors.size(); ++i)
    if (errors[i] > std::max(floor, 0.0) && std::isfinite(errors[i]))
      usable.emplace_back(static_cast<double>(ns[i]), std::log(errors[i]));
  const std::vector<std::pair<double, double>> pts(
      usable.begin() + static_cast<std::ptrdiff_t>(usable.size() / 2), usable.end());
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace toeplitz
