#include "toeplitz/rhp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "toeplitz/errors.hpp"
#include "toeplitz/quadrature.hpp"
#include "toeplitz/structmat.hpp"

namespace toeplitz {

namespace {

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx at_or_zero(const std::vector<cplx>& c, long k) {
  return k >= 0 && k < static_cast<long>(c.size()) ? c[static_cast<std::size_t>(k)] : cplx(0.0);
}

// -kappa_{m-1}^2 z^{m-1} qhat_{m-1}(1/z) as coefficients of z^k.
std::vector<cplx> x21_polynomial(const BopucSystem& s, int m) {
  if (m == 0) return {};
  const auto& qh = s.monic_qhat[m - 1];
  const cplx k = s.kappa_sq[m - 1];
  std::vector<cplx> out(m);
  for (int j = 0; j < m; ++j) out[m - 1 - j] = -k * qh[j];
  return out;
}

void check_off_contour(cplx z, double radius, const char* who) {
  if (std::abs(std::abs(z) - radius) < 1e-12 * radius)
    throw BoundaryError(std::string(who) + ": point on the integration circle");
}

bool negligible(cplx value, double scale) {
  return std::abs(value) <= kPreconditionFloor * scale;
}

double coefficient_scale(const std::vector<cplx>& c) {
  double s = 0.0;
  for (cplx v : c) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

cplx XData::x11_at(cplx z) const { return horner(x11, z); }
cplx XData::x21_at(cplx z) const { return horner(x21, z); }

cplx XData::x12_at(cplx z, double radius) const {
  check_off_contour(z, radius, "x12");
  const auto f = [&](cplx t) { return horner(x11, t) * weight(t) * ipow(t, -n) * t / (t - z); };
  return circle_mean(f, radius).value;
}

cplx XData::x22_at(cplx z, double radius) const {
  if (n == 0) return 1.0;
  check_off_contour(z, radius, "x22");
  const auto f = [&](cplx t) { return horner(x21, t) * weight(t) * ipow(t, -n) * t / (t - z); };
  return circle_mean(f, radius).value;
}

Mat2 XData::value(cplx z, double radius) const {
  Mat2 m;
  m << x11_at(z), x12_at(z, radius), x21_at(z), x22_at(z, radius);
  return m;
}

cplx XData::x12_taylor(int ell) const {
  if (ell < 0) throw RangeError("x12_taylor: negative order");
  const auto f = [&](cplx t) { return horner(x11, t) * weight(t) * ipow(t, -n - ell); };
  return circle_mean(f, 1.0).value;
}

cplx XData::x22_taylor(int ell) const {
  if (ell < 0) throw RangeError("x22_taylor: negative order");
  if (n == 0) return ell == 0 ? 1.0 : 0.0;
  const auto f = [&](cplx t) { return horner(x21, t) * weight(t) * ipow(t, -n - ell); };
  return circle_mean(f, 1.0).value;
}

XData x_data(const Symbol& weight, int n) {
  if (n < 0) throw RangeError("x_data: negative index");
  const BopucSystem s = compute_bopuc(weight, n);
  const Coeffs w = coeffs_of(weight, n + 3);

  XData x;
  x.weight = weight;
  x.n = n;
  x.x11 = s.monic_q[n];
  x.x21 = x21_polynomial(s, n);
  x.det_n = s.toeplitz_dets[n];
  x.det_np1 = s.toeplitz_dets[n + 1];

  const auto& c = x.x11;
  x.inf1(0, 0) = at_or_zero(c, n - 1);
  x.inf2(0, 0) = at_or_zero(c, n - 2);
  cplx m1 = 0.0, m2 = 0.0;
  double scale = 0.0;
  for (int j = 0; j <= n; ++j) {
    m1 += c[j] * w(-1 - j);
    m2 += c[j] * w(-2 - j);
    scale = std::max(scale, std::abs(c[j] * w(-1 - j)));
  }
  x.inf1(0, 1) = -m1;
  x.inf2(0, 1) = -m2;
  x.inf1_12_scale = scale;
  if (n >= 1) {
    const auto& ch = s.monic_qhat[n - 1];
    const cplx k = s.kappa_sq[n - 1];
    x.inf1(1, 0) = -k * ch[0];
    x.inf2(1, 0) = -k * at_or_zero(ch, 1);
    cplx s1 = 0.0, s2 = 0.0;
    for (int j = 0; j < n; ++j) {
      s1 += ch[j] * w(j - n);
      s2 += ch[j] * w(j - n - 1);
    }
    x.inf1(1, 1) = k * s1;
    x.inf2(1, 1) = k * s2;
  }
  return x;
}

Mat2 x_solution(const Symbol& phi, int n, cplx z) {
  check_off_contour(z, 1.0, "x_solution");
  return x_data(phi, n).value(z);
}

XData z_data_direct(const Symbol& phi, int n) { return x_data(shift(phi, 1), n); }

namespace {

void require_x11_at_zero(const XData& x) {
  if (x.n == 0 || negligible(x.x11[0], coefficient_scale(x.x11)))
    throw PreconditionError("X11(0;n) vanishes; the Z problem has no solution through X(z;n)");
}

void require_inf1_12(const XData& x) {
  if (negligible(x.inf1(0, 1), x.inf1_12_scale))
    throw PreconditionError("first moment X1_12(n-1) vanishes");
}

cplx b_constant(const XData& x) { return x.inf1(0, 1) * x.x21[0] / x.x11[0]; }

}  // namespace

Mat2 z_from_x(const XData& x, cplx z) {
  require_x11_at_zero(x);
  if (z == cplx(0.0)) throw ParameterError("z_from_x: z = 0");
  check_off_contour(z, 1.0, "z_from_x");
  const cplx ratio0 = x.x21[0] / x.x11[0];
  Mat2 m;
  m << x.inf1(0, 1) * ratio0, -x.inf1(0, 1), -ratio0, 1.0;
  Mat2 left = m / z;
  left(0, 0) += 1.0;
  Mat2 right = Mat2::Identity();
  right(1, 1) = z;
  return left * x.value(z) * right;
}

Mat2 z_from_x(const Symbol& phi, int n, cplx z) { return z_from_x(x_data(phi, n), z); }

Mat2 z_from_x_shift(const XData& x, cplx z) {
  require_inf1_12(x);
  check_off_contour(z, 1.0, "z_from_x_shift");
  const cplx m12 = x.inf1(0, 1);
  Mat2 left;
  left << z + x.inf1(1, 1) - x.inf2(0, 1) / m12, -m12, 1.0 / m12, 0.0;
  return left * x.value(z);
}

Mat2 z_from_x_shift(const Symbol& phi, int n, cplx z) {
  if (n < 1) throw RangeError("z_from_x_shift: needs n >= 1");
  return z_from_x_shift(x_data(phi, n - 1), z);
}

double compatibility_residual(const Symbol& phi, int n, cplx z) {
  if (n < 1) throw RangeError("compatibility_residual: needs n >= 1");
  if (z == cplx(0.0)) throw ParameterError("compatibility_residual: z = 0");
  const XData xn = x_data(phi, n);
  const XData xm = x_data(phi, n - 1);
  require_x11_at_zero(xn);
  require_inf1_12(xm);

  const cplx iz = 1.0 / z;
  const cplx a_n = xn.x11_at(z), a_m = xm.x11_at(z);
  const cplx b_n = xn.x21_at(z), b_m = xm.x21_at(z);
  const cplx p = xn.inf1(0, 1), pm = xm.inf1(0, 1);
  const cplx ratio0 = xn.x21[0] / xn.x11[0];
  const cplx bconst = p * ratio0;
  const cplx beta = z + xm.inf1(1, 1) - xm.inf2(0, 1) / pm;

  const cplx l1a = -iz * p * b_n, l1b = pm * b_m;
  const cplx r1a = (-bconst * iz - 1.0) * a_n, r1b = beta * a_m;
  const cplx l2 = iz * b_n;
  const cplx r2a = ratio0 * iz * a_n, r2b = a_m / pm;

  const double s1 = std::max({std::abs(l1a), std::abs(l1b), std::abs(r1a), std::abs(r1b)});
  const double s2 = std::max({std::abs(l2), std::abs(r2a), std::abs(r2b)});
  const double e1 = std::abs(l1a + l1b - r1a - r1b) / std::max(s1, 1e-300);
  const double e2 = std::abs(l2 - r2a - r2b) / std::max(s2, 1e-300);
  return std::max(e1, e2);
}

ContourRadii default_radii(const Symbol& phi) {
  const Annulus a = phi.annulus();
  ContourRadii r;
  if (a.inner > 0.0) r.inner = std::sqrt(a.inner);
  if (std::isfinite(a.outer)) r.outer = std::sqrt(a.outer);
  return r;
}

CircleMean c_n_mean(const Symbol& phi, const LogSymbolData& data, int n, double r) {
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("c_n: radius must lie in (0, 1)");
  const auto f = [&](cplx t) {
    const cplx a = eval_alpha(data, t);
    return ipow(t, n + 1) * a * a / phi(t);
  };
  return circle_mean(f, r);
}

cplx c_n(const Symbol& phi, const LogSymbolData& data, int n, double r) {
  return c_n_mean(phi, data, n, r).value;
}

cplx c_n(const Symbol& phi, int n, double r) { return c_n(phi, szego_data(phi), n, r); }

CircleMean c_n_auto_mean(const Symbol& phi, const LogSymbolData& data, int n) {
  const double lo = std::max(1.02 * phi.annulus().inner, 1e-3);
  const double hi = 0.98;
  constexpr int kRadii = 48;
  constexpr int kProbe = 32;
  double best_r = 0.5, best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kRadii; ++i) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(i) / (kRadii - 1));
    try {
      double peak = 0.0;
      for (int k = 0; k < kProbe; ++k) {
        const cplx t = std::polar(r, 2.0 * std::numbers::pi * k / kProbe);
        const cplx a = eval_alpha(data, t);
        peak = std::max(peak, std::abs(ipow(t, n + 1) * a * a / phi(t)));
      }
      if (std::isfinite(peak) && peak < best) {
        best = peak;
        best_r = r;
      }
    } catch (const Error&) {
      // alpha series not converged at this radius
    }
  }
  return c_n_mean(phi, data, n, best_r);
}

cplx c_n_auto(const Symbol& phi, int n) {
  return c_n_auto_mean(phi, szego_data(phi), n).value;
}

Region region_of(cplx z, const ContourRadii& radii) {
  const double m = std::abs(z);
  if (m < radii.inner) return Region::Omega0;
  if (m < 1.0) return Region::Omega1;
  if (m < radii.outer) return Region::Omega2;
  return Region::OmegaInf;
}

namespace {

ContourRadii checked_radii(const Symbol& phi, std::optional<ContourRadii> radii) {
  const ContourRadii r = radii.value_or(default_radii(phi));
  if (!(r.inner > 0.0 && r.inner < 1.0 && r.outer > 1.0))
    throw ParameterError("contour radii must satisfy 0 < inner < 1 < outer");
  return r;
}

Mat2 r1_with(const Symbol& phi, const LogSymbolData& data, int n, cplx z,
             const ContourRadii& r) {
  const double m = std::abs(z);
  if (std::abs(m - r.inner) < kContourGuard || std::abs(m - r.outer) < kContourGuard)
    throw ContourProximityError("r1: point within 1e-6 of a lens contour");
  const auto f12 = [&](cplx t) {
    const cplx a = eval_alpha(data, t);
    return ipow(t, n) * a * a / phi(t) * t / (t - z);
  };
  const auto f21 = [&](cplx t) {
    const cplx a = eval_alpha(data, t);
    return ipow(t, -n) / (phi(t) * a * a) * t / (t - z);
  };
  Mat2 out = Mat2::Zero();
  out(0, 1) = -circle_mean(f12, r.inner).value;
  out(1, 0) = circle_mean(f21, r.outer).value;
  return out;
}

}  // namespace

Mat2 r1(const Symbol& phi, int n, cplx z, std::optional<ContourRadii> radii) {
  return r1_with(phi, szego_data(phi), n, z, checked_radii(phi, radii));
}

Mat2 x_asymptotic(const Symbol& phi, int n, cplx z, Region region,
                  std::optional<ContourRadii> radii) {
  const ContourRadii r = checked_radii(phi, radii);
  if (region_of(z, r) != region) throw ParameterError("x_asymptotic: z is not in the named region");
  check_off_contour(z, 1.0, "x_asymptotic");
  const LogSymbolData data = szego_data(phi);
  const cplx a = eval_alpha(data, z);
  const cplx zn = ipow(z, n);
  Mat2 p;
  switch (region) {
    case Region::OmegaInf:
      p << a * zn, 0.0, 0.0, 1.0 / (a * zn);
      break;
    case Region::Omega2:
      p << a * zn, 0.0, -1.0 / (a * phi(z)), 1.0 / (a * zn);
      break;
    case Region::Omega1:
      p << zn * a / phi(z), a, -1.0 / a, 0.0;
      break;
    case Region::Omega0:
      p << 0.0, a, -1.0 / a, 0.0;
      break;
  }
  return (Mat2::Identity() + r1_with(phi, data, n, z, r)) * p;
}

const char* to_string(RhpBorder kind) {
  switch (kind) {
    case RhpBorder::Cauchy: return "cauchy";
    case RhpBorder::PhiCauchy: return "phi-cauchy";
    case RhpBorder::ShiftedPhi: return "shifted-phi";
    case RhpBorder::ZCauchy: return "z-cauchy";
    case RhpBorder::ZPhiCauchy: return "z-phi-cauchy";
    case RhpBorder::ZMonomial: return "z-monomial";
    case RhpBorder::ZShiftedPhi: return "z-shifted-phi";
  }
  return "?";
}

namespace {

Symbol cauchy_kernel(cplx c) {
  RationalSpec r;
  r.poles = {{c, 1.0}};
  return rational(r);
}

void check_pole(cplx c) {
  if (std::abs(std::abs(c) - 1.0) < 1e-12) throw BoundaryError("pole on the unit circle");
}

}  // namespace

std::pair<Symbol, Symbol> rhp_border_symbols(const Symbol& phi, RhpBorder kind,
                                             const RhpBorderParams& p) {
  const Symbol zphi = shift(phi, 1);
  switch (kind) {
    case RhpBorder::Cauchy: return {phi, cauchy_kernel(p.c)};
    case RhpBorder::PhiCauchy: return {phi, product(cauchy_kernel(p.c), phi)};
    case RhpBorder::ShiftedPhi: return {phi, shift(phi, -p.ell)};
    case RhpBorder::ZCauchy: return {zphi, cauchy_kernel(p.c)};
    case RhpBorder::ZPhiCauchy: return {zphi, product(cauchy_kernel(p.c), zphi)};
    case RhpBorder::ZMonomial: return {zphi, monomial(1)};
    case RhpBorder::ZShiftedPhi: return {zphi, shift(phi, 1 - p.ell)};
  }
  throw ParameterError("unknown border kind");
}

cplx bordered_via_rhp(const Symbol& phi, RhpBorder kind, const RhpBorderParams& p, int n) {
  if (n < 0) throw RangeError("bordered_via_rhp: negative index");
  const bool needs_c = kind == RhpBorder::Cauchy || kind == RhpBorder::PhiCauchy ||
                       kind == RhpBorder::ZCauchy || kind == RhpBorder::ZPhiCauchy;
  if (needs_c) check_pole(p.c);
  if ((kind == RhpBorder::PhiCauchy || kind == RhpBorder::ZPhiCauchy) && p.c == cplx(0.0))
    throw ParameterError("bordered_via_rhp: c must be nonzero");
  if ((kind == RhpBorder::ShiftedPhi || kind == RhpBorder::ZShiftedPhi) && p.ell < 0)
    throw ParameterError("bordered_via_rhp: l must be nonnegative");

  const XData x = x_data(phi, n);
  const cplx dn = x.det_n.value();
  switch (kind) {
    case RhpBorder::Cauchy:
      if (std::abs(p.c) < 1.0) return 0.0;
      return -ipow(p.c, -n - 1) * dn * x.x11_at(p.c);
    case RhpBorder::PhiCauchy:
      return (-x.det_np1.value() + dn * x.x12_at(p.c)) / p.c;
    case RhpBorder::ShiftedPhi:
      return dn * x.x12_taylor(p.ell);
    default:
      break;
  }

  // z phi bulk: determinants of z phi read off the X moments.
  if (kind == RhpBorder::ZMonomial && n == 0) throw RangeError("z-monomial needs n >= 1");
  require_x11_at_zero(x);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const cplx dz_n = sign * x.x11[0] * dn;
  const cplx dz_np1 = -sign * x.inf1(0, 1) * dn;
  const cplx bconst = b_constant(x);
  switch (kind) {
    case RhpBorder::ZCauchy:
      if (std::abs(p.c) < 1.0) return 0.0;
      return -ipow(p.c, -n - 1) * dz_n * z_from_x(x, p.c)(0, 0);
    case RhpBorder::ZPhiCauchy:
      return (-dz_np1 + dz_n * z_from_x(x, p.c)(0, 1)) / p.c;
    case RhpBorder::ZMonomial:
      return dz_n * (x.x11[n - 1] + bconst);
    case RhpBorder::ZShiftedPhi: {
      const cplx prev = p.ell >= 1 ? x.x12_taylor(p.ell - 1) : cplx(0.0);
      return dz_n * (bconst * x.x12_taylor(p.ell) + prev - x.inf1(0, 1) * x.x22_taylor(p.ell));
    }
    default:
      break;
  }
  throw ParameterError("unknown border kind");
}

namespace {

cplx x_double_integral(const XData& xa, const std::vector<cplx>& x21b, const Symbol& psi,
                       const Symbol& eta, int n, SemiVariant v, int nodes) {
  const bool psi_reflected = v == SemiVariant::E || v == SemiVariant::L;
  const bool eta_reflected = v == SemiVariant::G || v == SemiVariant::L;
  const double step = 2.0 * std::numbers::pi / nodes;
  std::vector<cplx> z1(nodes), a1(nodes), b1(nodes), w1(nodes);
  std::vector<cplx> z2(nodes), a2(nodes), b2(nodes), w2(nodes);
  for (int j = 0; j < nodes; ++j) {
    z1[j] = std::polar(1.0, step * j);
    a1[j] = xa.x11_at(z1[j]);
    b1[j] = horner(x21b, z1[j]);
    w1[j] = psi_reflected ? psi(1.0 / z1[j]) : ipow(z1[j], -n) * psi(z1[j]);
    z2[j] = std::polar(1.0, step * (j + 0.5));
    a2[j] = xa.x11_at(z2[j]);
    b2[j] = horner(x21b, z2[j]);
    w2[j] = eta_reflected ? eta(1.0 / z2[j]) : ipow(z2[j], -n) * eta(z2[j]);
  }
  cplx total = 0.0;
  for (int j = 0; j < nodes; ++j) {
    cplx row = 0.0;
    for (int k = 0; k < nodes; ++k)
      row += w2[k] * (a2[k] * b1[j] - b2[k] * a1[j]) / (z1[j] - z2[k]);
    total += w1[j] * row;
  }
  return total / (static_cast<double>(nodes) * nodes);
}

}  // namespace

SemiFramedRhpResult semiframed_via_x(const Symbol& phi, const Symbol& psi, const Symbol& eta,
                                     cplx a, int n, SemiVariant v, double quad_tol) {
  if (n < 0) throw RangeError("semiframed_via_x: negative index");
  const XData xa = x_data(phi, n + 1);
  // X21(.; n+2) only needs the degree n+1 polynomials already in the system.
  const BopucSystem s = compute_bopuc(phi, n + 1);
  const std::vector<cplx> x21b = x21_polynomial(s, n + 2);

  int nodes = kKernelStartNodes;
  cplx previous = x_double_integral(xa, x21b, psi, eta, n, v, nodes);
  double change = std::numeric_limits<double>::infinity();
  while (nodes < kKernelMaxNodes) {
    nodes *= 2;
    const cplx current = x_double_integral(xa, x21b, psi, eta, n, v, nodes);
    change = std::abs(current - previous) / std::max(1.0, std::abs(current));
    previous = current;
    if (change < quad_tol) break;
  }
  if (!(change < quad_tol))
    throw AccuracyError("semiframed_via_x: quadrature did not settle", change);
  return {a - previous, nodes};
}

}  // namespace toeplitz
