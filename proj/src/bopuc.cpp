#include "toeplitz/bopuc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "toeplitz/errors.hpp"

namespace toeplitz {

namespace {

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx horner_derivative(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
  return acc;
}

void check_degree(const BopucSystem& s, int n, const char* who) {
  if (n < 0 || n > s.max_degree)
    throw RangeError(std::string(who) + ": degree " + std::to_string(n) +
                     " outside 0.." + std::to_string(s.max_degree));
}

double rel_gap(cplx lhs, cplx rhs, std::initializer_list<double> scales) {
  double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
  for (double s : scales) scale = std::max(scale, s);
  return std::abs(lhs - rhs) / scale;
}

}  // namespace

cplx BopucSystem::q(int n, cplx z) const {
  check_degree(*this, n, "q");
  return horner(monic_q[n], z);
}

cplx BopucSystem::qhat(int n, cplx z) const {
  check_degree(*this, n, "qhat");
  return horner(monic_qhat[n], z);
}

cplx BopucSystem::q_derivative(int n, cplx z) const {
  check_degree(*this, n, "q_derivative");
  return horner_derivative(monic_q[n], z);
}

cplx BopucSystem::qhat_derivative(int n, cplx z) const {
  check_degree(*this, n, "qhat_derivative");
  return horner_derivative(monic_qhat[n], z);
}

cplx BopucSystem::pair(int n, cplx x, cplx y) const {
  return kappa_sq.at(n) * q(n, x) * qhat(n, y);
}

BopucSystem compute_bopuc(const Symbol& phi, int max_degree) {
  if (max_degree < 0) throw RangeError("compute_bopuc: negative degree");
  BopucSystem s;
  s.symbol = phi;
  s.max_degree = max_degree;

  const int full = max_degree + 1;
  const CMatrix t = toeplitz_matrix(coeffs_of(phi, full + 1), full);
  s.toeplitz_dets.push_back(LogComplex::one());
  for (int k = 1; k <= full; ++k) {
    LogComplex d = det_log(t.topLeftCorner(k, k));
    if (d.is_zero())
      throw DegenerateMomentError("compute_bopuc: D_" + std::to_string(k) + " vanishes", k);
    s.toeplitz_dets.push_back(d);
  }

  for (int n = 0; n <= max_degree; ++n) {
    const CMatrix block = t.topLeftCorner(n + 1, n + 1);
    CVector e = CVector::Zero(n + 1);
    e(n) = 1.0;
    const CVector x = block.partialPivLu().solve(e);
    const CVector y = block.transpose().partialPivLu().solve(e);
    s.kappa_sq.push_back(x(n));
    std::vector<cplx> qc(n + 1), qh(n + 1);
    for (int k = 0; k <= n; ++k) {
      qc[k] = x(k) / x(n);
      qh[k] = y(k) / y(n);
    }
    s.monic_q.push_back(std::move(qc));
    s.monic_qhat.push_back(std::move(qh));
  }
  return s;
}

double biorthogonality_residual(const BopucSystem& s, int nodes) {
  if (nodes < 2 * s.max_degree + 2) throw ParameterError("biorthogonality_residual: too few nodes");
  const int size = s.max_degree + 1;
  CMatrix gram = CMatrix::Zero(size, size);
  for (int m = 0; m < nodes; ++m) {
    const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * m / nodes);
    const cplx w = s.symbol(t) / static_cast<double>(nodes);
    for (int k = 0; k < size; ++k) {
      const cplx qk = s.kappa_sq[k] * s.q(k, t);
      for (int j = 0; j < size; ++j) gram(k, j) += qk * s.qhat(j, 1.0 / t) * w;
    }
  }
  // gram(k, j) carries kappa_k^2; the normalized entry is kappa_k kappa_j times the monic
  // pairing, so rescale the off-diagonal entries symmetrically.
  double worst = 0.0;
  for (int k = 0; k < size; ++k)
    for (int j = 0; j < size; ++j) {
      const cplx entry = gram(k, j) * std::sqrt(s.kappa_sq[j] / s.kappa_sq[k]);
      worst = std::max(worst, std::abs(entry - (k == j ? 1.0 : 0.0)));
    }
  return worst;
}

std::array<double, 4> recurrence_residuals(const BopucSystem& s, int n, cplx z) {
  if (n < 0 || n + 1 > s.max_degree)
    throw RangeError("recurrence_residuals: needs 0 <= n < N");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::array<double, 4> out{nan, nan, nan, nan};

  const cplx k0 = s.kappa_sq[n];
  const cplx k1 = s.kappa_sq[n + 1];
  const cplx q1_0 = s.monic_q[n + 1][0];
  const cplx qh1_0 = s.monic_qhat[n + 1][0];
  {
    const cplx lhs = k1 - k0;
    const cplx rhs = k1 * q1_0 * qh1_0;
    out[3] = rel_gap(lhs, rhs, {std::abs(k1), std::abs(k0)});
  }
  if (z == cplx(0.0)) return out;

  const cplx iz = 1.0 / z;
  const cplx qn = s.q(n, z);
  const cplx q1 = s.q(n + 1, z);
  const cplx qhn_inv = s.qhat(n, iz);
  const cplx qh1_inv = s.qhat(n + 1, iz);
  {
    const cplx tail = q1_0 * ipow(z, n + 1) * qh1_inv;
    const cplx lhs = k0 * z * qn;
    const cplx rhs = k1 * (q1 - tail);
    out[0] = rel_gap(lhs, rhs, {std::abs(k1 * q1), std::abs(k1 * tail)});
  }
  {
    const cplx tail = qh1_0 * ipow(z, -(n + 1)) * q1;
    const cplx lhs = k0 * iz * qhn_inv;
    const cplx rhs = k1 * (qh1_inv - tail);
    out[1] = rel_gap(lhs, rhs, {std::abs(k1 * qh1_inv), std::abs(k1 * tail)});
  }
  {
    const cplx tail = qh1_0 * ipow(z, -n) * qn;
    const cplx lhs = iz * qhn_inv;
    const cplx rhs = qh1_inv - tail;
    out[2] = rel_gap(lhs, rhs, {std::abs(qh1_inv), std::abs(tail)});
  }
  return out;
}

KernelValue reproducing_kernel(const BopucSystem& s, int n, cplx z, cplx zeta) {
  check_degree(s, n, "reproducing_kernel");
  cplx sum = 0.0;
  for (int j = 0; j <= n; ++j) sum += s.pair(j, zeta, z);
  return {z, zeta, sum, n, KernelMethod::DirectSum};
}

KernelValue reproducing_kernel_cd(const BopucSystem& s, int n, cplx z, cplx zeta) {
  if (n < 0 || n + 1 > s.max_degree)
    throw RangeError("reproducing_kernel_cd: needs 0 <= n < N");
  if (z == cplx(0.0)) return reproducing_kernel(s, n, z, zeta);
  // K_n(w^{-1}, y) with w = 1/z, y = zeta.
  const int m = n + 1;
  const cplx w = 1.0 / z;
  const cplx y = zeta;
  const cplx k = s.kappa_sq[m];
  if (std::abs(1.0 - z * zeta) < kConfluenceGuard) {
    const cplx qv = s.q(m, y);
    const cplx qhv = s.qhat(m, 1.0 / y);
    const cplx dq = s.q_derivative(m, y);
    const cplx dqh = -s.qhat_derivative(m, 1.0 / y) / (y * y);  // d/dy qhat(1/y)
    const cplx value = k * (-static_cast<double>(m) * qv * qhv + y * (qhv * dq - qv * dqh));
    return {z, zeta, value, n, KernelMethod::Confluent};
  }
  const cplx num = ipow(w, -m) * s.q(m, w) * ipow(y, m) * s.qhat(m, 1.0 / y) -
                   s.qhat(m, 1.0 / w) * s.q(m, y);
  return {z, zeta, k * num / (1.0 - y / w), n, KernelMethod::ChristoffelDarboux};
}

double kernel_det_identity(const Symbol& phi, int n, cplx z, cplx zeta, cplx a) {
  if (n < 0) throw RangeError("kernel_det_identity: negative degree");
  const BopucSystem s = compute_bopuc(phi, n);
  const cplx kernel = reproducing_kernel(s, n, z, zeta).value;

  const Coeffs column = [z, n](long r) { return r >= 0 && r <= n ? ipow(z, r) : cplx(0.0); };
  const Coeffs row = [zeta, n](long c) { return c >= 0 && c <= n ? ipow(zeta, c) : cplx(0.0); };
  const CMatrix m = semi_framed_matrix(SemiVariant::G, coeffs_of(phi, n + 2), column, row, a, n + 2);
  const cplx khat = ratio(det_log(m), s.toeplitz_dets[n + 1]);
  return std::abs(kernel - a + khat);
}

double lu_factorization_residual(const Symbol& phi, int n) {
  if (n < 0) throw RangeError("lu_factorization_residual: negative degree");
  const BopucSystem s = compute_bopuc(phi, n);
  const int size = n + 1;
  CMatrix lower_a = CMatrix::Zero(size, size);
  CMatrix lower_b = CMatrix::Zero(size, size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c <= r; ++c) {
      lower_a(r, c) = s.monic_q[r][c];
      lower_b(r, c) = s.monic_qhat[r][c];
    }
  const CMatrix t = toeplitz_matrix(coeffs_of(phi, size + 1), size);
  CMatrix prod = lower_b * t * lower_a.transpose();
  for (int c = 0; c < size; ++c) prod.col(c) *= s.kappa_sq[c];
  return (prod - CMatrix::Identity(size, size)).cwiseAbs().maxCoeff();
}

namespace {

struct GridSide {
  std::vector<cplx> w;       // 1 / x, the CD argument
  std::vector<cplx> lead;    // w^{-m} q_m(w)          (psi side)  |  y^m qhat_m(1/y)  (eta side)
  std::vector<cplx> trail;   // qhat_m(1/w)            (psi side)  |  q_m(y)           (eta side)
  std::vector<cplx> weight;  // border value times any z^{-n} factor, divided by node count
};

// Double trapezoid sum of K_n(x(z1), y(z2)) * weights over offset grids.
cplx kernel_quadrature(const BopucSystem& s, const Symbol& psi, const Symbol& eta, int n,
                       SemiVariant v, int nodes) {
  const int m = n + 1;
  const bool psi_reversed = v == SemiVariant::E || v == SemiVariant::L;  // K's first arg is z1
  const bool eta_reversed = v == SemiVariant::E || v == SemiVariant::H;  // K's second arg is z2
  const double step = 2.0 * std::numbers::pi / nodes;

  GridSide first, second;
  for (int j = 0; j < nodes; ++j) {
    const cplx z1 = std::polar(1.0, step * j);
    const cplx x = psi_reversed ? z1 : 1.0 / z1;
    const cplx w = 1.0 / x;
    first.w.push_back(w);
    first.lead.push_back(ipow(w, -m) * s.q(m, w));
    first.trail.push_back(s.qhat(m, x));
    cplx wt = psi(z1) / static_cast<double>(nodes);
    if (psi_reversed) wt *= ipow(z1, -n);
    first.weight.push_back(wt);

    const cplx z2 = std::polar(1.0, step * (j + 0.5));
    const cplx y = eta_reversed ? z2 : 1.0 / z2;
    second.w.push_back(y);
    second.lead.push_back(ipow(y, m) * s.qhat(m, 1.0 / y));
    second.trail.push_back(s.q(m, y));
    cplx wt2 = eta(z2) / static_cast<double>(nodes);
    if (eta_reversed) wt2 *= ipow(z2, -n);
    second.weight.push_back(wt2);
  }

  cplx total = 0.0;
  for (int j = 0; j < nodes; ++j) {
    cplx row = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const cplx num = first.lead[j] * second.lead[k] - first.trail[j] * second.trail[k];
      row += num / (1.0 - second.w[k] / first.w[j]) * second.weight[k];
    }
    total += row * first.weight[j];
  }
  return s.kappa_sq[m] * total;
}

// Exact route: the kernel integral factors into coefficient pairings per degree.
cplx kernel_pairing(const BopucSystem& s, const Symbol& psi, const Symbol& eta, int n,
                    SemiVariant v) {
  const bool psi_reversed = v == SemiVariant::E || v == SemiVariant::L;
  const bool eta_reversed = v == SemiVariant::E || v == SemiVariant::H;
  const Coeffs pc = coeffs_of(psi, n + 1);
  const Coeffs ec = coeffs_of(eta, n + 1);
  cplx total = 0.0;
  for (int j = 0; j <= n; ++j) {
    cplx eta_part = 0.0, psi_part = 0.0;
    for (int k = 0; k <= j; ++k) {
      eta_part += s.monic_q[j][k] * ec(eta_reversed ? n - k : k);
      psi_part += s.monic_qhat[j][k] * pc(psi_reversed ? n - k : k);
    }
    total += s.kappa_sq[j] * eta_part * psi_part;
  }
  return total;
}

}  // namespace

SemiFramedKernelResult semiframed_via_kernel(const Symbol& phi, const Symbol& psi,
                                             const Symbol& eta, cplx a, int n, SemiVariant v,
                                             double quad_tol) {
  if (n < 0) throw RangeError("semiframed_via_kernel: negative degree");
  const BopucSystem s = compute_bopuc(phi, n + 1);

  SemiFramedKernelResult out;
  out.direct_ratio = ratio(semi_framed_det(v, phi, psi, eta, a, n + 2), s.toeplitz_dets[n + 1]);
  out.pairing_ratio = a - kernel_pairing(s, psi, eta, n, v);

  int nodes = kKernelStartNodes;
  cplx previous = kernel_quadrature(s, psi, eta, n, v, nodes);
  double change = std::numeric_limits<double>::infinity();
  while (nodes < kKernelMaxNodes) {
    nodes *= 2;
    const cplx current = kernel_quadrature(s, psi, eta, n, v, nodes);
    change = std::abs(current - previous) / std::max(1.0, std::abs(current));
    previous = current;
    if (change < quad_tol) break;
  }
  if (!(change < quad_tol))
    throw AccuracyError("semiframed_via_kernel: quadrature did not settle", change);

  out.nodes = nodes;
  out.kernel_ratio = a - previous;
  out.rel_diff =
      std::abs(out.kernel_ratio - out.direct_ratio) / std::max(1.0, std::abs(out.direct_ratio));
  return out;
}

}  // namespace toeplitz
