#include "toeplitz/extended.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "toeplitz/errors.hpp"

namespace toeplitz {

namespace {

using Real = boost::multiprecision::cpp_bin_float_100;
using Real200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

// Minimal complex arithmetic over R; std::complex is unspecified for class types.
template <class R>
struct XCT {
  R re = 0, im = 0;
  XCT() = default;
  XCT(R r, R i) : re(std::move(r)), im(std::move(i)) {}
  explicit XCT(cplx z) : re(z.real()), im(z.imag()) {}

  XCT operator+(const XCT& o) const { return {re + o.re, im + o.im}; }
  XCT operator-(const XCT& o) const { return {re - o.re, im - o.im}; }
  XCT operator*(const XCT& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  XCT operator/(const XCT& o) const {
    const R d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  XCT& operator+=(const XCT& o) { return *this = *this + o; }
  XCT& operator-=(const XCT& o) { return *this = *this - o; }
  R norm() const { return re * re + im * im; }
  XCT scaled(const R& s) const { return {re * s, im * s}; }
};

using XC = XCT<Real>;

template <class R>
XCT<R> xexp(const XCT<R>& z) {
  const R m = boost::multiprecision::exp(z.re);
  return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

constexpr int kMaxReach = 20000;

// f = exp(sum_{k>=1} h_k x^k) to the given number of terms.
template <class R>
std::vector<XCT<R>> exp_series(const std::vector<cplx>& h, int terms) {
  using X = XCT<R>;
  std::vector<X> hx(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) hx[k] = X(h[k]);
  std::vector<X> f(static_cast<std::size_t>(terms));
  f[0] = X(R(1), R(0));
  for (int m = 1; m < terms; ++m) {
    X acc;
    const int top = std::min<int>(m, static_cast<int>(h.size()));
    for (int k = 1; k <= top; ++k)
      acc += (hx[static_cast<std::size_t>(k - 1)] * f[static_cast<std::size_t>(m - k)]).scaled(R(k));
    f[static_cast<std::size_t>(m)] = acc.scaled(R(1) / R(m));
  }
  return f;
}

// Number of terms after which a geometric tail with ratio q drops below the target.
int geometric_reach(double q) {
  if (q <= 0.0) return 1;
  const double k = std::log(kExtendedTruncation) / std::log(q);
  if (!(k < kMaxReach)) throw RangeError("extended: pole too close to the unit circle");
  return static_cast<int>(std::ceil(k)) + 1;
}

template <class R>
class CoefficientsT {
 public:
  using X = XCT<R>;

  // Bulk coefficients phi_j for |j| <= reach.
  CoefficientsT(const ExpLaurentSpec& spec, int reach) : reach_(reach) {
    // exp series coefficients fall off factorially once k exceeds the amplitude;
    // the extra length pads the convolution well past the truncation target.
    const int terms = 2 * reach + 200;
    const std::vector<X> p = exp_series<R>(spec.plus, terms);
    const std::vector<X> m = exp_series<R>(spec.minus, terms);
    const X scale = xexp(X(spec.log0));
    coeffs_.resize(static_cast<std::size_t>(2 * reach + 1));
    for (int j = -reach; j <= reach; ++j) {
      X acc;
      for (int k = std::max(0, -j); j + k < terms && k < terms; ++k)
        acc += p[static_cast<std::size_t>(j + k)] * m[static_cast<std::size_t>(k)];
      coeffs_[static_cast<std::size_t>(j + reach)] = scale * acc;
    }
  }

  X operator()(long j) const {
    if (j < -reach_ || j > reach_) return {};
    return coeffs_[static_cast<std::size_t>(j + reach_)];
  }

 private:
  int reach_;
  std::vector<X> coeffs_;
};

using Coefficients = CoefficientsT<Real>;

// Coefficient of z^j in residue / (z - c) on the unit circle.
XC pole_coefficient(const XC& residue, cplx c, long j) {
  const XC cx(c);
  const XC one(Real(1), Real(0));
  if (std::abs(c) > 1.0) {
    if (j < 0) return {};
    XC p = one;
    for (long k = 0; k <= j; ++k) p = p / cx;
    return XC(Real(0), Real(0)) - residue * p;  // -r c^{-j-1}
  }
  if (j >= 0) return {};
  XC p = one;
  for (long k = 0; k < -j - 1; ++k) p = p * cx;
  return residue * p;  // r c^{-j-1}
}

struct RationalCoeffs {
  long lo = 0;
  std::vector<XC> c;  // coefficient of z^{lo + k}
  XC at(long j) const {
    const long k = j - lo;
    if (k < 0 || k >= static_cast<long>(c.size())) return {};
    return c[static_cast<std::size_t>(k)];
  }
};

// Laurent coefficients of poly(z) + sum r_j / (z - c_j) for |j| <= reach.
RationalCoeffs rational_coeffs(cplx zm1, cplx z0, cplx z1, const std::vector<Pole>& poles,
                               long reach) {
  RationalCoeffs out;
  out.lo = -reach;
  out.c.resize(static_cast<std::size_t>(2 * reach + 1));
  for (long j = -reach; j <= reach; ++j) {
    XC v;
    if (j == -1) v += XC(zm1);
    if (j == 0) v += XC(z0);
    if (j == 1) v += XC(z1);
    for (const Pole& p : poles) v += pole_coefficient(XC(p.coefficient), p.location, j);
    out.c[static_cast<std::size_t>(j + reach)] = v;
  }
  return out;
}

int border_reach(const BorderSpec& b) {
  double q = 0.0;
  for (cplx c : b.poles) {
    const double r = std::abs(c);
    q = std::max(q, r > 1.0 ? 1.0 / r : r);
  }
  return geometric_reach(q);
}

LogComplex det_lu(std::vector<std::vector<XC>> a) {
  const std::size_t n = a.size();
  if (n == 0) return LogComplex::one();
  Real log_mod = 0;
  double phase = 0.0;
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    Real best = a[k][k].norm();
    for (std::size_t r = k + 1; r < n; ++r) {
      const Real v = a[r][k].norm();
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0) return LogComplex::zero();
    if (piv != k) {
      std::swap(a[piv], a[k]);
      negate = !negate;
    }
    const XC p = a[k][k];
    log_mod += boost::multiprecision::log(best) / 2;
    phase += std::atan2(static_cast<double>(p.im), static_cast<double>(p.re));
    for (std::size_t r = k + 1; r < n; ++r) {
      const XC f = a[r][k] / p;
      for (std::size_t c = k + 1; c < n; ++c) a[r][c] -= f * a[k][c];
    }
  }
  if (negate) phase += std::acos(-1.0);
  return LogComplex::polar_log(static_cast<double>(log_mod), reduce_phase(phase));
}

// Determinant as a value, by LU with partial pivoting; for sizes where it cannot
// leave the exponent range.
template <class R>
XCT<R> det_value(std::vector<std::vector<XCT<R>>> a) {
  using X = XCT<R>;
  const std::size_t n = a.size();
  X det(R(1), R(0));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    R best = a[k][k].norm();
    for (std::size_t r = k + 1; r < n; ++r) {
      const R v = a[r][k].norm();
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0) return {};
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = X(R(0), R(0)) - det;
    }
    det = det * a[k][k];
    for (std::size_t r = k + 1; r < n; ++r) {
      const X f = a[r][k] / a[k][k];
      for (std::size_t c = k + 1; c < n; ++c) a[r][c] -= f * a[k][c];
    }
  }
  return det;
}

using XCoeffs = std::function<XC(long)>;

XCoeffs shifted(const Coefficients& phi, int s) {
  return [&phi, s](long j) { return phi(j - s); };
}

// Border coefficients of q1 phi + q2.
XCoeffs border_coeffs(const Coefficients& phi, const BorderSpec& b, long reach,
                      std::vector<RationalCoeffs>& keep) {
  std::vector<Pole> p1, p2;
  cplx constant = b.a0;
  for (std::size_t j = 0; j < b.poles.size(); ++j) {
    constant += b.b_at(j);
    p1.push_back({b.poles[j], b.b_at(j) * b.poles[j]});
    p2.push_back({b.poles[j], b.bhat_at(j)});
  }
  keep.push_back(rational_coeffs(b.b0, constant, b.a1, p1, reach));
  keep.push_back(rational_coeffs(b.bhat0, b.ahat0, b.ahat1, p2, reach));
  const RationalCoeffs* q1 = &keep[keep.size() - 2];
  const RationalCoeffs* q2 = &keep[keep.size() - 1];
  return [&phi, q1, q2, reach](long j) {
    XC acc = q2->at(j);
    for (long k = -reach; k <= reach; ++k) acc += q1->at(k) * phi(j - k);
    return acc;
  };
}

}  // namespace

LogComplex extended_toeplitz_det(const ExpLaurentSpec& spec, int shift, int n) {
  if (n < 0) throw ParameterError("extended_toeplitz_det: n must be nonnegative");
  const Coefficients phi(spec, n + std::abs(shift) + 1);
  const XCoeffs f = shifted(phi, shift);
  std::vector<std::vector<XC>> a(static_cast<std::size_t>(n), std::vector<XC>(static_cast<std::size_t>(n)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = f(r - c);
  return det_lu(std::move(a));
}

LogComplex extended_bordered_det(const ExpLaurentSpec& spec, int shift, const BorderSpec& border,
                                 int n) {
  if (n < 1) throw ParameterError("extended_bordered_det: n must be positive");
  border.validate();
  const long reach = border_reach(border);
  const Coefficients phi(spec, static_cast<int>(n + std::abs(shift) + reach + 2));
  const XCoeffs bulk = shifted(phi, shift);
  std::vector<RationalCoeffs> keep;
  keep.reserve(2);
  const XCoeffs psi = border_coeffs(phi, border, reach, keep);
  std::vector<std::vector<XC>> a(static_cast<std::size_t>(n), std::vector<XC>(static_cast<std::size_t>(n)));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c + 1 < n; ++c) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = bulk(c - r);
    a[static_cast<std::size_t>(r)][static_cast<std::size_t>(n - 1)] = psi(n - 1 - r);
  }
  return det_lu(std::move(a));
}

cplx extended_zphi_bordered_ratio(const ExpLaurentSpec& spec, const BorderSpec& border, int n) {
  return ratio(extended_bordered_det(spec, 1, border, n + 1), extended_toeplitz_det(spec, 1, n));
}

cplx extended_pure_deviation(const ExpLaurentSpec& spec, int n) {
  if (n < 1) throw ParameterError("extended_pure_deviation: n must be positive");
  using X = XCT<Real200>;
  const CoefficientsT<Real200> phi(spec, n + 1);
  std::vector<std::vector<X>> a(static_cast<std::size_t>(n), std::vector<X>(static_cast<std::size_t>(n)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = phi(r - c);
  // log(G^n E) = n log0 + sum_k k [log phi]_k [log phi]_{-k}
  X log_lead = X(spec.log0).scaled(Real200(n));
  const std::size_t m = std::min(spec.plus.size(), spec.minus.size());
  for (std::size_t k = 0; k < m; ++k)
    log_lead += (X(spec.plus[k]) * X(spec.minus[k])).scaled(Real200(static_cast<int>(k + 1)));
  const X dev = det_value(std::move(a)) / xexp(log_lead) - X(Real200(1), Real200(0));
  return {static_cast<double>(dev.re), static_cast<double>(dev.im)};
}

}  // namespace toeplitz
