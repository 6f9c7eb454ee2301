#include "toeplitz/dci.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toeplitz/errors.hpp"

namespace toeplitz {

namespace {

double rel_gap(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  if (a.is_zero() || b.is_zero()) return 1.0;
  const double m = std::max(a.log_modulus(), b.log_modulus());
  return std::abs(a.scaled(m) - b.scaled(m));
}

LogComplex minor_of(const CMatrix& k, std::initializer_list<int> rows,
                    std::initializer_list<int> cols) {
  const std::vector<int> r(rows), c(cols);
  return minor_det(k, r, c);
}

LogComplex signed_by(double sign, const LogComplex& v) { return sign < 0 ? -v : v; }

DciReport make_report(std::string identity, int n, std::array<LogComplex, 2> lhs,
                      std::array<LogComplex, 4> rhs, double sign = 1.0) {
  DciReport r;
  r.identity = std::move(identity);
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.sign = sign;
  r.degenerate = lhs[1].is_zero();
  r.residual = product_residual(lhs[0], lhs[1], rhs[0], rhs[1], rhs[2], rhs[3], sign);
  return r;
}

LogComplex bdet(const Symbol& phi, std::initializer_list<Symbol> borders, int n) {
  const std::vector<Symbol> b(borders);
  return bordered_det(phi, b, n);
}

}  // namespace

double product_residual(const LogComplex& a, const LogComplex& b, const LogComplex& c,
                        const LogComplex& d, const LogComplex& e, const LogComplex& f,
                        double sign) {
  const std::array<LogComplex, 3> p{a * b, c * d, e * f};
  const double m = max_log_modulus(p);
  if (!std::isfinite(m)) return 0.0;  // every product vanishes
  const cplx diff = p[0].scaled(m) - sign * (p[1].scaled(m) - p[2].scaled(m));
  return std::abs(diff);
}

DciReport dodgson_residual(const CMatrix& matrix, int j1, int j2, int k1, int k2) {
  if (matrix.rows() != matrix.cols()) throw ShapeError("dodgson_residual: matrix is not square");
  const int n = static_cast<int>(matrix.rows());
  if (n < 2) throw IndexError("dodgson_residual: matrix size must be >= 2");
  if (!(j1 < j2) || !(k1 < k2) || j1 < 0 || k1 < 0 || j2 >= n || k2 >= n)
    throw IndexError("dodgson_residual: need 0 <= j1 < j2 < n and 0 <= k1 < k2 < n");
  const LogComplex whole = det_log(matrix);
  const LogComplex inner = minor_of(matrix, {j1, j2}, {k1, k2});
  const LogComplex a = minor_of(matrix, {j1}, {k1}), b = minor_of(matrix, {j2}, {k2});
  const LogComplex c = minor_of(matrix, {j1}, {k2}), d = minor_of(matrix, {j2}, {k1});
  DciReport r = make_report("dodgson", n, {whole, inner}, {a, b, c, d});
  r.terms = {{"M", whole}, {"M{j1 j2;k1 k2}", inner}, {"M{j1;k1}", a},
             {"M{j2;k2}", b},  {"M{j1;k2}", c},         {"M{j2;k1}", d}};
  return r;
}

BorderedReduction reduce_two_bordered(const Symbol& phi, const Symbol& psi1, const Symbol& psi2,
                                      int n) {
  if (n < 3) throw SpecError("reduce_two_bordered: need n >= 3");
  const Symbol zphi = shift(phi, 1);
  const Symbol p1 = shift(psi1, -1), p2 = shift(psi2, -1);

  const LogComplex d = bdet(phi, {psi1, psi2}, n);
  const LogComplex dz = toeplitz_det(zphi, n - 2);
  const LogComplex bz2 = bordered_det(zphi, psi2, n - 1);
  const LogComplex b1 = bordered_det(phi, p1, n - 1);
  const LogComplex bz1 = bordered_det(zphi, psi1, n - 1);
  const LogComplex b2 = bordered_det(phi, p2, n - 1);

  BorderedReduction out;
  out.report = make_report("two-bordered", n, {d, dz}, {bz2, b1, bz1, b2});
  out.report.terms = {{"D^B_n[phi;psi1,psi2]", d},     {"D_{n-2}[z phi]", dz},
                      {"D^B_{n-1}[z phi;psi2]", bz2},  {"D^B_{n-1}[phi;psi1/z]", b1},
                      {"D^B_{n-1}[z phi;psi1]", bz1},  {"D^B_{n-1}[phi;psi2/z]", b2}};

  const std::vector<Coeffs> borders{coeffs_of(psi1, n + 1), coeffs_of(psi2, n + 1)};
  const CMatrix m = bordered_matrix(coeffs_of(phi, n + 1), borders, n);
  out.minor_mismatch = std::max({rel_gap(minor_of(m, {0, n - 1}, {n - 2, n - 1}), dz),
                                 rel_gap(minor_of(m, {0}, {n - 2}), bz2),
                                 rel_gap(minor_of(m, {n - 1}, {n - 1}), b1),
                                 rel_gap(minor_of(m, {0}, {n - 1}), bz1),
                                 rel_gap(minor_of(m, {n - 1}, {n - 2}), b2)});
  return out;
}

BorderedReduction reduce_three_bordered(const Symbol& phi, const Symbol& psi1,
                                        const Symbol& psi2, const Symbol& psi3, int n) {
  if (n < 3) throw SpecError("reduce_three_bordered: need n >= 3");
  const Symbol zphi = shift(phi, 1);
  const Symbol p1 = shift(psi1, -1), p2 = shift(psi2, -1), p3 = shift(psi3, -1);

  const LogComplex d = bdet(phi, {psi1, psi2, psi3}, n);
  const LogComplex inner = bordered_det(zphi, p1, n - 2);
  const LogComplex e11 = bdet(zphi, {psi1, psi3}, n - 1);
  const LogComplex e22 = bdet(phi, {p1, p2}, n - 1);
  const LogComplex e33 = bdet(zphi, {psi1, psi2}, n - 1);
  const LogComplex e44 = bdet(phi, {p1, p3}, n - 1);

  BorderedReduction out;
  out.report = make_report("three-bordered", n, {d, inner}, {e11, e22, e33, e44});
  out.report.terms = {{"D^B_n[phi;psi1,psi2,psi3]", d},
                      {"D^B_{n-2}[z phi;psi1/z]", inner},
                      {"D^B_{n-1}[z phi;psi1,psi3]", e11},
                      {"D^B_{n-1}[phi;psi1/z,psi2/z]", e22},
                      {"D^B_{n-1}[z phi;psi1,psi2]", e33},
                      {"D^B_{n-1}[phi;psi1/z,psi3/z]", e44}};

  const std::vector<Coeffs> borders{coeffs_of(psi1, n + 1), coeffs_of(psi2, n + 1),
                                    coeffs_of(psi3, n + 1)};
  const CMatrix m = bordered_matrix(coeffs_of(phi, n + 1), borders, n);
  out.minor_mismatch = std::max({rel_gap(minor_of(m, {0, n - 1}, {n - 2, n - 1}), inner),
                                 rel_gap(minor_of(m, {0}, {n - 2}), e11),
                                 rel_gap(minor_of(m, {n - 1}, {n - 1}), e22),
                                 rel_gap(minor_of(m, {0}, {n - 1}), e33),
                                 rel_gap(minor_of(m, {n - 1}, {n - 2}), e44)});
  return out;
}

BorderedReduction reduce_framed(const StructuredDetSpec& spec) {
  if (spec.kind != DetKind::FramedM && spec.kind != DetKind::FramedN)
    throw SpecError("reduce_framed: kind must be framed-M or framed-N");
  if (spec.borders.size() != 4 || spec.corners.size() != 4)
    throw SpecError("reduce_framed: need 4 borders and 4 corners");
  if (spec.size < 6) throw SpecError("reduce_framed: need n >= 3 (size >= 6)");
  const int n = spec.size - 3;
  const int s = n + 2;
  const auto& [xi, psi, eta, gamma] =
      std::array<Symbol, 4>{spec.borders[0], spec.borders[1], spec.borders[2], spec.borders[3]};
  const auto& a = spec.corners;
  const Symbol& phi = spec.bulk;

  const CMatrix k = build_matrix(spec);
  const LogComplex whole = det_log(k);
  const LogComplex pure = toeplitz_det(phi, n + 1);
  const double flip = (n + 1) % 2 == 0 ? 1.0 : -1.0;

  BorderedReduction out;
  LogComplex t00, tee, t0e, te0;
  if (spec.kind == DetKind::FramedM) {
    t00 = semi_framed_det(SemiVariant::H, phi, psi, eta, a[2], s);
    tee = semi_framed_det(SemiVariant::E, phi, gamma, xi, a[0], s);
    t0e = semi_framed_det(SemiVariant::E, phi, gamma, eta, a[3], s);
    te0 = semi_framed_det(SemiVariant::H, phi, psi, xi, a[1], s);
    out.report = make_report("framed-M", n, {whole, pure}, {t00, tee, t0e, te0});
    out.report.terms = {{"M_{n+3}", whole},
                        {"D_{n+1}[phi]", pure},
                        {"H_{n+2}[phi;psi,eta;a3]", t00},
                        {"E_{n+2}[phi;gamma,xi;a1]", tee},
                        {"E_{n+2}[phi;gamma,eta;a4]", t0e},
                        {"H_{n+2}[phi;psi,xi;a2]", te0}};
  } else {
    t00 = semi_framed_det(SemiVariant::E, phi, psi, eta, a[2], s);
    tee = semi_framed_det(SemiVariant::G, phi, gamma, xi, a[0], s);
    t0e = semi_framed_det(SemiVariant::H, phi, gamma, eta, a[3], s);
    te0 = semi_framed_det(SemiVariant::L, phi, psi, xi, a[1], s);
    out.report = make_report("framed-N", n, {whole, pure}, {t00, tee, t0e, te0});
    out.report.terms = {{"N_{n+3}", whole},
                        {"D_{n+1}[phi]", pure},
                        {"E_{n+2}[phi;psi,eta;a3]", t00},
                        {"G_{n+2}[phi;gamma,xi;a1]", tee},
                        {"H_{n+2}[phi;gamma,eta;a4]", t0e},
                        {"L_{n+2}[phi;psi,xi;a2]", te0}};
  }
  // Off-diagonal minors need one border moved across n+1 positions.
  const int e = n + 2;
  out.minor_mismatch = std::max({rel_gap(minor_of(k, {0, e}, {0, e}), pure),
                                 rel_gap(minor_of(k, {0}, {0}), t00),
                                 rel_gap(minor_of(k, {e}, {e}), tee),
                                 rel_gap(minor_of(k, {0}, {e}), signed_by(flip, t0e)),
                                 rel_gap(minor_of(k, {e}, {0}), signed_by(flip, te0))});
  return out;
}

double TwoFramedReduction::max_residual() const {
  double r = std::max(main.residual, chain_residual);
  for (const auto& x : aux) r = std::max(r, x.residual);
  for (const auto& x : closing) r = std::max(r, x.residual);
  for (double x : semi_framed_mismatch) r = std::max(r, x);
  return r;
}

TwoFramedReduction reduce_two_framed(const StructuredDetSpec& spec) {
  if (spec.kind != DetKind::TwoFramedK) throw SpecError("reduce_two_framed: kind must be two-framed-K");
  if (spec.borders.size() != 8 || spec.corners.size() != 8)
    throw SpecError("reduce_two_framed: need 8 borders and 8 corners");
  if (spec.size < 6) throw SpecError("reduce_two_framed: need n >= 1 (size >= 6)");
  const int n = spec.size - 5;
  const int e = n + 4;
  const Symbol& phi = spec.bulk;
  const Symbol &xi1 = spec.borders[0], &psi1 = spec.borders[1], &eta1 = spec.borders[2],
               &gamma1 = spec.borders[3];
  const Symbol &xi2 = spec.borders[4], &psi2 = spec.borders[5], &eta2 = spec.borders[6],
               &gamma2 = spec.borders[7];
  const auto& a = spec.corners;  // a[0] = a1, ..., a[7] = a8
  const long reach = n + 4;
  const Coeffs cxi2 = coeffs_of(xi2, reach), cpsi2 = coeffs_of(psi2, reach),
               ceta2 = coeffs_of(eta2, reach), cgamma2 = coeffs_of(gamma2, reach);
  const Symbol xi2z = shift(xi2, -1), psi2z = shift(psi2, -1), eta2z = shift(eta2, -1),
               gamma2z = shift(gamma2, -1);

  const CMatrix k = build_matrix(spec);
  TwoFramedReduction out;
  out.direct = det_log(k);

  out.main = dodgson_residual(k, 0, e, 0, e);
  out.main.identity = "two-framed";
  out.main.n = n;

  // Minors of K used by the auxiliary identities.
  auto km = [&](std::initializer_list<int> r, std::initializer_list<int> c) {
    return minor_of(k, r, c);
  };
  const LogComplex k00 = km({0}, {0}), kee = km({e}, {e}), k0e = km({0}, {e}), ke0 = km({e}, {0});
  const LogComplex f0e0e = km({0, e}, {0, e});
  const int f = e - 1;
  out.aux[0] = make_report("two-framed-aux-00", n, {k00, km({0, f, e}, {0, f, e})},
                           {km({0, f}, {0, f}), f0e0e, km({0, f}, {0, e}), km({0, e}, {0, f})});
  out.aux[1] = make_report("two-framed-aux-ee", n, {kee, km({0, 1, e}, {0, 1, e})},
                           {f0e0e, km({1, e}, {1, e}), km({0, e}, {1, e}), km({1, e}, {0, e})});
  out.aux[2] = make_report("two-framed-aux-0e", n, {k0e, km({0, f, e}, {0, 1, e})},
                           {km({0, f}, {0, e}), km({0, e}, {1, e}), km({0, f}, {1, e}), f0e0e});
  out.aux[3] = make_report("two-framed-aux-e0", n, {ke0, km({0, 1, e}, {0, f, e})},
                           {km({0, e}, {0, f}), km({1, e}, {0, e}), f0e0e, km({1, e}, {0, f})});

  // Independent semi-framed denominators and their minor counterparts.
  const int s = n + 2;
  const double flip = (n + 1) % 2 == 0 ? 1.0 : -1.0;
  const LogComplex den0 = semi_framed_det(SemiVariant::E, phi, gamma1, xi1, a[0], s);
  const LogComplex den1 = semi_framed_det(SemiVariant::H, phi, psi1, eta1, a[2], s);
  const LogComplex den2 = semi_framed_det(SemiVariant::H, phi, psi1, xi1, a[1], s);
  const LogComplex den3 = semi_framed_det(SemiVariant::E, phi, gamma1, eta1, a[3], s);
  out.semi_framed_mismatch = {rel_gap(out.aux[0].lhs[1], den0), rel_gap(out.aux[1].lhs[1], den1),
                              rel_gap(out.aux[2].lhs[1], signed_by(flip, den2)),
                              rel_gap(out.aux[3].lhs[1], signed_by(flip, den3))};

  auto mdet = [&](const Symbol& x, const Symbol& p, const Symbol& h, const Symbol& g,
                  std::array<cplx, 4> c) {
    return framed_det(DetKind::FramedM, phi, {x, p, h, g}, c, n + 3);
  };
  const long top = n + 2;
  const std::array<cplx, 4> base{a[0], a[1], a[2], a[3]};
  const LogComplex m_inner = mdet(xi1, psi1, eta1, gamma1, base);

  const LogComplex ma1 = mdet(xi1, psi2z, eta2z, gamma1, {a[0], cpsi2(0), a[6], ceta2(top)});
  const LogComplex ma3 = mdet(xi1, psi1, eta2z, gamma1, {a[0], a[1], ceta2(0), ceta2(top)});
  const LogComplex ma4 = mdet(xi1, psi2z, eta1, gamma1, {a[0], cpsi2(0), cpsi2(top), a[3]});
  const LogComplex mb2 = mdet(xi2z, psi1, eta1, gamma2z, {a[4], cxi2(0), a[2], cgamma2(0)});
  const LogComplex mb3 = mdet(xi1, psi1, eta1, gamma2z, {cgamma2(top), a[1], a[2], cgamma2(0)});
  const LogComplex mb4 = mdet(xi2z, psi1, eta1, gamma1, {cxi2(top), cxi2(0), a[2], a[3]});
  const LogComplex mc3 = mdet(xi1, psi1, eta2z, gamma2z, {cgamma2(top), a[1], ceta2(0), a[7]});
  const LogComplex md4 = mdet(xi2z, psi2z, eta1, gamma1, {cxi2(top), a[5], cpsi2(top), a[3]});
  // a3 = c1, a4 = d1, b3 = c2, b4 = d2; a2 = b1 = c4 = d3 = the inner corners.
  const LogComplex& mc1 = ma3;
  const LogComplex& md1 = ma4;
  const LogComplex& mc2 = mb3;
  const LogComplex& md2 = mb4;

  out.closing[0] = make_report("two-framed-K{0;0}", n, {den0, k00}, {ma1, m_inner, ma3, ma4});
  out.closing[1] = make_report("two-framed-K{n+4;n+4}", n, {den1, kee}, {m_inner, mb2, mb3, mb4});
  out.closing[2] =
      make_report("two-framed-K{0;n+4}", n, {den2, k0e}, {mc1, mc2, mc3, m_inner}, flip);
  out.closing[3] =
      make_report("two-framed-K{n+4;0}", n, {den3, ke0}, {md1, md2, m_inner, md4}, flip);
  for (auto& c : out.closing) c.degenerate = c.lhs[0].is_zero();

  const std::array<LogComplex, 4> dens{den0, den1, den2, den3};
  out.degenerate = m_inner.is_zero() ||
                   std::any_of(dens.begin(), dens.end(), [](const LogComplex& d) { return d.is_zero(); });
  if (out.degenerate) {
    out.chain_residual = std::numeric_limits<double>::infinity();
    return out;
  }
  auto closed = [](const LogComplex& den, const LogComplex& p, const LogComplex& q,
                   const LogComplex& r, const LogComplex& t, double sign) {
    const LogComplex pq = p * q, rt = r * t;
    const double m = std::max(pq.log_modulus(), rt.log_modulus());
    if (!std::isfinite(m)) return LogComplex::zero();
    return LogComplex::from(sign * (pq.scaled(m) - rt.scaled(m))) * LogComplex::polar_log(m, 0.0) /
           den;
  };
  const LogComplex c00 = closed(den0, ma1, m_inner, ma3, ma4, 1.0);
  const LogComplex cee = closed(den1, m_inner, mb2, mb3, mb4, 1.0);
  const LogComplex c0e = closed(den2, mc1, mc2, mc3, m_inner, flip);
  const LogComplex ce0 = closed(den3, md1, md2, m_inner, md4, flip);
  out.chained = closed(m_inner, c00, cee, c0e, ce0, 1.0);
  out.chain_residual = rel_gap(out.chained, out.direct);
  out.main.terms = {{"K", out.direct},   {"M_{n+3}[inner frame]", f0e0e},
                    {"K{0;0}", k00},     {"K{n+4;n+4}", kee},
                    {"K{0;n+4}", k0e},   {"K{n+4;0}", ke0},
                    {"K (chained)", out.chained}};
  return out;
}

nlohmann::json to_json(const LogComplex& v) {
  nlohmann::json j;
  if (v.is_zero()) {
    j["zero"] = true;
    j["re"] = 0.0;
    j["im"] = 0.0;
    return j;
  }
  j["log_modulus"] = v.log_modulus();
  j["phase"] = v.phase();
  const cplx x = v.value();
  if (std::isfinite(x.real()) && std::isfinite(x.imag())) {
    j["re"] = x.real();
    j["im"] = x.imag();
  }
  return j;
}

nlohmann::json to_json(const DciReport& r) {
  nlohmann::json j;
  j["identity"] = r.identity;
  j["n"] = r.n;
  j["residual"] = r.residual;
  j["degenerate"] = r.degenerate;
  j["terms"] = nlohmann::json::array();
  if (r.terms.empty()) {
    for (const auto& t : r.lhs) j["terms"].push_back(to_json(t));
    for (const auto& t : r.rhs) j["terms"].push_back(to_json(t));
  } else {
    for (const auto& t : r.terms) {
      auto e = to_json(t.value);
      e["name"] = t.name;
      j["terms"].push_back(e);
    }
  }
  return j;
}

nlohmann::json to_json(const BorderedReduction& r) {
  auto j = to_json(r.report);
  j["minor_mismatch"] = r.minor_mismatch;
  return j;
}

nlohmann::json to_json(const TwoFramedReduction& r) {
  auto j = to_json(r.main);
  j["residual"] = r.max_residual();
  j["main_residual"] = r.main.residual;
  j["chain_residual"] = std::isfinite(r.chain_residual) ? nlohmann::json(r.chain_residual)
                                                        : nlohmann::json(nullptr);
  j["degenerate"] = r.degenerate;
  for (const auto& x : r.aux) j["auxiliary"].push_back(to_json(x));
  for (const auto& x : r.closing) j["closing"].push_back(to_json(x));
  j["semi_framed_mismatch"] = r.semi_framed_mismatch;
  return j;
}

}  // namespace toeplitz
