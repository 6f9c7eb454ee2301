#include "toeplitz/structmat.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <sstream>

#include "toeplitz/errors.hpp"

namespace toeplitz {

const char* to_string(DetKind kind) {
  switch (kind) {
    case DetKind::Pure: return "pure";
    case DetKind::PureBulkRowConvention: return "pure-row";
    case DetKind::Bordered: return "bordered";
    case DetKind::MultiBordered: return "multi-bordered";
    case DetKind::SemiFramedE: return "semi-framed-E";
    case DetKind::SemiFramedG: return "semi-framed-G";
    case DetKind::SemiFramedH: return "semi-framed-H";
    case DetKind::SemiFramedL: return "semi-framed-L";
    case DetKind::FramedM: return "framed-M";
    case DetKind::FramedN: return "framed-N";
    case DetKind::TwoFramedK: return "two-framed-K";
    case DetKind::MultiFramed: return "multi-framed";
    case DetKind::EntanglementBlock: return "entanglement";
  }
  return "unknown";
}

DetKind det_kind_from_string(const std::string& name) {
  for (auto k : {DetKind::Pure, DetKind::PureBulkRowConvention, DetKind::Bordered,
                 DetKind::MultiBordered, DetKind::SemiFramedE, DetKind::SemiFramedG,
                 DetKind::SemiFramedH, DetKind::SemiFramedL, DetKind::FramedM,
                 DetKind::FramedN, DetKind::TwoFramedK, DetKind::MultiFramed,
                 DetKind::EntanglementBlock})
    if (name == to_string(k)) return k;
  throw SpecError("unknown determinant kind '" + name + "'");
}

const char* to_string(SemiVariant v) {
  switch (v) {
    case SemiVariant::E: return "E";
    case SemiVariant::G: return "G";
    case SemiVariant::H: return "H";
    case SemiVariant::L: return "L";
  }
  return "?";
}

int minimum_size(DetKind kind, int m) {
  switch (kind) {
    case DetKind::Pure:
    case DetKind::PureBulkRowConvention: return 1;
    case DetKind::Bordered: return 2;
    case DetKind::MultiBordered: return m + 1;
    case DetKind::SemiFramedE:
    case DetKind::SemiFramedG:
    case DetKind::SemiFramedH:
    case DetKind::SemiFramedL: return 2;
    case DetKind::FramedM:
    case DetKind::FramedN: return 3;
    case DetKind::TwoFramedK: return 6;
    case DetKind::MultiFramed: return 2 * m + 1;
    case DetKind::EntanglementBlock: return 2;
  }
  return 1;
}

Coeffs coeffs_of(const FourierSeries& series) {
  auto held = std::make_shared<const FourierSeries>(series);
  return [held](long j) { return held->at(j); };
}

Coeffs coeffs_of(const Symbol& symbol, long reach, double tol) {
  if (symbol.has_exact_coefficients()) return symbol.coefficient_rule();
  return coeffs_of(fourier_coeffs(symbol, -reach, reach, tol));
}

// ---- coefficient-level builders ---------------------------------------------

CMatrix toeplitz_matrix(const Coeffs& phi, int n, bool row_convention) {
  CMatrix t(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) t(r, c) = row_convention ? phi(c - r) : phi(r - c);
  return t;
}

CMatrix bordered_matrix(const Coeffs& phi, std::span<const Coeffs> borders, int n) {
  const int m = static_cast<int>(borders.size());
  CMatrix t(n, n);
  for (int c = 0; c < n - m; ++c)
    for (int r = 0; r < n; ++r) t(r, c) = phi(c - r);
  for (int l = 0; l < m; ++l)
    for (int r = 0; r < n; ++r) t(r, n - m + l) = borders[static_cast<std::size_t>(l)](n - 1 - r);
  return t;
}

CMatrix semi_framed_matrix(SemiVariant v, const Coeffs& phi, const Coeffs& psi,
                           const Coeffs& eta, cplx a, int n) {
  CMatrix t(n, n);
  const int b = n - 1;
  for (int c = 0; c < b; ++c)
    for (int r = 0; r < b; ++r) t(r, c) = phi(r - c);
  const bool column_up = v == SemiVariant::E || v == SemiVariant::L;  // psi_{n-2-r}
  const bool row_left = v == SemiVariant::E || v == SemiVariant::H;   // eta_{n-2-c}
  for (int r = 0; r < b; ++r) t(r, b) = psi(column_up ? b - 1 - r : r);
  for (int c = 0; c < b; ++c) t(b, c) = eta(row_left ? b - 1 - c : c);
  t(b, b) = a;
  return t;
}

CMatrix multi_framed_matrix(const Coeffs& phi, std::span<const std::array<Coeffs, 4>> frames,
                            std::span<const cplx> corners, int n) {
  const int m = static_cast<int>(frames.size());
  if (static_cast<int>(corners.size()) != 4 * m)
    throw SpecError("multi_framed_matrix: need 4 corners per frame");
  CMatrix t = CMatrix::Zero(n, n);
  for (int c = m; c <= n - 1 - m; ++c)
    for (int r = m; r <= n - 1 - m; ++r) t(r, c) = phi(r - c);
  for (int l = 1; l <= m; ++l) {
    const auto& [xi, psi, eta, gamma] = frames[static_cast<std::size_t>(l - 1)];
    const int s = m - l;  // offset of frame l from the outside
    const int e = n - 1 - s;
    const int len = n - 2 * s - 2;
    for (int q = s + 1; q <= e - 1; ++q) {
      const int k = q - s - 1;
      t(s, q) = xi(len - 1 - k);
      t(q, s) = gamma(len - 1 - k);
      t(q, e) = psi(k);
      t(e, q) = eta(len - 1 - k);
    }
    const auto base = static_cast<std::size_t>(4 * (l - 1));
    t(s, s) = corners[base];
    t(s, e) = corners[base + 1];
    t(e, e) = corners[base + 2];
    t(e, s) = corners[base + 3];
  }
  return t;
}

CMatrix framed_n_matrix(const Coeffs& phi, const std::array<Coeffs, 4>& frame,
                        std::span<const cplx> corners, int n) {
  if (corners.size() != 4) throw SpecError("framed_n_matrix: need 4 corners");
  const auto& [xi, psi, eta, gamma] = frame;
  CMatrix t(n, n);
  const int e = n - 1, len = n - 2;
  for (int c = 1; c < e; ++c)
    for (int r = 1; r < e; ++r) t(r, c) = phi(r - c);
  for (int q = 1; q < e; ++q) {
    t(0, q) = xi(q - 1);
    t(q, 0) = gamma(q - 1);
    t(q, e) = psi(len - q);
    t(e, q) = eta(len - q);
  }
  t(0, 0) = corners[0];
  t(0, e) = corners[1];
  t(e, e) = corners[2];
  t(e, 0) = corners[3];
  return t;
}

CMatrix two_framed_matrix(const Coeffs& phi, const std::array<Coeffs, 4>& inner,
                          const std::array<Coeffs, 4>& outer, std::span<const cplx> a, int n) {
  if (a.size() != 8) throw SpecError("two_framed_matrix: need 8 corners");
  const auto& [xi1, psi1, eta1, gamma1] = inner;
  const auto& [xi2, psi2, eta2, gamma2] = outer;
  const int N = n;
  CMatrix t(N, N);
  // row 0 and row N-1
  t(0, 0) = a[4];
  t(0, N - 1) = a[5];
  t(N - 1, N - 1) = a[6];
  t(N - 1, 0) = a[7];
  for (int c = 1; c <= N - 2; ++c) {
    t(0, c) = xi2(N - 2 - c);
    t(N - 1, c) = eta2(N - 2 - c);
  }
  // columns 0 and N-1 on rows 1..N-2
  for (int r = 1; r <= N - 2; ++r) {
    t(r, 0) = gamma2(N - 2 - r);
    t(r, N - 1) = psi2(r - 1);
  }
  // inner frame
  t(1, 1) = a[0];
  t(1, N - 2) = a[1];
  t(N - 2, N - 2) = a[2];
  t(N - 2, 1) = a[3];
  for (int c = 2; c <= N - 3; ++c) {
    t(1, c) = xi1(N - 3 - c);
    t(N - 2, c) = eta1(N - 3 - c);
  }
  for (int r = 2; r <= N - 3; ++r) {
    t(r, 1) = gamma1(N - 3 - r);
    t(r, N - 2) = psi1(r - 2);
  }
  for (int c = 2; c <= N - 3; ++c)
    for (int r = 2; r <= N - 3; ++r) t(r, c) = phi(r - c);
  return t;
}

CMatrix entanglement_display_matrix(const Coeffs& g, const EntanglementParams& p) {
  const int k = p.k;
  CMatrix t(k + 1, k + 1);
  t(0, 0) = g(p.i - p.j - p.m - k);
  for (int c = 1; c <= k; ++c) t(0, c) = g(p.i - p.m - c);
  for (int r = 1; r <= k; ++r) {
    t(r, 0) = g(r - p.j - k);
    for (int c = 1; c <= k; ++c) t(r, c) = g(r - c);
  }
  return t;
}

// ---- spec dispatch -----------------------------------------------------------

namespace {

void require_counts(const StructuredDetSpec& s, std::size_t borders, std::size_t corners) {
  if (s.borders.size() != borders || s.corners.size() != corners) {
    std::ostringstream msg;
    msg << to_string(s.kind) << ": expected " << borders << " borders and " << corners
        << " corners, got " << s.borders.size() << " and " << s.corners.size();
    throw SpecError(msg.str());
  }
}

void check_entanglement(const EntanglementParams& p) {
  if (p.k < 1 || p.m < 1 || p.n < 1 || p.i < 1 || p.i > p.m || p.j < 1 || p.j > p.n)
    throw RangeError("entanglement block: need 1<=i<=m, 1<=j<=n, k>=1");
}

}  // namespace

CMatrix build_matrix(const StructuredDetSpec& spec, double tol) {
  const int n = spec.size;
  const int m = spec.multiplicity;
  if ((spec.kind == DetKind::MultiBordered || spec.kind == DetKind::MultiFramed) && m < 1)
    throw SpecError("multiplicity must be >= 1");
  if (spec.kind != DetKind::EntanglementBlock && n < minimum_size(spec.kind, m)) {
    std::ostringstream msg;
    msg << to_string(spec.kind) << ": size " << n << " below minimum "
        << minimum_size(spec.kind, m);
    throw SpecError(msg.str());
  }
  const long reach = std::max(n, 1) + 2;
  auto of = [&](const Symbol& s) { return coeffs_of(s, reach, tol); };
  const Coeffs phi = of(spec.bulk);
  auto frame_of = [&](std::size_t base) {
    return std::array<Coeffs, 4>{of(spec.borders[base]), of(spec.borders[base + 1]),
                                 of(spec.borders[base + 2]), of(spec.borders[base + 3])};
  };

  switch (spec.kind) {
    case DetKind::Pure:
      require_counts(spec, 0, 0);
      return toeplitz_matrix(phi, n, false);
    case DetKind::PureBulkRowConvention:
      require_counts(spec, 0, 0);
      return toeplitz_matrix(phi, n, true);
    case DetKind::Bordered:
    case DetKind::MultiBordered: {
      const std::size_t count = spec.kind == DetKind::Bordered ? 1 : static_cast<std::size_t>(m);
      require_counts(spec, count, 0);
      std::vector<Coeffs> b;
      for (const auto& s : spec.borders) b.push_back(of(s));
      return bordered_matrix(phi, b, n);
    }
    case DetKind::SemiFramedE:
    case DetKind::SemiFramedG:
    case DetKind::SemiFramedH:
    case DetKind::SemiFramedL: {
      require_counts(spec, 2, 1);
      const SemiVariant v = spec.kind == DetKind::SemiFramedE   ? SemiVariant::E
                            : spec.kind == DetKind::SemiFramedG ? SemiVariant::G
                            : spec.kind == DetKind::SemiFramedH ? SemiVariant::H
                                                                : SemiVariant::L;
      return semi_framed_matrix(v, phi, of(spec.borders[0]), of(spec.borders[1]),
                                spec.corners[0], n);
    }
    case DetKind::FramedM: {
      require_counts(spec, 4, 4);
      const std::array<std::array<Coeffs, 4>, 1> frames{frame_of(0)};
      return multi_framed_matrix(phi, frames, spec.corners, n);
    }
    case DetKind::FramedN:
      require_counts(spec, 4, 4);
      return framed_n_matrix(phi, frame_of(0), spec.corners, n);
    case DetKind::TwoFramedK:
      require_counts(spec, 8, 8);
      return two_framed_matrix(phi, frame_of(0), frame_of(4), spec.corners, n);
    case DetKind::MultiFramed: {
      require_counts(spec, 4 * static_cast<std::size_t>(m), 4 * static_cast<std::size_t>(m));
      std::vector<std::array<Coeffs, 4>> frames;
      for (int l = 0; l < m; ++l) frames.push_back(frame_of(4 * static_cast<std::size_t>(l)));
      return multi_framed_matrix(phi, frames, spec.corners, n);
    }
    case DetKind::EntanglementBlock: {
      check_entanglement(spec.entanglement);
      const auto& p = spec.entanglement;
      const long r = p.m + p.n + p.k + 2;
      return entanglement_display_matrix(coeffs_of(spec.bulk, r, tol), p);
    }
  }
  throw SpecError("build_matrix: unsupported kind");
}

// ---- determinants -------------------------------------------------------------

LogComplex det_log(const CMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw ShapeError("det_log: matrix is not square");
  const Eigen::Index n = matrix.rows();
  if (n == 0) return LogComplex::one();
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r)
      if (!std::isfinite(matrix(r, c).real()) || !std::isfinite(matrix(r, c).imag()))
        throw ParameterError("det_log: non-finite entry");

  CMatrix a = matrix;
  Eigen::VectorXd row_norm(n);
  for (Eigen::Index r = 0; r < n; ++r) row_norm(r) = a.row(r).cwiseAbs().maxCoeff();

  double log_mod = 0.0, phase = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = 0;
    const double best = a.col(k).tail(n - k).cwiseAbs().maxCoeff(&p);
    p += k;
    if (best == 0.0 || best <= kZeroPivotThreshold * row_norm(p)) return LogComplex::zero();
    if (p != k) {
      a.row(p).swap(a.row(k));
      std::swap(row_norm(p), row_norm(k));
      phase += std::numbers::pi;
    }
    const cplx pivot = a(k, k);
    log_mod += std::log(std::abs(pivot));
    phase += std::arg(pivot);
    const Eigen::Index rest = n - k - 1;
    if (rest > 0) {
      a.col(k).tail(rest) /= pivot;
      a.bottomRightCorner(rest, rest).noalias() -= a.col(k).tail(rest) * a.row(k).tail(rest);
    }
  }
  return LogComplex::polar_log(log_mod, phase);
}

namespace {

std::vector<int> kept_indices(std::span<const int> removed, int n, const char* what) {
  for (std::size_t i = 0; i < removed.size(); ++i) {
    if (removed[i] < 0 || removed[i] >= n)
      throw IndexError(std::string("minor_det: ") + what + " index out of range");
    if (i > 0 && removed[i] <= removed[i - 1])
      throw IndexError(std::string("minor_det: ") + what + " indices must be strictly increasing");
  }
  std::vector<int> keep;
  std::size_t q = 0;
  for (int i = 0; i < n; ++i) {
    if (q < removed.size() && removed[q] == i) {
      ++q;
      continue;
    }
    keep.push_back(i);
  }
  return keep;
}

}  // namespace

CMatrix remove_rows_cols(const CMatrix& matrix, std::span<const int> removed_rows,
                         std::span<const int> removed_cols) {
  if (matrix.rows() != matrix.cols()) throw ShapeError("minor_det: matrix is not square");
  if (removed_rows.size() != removed_cols.size())
    throw IndexError("minor_det: row and column lists differ in length");
  const int n = static_cast<int>(matrix.rows());
  const auto rows = kept_indices(removed_rows, n, "row");
  const auto cols = kept_indices(removed_cols, n, "column");
  CMatrix sub(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows.size(); ++r)
      sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = matrix(rows[r], cols[c]);
  return sub;
}

LogComplex minor_det(const CMatrix& matrix, std::span<const int> removed_rows,
                     std::span<const int> removed_cols) {
  return det_log(remove_rows_cols(matrix, removed_rows, removed_cols));
}

LogComplex structured_det(const StructuredDetSpec& spec, double tol) {
  return det_log(build_matrix(spec, tol));
}

LogComplex toeplitz_det(const Symbol& phi, int n) {
  if (n < 0) throw SpecError("toeplitz_det: negative size");
  if (n == 0) return LogComplex::one();
  return det_log(toeplitz_matrix(coeffs_of(phi, n + 1), n));
}

LogComplex bordered_det(const Symbol& phi, std::span<const Symbol> borders, int n) {
  if (n < static_cast<int>(borders.size()))
    throw SpecError("bordered_det: size below the number of borders");
  if (n == 0) return LogComplex::one();
  std::vector<Coeffs> b;
  for (const auto& s : borders) b.push_back(coeffs_of(s, n + 1));
  return det_log(bordered_matrix(coeffs_of(phi, n + 1), b, n));
}

LogComplex bordered_det(const Symbol& phi, const Symbol& psi, int n) {
  const std::array<Symbol, 1> b{psi};
  return bordered_det(phi, b, n);
}

LogComplex semi_framed_det(SemiVariant v, const Symbol& phi, const Symbol& psi,
                           const Symbol& eta, cplx a, int n) {
  if (n < 1) throw SpecError("semi_framed_det: size below minimum");
  return det_log(semi_framed_matrix(v, coeffs_of(phi, n + 1), coeffs_of(psi, n + 1),
                                    coeffs_of(eta, n + 1), a, n));
}

LogComplex framed_det(DetKind kind, const Symbol& phi, const std::array<Symbol, 4>& frame,
                      std::span<const cplx> corners, int n) {
  StructuredDetSpec s;
  s.kind = kind;
  s.bulk = phi;
  s.borders.assign(frame.begin(), frame.end());
  s.corners.assign(corners.begin(), corners.end());
  s.size = n;
  return structured_det(s);
}

cplx entanglement_block(int m, int n, int k, int i, int j) {
  check_entanglement({m, n, k, i, j});
  const Symbol g = jump_g();
  const cplx corner = g.exact_coefficient(i - j - m - k);
  return -semi_framed_det(SemiVariant::H, g, shift(g, j + k - 1), shift(g, m + k - i), corner,
                          k + 1)
              .value();
}

cplx entanglement_block_l(int m, int n, int k, int i, int j) {
  check_entanglement({m, n, k, i, j});
  const Symbol g = jump_g();
  const Symbol gt = reflect(g);
  const cplx corner = g.exact_coefficient(i - j - m - k);
  return -semi_framed_det(SemiVariant::L, g, shift(gt, -j), shift(gt, i - m - 1), corner, k + 1)
              .value();
}

cplx entanglement_block_display(int m, int n, int k, int i, int j) {
  StructuredDetSpec s;
  s.kind = DetKind::EntanglementBlock;
  s.bulk = jump_g();
  s.entanglement = {m, n, k, i, j};
  return -structured_det(s).value();
}

std::string matrix_to_csv(const CMatrix& matrix) {
  std::string out;
  char buf[96];
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "\"%.17g,%.17g\"", matrix(r, c).real(), matrix(r, c).imag());
      if (c > 0) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace toeplitz
