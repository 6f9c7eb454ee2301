#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "toeplitz/log_complex.hpp"
#include "toeplitz/symbols.hpp"

namespace toeplitz {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Coefficient access j -> f_j used by every builder.
using Coeffs = std::function<cplx(long)>;

// Orientation table (0-indexed row r, column c, size N):
//   Pure                    phi_{r-c}
//   PureBulkRowConvention   phi_{c-r}
//   Bordered/MultiBordered  phi_{c-r} in the bulk columns
//   SemiFramed*, Framed*, TwoFramedK, MultiFramed   phi_{r-c} in the bulk
enum class DetKind {
  Pure,
  PureBulkRowConvention,
  Bordered,
  MultiBordered,
  SemiFramedE,
  SemiFramedG,
  SemiFramedH,
  SemiFramedL,
  FramedM,
  FramedN,
  TwoFramedK,
  MultiFramed,
  EntanglementBlock,
};

const char* to_string(DetKind kind);
DetKind det_kind_from_string(const std::string& name);

enum class SemiVariant { E, G, H, L };
const char* to_string(SemiVariant v);

struct EntanglementParams {
  int m = 1;
  int n = 1;
  int k = 1;
  int i = 1;
  int j = 1;
};

// Borders are ordered per kind:
//   Bordered: {psi}; MultiBordered: {psi_1..psi_m};
//   SemiFramed*: {psi (column), eta (row)}, corners {a};
//   FramedM/N: {xi (top), psi (right), eta (bottom), gamma (left)}, corners a1..a4
//     (a1 top-left, a2 top-right, a3 bottom-right, a4 bottom-left);
//   TwoFramedK: {xi1, psi1, eta1, gamma1, xi2, psi2, eta2, gamma2}, corners a1..a8;
//   MultiFramed(m): frame l = 1 (innermost) .. m, four borders each in the same
//     order, corners a_{4l-3}..a_{4l}.
// For TwoFramedK, size means the full matrix size (n + 5).
struct StructuredDetSpec {
  DetKind kind = DetKind::Pure;
  Symbol bulk = constant_symbol(1.0);
  std::vector<Symbol> borders;
  std::vector<cplx> corners;
  int size = 1;
  int multiplicity = 1;  // m for MultiBordered / MultiFramed
  EntanglementParams entanglement;
};

int minimum_size(DetKind kind, int multiplicity);

CMatrix build_matrix(const StructuredDetSpec& spec, double tol = kDefaultCoeffTol);

// ---- coefficient-level builders ---------------------------------------------

CMatrix toeplitz_matrix(const Coeffs& phi, int n, bool row_convention = false);
CMatrix bordered_matrix(const Coeffs& phi, std::span<const Coeffs> borders, int n);
CMatrix semi_framed_matrix(SemiVariant v, const Coeffs& phi, const Coeffs& psi,
                           const Coeffs& eta, cplx a, int n);
// frames[l-1] = {xi, psi, eta, gamma} of frame l; corners has 4m entries.
CMatrix multi_framed_matrix(const Coeffs& phi, std::span<const std::array<Coeffs, 4>> frames,
                            std::span<const cplx> corners, int n);
CMatrix framed_n_matrix(const Coeffs& phi, const std::array<Coeffs, 4>& frame,
                        std::span<const cplx> corners, int n);
// Literal two-framed display, frames = {inner, outer}; n is the full size.
CMatrix two_framed_matrix(const Coeffs& phi, const std::array<Coeffs, 4>& inner,
                          const std::array<Coeffs, 4>& outer, std::span<const cplx> corners,
                          int n);
CMatrix entanglement_display_matrix(const Coeffs& g, const EntanglementParams& p);

// ---- determinants -------------------------------------------------------------

inline constexpr double kZeroPivotThreshold = 1e-30;

LogComplex det_log(const CMatrix& matrix);
LogComplex minor_det(const CMatrix& matrix, std::span<const int> removed_rows,
                     std::span<const int> removed_cols);
CMatrix remove_rows_cols(const CMatrix& matrix, std::span<const int> removed_rows,
                         std::span<const int> removed_cols);

LogComplex structured_det(const StructuredDetSpec& spec, double tol = kDefaultCoeffTol);

// Convenience wrappers on symbols. D_0 = 1 by convention.
LogComplex toeplitz_det(const Symbol& phi, int n);
LogComplex bordered_det(const Symbol& phi, std::span<const Symbol> borders, int n);
LogComplex bordered_det(const Symbol& phi, const Symbol& psi, int n);
LogComplex semi_framed_det(SemiVariant v, const Symbol& phi, const Symbol& psi,
                           const Symbol& eta, cplx a, int n);
LogComplex framed_det(DetKind kind, const Symbol& phi, const std::array<Symbol, 4>& frame,
                      std::span<const cplx> corners, int n);

// A_ij(k) for the jump symbol g, in the H form; the L form and the literal
// display are exposed for cross-checks.
cplx entanglement_block(int m, int n, int k, int i, int j);
cplx entanglement_block_l(int m, int n, int k, int i, int j);
cplx entanglement_block_display(int m, int n, int k, int i, int j);

// Row-major CSV, one quoted "re,im" cell per entry, 17 significant digits.
std::string matrix_to_csv(const CMatrix& matrix);

Coeffs coeffs_of(const FourierSeries& series);
Coeffs coeffs_of(const Symbol& symbol, long reach, double tol = kDefaultCoeffTol);

}  // namespace toeplitz
