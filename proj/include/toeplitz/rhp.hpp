#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "toeplitz/bopuc.hpp"
#include "toeplitz/quadrature.hpp"
#include "toeplitz/symbols.hpp"

namespace toeplitz {

using Mat2 = Eigen::Matrix2cd;

// Solution of the BOPUC Riemann-Hilbert problem with weight phi and index n:
//   X11 = q_n (monic), X21 = -kappa_{n-1}^2 z^{n-1} qhat_{n-1}(1/z),
//   X12, X22 = Cauchy transforms of X11 t^{-n} phi and X21 t^{-n} phi.
// X(z) z^{-n sigma3} = I + inf1 / z + inf2 / z^2 + ...
struct XData {
  Symbol weight = constant_symbol(1.0);
  int n = 0;
  std::vector<cplx> x11;  // coefficients of z^k, degree n, monic
  std::vector<cplx> x21;  // coefficients of z^k, degree <= n - 1
  Mat2 inf1 = Mat2::Zero();
  Mat2 inf2 = Mat2::Zero();
  LogComplex det_n;    // D_n[weight]
  LogComplex det_np1;  // D_{n+1}[weight]
  double inf1_12_scale = 0.0;  // largest term in the sum giving inf1(0, 1)

  cplx x11_at(cplx z) const;
  cplx x21_at(cplx z) const;
  // Cauchy entries integrate over |t| = radius. For |z| on the same side of that circle
  // as of the unit circle this is X(z); otherwise it is the continuation of the other
  // branch, which is how boundary values X_+ (radius > 1) and X_- (radius < 1) are taken.
  cplx x12_at(cplx z, double radius = 1.0) const;
  cplx x22_at(cplx z, double radius = 1.0) const;
  Mat2 value(cplx z, double radius = 1.0) const;

  // l-th Taylor coefficient at 0 of X12 / X22, as trapezoid moments.
  cplx x12_taylor(int ell) const;
  cplx x22_taylor(int ell) const;
};

// n >= 0; needs D_{n-1}, D_n, D_{n+1} of the weight nonzero.
XData x_data(const Symbol& weight, int n);
Mat2 x_solution(const Symbol& phi, int n, cplx z);

// Same problem for the weight z phi, read off its own bi-orthogonal system.
XData z_data_direct(const Symbol& phi, int n);

inline constexpr double kPreconditionFloor = 1e-14;

// Z from X(z;n): (M / z + diag(1, 0)) X(z;n) diag(1, z). Throws PreconditionError
// when X11(0;n) vanishes.
Mat2 z_from_x(const XData& x_n, cplx z);
Mat2 z_from_x(const Symbol& phi, int n, cplx z);
// Z from X(z;n-1) and its first two moments. Throws PreconditionError when
// inf1_12(n-1) vanishes.
Mat2 z_from_x_shift(const XData& x_nm1, cplx z);
Mat2 z_from_x_shift(const Symbol& phi, int n, cplx z);

// Residual of the 2x2 linear system tying the 11 and 21 entries of both Z
// constructions together, at z.
double compatibility_residual(const Symbol& phi, int n, cplx z);

// Lens contours: Gamma_0 of radius inner < 1 and Gamma_1 of radius outer > 1.
struct ContourRadii {
  double inner = 0.5;
  double outer = 2.0;
};
// Geometric mean of 1 and each annulus bound; 0.5 / 2 when a bound is trivial.
ContourRadii default_radii(const Symbol& phi);

// (1/2 pi i) int_{|t| = r} t^n phi^{-1}(t) alpha(t)^2 dt.
cplx c_n(const Symbol& phi, int n, double r);
cplx c_n(const Symbol& phi, const LogSymbolData& data, int n, double r);
// Same with r chosen on a grid to minimize the integrand size (a saddle radius).
cplx c_n_auto(const Symbol& phi, int n);
// The underlying trapezoid means, with the integrand scale for noise-floor checks.
CircleMean c_n_mean(const Symbol& phi, const LogSymbolData& data, int n, double r);
CircleMean c_n_auto_mean(const Symbol& phi, const LogSymbolData& data, int n);

inline constexpr double kContourGuard = 1e-6;

// First correction R_1(z;n); off-diagonal. Throws ContourProximityError within
// kContourGuard of either contour.
Mat2 r1(const Symbol& phi, int n, cplx z, std::optional<ContourRadii> radii = std::nullopt);

enum class Region { Omega0, Omega1, Omega2, OmegaInf };
Region region_of(cplx z, const ContourRadii& radii);

// (I + R_1) times the global parametrix of the named region. Throws ParameterError
// if z is not in that region.
Mat2 x_asymptotic(const Symbol& phi, int n, cplx z, Region region,
                  std::optional<ContourRadii> radii = std::nullopt);

// Bordered determinants with an RHP representation, all of size n + 1.
enum class RhpBorder {
  Cauchy,          // D^B[phi; 1/(z-c)]
  PhiCauchy,       // D^B[phi; phi/(z-c)]
  ShiftedPhi,      // D^B[phi; z^{-l} phi]
  ZCauchy,         // D^B[z phi; 1/(z-c)]
  ZPhiCauchy,      // D^B[z phi; z phi/(z-c)]
  ZMonomial,       // D^B[z phi; z]
  ZShiftedPhi,     // D^B[z phi; z^{1-l} phi]
};

struct RhpBorderParams {
  cplx c = 2.0;
  int ell = 1;
};

const char* to_string(RhpBorder kind);

// Bulk and border symbols of the case, for comparison against structmat.
std::pair<Symbol, Symbol> rhp_border_symbols(const Symbol& phi, RhpBorder kind,
                                             const RhpBorderParams& p);

// Determinant predicted from X data (Z data through the first Z construction).
cplx bordered_via_rhp(const Symbol& phi, RhpBorder kind, const RhpBorderParams& p, int n);

struct SemiFramedRhpResult {
  cplx ratio;  // F_{n+2} / D_{n+1}
  int nodes = 0;
};

// Double integral of the 2x2 determinant of X11(.;n+1) and X21(.;n+2) against the
// frame symbols, on half-step offset grids.
SemiFramedRhpResult semiframed_via_x(const Symbol& phi, const Symbol& psi, const Symbol& eta,
                                     cplx a, int n, SemiVariant v,
                                     double quad_tol = kKernelQuadTol);

}  // namespace toeplitz
