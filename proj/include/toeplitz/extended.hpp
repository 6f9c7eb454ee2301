#pragma once

#include <vector>

#include "toeplitz/log_complex.hpp"
#include "toeplitz/szego.hpp"
#include "toeplitz/symbols.hpp"

namespace toeplitz {

// Determinants in 100-digit arithmetic for bulks exp(log0 + sum plus_k z^k + sum minus_k z^{-k})
// and borders q1 phi + q2. Used where double LU has no digits left, e.g. D_n[z phi].
struct ExpLaurentSpec {
  cplx log0 = 0.0;
  std::vector<cplx> plus;   // coefficient of z^k, k >= 1
  std::vector<cplx> minus;  // coefficient of z^{-k}, k >= 1

  Symbol symbol() const { return exp_laurent(log0, plus, minus); }
};

// Relative truncation target for the Fourier sums, far below double resolution.
inline constexpr double kExtendedTruncation = 1e-70;

// D_n[z^s phi], in the pure orientation.
LogComplex extended_toeplitz_det(const ExpLaurentSpec& phi, int shift, int n);

// D^B_n[z^s phi; psi] with psi = border.psi(phi), in the bordered orientation.
LogComplex extended_bordered_det(const ExpLaurentSpec& phi, int shift, const BorderSpec& border,
                                 int n);

// D_n[phi] / (G^n E) - 1 in 200-digit arithmetic, for tracking the pure Szego error
// well below double resolution. n is kept moderate (the value is formed directly).
cplx extended_pure_deviation(const ExpLaurentSpec& phi, int n);

// D^B_{n+1}[z phi; psi] / D_n[z phi].
cplx extended_zphi_bordered_ratio(const ExpLaurentSpec& phi, const BorderSpec& border, int n);

}  // namespace toeplitz
