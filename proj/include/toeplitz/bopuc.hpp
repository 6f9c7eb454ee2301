#pragma once

#include <array>
#include <vector>

#include "toeplitz/log_complex.hpp"
#include "toeplitz/structmat.hpp"
#include "toeplitz/symbols.hpp"

namespace toeplitz {

// Bi-orthogonal polynomials Q_n = kappa_n q_n, Qhat_n = kappa_n qhat_n with q, qhat
// monic. Only kappa_n^2 = D_n / D_{n+1} is stored, so no square root branch is chosen;
// every normalized quantity is exposed as a product Q_j * Qhat_j.
struct BopucSystem {
  Symbol symbol = constant_symbol(1.0);
  int max_degree = 0;
  std::vector<LogComplex> toeplitz_dets;  // D_0 .. D_{N+1}
  std::vector<std::vector<cplx>> monic_q;     // monic_q[n][k] = coefficient of z^k
  std::vector<std::vector<cplx>> monic_qhat;
  std::vector<cplx> kappa_sq;  // kappa_n^2 for n = 0..N, from the linear solves

  cplx q(int n, cplx z) const;
  cplx qhat(int n, cplx z) const;
  cplx q_derivative(int n, cplx z) const;
  cplx qhat_derivative(int n, cplx z) const;
  // Q_n(x) * Qhat_n(y)
  cplx pair(int n, cplx x, cplx y) const;
};

// Monic coefficients from T_{n+1} x = e_n (and its transpose); D_k is checked for
// k <= N+1 first. Throws DegenerateMomentError naming the first vanishing D_k.
BopucSystem compute_bopuc(const Symbol& phi, int max_degree);

// max_{k,m<=N} |int Q_k(t) Qhat_m(1/t) phi(t) dt/(2 pi i t) - delta_km|, trapezoid rule
// on `nodes` points using the symbol evaluator.
double biorthogonality_residual(const BopucSystem& system, int nodes = 1024);

// Relative residuals of the four recurrences at z, in kappa^2 form:
//   k_n^2 z q_n = k_{n+1}^2 (q_{n+1} - q_{n+1}(0) z^{n+1} qhat_{n+1}(1/z))
//   k_n^2 qhat_n(1/z)/z = k_{n+1}^2 (qhat_{n+1}(1/z) - qhat_{n+1}(0) z^{-n-1} q_{n+1}(z))
//   qhat_n(1/z)/z = qhat_{n+1}(1/z) - qhat_{n+1}(0) z^{-n} q_n(z)
//   k_{n+1}^2 - k_n^2 = k_{n+1}^2 q_{n+1}(0) qhat_{n+1}(0)
// At z = 0 only the last one is evaluated; the others are NaN.
std::array<double, 4> recurrence_residuals(const BopucSystem& system, int n, cplx z);

enum class KernelMethod { DirectSum, ChristoffelDarboux, Confluent };

struct KernelValue {
  cplx z;
  cplx zeta;
  cplx value;
  int n = 0;
  KernelMethod method = KernelMethod::DirectSum;
};

// K_n(z, zeta) = sum_{j<=n} Q_j(zeta) Qhat_j(z).
KernelValue reproducing_kernel(const BopucSystem& system, int n, cplx z, cplx zeta);
// Same kernel from the Christoffel-Darboux quotient, or its derivative form when
// z * zeta = 1. Needs n + 1 <= N.
KernelValue reproducing_kernel_cd(const BopucSystem& system, int n, cplx z, cplx zeta);

inline constexpr double kConfluenceGuard = 1e-12;

// |K_n(z, zeta) - a + Khat_n(z, zeta; a)| with Khat the bordered determinant over
// D_{n+1}.
double kernel_det_identity(const Symbol& phi, int n, cplx z, cplx zeta, cplx a);

// max |b T_{n+1} a^T diag(kappa^2) - I| with a, b the monic coefficient triangles.
double lu_factorization_residual(const Symbol& phi, int n);

inline constexpr int kKernelStartNodes = 512;
inline constexpr int kKernelMaxNodes = 8192;
inline constexpr double kKernelQuadTol = 1e-8;

struct SemiFramedKernelResult {
  cplx kernel_ratio;    // F_{n+2} / D_{n+1} from the double integral
  cplx pairing_ratio;   // same quantity from exact coefficient pairings
  cplx direct_ratio;    // determinant ratio from structmat
  double rel_diff = 0;  // |kernel - direct| / max(1, |direct|)
  int nodes = 0;
};

// Semi-framed determinant of size n + 2 from the reproducing kernel of degree n.
SemiFramedKernelResult semiframed_via_kernel(const Symbol& phi, const Symbol& psi,
                                             const Symbol& eta, cplx a, int n, SemiVariant v,
                                             double quad_tol = kKernelQuadTol);

}  // namespace toeplitz
