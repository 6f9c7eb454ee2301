#pragma once

#include <string>
#include <vector>

#include "toeplitz/log_complex.hpp"
#include "toeplitz/structmat.hpp"
#include "toeplitz/symbols.hpp"

namespace toeplitz {

// Border psi = q1 phi + q2 with
//   q1 = a0 + a1 z + b0 / z + sum_j b_j z / (z - c_j),
//   q2 = ahat0 + ahat1 z + bhat0 / z + sum_j bhat_j / (z - c_j),
// sharing the pole list c_j. b and bhat are padded with zeros to poles.size().
struct BorderSpec {
  cplx a0 = 0.0, a1 = 0.0, b0 = 0.0;
  std::vector<cplx> b;
  cplx ahat0 = 0.0, ahat1 = 0.0, bhat0 = 0.0;
  std::vector<cplx> bhat;
  std::vector<cplx> poles;

  // Throws BoundaryError for a pole on the unit circle, ParameterError for a pole
  // at 0 or more coefficients than poles.
  void validate() const;
  cplx b_at(std::size_t j) const { return j < b.size() ? b[j] : cplx(0.0); }
  cplx bhat_at(std::size_t j) const { return j < bhat.size() ? bhat[j] : cplx(0.0); }

  Symbol q1() const;
  Symbol q2() const;
  Symbol psi(const Symbol& phi) const;
  BorderSpec scaled(cplx factor) const;
};

struct AsymptoticPrediction {
  LogComplex log_leading;  // n log G + log E
  cplx constant;
  std::string decay_note;
};

// n log G + log E. Throws WindingError for a nonzero winding number.
LogComplex predict_pure(const Symbol& phi, int n);

// Closed form in the border parameters, and the quotient [phi_-^{-1} psi]_0 / [phi_+]_0
// valid for any psi analytic near the circle.
cplx constant_F(const Symbol& phi, const BorderSpec& border);
cplx constant_F_quotient(const Symbol& phi, const Symbol& psi);

// Limit of D^B_n[phi; psi / z] / (G^n E). The quotient route applies the same
// coefficient formula to psi / z.
cplx constant_H(const Symbol& phi, const BorderSpec& border);
cplx constant_H_quotient(const Symbol& phi, const Symbol& psi);

// det [[F2, F1], [H2, H1]]: limit of D^B_n[phi; psi1, psi2] / (G^n E).
cplx constant_J1(const Symbol& phi, const BorderSpec& border1, const BorderSpec& border2);

// Frame symbol sum_j A_j / (z - d_j), optionally multiplied by phi or phi(1/z).
struct FrameSpec {
  enum class Form { Rational, TimesPhi, TimesReflectedPhi };
  Form form = Form::Rational;
  std::vector<Pole> terms;  // location d_j, coefficient A_j

  void validate() const;
  Symbol symbol(const Symbol& phi) const;
};

const char* to_string(FrameSpec::Form form);

// Limit of X_{n+1}[phi; psi, eta; a] / (G^n E) for the supported frame pairings:
//   H: both rational or both times phi;  L: both rational or both reflected;
//   E: both rational (poles outside the disk contribute) or psi reflected and
//      eta times phi (poles inside contribute);
//   G: both rational (outside) or psi times phi and eta reflected (inside).
// Anything else throws UnsupportedSpecError.
// For the phi-weighted E / G pairings the constant also carries minus the diagonal
// term below; the alpha-ratio sum alone misses it (see semiframed_alpha_sum).
cplx predict_semiframed(const Symbol& phi, const FrameSpec& psi, const FrameSpec& eta, cplx a,
                        SemiVariant v);
// a plus the filtered alpha-ratio sum only.
cplx semiframed_alpha_sum(const Symbol& phi, const FrameSpec& psi, const FrameSpec& eta, cplx a,
                          SemiVariant v);
// [eta(z) psi(1/z) / phi]_0 for E, [psi(z) eta(1/z) / phi]_0 for G, on the phi-weighted
// pairings; zero otherwise.
cplx semiframed_diagonal_term(const Symbol& phi, const FrameSpec& psi, const FrameSpec& eta,
                              SemiVariant v);

struct ZPhiPrediction {
  cplx value;          // G (F - H C_n / C_{n-1})
  cplx c_ratio;        // C_n / C_{n-1}, zero when both vanish
  bool conditional = false;  // C_{n-1} at the quadrature noise floor
};

inline constexpr double kCnNoiseFactor = 1e3;  // times eps times integrand scale

// Prediction for D^B_{n+1}[z phi; psi] / D_n[z phi], n >= 1.
ZPhiPrediction predict_zphi_bordered_ratio(const Symbol& phi, const BorderSpec& border, int n);

// alpha^{(l)}(0) / l!: limit of D^B_{n+1}[phi; z^{-l} phi] / (G^n E).
cplx predict_bordered_zl(const Symbol& phi, int ell);

// Least-squares slope of log(error) against n over the top half of the samples whose
// error exceeds floor (points at the rounding floor carry no rate); NaN when fewer
// than two usable points remain.
double fitted_decay(const std::vector<int>& ns, const std::vector<double>& errors,
                    double floor = 0.0);

}  // namespace toeplitz
