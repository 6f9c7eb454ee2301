#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toeplitz/log_complex.hpp"

namespace toeplitz {

inline constexpr double kDefaultCoeffTol = 1e-14;
inline constexpr long kDefaultNodeCap = 1L << 20;
inline constexpr int kDefaultTrunc = 128;

enum class SymbolKind {
  AnalyticSampled,
  RationalCombo,  // q1 * phi + q2
  PlainRational,
  Product,        // r * phi or r * reflect(phi)
  IsingDiagonal,
  TwoValuedJump,
};

const char* to_string(SymbolKind kind);

struct Pole {
  cplx location;
  cplx coefficient;
};

// Open annulus inner < |z| < outer on which the evaluator is analytic.
struct Annulus {
  double inner = 0.0;
  double outer = std::numeric_limits<double>::infinity();
  bool contains(double r) const { return inner < r && r < outer; }
};

// Immutable, cheap to copy (shared state). Sampled Fourier coefficients are
// cached internally under a mutex, so concurrent use is safe.
class Symbol {
 public:
  using Evaluator = std::function<cplx(cplx)>;
  using CoefficientRule = std::function<cplx(long)>;

  // Coefficients derived from another symbol by an index map:
  // c_j = factor * base_{(reflected ? -j : j) - offset}.
  struct IndexMap {
    std::shared_ptr<const Symbol> base;
    bool reflected = false;
    long offset = 0;
    cplx factor = 1.0;
  };

  struct Parts {
    SymbolKind kind = SymbolKind::AnalyticSampled;
    Evaluator eval;
    Annulus annulus;
    std::vector<Pole> poles;
    CoefficientRule exact;  // closed-form Fourier coefficients, if known
    std::optional<IndexMap> derived;  // used for sampling when exact is empty
    std::optional<int> winding_hint;
    std::string label;
  };

  explicit Symbol(Parts parts);

  cplx operator()(cplx z) const;
  SymbolKind kind() const;
  const std::vector<Pole>& poles() const;
  Annulus annulus() const;
  std::optional<int> winding_hint() const;
  const std::string& label() const;
  bool has_exact_coefficients() const;
  cplx exact_coefficient(long j) const;
  const Evaluator& evaluator() const;
  const CoefficientRule& coefficient_rule() const;

  // Trapezoid coefficients c_j, |j| <= max_index, from an adaptively refined
  // FFT. Returns the array indexed j + max_index and the tail estimate.
  std::vector<cplx> sampled_coefficients(long max_index, double tol, double* tail,
                                         long node_cap = kDefaultNodeCap) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

struct FourierSeries {
  long j_min = 0;
  std::vector<cplx> coeffs;
  double tail_bound = 0.0;

  long j_max() const { return j_min + static_cast<long>(coeffs.size()) - 1; }
  bool contains(long j) const { return j >= j_min && j <= j_max(); }
  // Throws IndexError outside [j_min, j_max].
  cplx at(long j) const;
  cplx operator()(long j) const { return at(j); }
};

FourierSeries fourier_coeffs(const Symbol& symbol, long j_min, long j_max,
                             double tol = kDefaultCoeffTol,
                             long node_cap = kDefaultNodeCap);

int winding_number(const Symbol& symbol, long node_cap = kDefaultNodeCap);

// ---- factories -------------------------------------------------------------

Symbol constant_symbol(cplx value);
Symbol monomial(long power, cplx coefficient = 1.0);

// Laurent polynomial sum_{k} poly[k] z^{poly_min + k} plus simple poles
// sum_j b_j / (z - c_j).
struct RationalSpec {
  long poly_min = 0;
  std::vector<cplx> poly;
  std::vector<Pole> poles;
};
Symbol rational(const RationalSpec& spec);

// exp(log0 + sum_{k>=1} plus[k-1] z^k + sum_{k>=1} minus[k-1] z^{-k}).
Symbol exp_laurent(cplx log0, std::vector<cplx> plus, std::vector<cplx> minus);

// sqrt((1 - 1/(k z)) / (1 - z/k)), continuous principal branch, k > 1.
Symbol ising_diagonal(double k);

// +1 on Re z >= 0, -1 on Re z < 0, with closed-form coefficients.
Symbol jump_g();

// ---- combinators -----------------------------------------------------------

Symbol shift(const Symbol& s, long k);  // z^k s(z)
Symbol reflect(const Symbol& s);        // s(1/z)
Symbol scale(const Symbol& s, cplx factor);
Symbol add(const Symbol& a, const Symbol& b);
Symbol multiply(const Symbol& a, const Symbol& b);
Symbol product(const Symbol& r, const Symbol& phi);            // r * phi
Symbol product_reflected(const Symbol& r, const Symbol& phi);  // r * phi(1/z)
Symbol rational_combo(const Symbol& q1, const Symbol& phi, const Symbol& q2);

// ---- named families --------------------------------------------------------

struct FamilyParams {
  double value = 1.0;   // constant value, Ising k, exp amplitude
  cplx log0 = 0.0;
  std::vector<cplx> plus;
  std::vector<cplx> minus;
  RationalSpec rational;
};

// "constant", "jump-g", "ising-diagonal", "exp", "rational".
Symbol make_family(const std::string& name, const FamilyParams& params);

// ---- Szego data ------------------------------------------------------------

struct LogSymbolData {
  FourierSeries log_coeffs;  // [log phi]_k, |k| <= trunc
  cplx G;
  cplx E;
  std::vector<cplx> alpha_inside;   // coefficients of z^k
  std::vector<cplx> alpha_outside;  // coefficients of z^{-k}
  std::vector<cplx> phi_plus;       // exp(sum_{k>=1} L_k z^k)
  std::vector<cplx> phi_minus;      // exp(sum_{k>=1} L_{-k} z^{-k}), in z^{-k}
  int trunc = 0;

  cplx log_coeff(long k) const { return log_coeffs.at(k); }
};

LogSymbolData szego_data(const Symbol& symbol, int trunc = kDefaultTrunc,
                         double tol = kDefaultCoeffTol);

cplx eval_alpha(const LogSymbolData& data, cplx z);
cplx eval_phi_plus(const LogSymbolData& data, cplx z);
cplx eval_phi_minus(const LogSymbolData& data, cplx z);
cplx alpha_taylor_at_zero(const LogSymbolData& data, int ell);

// exp of a power series: f = exp(sum_{k>=1} h[k] x^k), f[0] = 1.
std::vector<cplx> series_exp(const std::vector<cplx>& h, std::size_t terms);

// Exact integer power by repeated squaring.
cplx ipow(cplx base, long exponent);

}  // namespace toeplitz
