#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "toeplitz/log_complex.hpp"
#include "toeplitz/structmat.hpp"
#include "toeplitz/symbols.hpp"

namespace toeplitz {

inline constexpr double kDciTolerance = 1e-9;

struct NamedTerm {
  std::string name;
  LogComplex value;
};

// lhs[0]*lhs[1] = sign * (rhs[0]*rhs[1] - rhs[2]*rhs[3]), checked in product form.
struct DciReport {
  std::string identity;
  int n = 0;
  std::array<LogComplex, 2> lhs;
  std::array<LogComplex, 4> rhs;
  double sign = 1.0;
  double residual = 0.0;
  bool degenerate = false;  // lhs[1] (the would-be divisor) vanished
  std::vector<NamedTerm> terms;

  bool passed(double tol = kDciTolerance) const { return residual < tol; }
};

// Relative residual of a*b - sign*(c*d - e*f) after rescaling by the largest product.
double product_residual(const LogComplex& a, const LogComplex& b, const LogComplex& c,
                        const LogComplex& d, const LogComplex& e, const LogComplex& f,
                        double sign = 1.0);

// M * M{j1 j2; k1 k2} = M{j1;k1} M{j2;k2} - M{j1;k2} M{j2;k1}.
DciReport dodgson_residual(const CMatrix& matrix, int j1, int j2, int k1, int k2);

struct BorderedReduction {
  DciReport report;
  // Largest relative gap between a structmat-built constituent and the matching minor.
  double minor_mismatch = 0.0;
};

// D^B_n[phi; psi1, psi2] D_{n-2}[z phi]
//   = D^B_{n-1}[z phi; psi2] D^B_{n-1}[phi; psi1/z] - D^B_{n-1}[z phi; psi1] D^B_{n-1}[phi; psi2/z]
BorderedReduction reduce_two_bordered(const Symbol& phi, const Symbol& psi1, const Symbol& psi2,
                                      int n);

// D^B_n[phi; psi1, psi2, psi3] D^B_{n-2}[z phi; psi1/z]
//   = D^B_{n-1}[z phi; psi1, psi3] D^B_{n-1}[phi; psi1/z, psi2/z]
//   - D^B_{n-1}[z phi; psi1, psi2] D^B_{n-1}[phi; psi1/z, psi3/z]
BorderedReduction reduce_three_bordered(const Symbol& phi, const Symbol& psi1,
                                        const Symbol& psi2, const Symbol& psi3, int n);

// Framed M / N (spec.size = n + 3) against four semi-framed determinants of size n + 2
// and D_{n+1}[phi].
BorderedReduction reduce_framed(const StructuredDetSpec& spec);

struct TwoFramedReduction {
  DciReport main;                   // DCI on K with rows/cols {0, n+4}
  std::array<DciReport, 4> aux;     // auxiliary DCIs on K{0;0}, K{n+4;n+4}, K{0;n+4}, K{n+4;0}
  std::array<DciReport, 4> closing; // each K{.;.} rebuilt from M-framed determinants
  // K{0,n+3,n+4;..}-type minors against independently built semi-framed determinants.
  std::array<double, 4> semi_framed_mismatch{};
  LogComplex direct;                // det K from the full matrix
  LogComplex chained;               // det K from M-framed and semi-framed determinants only
  double chain_residual = 0.0;
  bool degenerate = false;

  double max_residual() const;
};

// spec.kind must be TwoFramedK with spec.size = n + 5.
TwoFramedReduction reduce_two_framed(const StructuredDetSpec& spec);

nlohmann::json to_json(const DciReport& report);
nlohmann::json to_json(const BorderedReduction& reduction);
nlohmann::json to_json(const TwoFramedReduction& reduction);
nlohmann::json to_json(const LogComplex& value);

}  // namespace toeplitz
