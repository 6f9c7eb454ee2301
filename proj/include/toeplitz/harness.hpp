#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toeplitz/bopuc.hpp"
#include "toeplitz/extended.hpp"
#include "toeplitz/structmat.hpp"
#include "toeplitz/symbols.hpp"
#include "toeplitz/szego.hpp"

namespace toeplitz {

enum class SweepKind { Pure, Bordered, TwoBordered, SemiFramed, ZPhiBordered };
enum class ReportFormat { Csv, Json };

const char* to_string(SweepKind kind);
const char* to_string(ReportFormat format);
SweepKind sweep_kind_from_string(const std::string& name);
ReportFormat report_format_from_string(const std::string& name);
SemiVariant semi_variant_from_string(const std::string& name);

// Named family plus its parameters; "exp" families also drive the extended route.
struct SymbolConfig {
  std::string family = "exp";
  FamilyParams params;

  Symbol build() const;
  // Present for exp families only.
  std::optional<ExpLaurentSpec> exp_spec() const;
};

struct NGrid {
  int start = 10;
  int stop = 40;
  int step = 2;

  std::vector<int> values() const;
};

// Per-identity thresholds; set_identity() overrides all of them at once.
struct Tolerances {
  double dci = 1e-10;
  double two_bordered = 1e-9;
  double framed = 1e-8;
  double bopuc = 1e-8;
  double lu = 1e-9;
  double semiframed = 1e-6;
  double z = 1e-8;
  double convergence = 1e-4;

  void set_identity(double tol);
};

struct QuadratureSettings {
  double kernel_tol = kKernelQuadTol;
  double coeff_tol = kDefaultCoeffTol;
};

// Ranges of the identity suite, inclusive.
struct IdentityRanges {
  int dci_samples = 200;
  int dci_min = 4;
  int dci_max = 10;
  int two_bordered_min = 4;
  int two_bordered_max = 16;
  int framed_min = 3;
  int framed_max = 10;
  int bopuc_max = 12;
  int lu_max = 10;
  int semiframed_max = 20;
  int jump_max = 8;
  int z_max = 10;
  int z_points = 10;
};

struct SweepConfig {
  SymbolConfig symbol;
  std::vector<BorderSpec> borders;
  FrameSpec psi_frame;
  FrameSpec eta_frame;
  cplx corner = 0.0;
  SemiVariant variant = SemiVariant::H;
  SweepKind kind = SweepKind::Pure;
  NGrid n_grid;
  Tolerances tolerances;
  QuadratureSettings quadrature;
  IdentityRanges identities;
  std::vector<int> bench_sizes{64, 128, 256, 512};
  std::string output;
  ReportFormat format = ReportFormat::Csv;
  std::uint64_t seed = 20240601;

  // Throws ConfigError (grid, kind minimum, border count) or the symbol module's
  // validation errors for poles on the circle.
  void validate() const;
};

int kind_minimum(SweepKind kind);

// exp(0.3 (z + 1/z)), two rational borders with poles {2, 0.5}, rational frames.
SweepConfig default_config();

// Missing fields keep their defaults; unknown fields and malformed values throw
// ConfigError. Complex numbers are a number or [re, im].
SweepConfig config_from_json(const nlohmann::json& doc);
SweepConfig load_config(const std::string& path);
nlohmann::json to_json(const SweepConfig& config);

// ---- identity suite -----------------------------------------------------------

enum class IdentityStatus { Pass, Fail, PreconditionSkipped };
const char* to_string(IdentityStatus status);

struct IdentityResult {
  std::string name;
  IdentityStatus status = IdentityStatus::Pass;
  double residual = 0.0;  // worst case over the grid
  double tolerance = 0.0;
  int cases = 0;
  double seconds = 0.0;
  std::string detail;
};

struct IdentitySummary {
  std::uint64_t seed = 0;
  std::vector<IdentityResult> results;
  double seconds = 0.0;

  bool all_passed() const;  // skipped entries do not fail the suite
  int exit_code() const;    // 0 or 1
};

// Each check runs one identity family over its range from the config.
IdentityResult check_dci_fuzz(const SweepConfig& config);
IdentityResult check_two_bordered(const SweepConfig& config);
IdentityResult check_framed(const SweepConfig& config);
IdentityResult check_two_framed(const SweepConfig& config);
IdentityResult check_biorthogonality(const SweepConfig& config);
IdentityResult check_recurrences(const SweepConfig& config);
IdentityResult check_lu(const SweepConfig& config);
// Kernel and X routes for all four variants against direct determinants.
IdentityResult check_semiframed_routes(const SweepConfig& config, const Symbol& phi, int n_max,
                                       const std::string& name);
// Z from X(n), from X(n-1) and from the z phi system, at off-circle points.
IdentityResult check_z_agreement(const SweepConfig& config, const Symbol& phi,
                                 const std::string& name);

IdentitySummary run_identity_suite(const SweepConfig& config);

nlohmann::json to_json(const IdentitySummary& summary);
std::string to_csv(const IdentitySummary& summary);

// ---- convergence --------------------------------------------------------------

struct ConvergenceRow {
  int n = 0;
  cplx value;
  cplx predicted_constant;
  double rel_err = 0.0;
};

struct ConvergenceReport {
  SweepKind kind = SweepKind::Pure;
  std::vector<ConvergenceRow> rows;
  std::optional<double> fitted_decay;  // only with at least four rows
  double tolerance = 0.0;
  bool pass = false;  // rel_err at the largest n within tolerance
  std::uint64_t seed = 0;
};

inline constexpr int kMinRowsForFit = 4;
inline constexpr double kDecayFloor = 1e-12;

// Normalized structured determinant against the predicted constant over the grid:
//   Pure: D_n / (G^n E) vs 1;  Bordered: D^B_n[phi; psi] / (G^n E) vs F;
//   TwoBordered: D^B_n[phi; psi1, psi2] / (G^n E) vs J1;
//   SemiFramed: X_{n+1}[phi; psi, eta; a] / (G^n E) vs its constant;
//   ZPhiBordered: D^B_{n+1}[z phi; psi] / D_n[z phi] vs G (F - H C_n / C_{n-1}),
//     in extended precision.
ConvergenceReport run_convergence(const SweepConfig& config);

nlohmann::json to_json(const ConvergenceReport& report);
std::string to_csv(const ConvergenceReport& report);

// ---- benchmark ----------------------------------------------------------------

struct BenchRow {
  int n = 0;
  double direct_seconds = 0.0;      // LU of the two-bordered matrix
  double reduction_seconds = 0.0;   // constituents of the two-bordered reduction
  double asymptotic_seconds = 0.0;  // J1 (setup included)
  double pure_seconds = 0.0;        // pure Toeplitz det_log
  double route_gap = 0.0;           // relative gap direct vs reduction
  double asymptotic_gap = 0.0;      // relative gap direct / (G^n E) vs J1
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::uint64_t seed = 0;
};

BenchReport run_bench(const SweepConfig& config);
nlohmann::json to_json(const BenchReport& report);
std::string to_csv(const BenchReport& report);

// printf %.17g: every double round-trips exactly.
std::string format_number(double x);

}  // namespace toeplitz
