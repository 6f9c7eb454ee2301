#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "toeplitz/errors.hpp"
#include "toeplitz/harness.hpp"

using namespace toeplitz;
using json = nlohmann::json;

namespace {

// Default config with small identity ranges, for quick suites.
SweepConfig small_config() {
  SweepConfig c = default_config();
  IdentityRanges& r = c.identities;
  r.dci_samples = 20;
  r.two_bordered_max = 8;
  r.framed_max = 5;
  r.bopuc_max = 6;
  r.lu_max = 5;
  r.semiframed_max = 4;
  r.jump_max = 3;
  r.z_max = 4;
  r.z_points = 3;
  return c;
}

const IdentityResult& find(const IdentitySummary& s, const std::string& name) {
  for (const auto& r : s.results)
    if (r.name == name) return r;
  FAIL("missing identity " << name);
  return s.results.front();
}

}  // namespace

TEST_CASE("default config validates and round-trips through JSON") {
  const SweepConfig c = default_config();
  CHECK_NOTHROW(c.validate());
  const json doc = to_json(c);
  const SweepConfig back = config_from_json(doc);
  CHECK(to_json(back) == doc);
  CHECK(back.borders.size() == 2);
  CHECK(back.borders[0].poles == std::vector<cplx>{2.0, 0.5});
}

TEST_CASE("config parsing accepts partial documents") {
  const SweepConfig c = config_from_json(json::parse(R"({
    "kind": "two-bordered", "n_grid": {"start": 2, "stop": 12, "step": 5},
    "corner": [1.0, -0.5], "variant": "E", "format": "json", "seed": 7,
    "symbol": {"family": "exp", "plus": [0.2, [0.0, 0.1]], "minus": [0.25]}
  })"));
  CHECK(c.kind == SweepKind::TwoBordered);
  CHECK(c.n_grid.values() == std::vector<int>{2, 7, 12});
  CHECK(c.corner == cplx(1.0, -0.5));
  CHECK(c.variant == SemiVariant::E);
  CHECK(c.format == ReportFormat::Json);
  CHECK(c.seed == 7);
  REQUIRE(c.symbol.exp_spec().has_value());
  CHECK(c.symbol.exp_spec()->plus[1] == cplx(0.0, 0.1));
  CHECK(c.tolerances.convergence == 1e-4);
}

TEST_CASE("config validation errors") {
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"bogus": 1})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"kind": "sideways"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"n_grid": {"start": 9, "stop": 3}})")),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"n_grid": {"step": 0}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"kind": "pure", "n_grid": {"start": 0}})")),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"corner": "one"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"n_grid": {"start": 2.5}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"borders": [{}]})")), ConfigError);
  // pole on the unit circle
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"borders": [{"poles": [[0.0, 1.0]], "b": [1]}, {}]})")),
                  ConfigError);
  CHECK_THROWS_AS(
      config_from_json(json::parse(R"({"psi_frame": {"terms": [{"location": -1.0}]}})")),
      ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("numbers are written with 17 significant digits") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(std::stod(format_number(M_PI)) == M_PI);
}

TEST_CASE("identity suite on small ranges") {
  const IdentitySummary s = run_identity_suite(small_config());
  CHECK(s.all_passed());
  CHECK(s.exit_code() == 0);
  for (const char* name : {"dci-fuzz", "two-bordered-reduction", "framed-reduction",
                           "two-framed-chain", "bopuc-biorthogonality", "bopuc-recurrences",
                           "bopuc-lu", "semiframed-routes", "z-three-way"}) {
    const IdentityResult& r = find(s, name);
    CAPTURE(name);
    CHECK(r.status == IdentityStatus::Pass);
    CHECK(r.residual < r.tolerance);
    CHECK(r.cases > 0);
  }
  // D_n[z] = 0 for the constant symbol; D_1[g] = 0 for the jump symbol
  CHECK(find(s, "z-three-way-constant").status == IdentityStatus::PreconditionSkipped);
  CHECK(find(s, "semiframed-routes-jump").status == IdentityStatus::PreconditionSkipped);
  CHECK(find(s, "dci-fuzz").cases == 20);
}

TEST_CASE("identity reports are deterministic") {
  const SweepConfig c = small_config();
  const IdentitySummary a = run_identity_suite(c), b = run_identity_suite(c);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(to_csv(a) == to_csv(b));
  CHECK(to_json(a)["seed"] == c.seed);

  SweepConfig other = c;
  other.seed = c.seed + 1;
  CHECK(check_dci_fuzz(other).residual != check_dci_fuzz(c).residual);
}

TEST_CASE("a tolerance below the achievable residual fails the suite") {
  SweepConfig c = small_config();
  c.tolerances.set_identity(1e-30);
  const IdentityResult r = check_two_bordered(c);
  CHECK(r.status == IdentityStatus::Fail);
  IdentitySummary s;
  s.results = {r};
  CHECK(s.exit_code() == 1);
}

TEST_CASE("pure convergence sweep") {
  SweepConfig c = default_config();
  c.kind = SweepKind::Pure;
  const ConvergenceReport rep = run_convergence(c);
  REQUIRE(rep.rows.size() == 16);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) CHECK(rep.rows[i].n > rep.rows[i - 1].n);
  CHECK(rep.rows.back().n == 40);
  CHECK(rep.rows.back().rel_err < 1e-8);
  for (const auto& r : rep.rows) CHECK(r.rel_err >= 0.0);
  CHECK(rep.pass);
  // every row already sits at the rounding floor, so no rate can be fitted
  CHECK_FALSE(rep.fitted_decay.has_value());

  const std::string csv = to_csv(rep);
  CHECK(csv.rfind("n,value_re,value_im,pred_re,pred_im,rel_err\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
}

TEST_CASE("decay is fitted only with enough rows") {
  SweepConfig c = default_config();
  c.kind = SweepKind::Pure;
  c.n_grid = {1, 3, 1};
  CHECK_FALSE(run_convergence(c).fitted_decay.has_value());
  c.n_grid = {1, 8, 1};
  const auto rep = run_convergence(c);
  REQUIRE(rep.fitted_decay.has_value());
  CHECK(*rep.fitted_decay < 0.0);
}

TEST_CASE("two-bordered sweep converges to J1 with a negative fitted slope") {
  SweepConfig c = default_config();
  c.kind = SweepKind::TwoBordered;
  c.n_grid = {2, 40, 1};
  const ConvergenceReport rep = run_convergence(c);
  CHECK(rep.rows.back().rel_err < 1e-4);
  CHECK(rep.pass);
  REQUIRE(rep.fitted_decay.has_value());
  CHECK(*rep.fitted_decay < 0.0);
  const json j = to_json(rep);
  CHECK(j["kind"] == "two-bordered");
  CHECK(j["rows"].size() == 39);
}

TEST_CASE("semi-framed H sweep converges to the corner") {
  SweepConfig c = default_config();
  c.kind = SweepKind::SemiFramed;
  c.variant = SemiVariant::H;
  c.corner = cplx(0.4, -0.3);
  const ConvergenceReport rep = run_convergence(c);
  for (const auto& r : rep.rows) CHECK(r.predicted_constant == c.corner);
  CHECK(std::abs(rep.rows.back().value - c.corner) < 1e-4);
  CHECK(rep.pass);
}

TEST_CASE("bordered and z phi sweeps") {
  SweepConfig c = default_config();
  c.n_grid = {10, 30, 10};
  c.kind = SweepKind::Bordered;
  CHECK(run_convergence(c).pass);
  c.kind = SweepKind::ZPhiBordered;
  CHECK(run_convergence(c).pass);
  c.symbol.family = "ising-diagonal";
  c.symbol.params.value = 2.5;
  CHECK_THROWS_AS(run_convergence(c), ConfigError);
}

TEST_CASE("bench rows and cross-route gaps") {
  SweepConfig c = default_config();
  c.bench_sizes = {16, 48};
  const BenchReport rep = run_bench(c);
  REQUIRE(rep.rows.size() == 2);
  for (const auto& r : rep.rows) {
    CHECK(r.route_gap < 1e-9);
    CHECK(r.asymptotic_gap < 1e-4);
    CHECK(r.pure_seconds >= 0.0);
  }
  CHECK(to_csv(rep).rfind("n,pure_seconds,", 0) == 0);
}
