// Acceptance run: one PASS/FAIL line per criterion, thresholds fixed below.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "toeplitz/bopuc.hpp"
#include "toeplitz/errors.hpp"
#include "toeplitz/extended.hpp"
#include "toeplitz/harness.hpp"
#include "toeplitz/rhp.hpp"
#include "toeplitz/structmat.hpp"
#include "toeplitz/szego.hpp"

using namespace toeplitz;

namespace {

constexpr double kDciTol = 1e-10;
constexpr double kTwoBorderedTol = 1e-9;
constexpr double kFramedTol = 1e-8;
constexpr double kBopucTol = 1e-8;
constexpr double kLuTol = 1e-9;
constexpr double kSemiFramedTol = 1e-6;
constexpr double kZTol = 1e-8;
constexpr double kPureTol = 1e-8;
constexpr double kAsymptoticTol = 1e-4;
constexpr double kFRoutesTol = 1e-8;
constexpr double kPureDetSeconds = 1.0;
constexpr double kSuiteSeconds = 180.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [FAILED]");
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

SweepConfig acceptance_config() {
  SweepConfig c = default_config();  // exp(0.3 (z + 1/z)), borders with poles {2, 0.5}
  Tolerances& t = c.tolerances;
  t.dci = kDciTol;
  t.two_bordered = kTwoBorderedTol;
  t.framed = kFramedTol;
  t.bopuc = kBopucTol;
  t.lu = kLuTol;
  t.semiframed = kSemiFramedTol;
  t.z = kZTol;
  t.convergence = kAsymptoticTol;
  return c;
}

void identity_line(Outcome& o, const IdentityResult& r) {
  o.require(r.status == IdentityStatus::Pass,
            r.name + " " + to_string(r.status) + " residual " + sci(r.residual) + " < " +
                sci(r.tolerance) + " over " + std::to_string(r.cases) + " cases" +
                (r.detail.empty() ? "" : " (" + r.detail + ")"));
}

cplx normalized(const LogComplex& det, const Symbol& phi, int n) {
  return ratio(det, predict_pure(phi, n));
}

// ---- criteria -------------------------------------------------------------------

void c1(Outcome& o) { identity_line(o, check_dci_fuzz(acceptance_config())); }

void c2(Outcome& o) { identity_line(o, check_two_bordered(acceptance_config())); }

void c3(Outcome& o) {
  const SweepConfig c = acceptance_config();
  identity_line(o, check_framed(c));
  identity_line(o, check_two_framed(c));
}

void c4(Outcome& o) {
  const SweepConfig c = acceptance_config();
  identity_line(o, check_biorthogonality(c));
  identity_line(o, check_recurrences(c));
  identity_line(o, check_lu(c));
}

void c5(Outcome& o) {
  const SweepConfig c = acceptance_config();
  identity_line(o, check_semiframed_routes(c, c.symbol.build(), 20, "semiframed-routes exp n<=20"));
  identity_line(o, check_semiframed_routes(c, jump_g(), 8, "semiframed-routes jump-g n<=8"));
}

void c6(Outcome& o) {
  const SweepConfig c = acceptance_config();
  identity_line(o, check_z_agreement(c, c.symbol.build(), "z-three-way exp n<=10"));
  bool raised = true;
  for (int n = 2; n <= 10; ++n) {
    try {
      (void)z_from_x(constant_symbol(1.0), n, cplx(0.4, 0.2));
      raised = false;
    } catch (const PreconditionError&) {
    }
  }
  o.require(raised, "phi=1 raises PreconditionError for n=2..10");
  const IdentityResult r = check_z_agreement(c, constant_symbol(1.0), "z-three-way phi=1");
  o.require(r.status == IdentityStatus::PreconditionSkipped,
            std::string("phi=1 suite entry ") + to_string(r.status));
}

void c7(Outcome& o) {
  const ExpLaurentSpec spec{0.0, {0.3}, {0.3}};
  const Symbol phi = spec.symbol();
  const double err40 = std::abs(normalized(toeplitz_det(phi, 40), phi, 40) - 1.0);
  o.require(err40 < kPureTol, "double |D_40/(G^n E) - 1| = " + sci(err40));
  // the true error drops below double resolution before n = 10; track it at 200 digits
  double prev = std::abs(extended_pure_deviation(spec, 10));
  bool decreasing = prev > 0.0;
  for (int n = 11; n <= 40; ++n) {
    const double e = std::abs(extended_pure_deviation(spec, n));
    decreasing = decreasing && e > 0.0 && std::log(e) < std::log(prev);
    prev = e;
  }
  o.require(decreasing, "extended-precision log-error strictly decreasing on 10..40 (n=40: " +
                            sci(prev) + ")");
}

void c8(Outcome& o) {
  SweepConfig c = acceptance_config();
  const Symbol phi = c.symbol.build();
  const BorderSpec& b = c.borders[0];
  const cplx f = constant_F(phi, b);
  const cplx fq = constant_F_quotient(phi, b.psi(phi));
  const double gap = std::abs(normalized(bordered_det(phi, b.psi(phi), 40), phi, 40) - f) / std::abs(f);
  o.require(gap < kAsymptoticTol, "n=40 ratio vs F rel " + sci(gap));
  const double routes = std::abs(f - fq) / std::abs(f);
  o.require(routes < kFRoutesTol, "closed form vs quotient F rel " + sci(routes));
}

void c9(Outcome& o) {
  SweepConfig c = acceptance_config();
  c.kind = SweepKind::TwoBordered;
  c.n_grid = {2, 40, 1};
  const ConvergenceReport rep = run_convergence(c);
  o.require(rep.rows.back().n == 40 && rep.rows.back().rel_err < kAsymptoticTol,
            "n=40 ratio vs J1 rel " + sci(rep.rows.back().rel_err));
  o.require(rep.fitted_decay.has_value() && *rep.fitted_decay < 0.0,
            "fitted decay slope " + (rep.fitted_decay ? sci(*rep.fitted_decay) : std::string("none")));
}

void c10(Outcome& o) {
  const Symbol phi = acceptance_config().symbol.build();
  const cplx a(0.7, -0.2);
  auto frame = [](FrameSpec::Form form, std::vector<Pole> terms) {
    FrameSpec f;
    f.form = form;
    f.terms = std::move(terms);
    return f;
  };
  using F = FrameSpec::Form;
  auto limit_gap = [&](const FrameSpec& psi, const FrameSpec& eta, SemiVariant v, cplx expect) {
    const LogComplex d = semi_framed_det(v, phi, psi.symbol(phi), eta.symbol(phi), a, 41);
    return std::abs(normalized(d, phi, 40) - expect) / std::max(1.0, std::abs(expect));
  };

  const FrameSpec psi = frame(F::Rational, {{2.5, 0.8}, {0.4, cplx(0.0, 0.5)}});
  const FrameSpec eta = frame(F::Rational, {{-3.0, 0.6}, {cplx(0.0, 0.3), -0.7}});
  for (SemiVariant v : {SemiVariant::H, SemiVariant::L}) {
    const double g = limit_gap(psi, eta, v, a);
    o.require(g < kAsymptoticTol, std::string(to_string(v)) + " -> a rel " + sci(g));
  }
  for (SemiVariant v : {SemiVariant::E, SemiVariant::G}) {
    const cplx k = predict_semiframed(phi, psi, eta, a, v);
    const double g = limit_gap(psi, eta, v, k);
    o.require(g < kAsymptoticTol, std::string(to_string(v)) + " -> alpha-ratio constant rel " + sci(g));
  }
  // moving the column pole from 2.5 to 0.4 removes its term from the E constant
  for (double d : {2.5, 0.4}) {
    const FrameSpec p = frame(F::Rational, {{d, 0.8}});
    const FrameSpec e = frame(F::Rational, {{-3.0, 0.6}});
    const cplx k = predict_semiframed(phi, p, e, a, SemiVariant::E);
    const double g = limit_gap(p, e, SemiVariant::E, k);
    const bool switched = d > 1.0 ? std::abs(k - a) > 1e-2 : k == a;
    o.require(g < kAsymptoticTol && switched,
              "E pole at " + sci(d) + ": constant " + (d > 1.0 ? "carries" : "drops") +
                  " the pole term, rel " + sci(g));
  }
  // phi-weighted pairings: constants include the diagonal term
  const FrameSpec pr = frame(F::TimesReflectedPhi, {{0.5, 0.6}});
  const FrameSpec ep = frame(F::TimesPhi, {{-0.4, 0.9}});
  const double ge = limit_gap(pr, ep, SemiVariant::E, predict_semiframed(phi, pr, ep, a, SemiVariant::E));
  o.require(ge < kAsymptoticTol, "E (reflected, times phi) rel " + sci(ge));
  const FrameSpec pp = frame(F::TimesPhi, {{0.5, 0.6}});
  const FrameSpec er = frame(F::TimesReflectedPhi, {{-0.4, 0.9}});
  const double gg = limit_gap(pp, er, SemiVariant::G, predict_semiframed(phi, pp, er, a, SemiVariant::G));
  o.require(gg < kAsymptoticTol, "G (times phi, reflected) rel " + sci(gg));
}

void c11(Outcome& o) {
  const SweepConfig c = acceptance_config();
  const auto spec = c.symbol.exp_spec();
  const Symbol phi = c.symbol.build();
  const BorderSpec& b = c.borders[0];
  const ZPhiPrediction pred = predict_zphi_bordered_ratio(phi, b, 30);
  o.require(!pred.conditional && std::abs(pred.c_ratio) > 0.0,
            "C_29 above the noise floor, C_30/C_29 = " + sci(std::abs(pred.c_ratio)));
  const cplx value = extended_zphi_bordered_ratio(*spec, b, 30);
  const double gap = std::abs(value - pred.value) / std::abs(pred.value);
  o.require(gap < kAsymptoticTol, "n=30 ratio vs G(F - H C_n/C_{n-1}) rel " + sci(gap));
}

void c12(Outcome& o) {
  const Symbol phi = acceptance_config().symbol.build();
  (void)toeplitz_det(phi, 64);  // coefficient cache warm-up is not part of the LU timing
  auto t0 = std::chrono::steady_clock::now();
  const LogComplex d = toeplitz_det(phi, 512);
  const double det_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(det_s < kPureDetSeconds && !d.is_zero(), "det_log n=512 in " + sci(det_s) + " s");
  t0 = std::chrono::steady_clock::now();
  const IdentitySummary s = run_identity_suite(acceptance_config());
  const double suite_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(suite_s < kSuiteSeconds, "identity suite (criteria 1-6 defaults) in " + sci(suite_s) + " s");
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria{
      {1, c1}, {2, c2}, {3, c3}, {4, c4},   {5, c5},   {6, c6},
      {7, c7}, {8, c8}, {9, c9}, {10, c10}, {11, c11}, {12, c12}};
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s (%.2f s) %s\n", id, o.pass ? "PASS" : "FAIL", s,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
