#include "toeplitz/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "toeplitz/bopuc.hpp"
#include "toeplitz/dci.hpp"
#include "toeplitz/errors.hpp"
#include "toeplitz/rhp.hpp"

namespace toeplitz {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_gap(cplx a, cplx b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

double mat_gap(const Mat2& a, const Mat2& b) {
  const double s = std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), 1e-300});
  return (a - b).cwiseAbs().maxCoeff() / s;
}

// Runs f over items with at most hardware_concurrency tasks in flight; results keep
// the input order.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F f) {
  using R = decltype(f(items.front()));
  std::vector<R> out;
  out.reserve(items.size());
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t lo = 0; lo < items.size(); lo += width) {
    std::vector<std::future<R>> batch;
    const std::size_t hi = std::min(items.size(), lo + width);
    for (std::size_t i = lo; i < hi; ++i)
      batch.push_back(std::async(std::launch::async, f, std::cref(items[i])));
    for (auto& fut : batch) out.push_back(fut.get());
  }
  return out;
}

// ---- JSON helpers ------------------------------------------------------------

cplx complex_from(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(where + ": expected a number or [re, im]");
}

json complex_to(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<cplx> complex_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(complex_from(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json complex_list_to(const std::vector<cplx>& v) {
  json out = json::array();
  for (cplx z : v) out.push_back(complex_to(z));
  return out;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> keys,
                    const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> known(keys.begin(), keys.end());
  for (const auto& item : obj.items())
    if (!known.count(item.key())) throw ConfigError(where + ": unknown field '" + item.key() + "'");
}

template <class T>
T number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  }
  return j.get<T>();
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected a string");
  return j.get<std::string>();
}

std::vector<Pole> poles_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<Pole> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    reject_unknown(j[i], {"location", "coefficient"}, w);
    if (!j[i].contains("location")) throw ConfigError(w + ": missing location");
    out.push_back({complex_from(j[i]["location"], w + ".location"),
                   j[i].contains("coefficient") ? complex_from(j[i]["coefficient"], w + ".coefficient")
                                                : cplx(1.0)});
  }
  return out;
}

json poles_to(const std::vector<Pole>& poles) {
  json out = json::array();
  for (const Pole& p : poles)
    out.push_back({{"location", complex_to(p.location)}, {"coefficient", complex_to(p.coefficient)}});
  return out;
}

BorderSpec border_from(const json& j, const std::string& where) {
  reject_unknown(j, {"a0", "a1", "b0", "b", "ahat0", "ahat1", "bhat0", "bhat", "poles"}, where);
  BorderSpec b;
  if (j.contains("a0")) b.a0 = complex_from(j["a0"], where + ".a0");
  if (j.contains("a1")) b.a1 = complex_from(j["a1"], where + ".a1");
  if (j.contains("b0")) b.b0 = complex_from(j["b0"], where + ".b0");
  if (j.contains("b")) b.b = complex_list(j["b"], where + ".b");
  if (j.contains("ahat0")) b.ahat0 = complex_from(j["ahat0"], where + ".ahat0");
  if (j.contains("ahat1")) b.ahat1 = complex_from(j["ahat1"], where + ".ahat1");
  if (j.contains("bhat0")) b.bhat0 = complex_from(j["bhat0"], where + ".bhat0");
  if (j.contains("bhat")) b.bhat = complex_list(j["bhat"], where + ".bhat");
  if (j.contains("poles")) b.poles = complex_list(j["poles"], where + ".poles");
  return b;
}

json border_to(const BorderSpec& b) {
  return {{"a0", complex_to(b.a0)},       {"a1", complex_to(b.a1)},
          {"b0", complex_to(b.b0)},       {"b", complex_list_to(b.b)},
          {"ahat0", complex_to(b.ahat0)}, {"ahat1", complex_to(b.ahat1)},
          {"bhat0", complex_to(b.bhat0)}, {"bhat", complex_list_to(b.bhat)},
          {"poles", complex_list_to(b.poles)}};
}

FrameSpec::Form frame_form_from(const std::string& s, const std::string& where) {
  for (auto f : {FrameSpec::Form::Rational, FrameSpec::Form::TimesPhi,
                 FrameSpec::Form::TimesReflectedPhi})
    if (s == to_string(f)) return f;
  throw ConfigError(where + ": unknown frame form '" + s + "'");
}

FrameSpec frame_from(const json& j, const std::string& where) {
  reject_unknown(j, {"form", "terms"}, where);
  FrameSpec f;
  if (j.contains("form")) f.form = frame_form_from(text(j["form"], where + ".form"), where + ".form");
  if (j.contains("terms")) f.terms = poles_from(j["terms"], where + ".terms");
  return f;
}

json frame_to(const FrameSpec& f) { return {{"form", to_string(f.form)}, {"terms", poles_to(f.terms)}}; }

// Appends n, value, prediction and error columns with 17 significant digits.
void csv_row(std::ostringstream& out, int n, cplx value, cplx pred, double err) {
  out << n << ',' << format_number(value.real()) << ',' << format_number(value.imag()) << ','
      << format_number(pred.real()) << ',' << format_number(pred.imag()) << ','
      << format_number(err) << '\n';
}

// ---- identity helpers --------------------------------------------------------

struct Tally {
  double worst = 0.0;
  int cases = 0;
  bool nan = false;

  void add(double r) {
    ++cases;
    if (std::isnan(r)) nan = true;
    else worst = std::max(worst, r);
  }
};

IdentityResult finish(std::string name, const Tally& t, double tol, Clock::time_point t0,
                      std::string detail = {}) {
  IdentityResult r;
  r.name = std::move(name);
  r.residual = t.nan ? std::numeric_limits<double>::quiet_NaN() : t.worst;
  r.tolerance = tol;
  r.cases = t.cases;
  r.status = (!t.nan && t.worst < tol) ? IdentityStatus::Pass : IdentityStatus::Fail;
  r.seconds = seconds_since(t0);
  r.detail = std::move(detail);
  return r;
}

IdentityResult skipped(std::string name, double tol, Clock::time_point t0, std::string why) {
  IdentityResult r;
  r.name = std::move(name);
  r.status = IdentityStatus::PreconditionSkipped;
  r.residual = std::numeric_limits<double>::quiet_NaN();
  r.tolerance = tol;
  r.seconds = seconds_since(t0);
  r.detail = std::move(why);
  return r;
}

std::vector<int> inclusive(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

Symbol border_symbol(const SweepConfig& c, const Symbol& phi, std::size_t i) {
  return c.borders.at(i).psi(phi);
}

// Outer-to-inner frame material for the framed reductions: {xi, psi, eta, gamma}.
std::vector<Symbol> frame_quad(const SweepConfig& c, const Symbol& phi, cplx twist) {
  return {c.borders[0].scaled(twist).psi(phi), c.psi_frame.symbol(phi), c.eta_frame.symbol(phi),
          c.borders[1].scaled(std::conj(twist)).psi(phi)};
}

std::vector<cplx> corner_list(int count) {
  std::vector<cplx> a;
  for (int q = 0; q < count; ++q) a.push_back(cplx(0.35 * q - 0.9, 0.2 * (q % 3) - 0.1));
  return a;
}

StructuredDetSpec structured(DetKind kind, const Symbol& phi, std::vector<Symbol> borders,
                             std::vector<cplx> corners, int size) {
  StructuredDetSpec s;
  s.kind = kind;
  s.bulk = phi;
  s.borders = std::move(borders);
  s.corners = std::move(corners);
  s.size = size;
  return s;
}

// Off-circle sample points avoiding a thin ring around |z| = 1.
std::vector<cplx> sample_points(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  std::vector<cplx> out;
  for (int i = 0; i < count; ++i) {
    const double r = pick(rng) < 0.5 ? 0.3 + 0.5 * pick(rng) : 1.25 + 1.5 * pick(rng);
    out.push_back(std::polar(r, angle(rng)));
  }
  return out;
}

}  // namespace

// ---- names -------------------------------------------------------------------

const char* to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::Pure: return "pure";
    case SweepKind::Bordered: return "bordered";
    case SweepKind::TwoBordered: return "two-bordered";
    case SweepKind::SemiFramed: return "semi-framed";
    case SweepKind::ZPhiBordered: return "zphi-bordered";
  }
  return "?";
}

const char* to_string(ReportFormat format) {
  return format == ReportFormat::Csv ? "csv" : "json";
}

const char* to_string(IdentityStatus status) {
  switch (status) {
    case IdentityStatus::Pass: return "pass";
    case IdentityStatus::Fail: return "fail";
    case IdentityStatus::PreconditionSkipped: return "precondition-skipped";
  }
  return "?";
}

SweepKind sweep_kind_from_string(const std::string& name) {
  for (auto k : {SweepKind::Pure, SweepKind::Bordered, SweepKind::TwoBordered,
                 SweepKind::SemiFramed, SweepKind::ZPhiBordered})
    if (name == to_string(k)) return k;
  throw ConfigError("unknown determinant kind '" + name + "'");
}

ReportFormat report_format_from_string(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw ConfigError("unknown report format '" + name + "'");
}

SemiVariant semi_variant_from_string(const std::string& name) {
  for (auto v : {SemiVariant::E, SemiVariant::G, SemiVariant::H, SemiVariant::L})
    if (name == to_string(v)) return v;
  throw ConfigError("unknown semi-framed variant '" + name + "'");
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- configuration -----------------------------------------------------------

Symbol SymbolConfig::build() const { return make_family(family, params); }

std::optional<ExpLaurentSpec> SymbolConfig::exp_spec() const {
  if (family != "exp") return std::nullopt;
  if (params.plus.empty() && params.minus.empty())
    return ExpLaurentSpec{params.log0, {params.value}, {params.value}};
  return ExpLaurentSpec{params.log0, params.plus, params.minus};
}

std::vector<int> NGrid::values() const {
  std::vector<int> v;
  for (int n = start; n <= stop; n += step) v.push_back(n);
  return v;
}

void Tolerances::set_identity(double tol) {
  dci = two_bordered = framed = bopuc = lu = semiframed = z = tol;
}

int kind_minimum(SweepKind kind) {
  switch (kind) {
    case SweepKind::Pure: return 1;
    case SweepKind::Bordered: return 1;
    case SweepKind::TwoBordered: return 2;
    case SweepKind::SemiFramed: return 1;
    case SweepKind::ZPhiBordered: return 1;
  }
  return 1;
}

void SweepConfig::validate() const {
  if (n_grid.step < 1) throw ConfigError("n_grid.step must be positive");
  if (n_grid.start > n_grid.stop) throw ConfigError("n_grid is empty (start > stop)");
  if (n_grid.start < kind_minimum(kind))
    throw ConfigError(std::string("n_grid.start is below the minimum ") +
                      std::to_string(kind_minimum(kind)) + " for kind " + to_string(kind));
  if (borders.size() < 2) throw ConfigError("borders: two border specs are required");
  for (int s : bench_sizes)
    if (s < 4) throw ConfigError("bench_sizes: sizes must be at least 4");
  if (!(quadrature.kernel_tol > 0.0) || !(quadrature.coeff_tol > 0.0))
    throw ConfigError("quadrature tolerances must be positive");
  if (identities.dci_min < 2 || identities.dci_min > identities.dci_max)
    throw ConfigError("identities: bad DCI size range");
  if (format != ReportFormat::Csv && format != ReportFormat::Json)
    throw ConfigError("unknown report format");
  try {
    (void)symbol.build();
    for (std::size_t i = 0; i < borders.size(); ++i) {
      try {
        borders[i].validate();
      } catch (const Error& e) {
        throw ConfigError("borders[" + std::to_string(i) + "]: " + e.what());
      }
    }
    try {
      psi_frame.validate();
      eta_frame.validate();
    } catch (const Error& e) {
      throw ConfigError(std::string("frames: ") + e.what());
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("symbol: ") + e.what());
  }
}

SweepConfig default_config() {
  SweepConfig c;
  c.symbol.family = "exp";
  c.symbol.params.value = 0.3;

  BorderSpec b1;
  b1.a0 = cplx(0.4, 0.1);
  b1.a1 = 0.2;
  b1.b0 = cplx(0.0, -0.3);
  b1.b = {0.5, cplx(0.3, -0.2)};
  b1.ahat0 = 0.25;
  b1.ahat1 = cplx(-0.1, 0.2);
  b1.bhat0 = 0.15;
  b1.bhat = {cplx(0.0, 0.6), -0.4};
  b1.poles = {2.0, 0.5};

  BorderSpec b2;
  b2.a0 = cplx(-0.3, 0.2);
  b2.a1 = cplx(0.1, 0.1);
  b2.b0 = 0.35;
  b2.b = {cplx(-0.2, 0.4), 0.7};
  b2.ahat0 = cplx(0.5, -0.1);
  b2.ahat1 = 0.3;
  b2.bhat0 = cplx(-0.2, 0.05);
  b2.bhat = {0.45, cplx(0.1, -0.3)};
  b2.poles = {2.0, 0.5};
  c.borders = {b1, b2};

  c.psi_frame.terms = {{2.5, 0.8}, {0.4, cplx(0.0, 0.5)}};
  c.eta_frame.terms = {{-3.0, 0.6}, {cplx(0.0, 0.3), -0.7}};
  c.corner = 1.5;
  return c;
}

SweepConfig config_from_json(const json& doc) {
  SweepConfig c = default_config();
  reject_unknown(doc,
                 {"symbol", "borders", "psi_frame", "eta_frame", "corner", "variant", "kind",
                  "n_grid", "tolerances", "quadrature", "identities", "bench_sizes", "output",
                  "format", "seed"},
                 "config");
  try {
    if (doc.contains("symbol")) {
      const json& s = doc["symbol"];
      reject_unknown(s, {"family", "value", "log0", "plus", "minus", "rational"}, "symbol");
      if (s.contains("family")) c.symbol.family = text(s["family"], "symbol.family");
      if (s.contains("value")) c.symbol.params.value = number<double>(s["value"], "symbol.value");
      if (s.contains("log0")) c.symbol.params.log0 = complex_from(s["log0"], "symbol.log0");
      if (s.contains("plus")) c.symbol.params.plus = complex_list(s["plus"], "symbol.plus");
      if (s.contains("minus")) c.symbol.params.minus = complex_list(s["minus"], "symbol.minus");
      if (s.contains("rational")) {
        const json& r = s["rational"];
        reject_unknown(r, {"poly_min", "poly", "poles"}, "symbol.rational");
        if (r.contains("poly_min"))
          c.symbol.params.rational.poly_min = number<long>(r["poly_min"], "symbol.rational.poly_min");
        if (r.contains("poly"))
          c.symbol.params.rational.poly = complex_list(r["poly"], "symbol.rational.poly");
        if (r.contains("poles"))
          c.symbol.params.rational.poles = poles_from(r["poles"], "symbol.rational.poles");
      }
    }
    if (doc.contains("borders")) {
      if (!doc["borders"].is_array()) throw ConfigError("borders: expected an array");
      c.borders.clear();
      for (std::size_t i = 0; i < doc["borders"].size(); ++i)
        c.borders.push_back(border_from(doc["borders"][i], "borders[" + std::to_string(i) + "]"));
    }
    if (doc.contains("psi_frame")) c.psi_frame = frame_from(doc["psi_frame"], "psi_frame");
    if (doc.contains("eta_frame")) c.eta_frame = frame_from(doc["eta_frame"], "eta_frame");
    if (doc.contains("corner")) c.corner = complex_from(doc["corner"], "corner");
    if (doc.contains("variant")) c.variant = semi_variant_from_string(text(doc["variant"], "variant"));
    if (doc.contains("kind")) c.kind = sweep_kind_from_string(text(doc["kind"], "kind"));
    if (doc.contains("n_grid")) {
      const json& g = doc["n_grid"];
      reject_unknown(g, {"start", "stop", "step"}, "n_grid");
      if (g.contains("start")) c.n_grid.start = number<int>(g["start"], "n_grid.start");
      if (g.contains("stop")) c.n_grid.stop = number<int>(g["stop"], "n_grid.stop");
      if (g.contains("step")) c.n_grid.step = number<int>(g["step"], "n_grid.step");
    }
    if (doc.contains("tolerances")) {
      const json& t = doc["tolerances"];
      reject_unknown(t,
                     {"identity", "dci", "two_bordered", "framed", "bopuc", "lu", "semiframed", "z",
                      "convergence"},
                     "tolerances");
      if (t.contains("identity")) c.tolerances.set_identity(number<double>(t["identity"], "tolerances.identity"));
      auto set = [&](const char* key, double& field) {
        if (t.contains(key)) field = number<double>(t[key], std::string("tolerances.") + key);
      };
      set("dci", c.tolerances.dci);
      set("two_bordered", c.tolerances.two_bordered);
      set("framed", c.tolerances.framed);
      set("bopuc", c.tolerances.bopuc);
      set("lu", c.tolerances.lu);
      set("semiframed", c.tolerances.semiframed);
      set("z", c.tolerances.z);
      set("convergence", c.tolerances.convergence);
    }
    if (doc.contains("quadrature")) {
      const json& q = doc["quadrature"];
      reject_unknown(q, {"kernel_tol", "coeff_tol"}, "quadrature");
      if (q.contains("kernel_tol")) c.quadrature.kernel_tol = number<double>(q["kernel_tol"], "quadrature.kernel_tol");
      if (q.contains("coeff_tol")) c.quadrature.coeff_tol = number<double>(q["coeff_tol"], "quadrature.coeff_tol");
    }
    if (doc.contains("identities")) {
      const json& r = doc["identities"];
      reject_unknown(r,
                     {"dci_samples", "dci_min", "dci_max", "two_bordered_min", "two_bordered_max",
                      "framed_min", "framed_max", "bopuc_max", "lu_max", "semiframed_max",
                      "jump_max", "z_max", "z_points"},
                     "identities");
      auto set = [&](const char* key, int& field) {
        if (r.contains(key)) field = number<int>(r[key], std::string("identities.") + key);
      };
      IdentityRanges& g = c.identities;
      set("dci_samples", g.dci_samples);
      set("dci_min", g.dci_min);
      set("dci_max", g.dci_max);
      set("two_bordered_min", g.two_bordered_min);
      set("two_bordered_max", g.two_bordered_max);
      set("framed_min", g.framed_min);
      set("framed_max", g.framed_max);
      set("bopuc_max", g.bopuc_max);
      set("lu_max", g.lu_max);
      set("semiframed_max", g.semiframed_max);
      set("jump_max", g.jump_max);
      set("z_max", g.z_max);
      set("z_points", g.z_points);
    }
    if (doc.contains("bench_sizes")) {
      if (!doc["bench_sizes"].is_array()) throw ConfigError("bench_sizes: expected an array");
      c.bench_sizes.clear();
      for (const json& v : doc["bench_sizes"]) c.bench_sizes.push_back(number<int>(v, "bench_sizes"));
    }
    if (doc.contains("output")) c.output = text(doc["output"], "output");
    if (doc.contains("format")) c.format = report_format_from_string(text(doc["format"], "format"));
    if (doc.contains("seed")) c.seed = number<std::uint64_t>(doc["seed"], "seed");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

json to_json(const SweepConfig& c) {
  json rational{{"poly_min", c.symbol.params.rational.poly_min},
                {"poly", complex_list_to(c.symbol.params.rational.poly)},
                {"poles", poles_to(c.symbol.params.rational.poles)}};
  json borders = json::array();
  for (const auto& b : c.borders) borders.push_back(border_to(b));
  const Tolerances& t = c.tolerances;
  const IdentityRanges& r = c.identities;
  return {
      {"symbol",
       {{"family", c.symbol.family},
        {"value", c.symbol.params.value},
        {"log0", complex_to(c.symbol.params.log0)},
        {"plus", complex_list_to(c.symbol.params.plus)},
        {"minus", complex_list_to(c.symbol.params.minus)},
        {"rational", rational}}},
      {"borders", borders},
      {"psi_frame", frame_to(c.psi_frame)},
      {"eta_frame", frame_to(c.eta_frame)},
      {"corner", complex_to(c.corner)},
      {"variant", to_string(c.variant)},
      {"kind", to_string(c.kind)},
      {"n_grid", {{"start", c.n_grid.start}, {"stop", c.n_grid.stop}, {"step", c.n_grid.step}}},
      {"tolerances",
       {{"dci", t.dci},
        {"two_bordered", t.two_bordered},
        {"framed", t.framed},
        {"bopuc", t.bopuc},
        {"lu", t.lu},
        {"semiframed", t.semiframed},
        {"z", t.z},
        {"convergence", t.convergence}}},
      {"quadrature", {{"kernel_tol", c.quadrature.kernel_tol}, {"coeff_tol", c.quadrature.coeff_tol}}},
      {"identities",
       {{"dci_samples", r.dci_samples},
        {"dci_min", r.dci_min},
        {"dci_max", r.dci_max},
        {"two_bordered_min", r.two_bordered_min},
        {"two_bordered_max", r.two_bordered_max},
        {"framed_min", r.framed_min},
        {"framed_max", r.framed_max},
        {"bopuc_max", r.bopuc_max},
        {"lu_max", r.lu_max},
        {"semiframed_max", r.semiframed_max},
        {"jump_max", r.jump_max},
        {"z_max", r.z_max},
        {"z_points", r.z_points}}},
      {"bench_sizes", c.bench_sizes},
      {"output", c.output},
      {"format", to_string(c.format)},
      {"seed", c.seed},
  };
}

// ---- identity checks ---------------------------------------------------------

IdentityResult check_dci_fuzz(const SweepConfig& config) {
  const auto t0 = Clock::now();
  const IdentityRanges& r = config.identities;
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<int> size(r.dci_min, r.dci_max);
  std::normal_distribution<double> entry(0.0, 1.0);
  Tally tally;
  for (int s = 0; s < r.dci_samples; ++s) {
    const int n = size(rng);
    CMatrix m(n, n);
    for (int c = 0; c < n; ++c)
      for (int row = 0; row < n; ++row) m(row, c) = cplx(entry(rng), entry(rng));
    // uniform over ordered pairs j1 < j2 and k1 < k2
    std::uniform_int_distribution<int> pair(0, n * (n - 1) / 2 - 1);
    auto unrank = [n](int p) {
      int a = 0;
      while (p >= n - 1 - a) {
        p -= n - 1 - a;
        ++a;
      }
      return std::pair<int, int>{a, a + 1 + p};
    };
    const auto [j1, j2] = unrank(pair(rng));
    const auto [k1, k2] = unrank(pair(rng));
    tally.add(dodgson_residual(m, j1, j2, k1, k2).residual);
  }
  return finish("dci-fuzz", tally, config.tolerances.dci, t0,
                "seed " + std::to_string(config.seed));
}

IdentityResult check_two_bordered(const SweepConfig& config) {
  const auto t0 = Clock::now();
  const Symbol phi = config.symbol.build();
  const Symbol p1 = border_symbol(config, phi, 0), p2 = border_symbol(config, phi, 1);
  const auto res = parallel_map(
      inclusive(config.identities.two_bordered_min, config.identities.two_bordered_max),
      [&](int n) {
        const auto red = reduce_two_bordered(phi, p1, p2, n);
        return std::max(red.report.residual, red.minor_mismatch);
      });
  Tally tally;
  for (double x : res) tally.add(x);
  return finish("two-bordered-reduction", tally, config.tolerances.two_bordered, t0);
}

IdentityResult check_framed(const SweepConfig& config) {
  const auto t0 = Clock::now();
  const Symbol phi = config.symbol.build();
  const auto frame = frame_quad(config, phi, cplx(0.8, 0.1));
  const auto corners = corner_list(4);
  const auto res = parallel_map(
      inclusive(config.identities.framed_min, config.identities.framed_max), [&](int n) {
        double worst = 0.0;
        for (DetKind kind : {DetKind::FramedM, DetKind::FramedN}) {
          const auto red = reduce_framed(structured(kind, phi, frame, corners, n + 3));
          worst = std::max({worst, red.report.residual, red.minor_mismatch});
        }
        return worst;
      });
  Tally tally;
  for (double x : res) tally.add(x);
  return finish("framed-reduction", tally, config.tolerances.framed, t0);
}

IdentityResult check_two_framed(const SweepConfig& config) {
  const auto t0 = Clock::now();
  const Symbol phi = config.symbol.build();
  auto borders = frame_quad(config, phi, cplx(0.8, 0.1));
  const auto outer = frame_quad(config, phi, cplx(-0.5, 0.6));
  borders.insert(borders.end(), outer.begin(), outer.end());
  const auto corners = corner_list(8);
  const auto res = parallel_map(
      inclusive(config.identities.framed_min, config.identities.framed_max), [&](int n) {
        const auto red = reduce_two_framed(structured(DetKind::TwoFramedK, phi, borders, corners, n + 5));
        double worst = red.max_residual();
        for (double x : red.semi_framed_mismatch) worst = std::max(worst, x);
        return worst;
      });
  Tally tally;
  for (double x : res) tally.add(x);
  return finish("two-framed-chain", tally, config.tolerances.framed, t0);
}

IdentityResult check_biorthogonality(const SweepConfig& config) {
  const auto t0 = Clock::now();
  Tally tally;
  try {
    const BopucSystem s = compute_bopuc(config.symbol.build(), config.identities.bopuc_max);
    tally.add(biorthogonality_residual(s));
  } catch (const DegenerateMomentError& e) {
    return skipped("bopuc-biorthogonality", config.tolerances.bopuc, t0, e.what());
  }
  return finish("bopuc-biorthogonality", tally, config.tolerances.bopuc, t0);
}

IdentityResult check_recurrences(const SweepConfig& config) {
  const auto t0 = Clock::now();
  Tally tally;
  try {
    const BopucSystem s = compute_bopuc(config.symbol.build(), config.identities.bopuc_max);
    const auto points = sample_points(4, config.seed + 1);
    for (int n = 0; n < config.identities.bopuc_max; ++n) {
      for (cplx z : points)
        for (double x : recurrence_residuals(s, n, z)) tally.add(x);
      tally.add(recurrence_residuals(s, n, 0.0)[3]);
    }
  } catch (const DegenerateMomentError& e) {
    return skipped("bopuc-recurrences", config.tolerances.bopuc, t0, e.what());
  }
  return finish("bopuc-recurrences", tally, config.tolerances.bopuc, t0);
}

IdentityResult check_lu(const SweepConfig& config) {
  const auto t0 = Clock::now();
  const Symbol phi = config.symbol.build();
  Tally tally;
  try {
    for (int n = 1; n <= config.identities.lu_max; ++n) tally.add(lu_factorization_residual(phi, n));
  } catch (const DegenerateMomentError& e) {
    return skipped("bopuc-lu", config.tolerances.lu, t0, e.what());
  }
  return finish("bopuc-lu", tally, config.tolerances.lu, t0);
}

IdentityResult check_semiframed_routes(const SweepConfig& config, const Symbol& phi, int n_max,
                                       const std::string& name) {
  const auto t0 = Clock::now();
  const Symbol psi = config.psi_frame.symbol(phi), eta = config.eta_frame.symbol(phi);
  struct Point {
    double residual = 0.0;
    std::string failure;
  };
  const auto res = parallel_map(inclusive(0, n_max), [&](int n) {
    Point p;
    try {
      for (SemiVariant v : {SemiVariant::E, SemiVariant::G, SemiVariant::H, SemiVariant::L}) {
        const auto k = semiframed_via_kernel(phi, psi, eta, config.corner, n, v,
                                             config.quadrature.kernel_tol);
        const auto x = semiframed_via_x(phi, psi, eta, config.corner, n, v,
                                        config.quadrature.kernel_tol);
        p.residual = std::max({p.residual, rel_gap(k.kernel_ratio, k.direct_ratio),
                               rel_gap(k.pairing_ratio, k.direct_ratio),
                               rel_gap(x.ratio, k.direct_ratio)});
      }
    } catch (const DegenerateMomentError& e) {
      p.failure = e.what();
    }
    return p;
  });
  Tally tally;
  std::string why;
  for (const Point& p : res) {
    if (!p.failure.empty()) {
      if (why.empty()) why = p.failure;
      continue;
    }
    tally.add(p.residual);
  }
  if (tally.cases == 0) return skipped(name, config.tolerances.semiframed, t0, why);
  auto r = finish(name, tally, config.tolerances.semiframed, t0, why);
  // a route that could not be built at some n is not a pass
  if (!why.empty()) r.status = IdentityStatus::Fail;
  return r;
}

IdentityResult check_z_agreement(const SweepConfig& config, const Symbol& phi,
                                 const std::string& name) {
  const auto t0 = Clock::now();
  const auto points = sample_points(config.identities.z_points, config.seed + 2);
  struct Point {
    double residual = 0.0;
    std::string precondition;
  };
  const auto res = parallel_map(inclusive(2, config.identities.z_max), [&](int n) {
    Point p;
    try {
      // the X routes first: they carry the precondition D_n[z phi] != 0
      const XData xn = x_data(phi, n);
      const XData xm = x_data(phi, n - 1);
      std::vector<std::pair<Mat2, Mat2>> routes;
      for (cplx z : points) routes.emplace_back(z_from_x(xn, z), z_from_x_shift(xm, z));
      const XData direct = z_data_direct(phi, n);
      for (std::size_t i = 0; i < points.size(); ++i) {
        const Mat2 zd = direct.value(points[i]);
        const auto& [z1, z2] = routes[i];
        p.residual = std::max({p.residual, mat_gap(z1, zd), mat_gap(z2, zd), mat_gap(z1, z2)});
      }
    } catch (const PreconditionError& e) {
      p.precondition = e.what();
    } catch (const DegenerateMomentError& e) {
      p.precondition = e.what();
    }
    return p;
  });
  Tally tally;
  std::string why;
  for (const Point& p : res) {
    if (!p.precondition.empty()) {
      if (why.empty()) why = p.precondition;
      continue;
    }
    tally.add(p.residual);
  }
  if (tally.cases == 0) return skipped(name, config.tolerances.z, t0, why);
  return finish(name, tally, config.tolerances.z, t0, why);
}

bool IdentitySummary::all_passed() const {
  return std::none_of(results.begin(), results.end(),
                      [](const IdentityResult& r) { return r.status == IdentityStatus::Fail; });
}

int IdentitySummary::exit_code() const { return all_passed() ? 0 : 1; }

IdentitySummary run_identity_suite(const SweepConfig& config) {
  config.validate();
  const auto t0 = Clock::now();
  IdentitySummary s;
  s.seed = config.seed;
  const Symbol phi = config.symbol.build();
  s.results.push_back(check_dci_fuzz(config));
  s.results.push_back(check_two_bordered(config));
  s.results.push_back(check_framed(config));
  s.results.push_back(check_two_framed(config));
  s.results.push_back(check_biorthogonality(config));
  s.results.push_back(check_recurrences(config));
  s.results.push_back(check_lu(config));
  s.results.push_back(
      check_semiframed_routes(config, phi, config.identities.semiframed_max, "semiframed-routes"));
  s.results.push_back(check_semiframed_routes(config, jump_g(), config.identities.jump_max,
                                              "semiframed-routes-jump"));
  s.results.push_back(check_z_agreement(config, phi, "z-three-way"));
  s.results.push_back(check_z_agreement(config, constant_symbol(1.0), "z-three-way-constant"));
  s.seconds = seconds_since(t0);
  return s;
}

// Timings are left out so that reports are reproducible byte for byte.
json to_json(const IdentitySummary& s) {
  json rows = json::array();
  for (const auto& r : s.results) {
    json row{{"name", r.name},
             {"status", to_string(r.status)},
             {"tolerance", r.tolerance},
             {"cases", r.cases},
             {"detail", r.detail}};
    row["residual"] = std::isnan(r.residual) ? json(nullptr) : json(r.residual);
    rows.push_back(row);
  }
  return {{"seed", s.seed}, {"all_passed", s.all_passed()}, {"identities", rows}};
}

std::string to_csv(const IdentitySummary& s) {
  std::ostringstream out;
  out << "# seed " << s.seed << '\n';
  out << "identity,status,residual,tolerance,cases\n";
  for (const auto& r : s.results)
    out << r.name << ',' << to_string(r.status) << ',' << format_number(r.residual) << ','
        << format_number(r.tolerance) << ',' << r.cases << '\n';
  return out.str();
}

// ---- convergence -------------------------------------------------------------

ConvergenceReport run_convergence(const SweepConfig& config) {
  config.validate();
  ConvergenceReport rep;
  rep.kind = config.kind;
  rep.seed = config.seed;
  rep.tolerance = config.tolerances.convergence;
  const Symbol phi = config.symbol.build();
  const std::vector<int> ns = config.n_grid.values();

  std::function<ConvergenceRow(int)> point;
  switch (config.kind) {
    case SweepKind::Pure:
      point = [&](int n) {
        return ConvergenceRow{n, ratio(toeplitz_det(phi, n), predict_pure(phi, n)), 1.0, 0.0};
      };
      break;
    case SweepKind::Bordered: {
      const cplx f = constant_F(phi, config.borders[0]);
      const Symbol psi = border_symbol(config, phi, 0);
      point = [&, f, psi](int n) {
        return ConvergenceRow{n, ratio(bordered_det(phi, psi, n), predict_pure(phi, n)), f, 0.0};
      };
      break;
    }
    case SweepKind::TwoBordered: {
      const cplx j1 = constant_J1(phi, config.borders[0], config.borders[1]);
      const std::vector<Symbol> psis{border_symbol(config, phi, 0), border_symbol(config, phi, 1)};
      point = [&, j1, psis](int n) {
        return ConvergenceRow{n, ratio(bordered_det(phi, psis, n), predict_pure(phi, n)), j1, 0.0};
      };
      break;
    }
    case SweepKind::SemiFramed: {
      const cplx c = predict_semiframed(phi, config.psi_frame, config.eta_frame, config.corner,
                                        config.variant);
      const Symbol psi = config.psi_frame.symbol(phi), eta = config.eta_frame.symbol(phi);
      point = [&, c, psi, eta](int n) {
        const LogComplex d = semi_framed_det(config.variant, phi, psi, eta, config.corner, n + 1);
        return ConvergenceRow{n, ratio(d, predict_pure(phi, n)), c, 0.0};
      };
      break;
    }
    case SweepKind::ZPhiBordered: {
      const auto spec = config.symbol.exp_spec();
      if (!spec) throw ConfigError("zphi-bordered sweeps need an exp symbol family");
      point = [&, spec](int n) {
        const cplx pred = predict_zphi_bordered_ratio(phi, config.borders[0], n).value;
        return ConvergenceRow{n, extended_zphi_bordered_ratio(*spec, config.borders[0], n), pred, 0.0};
      };
      break;
    }
  }

  rep.rows = parallel_map(ns, point);
  std::vector<double> errs;
  for (auto& r : rep.rows) {
    const double scale = std::abs(r.predicted_constant);
    r.rel_err = std::abs(r.value - r.predicted_constant) / (scale > 0.0 ? scale : 1.0);
    errs.push_back(r.rel_err);
  }
  if (static_cast<int>(rep.rows.size()) >= kMinRowsForFit) {
    const double slope = fitted_decay(ns, errs, kDecayFloor);
    if (!std::isnan(slope)) rep.fitted_decay = slope;
  }
  rep.pass = !rep.rows.empty() && rep.rows.back().rel_err <= rep.tolerance;
  return rep;
}

json to_json(const ConvergenceReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"n", r.n},
                    {"value", complex_to(r.value)},
                    {"predicted_constant", complex_to(r.predicted_constant)},
                    {"rel_err", r.rel_err}});
  return {{"kind", to_string(rep.kind)},
          {"seed", rep.seed},
          {"rows", rows},
          {"fitted_decay", rep.fitted_decay ? json(*rep.fitted_decay) : json(nullptr)},
          {"tolerance", rep.tolerance},
          {"pass", rep.pass}};
}

std::string to_csv(const ConvergenceReport& rep) {
  std::ostringstream out;
  out << "n,value_re,value_im,pred_re,pred_im,rel_err\n";
  for (const auto& r : rep.rows) csv_row(out, r.n, r.value, r.predicted_constant, r.rel_err);
  return out.str();
}

// ---- benchmark ---------------------------------------------------------------

BenchReport run_bench(const SweepConfig& config) {
  config.validate();
  BenchReport rep;
  rep.seed = config.seed;
  const Symbol phi = config.symbol.build();
  const std::vector<Symbol> psis{border_symbol(config, phi, 0), border_symbol(config, phi, 1)};
  // Sequential on purpose: timings of concurrent runs would interfere.
  for (int n : config.bench_sizes) {
    BenchRow row;
    row.n = n;

    auto t0 = Clock::now();
    (void)toeplitz_det(phi, n);
    row.pure_seconds = seconds_since(t0);

    t0 = Clock::now();
    const LogComplex direct = bordered_det(phi, psis, n);
    row.direct_seconds = seconds_since(t0);

    t0 = Clock::now();
    const auto red = reduce_two_bordered(phi, psis[0], psis[1], n);
    const DciReport& r = red.report;
    const double shift = max_log_modulus(std::array<LogComplex, 2>{r.rhs[0] * r.rhs[1], r.rhs[2] * r.rhs[3]});
    const cplx combined = r.sign * ((r.rhs[0] * r.rhs[1]).scaled(shift) - (r.rhs[2] * r.rhs[3]).scaled(shift));
    row.reduction_seconds = seconds_since(t0);
    const cplx via_route = combined / r.lhs[1].scaled(shift - direct.log_modulus());
    row.route_gap = rel_gap(via_route, direct.scaled(direct.log_modulus()));

    t0 = Clock::now();
    const cplx j1 = constant_J1(phi, config.borders[0], config.borders[1]);
    const LogComplex lead = predict_pure(phi, n);
    row.asymptotic_seconds = seconds_since(t0);
    row.asymptotic_gap = rel_gap(ratio(direct, lead), j1);
    rep.rows.push_back(row);
  }
  return rep;
}

json to_json(const BenchReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"n", r.n},
                    {"pure_seconds", r.pure_seconds},
                    {"direct_seconds", r.direct_seconds},
                    {"reduction_seconds", r.reduction_seconds},
                    {"asymptotic_seconds", r.asymptotic_seconds},
                    {"route_gap", r.route_gap},
                    {"asymptotic_gap", r.asymptotic_gap}});
  return {{"seed", rep.seed}, {"rows", rows}};
}

std::string to_csv(const BenchReport& rep) {
  std::ostringstream out;
  out << "n,pure_seconds,direct_seconds,reduction_seconds,asymptotic_seconds,route_gap,"
         "asymptotic_gap\n";
  for (const auto& r : rep.rows)
    out << r.n << ',' << format_number(r.pure_seconds) << ',' << format_number(r.direct_seconds)
        << ',' << format_number(r.reduction_seconds) << ',' << format_number(r.asymptotic_seconds)
        << ',' << format_number(r.route_gap) << ',' << format_number(r.asymptotic_gap) << '\n';
  return out.str();
}

}  // namespace toeplitz
