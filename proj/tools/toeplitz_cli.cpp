// Command-line front end: det, identities, converge, bench.
// Exit codes: 0 all pass, 1 tolerance failure, 2 configuration or validation error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "toeplitz/errors.hpp"
#include "toeplitz/harness.hpp"

namespace {

using toeplitz::ReportFormat;
using toeplitz::SweepConfig;

struct CommonOptions {
  std::string config_path;
  std::string out;
  std::string format;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_tol) {
  cmd->add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "output path (default: stdout)");
  cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  if (with_tol) cmd->add_option("--tol", o.tol, "tolerance override")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "random seed");
}

SweepConfig resolve(const CommonOptions& o) {
  SweepConfig c = o.config_path.empty() ? toeplitz::default_config()
                                        : toeplitz::load_config(o.config_path);
  if (!o.out.empty()) c.output = o.out;
  if (!o.format.empty()) c.format = toeplitz::report_format_from_string(o.format);
  if (o.seed) c.seed = *o.seed;
  c.validate();
  return c;
}

void emit(const SweepConfig& c, const std::string& csv, const nlohmann::json& doc) {
  const std::string body = c.format == ReportFormat::Csv ? csv : doc.dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw toeplitz::ConfigError("cannot write '" + c.output + "'");
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured Toeplitz determinants: identities, convergence sweeps, benchmarks"};
  app.require_subcommand(1);

  CommonOptions det_opts, id_opts, conv_opts, bench_opts;
  std::optional<int> det_n;

  auto* det = app.add_subcommand("det", "evaluate one structured determinant against its prediction");
  add_common(det, det_opts, true);
  det->add_option("--n", det_n, "size parameter (default: the end of the n-grid)")
      ->check(CLI::PositiveNumber);
  auto* ids = app.add_subcommand("identities", "run the exact-identity suite");
  add_common(ids, id_opts, true);
  auto* conv = app.add_subcommand("converge", "convergence sweep over the n-grid");
  add_common(conv, conv_opts, true);
  auto* bench = app.add_subcommand("bench", "timing table for the determinant routes");
  add_common(bench, bench_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*det) {
      SweepConfig c = resolve(det_opts);
      if (det_opts.tol) c.tolerances.convergence = *det_opts.tol;
      const int n = det_n.value_or(c.n_grid.stop);
      c.n_grid = {n, n, 1};
      c.validate();
      const auto rep = toeplitz::run_convergence(c);
      emit(c, toeplitz::to_csv(rep), toeplitz::to_json(rep));
      return rep.pass ? 0 : 1;
    }
    if (*ids) {
      SweepConfig c = resolve(id_opts);
      if (id_opts.tol) c.tolerances.set_identity(*id_opts.tol);
      const auto summary = toeplitz::run_identity_suite(c);
      emit(c, toeplitz::to_csv(summary), toeplitz::to_json(summary));
      return summary.exit_code();
    }
    if (*conv) {
      SweepConfig c = resolve(conv_opts);
      if (conv_opts.tol) c.tolerances.convergence = *conv_opts.tol;
      const auto rep = toeplitz::run_convergence(c);
      emit(c, toeplitz::to_csv(rep), toeplitz::to_json(rep));
      return rep.pass ? 0 : 1;
    }
    if (*bench) {
      const SweepConfig c = resolve(bench_opts);
      const auto rep = toeplitz::run_bench(c);
      emit(c, toeplitz::to_csv(rep), toeplitz::to_json(rep));
      return 0;
    }
  } catch (const toeplitz::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
