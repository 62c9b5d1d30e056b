#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "molent/config.hpp"
#include "molent/errors.hpp"
#include "molent/number_format.hpp"
#include "molent/runners.hpp"
#include "molent/units.hpp"
#include "molent/validation.hpp"

namespace fs = std::filesystem;
using namespace molent;

namespace {

RunConfig load(const std::string& path) { return path.empty() ? RunConfig{} : load_config(path); }

fs::path output_dir(const RunConfig& cfg, const std::string& flag) { return flag.empty() ? fs::path(cfg.output_dir) : fs::path(flag); }

int simulate(const std::string& config, const std::string& out) {
  const RunConfig cfg = load(config);
  const fs::path dir = output_dir(cfg, out);
  const Propagation run = run_dissociation(cfg, dir);
  const double a1d = cfg.initial_a1d();
  std::cout << "steps " << run.record.steps << ", dt " << format_double(run.record.step / units::microsecond)
            << " us\n";
  std::cout << "norm " << format_double(norm(run.state)) << ", P(|x| > 2 a_1D(0)) "
            << format_double(density_outside(run.state, 2.0 * a1d)) << '\n';
  std::cout << "wrote " << run.record.snapshots.size() << " snapshot pairs to " << (dir / "snapshots").string()
            << '\n';
  return 0;
}

int fidelity_surface(const std::string& config, const std::string& out, std::size_t workers) {
  const RunConfig cfg = load(config);
  const fs::path dir = output_dir(cfg, out);
  const FidelitySurface surface = run_fidelity_surface(cfg, dir, workers);

  std::map<double, std::pair<double, double>> best;  // b_dot -> (F, R)
  std::size_t failed = 0;
  for (const auto& row : surface.rows) {
    if (!row.error.empty()) {
      ++failed;
      continue;
    }
    auto& b = best[row.b_dot];
    if (row.fidelity > b.first) b = {row.fidelity, row.r_ratio};
  }
  std::cout << surface.rows.size() << " cells from " << surface.propagation_count << " propagations\n";
  for (const auto& [b_dot, fr] : best)
    std::cout << "  B' = " << format_double(b_dot * units::millisecond) << " G/ms: max F "
              << format_double(fr.first) << " at R = " << format_double(fr.second) << '\n';
  if (failed > 0) std::cout << failed << " cells failed; see the error column\n";
  std::cout << "wrote " << (dir / "fidelity_surface.csv").string() << '\n';
  return failed > 0 ? 1 : 0;
}

int fringe_scan(const std::string& config, const std::string& out, std::size_t phi_count) {
  const fs::path dir = output_dir(load(config), out);
  const FringeScan scan = run_fringe_scan(phi_count, dir);
  std::cout << "visibility: entangled " << format_double(scan.entangled.front().visibility) << ", dephased "
            << format_double(scan.dephased.front().visibility) << '\n';
  std::cout << "wrote " << (dir / "fringes.csv").string() << " and " << (dir / "fringes_dephased.csv").string()
            << '\n';
  return 0;
}

int validate(const std::string& config, const std::string& out) {
  const RunConfig cfg = load(config);
  const fs::path dir = output_dir(cfg, out);
  const std::vector<CheckResult> checks = run_validation(cfg);

  std::ostringstream report;
  write_validation_report(report, checks);
  std::cout << report.str();

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create directory " + dir.string() + ": " + ec.message());
  std::ofstream file(dir / "validation_report.txt");
  if (!(file << report.str())) throw Error(ErrorCode::io, "failed writing " + (dir / "validation_report.txt").string());

  const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; });
  std::cout << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size() << " checks passed\n";
  return failed > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Molecule dissociation and two-atom path entanglement in a quasi-1D guide"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::size_t workers = 1;
  std::size_t phi_count = 64;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (default: output_dir from the config)");
    sub->add_option("--workers", workers, "worker threads (fidelity-surface)")->check(CLI::PositiveNumber);
  };

  auto* sim = app.add_subcommand("simulate", "single dissociation run with position/momentum snapshots");
  common(sim);
  auto* surf = app.add_subcommand("fidelity-surface", "fidelity over sweep rates and CM widths");
  common(surf);
  auto* fringe = app.add_subcommand("fringe-scan", "two-atom coincidence fringes, entangled and dephased");
  common(fringe);
  fringe->add_option("--phi-count", phi_count, "number of equally spaced phases")->check(CLI::Range(2, 1 << 20));
  auto* val = app.add_subcommand("validate", "run every analytic check and write validation_report.txt");
  common(val);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return simulate(config, out);
    if (surf->parsed()) return fidelity_surface(config, out, workers);
    if (fringe->parsed()) return fringe_scan(config, out, phi_count);
    if (val->parsed()) return validate(config, out);
  } catch (const Error& e) {
    std::cerr << "molent: " << e.what() << '\n';
    return e.code() == ErrorCode::config ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "molent: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
