// varbesov: run norm-comparison and lemma experiments, export kernels, list the corpus.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "varbesov/calderon.hpp"
#include "varbesov/corpus.hpp"
#include "varbesov/error.hpp"
#include "varbesov/harness.hpp"

namespace {

using namespace varbesov;

struct Overrides {
  std::string config;
  std::vector<double> grid;    // N, L
  std::vector<int> scales;     // K, J
  long seed = -1;
  int threads = 0;
  int dim = 0;
};

HarnessConfig resolve(const Overrides& o) {
  HarnessConfig cfg = o.config.empty() ? HarnessConfig() : HarnessConfig::load(o.config);
  if (!o.grid.empty()) {
    if (o.grid.size() != 2) throw ConfigError("--grid expects N,L");
    cfg.set("grid.points", std::to_string(static_cast<long>(o.grid[0])));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", o.grid[1]);
    cfg.set("grid.half_period", buf);
  }
  if (!o.scales.empty()) {
    if (o.scales.size() != 2) throw ConfigError("--scales expects K,J");
    cfg.set("scales.per_octave", std::to_string(o.scales[0]));
    cfg.set("scales.octaves", std::to_string(o.scales[1]));
  }
  if (o.seed >= 0) cfg.set("run.seed", std::to_string(o.seed));
  if (o.threads > 0) cfg.set("run.threads", std::to_string(o.threads));
  if (o.dim > 0) cfg.set("grid.dim", std::to_string(o.dim));
  return cfg;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config, "INI config file")->check(CLI::ExistingFile);
  cmd->add_option("--grid", o.grid, "grid points and half period, N,L")->delimiter(',')->expected(2);
  cmd->add_option("--scales", o.scales, "scales per octave and octaves, K,J")->delimiter(',')->expected(2);
  cmd->add_option("--seed", o.seed, "corpus seed");
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--dim", o.dim, "spatial dimension (1 or 2)");
}

int run(const std::string& experiment, const Overrides& o, const std::string& out, bool plots) {
  const HarnessConfig cfg = resolve(o);
  const RatioReport report = run_experiment(experiment, cfg);
  emit_report(report, out, plots);
  for (const auto& g : report.summaries())
    std::printf("%-24s n=%-3zu min=%.4g max=%.4g spread=%.4g\n", g.group.c_str(), g.count, g.min_ratio,
                g.max_ratio, g.spread);
  for (const auto& l : report.lemmas)
    std::printf("%-40s c=%.6g refined=%.6g %s\n", l.id.c_str(), l.constant, l.refined,
                l.passed ? "ok" : "FAIL");
  for (const auto& [name, ok] : report.checks) std::printf("check %-30s %s\n", name.c_str(), ok ? "ok" : "FAIL");
  std::printf("%s: %s (threshold %.4g), report in %s\n", experiment.c_str(), report.passed() ? "PASS" : "FAIL",
              report.threshold, out.c_str());
  return exit_code(report);
}

void export_kernels(const Overrides& o, const std::string& out) {
  const HarnessConfig cfg = resolve(o);
  const GridSpec spec = cfg.grid();
  const ScaleGrid s = cfg.scales();
  const KernelPair a = build_continuous_pair(spec, s, PairProfile::exp_inverse);
  const KernelPair b = build_continuous_pair(spec, s, PairProfile::exp_inverse_square);
  const DyadicFamily fam = build_dyadic(spec, max_dyadic_level(spec));
  const LocalMeansKernels lm = build_local_means(static_cast<int>(cfg.integer("local-means-vs-discrete.S")),
                                                 cfg.number("local-means-vs-discrete.epsilon"), spec);
  std::filesystem::create_directories(out);
  const std::string path = (std::filesystem::path(out) / "kernels.csv").string();
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  const double rmax = 4.0;
  const std::size_t points = 1025;
  f << "r,Phi_hat_a,phi_hat_a,Phi_hat_b,phi_hat_b,psi_hat_0,psi_hat_1,psi_hat_2,k0_hat,k_hat\n";
  char buf[512];
  for (std::size_t i = 0; i < points; ++i) {
    const double r = rmax * static_cast<double>(i) / (points - 1);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r,
                  a.phi0_hat(r), a.phi_hat(r), b.phi0_hat(r), b.phi_hat(r), fam.psi_hat(0, r), fam.psi_hat(1, r),
                  fam.psi_hat(2, r), lm.k0_hat(r), lm.k_hat(r));
    f << buf;
  }
  std::printf("wrote %s (residuals %.3g, %.3g, dyadic %.3g)\n", path.c_str(), a.residual, b.residual,
              fam.residual);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"varbesov: variable-exponent Besov quasi-norms on the torus"};
  app.require_subcommand(1);
  Overrides o;
  std::string experiment, out = "out";
  bool plots = false;

  auto* run_cmd = app.add_subcommand("run", "run an experiment and write report.json / report.csv");
  run_cmd->add_option("experiment", experiment, "experiment name (see `varbesov run --list`)")->required();
  run_cmd->add_option("-o,--out", out, "output directory");
  run_cmd->add_flag("--plots", plots, "also write plots/ data and a plotting script");
  add_common(run_cmd, o);

  auto* list_cmd = app.add_subcommand("experiments", "list experiment names");

  auto* kernels = app.add_subcommand("kernels", "kernel utilities");
  kernels->require_subcommand(1);
  auto* export_cmd = kernels->add_subcommand("export", "write radial kernel tables to kernels.csv");
  export_cmd->add_option("-o,--out", out, "output directory");
  add_common(export_cmd, o);

  auto* corpus = app.add_subcommand("corpus", "corpus utilities");
  corpus->require_subcommand(1);
  auto* corpus_list = corpus->add_subcommand("list", "list corpus entries");
  add_common(corpus_list, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(experiment, o, out, plots);
    if (*list_cmd) {
      for (const auto& e : experiment_names()) std::puts(e.c_str());
      return 0;
    }
    if (*export_cmd) {
      export_kernels(o, out);
      return 0;
    }
    if (*corpus_list) {
      const HarnessConfig cfg = resolve(o);
      for (const auto& e : build_corpus(cfg.grid(), cfg.seed(), cfg.number("run.amplitude")))
        std::printf("%-20s max|f|=%.6g boundary=%.3g\n", e.name.c_str(), e.f.max_abs(), boundary_mass(e.f));
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const HypothesisError& e) {
    std::fprintf(stderr, "hypothesis violated: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
