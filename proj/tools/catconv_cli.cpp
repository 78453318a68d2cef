// Command-line driver. Talks to the solver only through the C interface.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "catconv/catconv.h"

namespace {

struct Text {
  catconv_text* p = nullptr;
  ~Text() { catconv_text_free(p); }
  const char* str() const { return catconv_text_data(p); }
};

struct Config {
  catconv_config* p = nullptr;
  ~Config() { catconv_config_free(p); }
};

struct Run {
  catconv_run* p = nullptr;
  ~Run() { catconv_run_free(p); }
};

int report_error(catconv_status st) {
  std::fprintf(stderr, "error: %s\n", catconv_last_error());
  return static_cast<int>(st);
}

void print_contraction(const catconv_contraction& c) {
  std::printf("MU=%.9f\nTHRESHOLD=%.9f\nMARGIN=%.9f\nALPHA_OPT=%.9f\nSATISFIED=%s\n", c.mu, c.threshold, c.margin,
              c.alpha_opt, c.satisfied ? "true" : "false");
}

int cmd_simulate(const std::string& path, const std::string& out, std::size_t probe_every, std::size_t snapshot_every,
                 std::uint64_t seed) {
  Config cfg;
  if (auto st = catconv_config_load(path.c_str(), &cfg.p); st != CATCONV_OK) return report_error(st);
  catconv_sim_options opts;
  catconv_sim_options_init(&opts);
  opts.seed = seed;
  opts.probe_every = probe_every;
  opts.snapshot_every = snapshot_every;
  Run run;
  if (auto st = catconv_simulate(cfg.p, &opts, out.c_str(), &run.p); st != CATCONV_OK) return report_error(st);

  Text report;
  if (auto st = catconv_run_report_text(run.p, &report.p); st != CATCONV_OK) return report_error(st);
  std::fputs(report.str(), stdout);
  if (!catconv_run_all_checks_passed(run.p)) {
    std::fprintf(stderr, "property checks failed; see %s/report.txt\n", out.c_str());
    return CATCONV_ERR_QUALCHECK;
  }
  return CATCONV_OK;
}

int cmd_check(const std::string& path, std::uint64_t seed, std::size_t samples) {
  Config cfg;
  if (auto st = catconv_config_load(path.c_str(), &cfg.p); st != CATCONV_OK) return report_error(st);

  Text issues;
  std::size_t errors = 0;
  if (auto st = catconv_config_validate(cfg.p, &issues.p, &errors); st != CATCONV_OK) return report_error(st);
  std::fputs(issues.str(), stdout);
  if (errors > 0) {
    std::fprintf(stderr, "error: %zu configuration error(s)\n", errors);
    return CATCONV_ERR_CONFIG;
  }

  catconv_contraction c;
  if (auto st = catconv_config_contraction(cfg.p, &c); st != CATCONV_OK) return report_error(st);
  print_contraction(c);

  catconv_hypotheses h;
  Text summary;
  if (auto st = catconv_check_hypotheses(cfg.p, seed, samples, &h, &summary.p); st != CATCONV_OK)
    return report_error(st);
  std::fputs(summary.str(), stdout);
  return h.h1_pass && h.h2_pass && h.h3_pass ? CATCONV_OK : CATCONV_ERR_QUALCHECK;
}

int cmd_convergence(int levels) {
  Text table;
  if (auto st = catconv_convergence_study(levels, &table.p); st != CATCONV_OK) return report_error(st);
  std::fputs(table.str(), stdout);
  return CATCONV_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Catalytic converter solver: fluid march coupled to wall kinetics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", catconv_version());

  std::string config, out = "out";
  std::size_t probe_every = 1, snapshot_every = 0, samples = 4096;
  std::uint64_t seed = 1;
  int levels = 4;

  auto* sim = app.add_subcommand("simulate", "run the model and write probe, snapshots and report");
  sim->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out, "output directory")->capture_default_str();
  sim->add_option("--probe-every", probe_every, "probe row every n steps")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--snapshot-every", snapshot_every, "snapshot every n steps (0: first and last)")->capture_default_str();
  sim->add_option("--seed", seed, "seed for hypothesis and Lipschitz sampling")->capture_default_str();

  auto* check = app.add_subcommand("check", "validate a config and sample the kinetics hypotheses");
  check->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  check->add_option("--seed", seed, "sampling seed")->capture_default_str();
  check->add_option("--samples", samples, "hypothesis samples")->capture_default_str();

  auto* conv = app.add_subcommand("convergence", "grid refinement study on the Graetz problem");
  conv->add_option("--levels", levels, "refinement levels (>= 3)")->capture_default_str()->check(CLI::Range(3, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // Usage errors count as configuration errors.
    return code == 0 ? 0 : CATCONV_ERR_CONFIG;
  }

  if (*sim) return cmd_simulate(config, out, probe_every, snapshot_every, seed);
  if (*check) return cmd_check(config, seed, samples);
  return cmd_convergence(levels);
}
