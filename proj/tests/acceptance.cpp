// Acceptance harness: one verdict line per criterion, tolerances pinned below.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "catconv/config_io.hpp"
#include "catconv/coupler.hpp"
#include "catconv/fluid_march.hpp"
#include "catconv/kinetics.hpp"
#include "catconv/output.hpp"
#include "catconv/study.hpp"
#include "catconv/wall_evolve.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace catconv;

namespace {

struct Verdict {
  bool pass = false;
  std::string measured;
};

struct Context {
  std::string cli;
  std::string config;
  fs::path work;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ConfigDocument shipped(const Context& ctx) { return load_config(ctx.config); }

// 1. Zero kinetics, compatible constant data: every level equals the initial state.
Verdict constant_fixed_point(const Context&) {
  const double c = 0.37;
  const auto cfg = testing::constant_config(c, 32, 64, 0.01, 1.0);
  double dev = 0.0;
  RunOptions o;
  o.snapshot_every = 1;
  o.on_snapshot = [&](const Snapshot& s) {
    for (std::size_t i = 0; i < s.fluid.species_count(); ++i) {
      for (double v : s.fluid.species(i)) dev = std::max(dev, std::abs(v - c));
      for (double v : s.wall.values[i]) dev = std::max(dev, std::abs(v - c));
    }
  };
  const Stopwatch w;
  (void)run_simulation(cfg, {}, o);
  const double t = w.seconds();
  return {dev <= 1e-12 && t < 1.0, fmt::format("max deviation {:.3e} (tol 1e-12), runtime {:.3f} s (limit 1 s)", dev, t)};
}

// 2. Random bounded data, zero kinetics: coupled fluid fields stay within the data bounds.
Verdict maximum_principle(const Context&) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> nr_dist(8, 32), nz_dist(8, 64);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int failed = 0;
  const Stopwatch w;
  for (int trial = 0; trial < 100; ++trial) {
    const int nr = nr_dist(rng), nz = nz_dist(rng);
    const double lo = -5.0 + 10.0 * u(rng), hi = lo + 0.1 + 5.0 * u(rng);
    std::vector<testing::SpeciesSetup> sp{{{"a", 0.2 + 2.0 * u(rng), 0.2 + 2.0 * u(rng), 0.2 + 2.0 * u(rng), -1}},
                                          {{"b", 0.2 + 2.0 * u(rng), 0.2 + 2.0 * u(rng), 0.2 + 2.0 * u(rng), +1}}};
    auto cfg = testing::make_config(sp, nr, nz, 0.01, 0.05);
    double dlo = hi, dhi = lo;
    for (auto* profiles : {&cfg.initial.inlet, &cfg.initial.wall_init})
      for (auto& prof : *profiles)
        for (auto& v : prof) {
          v = lo + (hi - lo) * u(rng);
          dlo = std::min(dlo, v);
          dhi = std::max(dhi, v);
        }
    double excess = 0.0;
    RunOptions o;
    o.snapshot_every = 1;
    o.hypothesis_samples = 1000;
    o.on_snapshot = [&](const Snapshot& s) {
      for (std::size_t i = 0; i < s.fluid.species_count(); ++i)
        for (double v : s.fluid.species(i)) excess = std::max({excess, v - dhi, dlo - v});
    };
    (void)run_simulation(cfg, {}, o);
    worst = std::max(worst, excess);
    if (excess > 1e-10) ++failed;
  }
  const double t = w.seconds();
  return {failed == 0 && t < 30.0,
          fmt::format("{} of 100 datasets outside bounds, worst excess {:.3e} (tol 1e-10), runtime {:.2f} s (limit 30 s)",
                      failed, worst, t)};
}

// 3. Graetz oracle: coarse against fine centerline at z = 1, and the radial order.
Verdict graetz_oracle(const Context&) {
  const Stopwatch w;
  const double coarse = graetz_outlet_centerline(64, 128);
  const double fine = graetz_outlet_centerline(2048, 4096);
  const auto study = convergence_study(3, 16, 4096);
  const double order = study.radial_order.front();
  const double t = w.seconds();
  const double diff = std::abs(coarse - fine);
  return {diff <= 1e-3 && order >= 1.8 && t < 60.0,
          fmt::format("|coarse - fine| = {:.3e} (tol 1e-3; coarse {:.6e}, fine {:.6e}), radial order {:.4f} (>= 1.8), "
                      "runtime {:.2f} s (limit 60 s)",
                      diff, coarse, fine, order, t)};
}

// 4. Gradient and integral wall fluxes on the Graetz solution, three levels nr = 16, 32, 64 with nz = 2 nr.
Verdict flux_identity(const Context&) {
  const auto study = convergence_study(3, 16, 4096);
  double c = 0.0;
  std::string gaps;
  for (const auto& l : study.flux) {
    c = std::max(c, l.value / (1.0 / l.nr + 1.0 / l.nz));
    gaps += fmt::format("{}{:.4e}", gaps.empty() ? "" : ", ", l.value);
  }
  const double order = *std::min_element(study.flux_order.begin(), study.flux_order.end());
  return {order >= 1.0 && c <= 0.4,
          fmt::format("L2 gaps on z in [1/8, 1]: {}; min order {:.4f} (>= 1), C = {:.4f} (<= 0.4)", gaps, order, c)};
}

// 5. Wall heat eigenmode and mass conservation of the wall step.
Verdict wall_eigenmode(const Context&) {
  const int nz = 128;
  const double dt = 1e-4;
  const std::vector<SpeciesParams> p{{"w", 1, 1, 1, -1}};
  WallField wall;
  wall.values.assign(1, std::vector<double>(nz + 1));
  for (int k = 0; k <= nz; ++k) wall.values[0][k] = std::cos(std::numbers::pi * k / nz);
  const std::vector<std::vector<double>> zero(1, std::vector<double>(nz + 1, 0.0));
  const WallStepper stepper(p, nz, dt);
  for (int n = 0; n < 1000; ++n) wall = stepper.step(wall, zero, zero);
  // Amplitude by projection on cos(pi z): 2 int C cos(pi z) dz.
  std::vector<double> proj(nz + 1);
  for (int k = 0; k <= nz; ++k) proj[k] = 2.0 * wall.values[0][k] * std::cos(std::numbers::pi * k / nz);
  const double amp = wall_integral(proj);
  const double exact = std::exp(-std::numbers::pi * std::numbers::pi * 0.1);
  const double rel = std::abs(amp - exact) / exact;

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  WallField m;
  m.values.assign(1, std::vector<double>(nz + 1));
  for (auto& v : m.values[0]) v = u(rng);
  double drift = 0.0;
  const WallStepper coarse(p, nz, 1e-2);
  for (int n = 0; n < 200; ++n) {
    const double before = wall_integral(m.values[0]);
    m = coarse.step(m, zero, zero);
    drift = std::max(drift, std::abs(wall_integral(m.values[0]) - before));
  }
  return {rel <= 2e-2 && drift <= 1e-12,
          fmt::format("amplitude {:.6f} vs e^(-pi^2 0.1) = {:.6f}, relative error {:.3e} (tol 2e-2); "
                      "mass drift per step {:.3e} (tol 1e-12)",
                      amp, exact, rel, drift)};
}

// 6. Picard iterations on the shipped scenario.
Verdict contraction_behavior(const Context& ctx) {
  const auto doc = shipped(ctx);
  const auto r = run_simulation(doc.model, doc.coupler).report;
  const int most = *std::max_element(r.iterations.begin(), r.iterations.end());
  const double scaled = r.diagnostics.mu * std::sqrt(std::numbers::e) / 2.0;
  return {most < 50 && r.max_residual_ratio < 1.0 && r.max_final_residual < doc.coupler.tol,
          fmt::format("mu sqrt(e)/2 = {:.4f}; max iterations {} (< 50), max residual ratio {:.4f} (< 1), "
                      "max final residual {:.3e} (< {:g}) over {} steps",
                      scaled, most, r.max_residual_ratio, r.max_final_residual, doc.coupler.tol, r.iterations.size())};
}

// 7. A second start iterate per step converges to the same wall.
Verdict uniqueness_probe(const Context& ctx) {
  auto doc = shipped(ctx);
  doc.model.grid.t_end = 100 * doc.model.grid.dt;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  RunOptions o;
  o.alternative_iterate = [&](const CouplingState& s) {
    WallField w = s.wall;
    for (auto& row : w.values)
      for (auto& v : row) v *= u(rng);
    return w;
  };
  const auto r = run_simulation(doc.model, doc.coupler, o).report;
  return {r.iterations.size() == 100 && r.max_alternative_gap <= 1e-8,
          fmt::format("max wall gap {:.3e} over {} steps (tol 1e-8)", r.max_alternative_gap, r.iterations.size())};
}

// 8. Nonnegativity and envelopes on the shipped scenario.
Verdict property_suite(const Context& ctx) {
  const auto doc = shipped(ctx);
  const Stopwatch w;
  const auto r = run_simulation(doc.model, doc.coupler).report;
  const double t = w.seconds();
  std::string items = fmt::format("nonnegativity {} (most negative {:.3e})", r.checks.nonnegativity.pass ? "PASS" : "FAIL",
                                  r.checks.nonnegativity.most_negative);
  for (const auto& e : r.checks.envelopes)
    items += fmt::format("; {}_{} {} (excess {:.3e})", r.species[e.species], to_string(e.item), e.pass ? "PASS" : "FAIL",
                         e.worst_excess);
  return {r.all_checks_passed() && t < 120.0,
          fmt::format("{}; lambda {:.4g}; tol 1e-8; runtime {:.2f} s (limit 120 s)", items, r.lambda, t)};
}

// 9. Trends of the z = 1 wall series after a transient of the first tenth of the horizon.
Verdict qualitative_trends(const Context& ctx) {
  const auto doc = shipped(ctx);
  const auto r = run_simulation(doc.model, doc.coupler).report;
  const double transient = 0.1 * r.t_end;
  const double slack = 1e-12;
  std::string trends;
  bool ok = true;
  for (std::size_t i = 0; i < r.species.size(); ++i) {
    const int sign = doc.model.species[i].delta;  // consumed: non-increasing, produced: non-decreasing
    double worst = 0.0;
    for (std::size_t n = 1; n < r.probe.size(); ++n) {
      if (r.probe[n - 1].time < transient) continue;
      worst = std::max(worst, sign * (r.probe[n - 1].values[i] - r.probe[n].values[i]));
    }
    const bool pass = worst <= slack;
    ok = ok && pass;
    trends += fmt::format("{} {} {} (worst {:.3e}); ", r.species[i], sign < 0 ? "non-increasing" : "non-decreasing",
                          pass ? "PASS" : "FAIL", worst);
  }
  const double co = r.outlet_final.at(0);
  const bool co_ok = co > 0.0 && co < 0.02;
  const bool ended = r.reaction_ended.has_value();
  return {ok && co_ok && ended,
          fmt::format("{}t >= {:g}, slack {:g}; REACTION_ENDED {} (must be finite); terminal CO {:.6f} in (0, 0.02) {}",
                      trends, transient, slack, ended ? fmt::format("{:g}", *r.reaction_ended) : "never", co,
                      co_ok ? "PASS" : "FAIL")};
}

// 10. Hypothesis sampling on the shipped kinetics and on a model with a negative rate.
Verdict hypothesis_harness(const Context& ctx) {
  const auto doc = shipped(ctx);
  const auto k = make_kinetics(doc.model.kinetics, doc.model.species.size());
  const auto h = verify_hypotheses(k, doc.model.species, 1);

  const KineticsModel broken("broken", 3, [](std::span<const double> x, std::span<double> r) {
    r[0] = 0.0;
    r[1] = -x[0];
    r[2] = 0.0;
  }, std::vector<Interval>(3, {0.0, 1.0}));
  const std::vector<SpeciesParams> p{{"a", 1, 1, 1, -1}, {"b", 1, 1, 1, -1}, {"c", 1, 1, 1, -1}};
  const auto b = verify_hypotheses(broken, p, 1);
  // Worst violation of -x_0 sits at x_0 = 1: channel 1, x_0 near the upper face, magnitude reproduced.
  const bool located = !b.h1_pass && b.worst_h1.channel == 1 && b.worst_h1.x.size() == 3 && b.worst_h1.x[0] >= 0.99 &&
                       std::abs(-broken.eval(b.worst_h1.x)[1] - b.worst_h1.magnitude) <= 1e-15;
  return {h.all_pass() && located,
          fmt::format("co_oxidation H1 {} (worst {:.3e}), H2 {} (worst {:.3e}), H3 {} (worst {:.3e} on channel {}) "
                      "over {} samples at slack 1e-12; broken model flagged on channel {} at x0 = {:.4f} {}",
                      h.h1_pass ? "PASS" : "FAIL", h.worst_h1.magnitude, h.h2_pass ? "PASS" : "FAIL",
                      h.worst_h2.magnitude, h.h3_pass ? "PASS" : "FAIL", h.worst_h3.magnitude, h.worst_h3.channel,
                      h.samples_used, b.worst_h1.channel, b.worst_h1.x.empty() ? -1.0 : b.worst_h1.x[0],
                      located ? "PASS" : "FAIL")};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const Context& ctx, const std::string& args, const fs::path& log) {
  const std::string cmd = fmt::format("'{}' {} > '{}' 2>&1", ctx.cli, args, log.string());
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string replace_line(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  if (pos == std::string::npos) throw std::runtime_error("config line not found: " + from);
  return text.replace(pos, from.size(), to);
}

// 11. Byte-identical repeated runs and the exit-code contract of the CLI.
Verdict determinism(const Context& ctx) {
  if (ctx.cli.empty()) return {false, "no --cli given"};
  const fs::path dir = ctx.work / "determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // Both runs write to the same directory so the printed paths match; the first result is moved aside.
  const std::string args =
      fmt::format("simulate --config '{}' --snapshot-every 20 --out '{}'", ctx.config, (dir / "run").string());
  const int ea = run_cli(ctx, args, dir / "a.log");
  fs::rename(dir / "run", dir / "a");
  const int eb = run_cli(ctx, args, dir / "b.log");
  fs::rename(dir / "run", dir / "b");
  std::size_t files = 0, differing = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir / "a")) {
    if (!e.is_regular_file()) continue;
    ++files;
    const auto other = dir / "b" / fs::relative(e.path(), dir / "a");
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) ++differing;
  }
  const bool same_stdout = slurp(dir / "a.log") == slurp(dir / "b.log");

  const std::string shipped_text = slurp(ctx.config);
  const std::string zero_text =
      "[grid]\nnr = 8\nnz = 8\ndt = 0.1\nt_end = 0.5\n[kinetics]\nmodel = zero\n"
      "[species.A]\nbeta_f = 1\ngamma_s = 1\ntheta_s = 1\ndelta = -1\ninlet = const:0.5\nwall_init = const:0.5\n";
  struct Case {
    std::string name;
    std::string text;
    int expected;
  };
  const std::vector<Case> cases{
      {"zero_kinetics", zero_text, 0},
      {"bad_config", replace_line(shipped_text, "dt = ", "dx = "), 2},
      {"non_converged", replace_line(shipped_text, "max_iter = 50", "max_iter = 1"), 3},
      {"shipped", shipped_text, 4},
  };
  bool codes_ok = true;
  std::string codes;
  for (const auto& c : cases) {
    const auto cfg = dir / (c.name + ".cfg");
    std::ofstream(cfg) << c.text;
    const int code = run_cli(ctx, fmt::format("simulate --config '{}' --out '{}'", cfg.string(), (dir / c.name).string()),
                             dir / (c.name + ".log"));
    codes_ok = codes_ok && code == c.expected;
    codes += fmt::format("; {} exit {} (want {})", c.name, code, c.expected);
  }
  return {ea == eb && files > 0 && differing == 0 && same_stdout && codes_ok,
          fmt::format("{} files compared, {} differ, stdout {}{}", files, differing, same_stdout ? "identical" : "differs",
                      codes)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict(const Context&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  Context ctx;
  ctx.config = catconv::testing::shipped_config_path();
  std::string work = (fs::temp_directory_path() / "catconv_acceptance").string();
  app.add_option("--criterion", only, "run one criterion (1-11); all when omitted")->check(CLI::Range(1, 11));
  app.add_option("--cli", ctx.cli, "path of the catconv executable (criterion 11)");
  app.add_option("--config", ctx.config, "shipped scenario config");
  app.add_option("--work", work, "scratch directory");
  CLI11_PARSE(app, argc, argv);
  ctx.work = work;
  fs::create_directories(ctx.work);

  const std::vector<Criterion> all{
      {1, "constant_fixed_point", constant_fixed_point},
      {2, "discrete_maximum_principle", maximum_principle},
      {3, "graetz_oracle", graetz_oracle},
      {4, "flux_identity", flux_identity},
      {5, "wall_eigenmode", wall_eigenmode},
      {6, "contraction_behavior", contraction_behavior},
      {7, "uniqueness_probe", uniqueness_probe},
      {8, "property_suite", property_suite},
      {9, "qualitative_trends", qualitative_trends},
      {10, "hypothesis_harness", hypothesis_harness},
      {11, "determinism", determinism},
  };
  bool ok = true;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    Verdict v;
    try {
      v = c.run(ctx);
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    ok = ok && v.pass;
    fmt::print("[{}] {} {}: {}\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.measured);
  }
  return ok ? 0 : 1;
}
