#include "catconv/coupler.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "catconv/error.hpp"
#include "log.hpp"

namespace catconv {

const char* to_string(FluxForm form) noexcept { return form == FluxForm::gradient ? "gradient" : "integral"; }

void CouplerSettings::check() const {
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, fmt::format("coupler tol = {} must be > 0", tol));
  if (max_iter < 1) throw Error(ErrorCode::invalid_argument, fmt::format("coupler max_iter = {} must be >= 1", max_iter));
  if (!(relaxation > 0.0 && relaxation <= 1.0))
    throw Error(ErrorCode::invalid_argument, fmt::format("coupler relaxation = {} must lie in (0, 1]", relaxation));
}

Coupler::Coupler(const ModelConfig& cfg, KineticsModel kinetics, CouplerSettings settings)
    : cfg_(cfg),
      kinetics_(std::move(kinetics)),
      settings_(settings),
      marcher_(cfg.species, cfg.grid),
      stepper_(cfg.species, cfg.grid.nz, cfg.grid.dt) {
  settings_.check();
  if (kinetics_.arity() != cfg_.species.size())
    throw Error(ErrorCode::invalid_argument, fmt::format("kinetics '{}' has {} channels for {} species",
                                                         kinetics_.name(), kinetics_.arity(), cfg_.species.size()));
}

CouplingState Coupler::initial_state() const {
  CouplingState s;
  s.wall = initial_wall(cfg_);
  s.fluid = marcher_.march(s.wall, cfg_.initial);
  return s;
}

std::vector<std::vector<double>> Coupler::wall_rates(const WallField& wall) const {
  const auto ns = wall.values.size();
  const auto nz1 = ns ? wall.values.front().size() : 0;
  std::vector<std::vector<double>> rates(ns, std::vector<double>(nz1));
  std::vector<double> state(ns), r(ns), scratch(ns);
  for (std::size_t k = 0; k < nz1; ++k) {
    for (std::size_t i = 0; i < ns; ++i) state[i] = wall.values[i][k];
    kinetics_.eval(state, r, scratch);
    for (std::size_t i = 0; i < ns; ++i) rates[i][k] = r[i];
  }
  return rates;
}

namespace {

double sup_distance(const WallField& a, const WallField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    for (std::size_t k = 0; k < a.values[i].size(); ++k) d = std::max(d, std::abs(a.values[i][k] - b.values[i][k]));
  return d;
}

}  // namespace

CouplingState Coupler::advance(const CouplingState& state, const WallField* initial_iterate) const {
  const double next_time = static_cast<double>(state.step + 1) * cfg_.grid.dt;
  const auto rates = wall_rates(state.wall);

  WallField iterate = initial_iterate ? *initial_iterate : state.wall;
  iterate.time = next_time;

  CouplingState next;
  next.step = state.step + 1;
  next.time = next_time;

  bool converged = false;
  for (int m = 0; m < settings_.max_iter; ++m) {
    const auto fluid = marcher_.march(iterate, cfg_.initial);
    const auto flux = settings_.flux_form == FluxForm::gradient ? wall_flux_gradient(fluid, cfg_.grid)
                                                                 : wall_flux_integral(fluid, cfg_.grid, cfg_.species);
    WallField proposal = stepper_.step(state.wall, flux, rates);
    proposal.time = next_time;
    if (settings_.relaxation != 1.0) {
      for (std::size_t i = 0; i < proposal.values.size(); ++i)
        for (std::size_t k = 0; k < proposal.values[i].size(); ++k)
          proposal.values[i][k] =
              iterate.values[i][k] + settings_.relaxation * (proposal.values[i][k] - iterate.values[i][k]);
    }
    const double residual = sup_distance(proposal, iterate);
    next.residual_history.push_back(residual);
    iterate = std::move(proposal);
    if (residual < settings_.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NonConvergedError(next.step, next.residual_history);

  next.iterations_last_step = static_cast<int>(next.residual_history.size());
  next.fluid = marcher_.march(iterate, cfg_.initial);
  next.wall = std::move(iterate);
  return next;
}

CouplingState advance_step(const CouplingState& state, const CouplerSettings& settings, const ModelConfig& cfg,
                           const KineticsModel& kinetics) {
  return Coupler(cfg, kinetics, settings).advance(state);
}

namespace {

std::string validation_text(const ValidationReport& report) {
  std::string text = "config validation failed";
  for (const auto& issue : report.issues)
    if (issue.severity == Severity::error)
      text += fmt::format("\n  {} {}{}{}: {}", issue.code, issue.species, issue.species.empty() ? "" : ".", issue.field,
                          issue.message);
  return text;
}

double sup_abs(const std::vector<std::vector<double>>& v) {
  double m = 0.0;
  for (const auto& row : v)
    for (double x : row) m = std::max(m, std::abs(x));
  return m;
}

ProbeSample outlet(const WallField& wall) {
  ProbeSample p;
  p.time = wall.time;
  for (const auto& profile : wall.values) p.values.push_back(profile.back());
  return p;
}

}  // namespace

SimulationResult run_simulation(const ModelConfig& cfg, const CouplerSettings& settings, const RunOptions& options) {
  RunReport report;
  report.validation = validate_config(cfg);
  if (report.validation.has_errors()) throw Error(ErrorCode::config, validation_text(report.validation));
  settings.check();
  for (const auto& issue : report.validation.issues)
    detail::log().warn("{} {}{}{}: {}", issue.code, issue.species, issue.species.empty() ? "" : ".", issue.field, issue.message);

  const auto n = cfg.species.size();
  KineticsModel kinetics = [&] {
    try {
      return make_kinetics(cfg.kinetics, n);
    } catch (const Error& e) {
      throw Error(ErrorCode::config, e.what());
    }
  }();

  for (const auto& p : cfg.species) report.species.push_back(p.name);
  report.diagnostics = contraction_margin(cfg.species);
  report.hypotheses = verify_hypotheses(kinetics, cfg.species, options.seed, options.hypothesis_samples);
  if (!report.hypotheses.all_pass())
    detail::log().warn("kinetics '{}' violates H1/H2/H3 on samples (H1 {}, H2 {}, H3 {})", kinetics.name(),
                 report.hypotheses.h1_pass, report.hypotheses.h2_pass, report.hypotheses.h3_pass);

  if (const auto& hint = kinetics.lipschitz_hint()) {
    report.lipschitz_k = *hint;
    report.lipschitz_from_hint = true;
  } else if (kinetics.bounded()) {
    report.lipschitz_k = estimate_lipschitz(kinetics, options.seed, options.lipschitz_pairs).k;
  } else {
    const KineticsModel boxed(
        kinetics.name(), n,
        [&kinetics](std::span<const double> x, std::span<double> r) {
          std::vector<double> scratch(x.size());
          kinetics.eval(x, r, scratch);
        },
        sampling_box(kinetics));
    report.lipschitz_k = estimate_lipschitz(boxed, options.seed, options.lipschitz_pairs).k;
    report.warnings.push_back("kinetics box is unbounded; lambda estimated on the sampling box");
  }
  report.lambda = report.lipschitz_k.empty() ? 0.0 : *std::max_element(report.lipschitz_k.begin(), report.lipschitz_k.end());

  const auto& grid = cfg.grid;
  if (report.lambda > 0.0 && grid.dt > 0.5 / report.lambda)
    report.warnings.push_back(fmt::format("dt = {} exceeds the explicit-reaction guard 0.5/lambda = {:.6g}", grid.dt,
                                          0.5 / report.lambda));
  for (const auto& w : report.warnings) detail::log().warn("{}", w);

  report.dt = grid.dt;
  const auto steps = grid.step_count();
  report.t_end = static_cast<double>(steps) * grid.dt;
  const std::size_t probe_every = std::max<std::size_t>(options.probe_every, 1);

  const Coupler coupler(cfg, kinetics, settings);
  QualityMonitor monitor(cfg.species, grid, compute_envelope(cfg.initial, report.lambda), options.check_tol);

  auto state = coupler.initial_state();
  auto record_level = [&](const CouplingState& s) {
    monitor.observe(s.fluid, s.wall, s.time);
    if (!report.reaction_ended && sup_abs(coupler.wall_rates(s.wall)) < kReactionEndedThreshold)
      report.reaction_ended = s.time;
    if (s.step % probe_every == 0 || s.step == steps) report.probe.push_back(outlet(s.wall));
    const bool snap = s.step == 0 || s.step == steps || (options.snapshot_every > 0 && s.step % options.snapshot_every == 0);
    if (snap && options.on_snapshot) options.on_snapshot(Snapshot{s.step, s.time, s.fluid, s.wall});
  };
  record_level(state);

  for (std::size_t step = 1; step <= steps; ++step) {
    auto next = coupler.advance(state);
    if (options.alternative_iterate) {
      const WallField guess = options.alternative_iterate(state);
      const auto alt = coupler.advance(state, &guess);
      report.max_alternative_gap = std::max(report.max_alternative_gap, sup_distance(alt.wall, next.wall));
    }
    const auto& res = next.residual_history;
    report.iterations.push_back(next.iterations_last_step);
    report.max_final_residual = std::max(report.max_final_residual, res.back());
    for (std::size_t m = 1; m < res.size(); ++m)
      if (res[m - 1] > 0.0) report.max_residual_ratio = std::max(report.max_residual_ratio, res[m] / res[m - 1]);
    detail::log().debug("step {} t={} iterations={} residual={:.3e}", next.step, next.time, next.iterations_last_step,
                  res.back());
    state = std::move(next);
    record_level(state);
  }

  report.checks = monitor.verdicts();
  report.energy = monitor.energy();
  report.outlet_final = outlet(state.wall).values;
  return {std::move(report), std::move(state)};
}

}  // namespace catconv
