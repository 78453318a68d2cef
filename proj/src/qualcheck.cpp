#include "catconv/qualcheck.hpp"

#include <algorithm>
#include <cmath>

#include "catconv/error.hpp"
#include "catconv/wall_evolve.hpp"

namespace catconv {

BoundEnvelope compute_envelope(const InitialData& init, double lambda) {
  BoundEnvelope env;
  env.lambda = lambda;
  const auto n = init.inlet.size();
  if (init.wall_init.size() != n) throw Error(ErrorCode::invalid_argument, "compute_envelope: species mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& in = init.inlet[i];
    const auto& wall = init.wall_init[i];
    if (in.empty() || wall.empty()) throw Error(ErrorCode::invalid_argument, "compute_envelope: empty profile");
    const auto [in_min, in_max] = std::minmax_element(in.begin(), in.end());
    const auto [w_min, w_max] = std::minmax_element(wall.begin(), wall.end());
    const double hi = std::max(*in_max, *w_max);
    env.upper.push_back(hi);
    env.a_max.push_back(hi);
    env.a_min.push_back(std::min(*in_min, *w_min));
  }
  return env;
}

namespace {

void note_negative(NonnegativityVerdict& v, double tol, PointViolation p) {
  v.most_negative = std::min(v.most_negative, p.value);
  if (p.value >= -tol) return;
  v.pass = false;
  ++v.violation_count;
  if (v.violations.size() < kMaxRecordedViolations) v.violations.push_back(p);
}

void scan_nonnegative(NonnegativityVerdict& v, const FluidField& fluid, const WallField& wall, double tol) {
  for (std::size_t i = 0; i < fluid.species_count(); ++i)
    for (std::size_t k = 0; k < fluid.axial_nodes(); ++k)
      for (std::size_t j = 0; j < fluid.radial_nodes(); ++j)
        note_negative(v, tol, {i, fluid.time, k, j, false, fluid(i, k, j)});
  for (std::size_t i = 0; i < wall.values.size(); ++i)
    for (std::size_t k = 0; k < wall.values[i].size(); ++k)
      note_negative(v, tol, {i, wall.time, k, fluid.radial_nodes() ? fluid.radial_nodes() - 1 : 0, true,
                             wall.values[i][k]});
}

std::pair<double, double> species_range(const FluidField& fluid, const WallField& wall, std::size_t i) {
  const auto& f = fluid.species(i);
  const auto& w = wall.values[i];
  double lo = std::min(*std::min_element(f.begin(), f.end()), *std::min_element(w.begin(), w.end()));
  double hi = std::max(*std::max_element(f.begin(), f.end()), *std::max_element(w.begin(), w.end()));
  return {lo, hi};
}

// a e^{lambda t} without 0 * inf when the exponential overflows.
double exponential_bound(double a, double lambda, double t) {
  if (a == 0.0) return 0.0;
  return a * std::exp(lambda * t);
}

std::pair<double, double> affine_envelope(std::span<const double> times, std::span<const double> values) {
  const double b = values.empty() ? 0.0 : values.front();
  double a = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k)
    if (times[k] > times.front()) a = std::max(a, (values[k] - b) / (times[k] - times.front()));
  return {a, b};
}

}  // namespace

NonnegativityVerdict check_nonnegativity(const FluidField& fluid, const WallField& wall, double tol) {
  NonnegativityVerdict v;
  scan_nonnegative(v, fluid, wall, tol);
  return v;
}

const char* to_string(EnvelopeItem item) noexcept {
  switch (item) {
    case EnvelopeItem::upper_consumed: return "UPPER";
    case EnvelopeItem::lower_produced: return "LOWER";
    case EnvelopeItem::exponential_produced: return "EXP_ENVELOPE";
  }
  return "UNKNOWN";
}

bool EnergyGrowthReport::dominated(double rel_tol) const {
  auto under = [rel_tol](double value, double bound) {
    return value <= bound + rel_tol * std::max(1.0, std::abs(bound));
  };
  for (std::size_t i = 0; i < wall_energy.size(); ++i)
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double t = times[k] - times.front();
      if (!under(wall_energy[i][k], slope[i] * t + intercept[i])) return false;
      if (!under(fluid_sup[i][k], fluid_slope[i] * t + fluid_intercept[i])) return false;
    }
  return true;
}

bool QualityVerdicts::envelopes_pass() const noexcept {
  return std::all_of(envelopes.begin(), envelopes.end(), [](const auto& v) { return v.pass; });
}

QualityMonitor::QualityMonitor(std::vector<SpeciesParams> params, const Grid& grid, BoundEnvelope envelope, double tol)
    : params_(std::move(params)),
      grid_(grid),
      envelope_(std::move(envelope)),
      tol_(tol),
      radial_weights_(radial_quadrature_weights(grid)) {
  const auto n = params_.size();
  if (envelope_.upper.size() != n) throw Error(ErrorCode::invalid_argument, "QualityMonitor: envelope size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (params_[i].delta < 0) {
      envelopes_.push_back({i, EnvelopeItem::upper_consumed});
    } else {
      envelopes_.push_back({i, EnvelopeItem::lower_produced});
      envelopes_.push_back({i, EnvelopeItem::exponential_produced});
    }
  }
  wall_energy_.resize(n);
  station_acc_.assign(n, std::vector<double>(grid.axial_nodes(), 0.0));
  last_station_integrand_.assign(n, std::vector<double>(grid.axial_nodes(), 0.0));
  fluid_sup_.resize(n);
}

void QualityMonitor::observe(const FluidField& fluid, const WallField& wall, double time) {
  const auto n = params_.size();
  if (fluid.species_count() != n || wall.values.size() != n)
    throw Error(ErrorCode::invalid_argument, "QualityMonitor: snapshot species mismatch");

  scan_nonnegative(nonneg_, fluid, wall, tol_);

  for (auto& v : envelopes_) {
    const auto [lo, hi] = species_range(fluid, wall, v.species);
    double excess = 0.0;
    switch (v.item) {
      case EnvelopeItem::upper_consumed: excess = hi - envelope_.upper[v.species]; break;
      case EnvelopeItem::lower_produced: excess = envelope_.a_min[v.species] - lo; break;
      case EnvelopeItem::exponential_produced:
        excess = hi - exponential_bound(envelope_.a_max[v.species], envelope_.lambda, time);
        break;
    }
    if (times_.empty() || excess > v.worst_excess) {
      v.worst_excess = excess;
      v.worst_time = time;
    }
    if (excess > tol_) v.pass = false;
  }

  // Energy: left-endpoint rectangle in t for the fluid stations.
  const double dt = times_.empty() ? 0.0 : time - times_.back();
  times_.push_back(time);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = wall.values[i];
    std::vector<double> sq(w.size());
    std::transform(w.begin(), w.end(), sq.begin(), [](double c) { return c * c; });
    wall_energy_[i].push_back(wall_integral(sq));

    auto& acc = station_acc_[i];
    auto& last = last_station_integrand_[i];
    for (std::size_t k = 0; k < acc.size(); ++k) {
      acc[k] += dt * last[k];
      const auto row = fluid.row(i, k);
      double q = 0.0;
      for (std::size_t j = 0; j < row.size(); ++j) q += radial_weights_[j] * row[j] * row[j];
      last[k] = q;
    }
    fluid_sup_[i].push_back(*std::max_element(acc.begin(), acc.end()));
  }
}

QualityVerdicts QualityMonitor::verdicts() const { return {nonneg_, envelopes_}; }

EnergyGrowthReport QualityMonitor::energy() const {
  EnergyGrowthReport r;
  r.times = times_;
  r.wall_energy = wall_energy_;
  r.fluid_station = station_acc_;
  r.fluid_sup = fluid_sup_;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const auto [a, b] = affine_envelope(times_, wall_energy_[i]);
    r.slope.push_back(a);
    r.intercept.push_back(b);
    const auto [af, bf] = affine_envelope(times_, fluid_sup_[i]);
    r.fluid_slope.push_back(af);
    r.fluid_intercept.push_back(bf);
  }
  return r;
}

std::vector<EnvelopeVerdict> check_envelopes(std::span<const Snapshot> trajectory, const BoundEnvelope& envelope,
                                             std::span<const SpeciesParams> params, double tol) {
  if (trajectory.empty()) throw Error(ErrorCode::invalid_argument, "check_envelopes: empty trajectory");
  Grid grid;
  grid.nr = static_cast<int>(trajectory.front().fluid.radial_nodes()) - 1;
  grid.nz = static_cast<int>(trajectory.front().fluid.axial_nodes()) - 1;
  QualityMonitor monitor({params.begin(), params.end()}, grid, envelope, tol);
  for (const auto& s : trajectory) monitor.observe(s);
  return monitor.verdicts().envelopes;
}

EnergyGrowthReport energy_growth_report(std::span<const Snapshot> trajectory, std::span<const SpeciesParams> params,
                                        const Grid& grid) {
  if (trajectory.size() < 2) throw Error(ErrorCode::invalid_argument, "energy_growth_report: need two time levels");
  BoundEnvelope env;
  env.upper.assign(params.size(), 0.0);
  env.a_min = env.a_max = env.upper;
  QualityMonitor monitor({params.begin(), params.end()}, grid, env);
  for (const auto& s : trajectory) monitor.observe(s);
  return monitor.energy();
}

}  // namespace catconv
