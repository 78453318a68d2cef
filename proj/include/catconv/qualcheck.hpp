#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "catconv/model.hpp"

namespace catconv {

/// Fluid and wall at one accepted time level.
struct Snapshot {
  std::size_t step = 0;
  double time = 0.0;
  FluidField fluid;
  WallField wall;
};

/// Bounds built from the initial data only.
struct BoundEnvelope {
  std::vector<double> upper;  // A_i0 = max(sup_r C_i0, sup_z C_is0)
  std::vector<double> a_min;  // min(inf_r C_i0, inf_z C_is0)
  std::vector<double> a_max;  // max(sup_r C_i0, sup_z C_is0), same value as upper
  double lambda = 0.0;
};

BoundEnvelope compute_envelope(const InitialData& init, double lambda);

struct PointViolation {
  std::size_t species = 0;
  double time = 0.0;
  std::size_t k = 0;    // axial node
  std::size_t j = 0;    // radial node; radial_nodes - 1 for wall entries
  bool on_wall = false;
  double value = 0.0;

  friend bool operator==(const PointViolation&, const PointViolation&) = default;
};

struct NonnegativityVerdict {
  bool pass = true;
  std::size_t violation_count = 0;
  std::vector<PointViolation> violations;  // first kMaxRecordedViolations only
  double most_negative = 0.0;

  friend bool operator==(const NonnegativityVerdict&, const NonnegativityVerdict&) = default;
};

inline constexpr std::size_t kMaxRecordedViolations = 256;
inline constexpr double kDefaultCheckTol = 1e-8;

NonnegativityVerdict check_nonnegativity(const FluidField& fluid, const WallField& wall, double tol = kDefaultCheckTol);

enum class EnvelopeItem {
  upper_consumed,        // delta = -1: C <= A_i0
  lower_produced,        // delta = +1: C >= a_i0_min
  exponential_produced,  // delta = +1: C <= a_i0_max e^{lambda t}
};

const char* to_string(EnvelopeItem item) noexcept;

struct EnvelopeVerdict {
  std::size_t species = 0;
  EnvelopeItem item = EnvelopeItem::upper_consumed;
  bool pass = true;
  double worst_excess = 0.0;  // max over samples of (value - bound) with sign so that > 0 means outside
  double worst_time = 0.0;

  friend bool operator==(const EnvelopeVerdict&, const EnvelopeVerdict&) = default;
};

struct EnergyGrowthReport {
  std::vector<double> times;
  std::vector<std::vector<double>> wall_energy;   // [species][time level] trapezoid of C_is^2 over z
  std::vector<double> slope;                      // a, per species
  std::vector<double> intercept;                  // b, per species
  std::vector<std::vector<double>> fluid_station;  // [species][k] int_0^T int_0^1 C_if^2 r(1-r^2) dr dt
  std::vector<std::vector<double>> fluid_sup;      // [species][time level] sup over stations, accumulated
  std::vector<double> fluid_slope;
  std::vector<double> fluid_intercept;

  /// True when every sample lies on or under its affine envelope (up to a relative round-off slack).
  bool dominated(double rel_tol = 1e-12) const;

  friend bool operator==(const EnergyGrowthReport&, const EnergyGrowthReport&) = default;
};

struct QualityVerdicts {
  NonnegativityVerdict nonnegativity;
  std::vector<EnvelopeVerdict> envelopes;

  bool envelopes_pass() const noexcept;
  bool all_pass() const noexcept { return nonnegativity.pass && envelopes_pass(); }

  friend bool operator==(const QualityVerdicts&, const QualityVerdicts&) = default;
};

/// Incremental form of the checks so a run does not have to keep its trajectory.
class QualityMonitor {
 public:
  QualityMonitor(std::vector<SpeciesParams> params, const Grid& grid, BoundEnvelope envelope,
                 double tol = kDefaultCheckTol);

  void observe(const Snapshot& snap) { observe(snap.fluid, snap.wall, snap.time); }
  void observe(const FluidField& fluid, const WallField& wall, double time);

  QualityVerdicts verdicts() const;
  EnergyGrowthReport energy() const;

 private:
  std::vector<SpeciesParams> params_;
  Grid grid_;
  BoundEnvelope envelope_;
  double tol_;
  std::vector<double> radial_weights_;

  NonnegativityVerdict nonneg_;
  std::vector<EnvelopeVerdict> envelopes_;

  std::vector<double> times_;
  std::vector<std::vector<double>> wall_energy_;
  std::vector<std::vector<double>> station_acc_;
  std::vector<std::vector<double>> last_station_integrand_;
  std::vector<std::vector<double>> fluid_sup_;
};

std::vector<EnvelopeVerdict> check_envelopes(std::span<const Snapshot> trajectory, const BoundEnvelope& envelope,
                                             std::span<const SpeciesParams> params, double tol = kDefaultCheckTol);

/// Needs at least two time levels.
EnergyGrowthReport energy_growth_report(std::span<const Snapshot> trajectory, std::span<const SpeciesParams> params,
                                        const Grid& grid);

}  // namespace catconv
