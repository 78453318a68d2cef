#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catconv/fluid_march.hpp"
#include "catconv/kinetics.hpp"
#include "catconv/model.hpp"
#include "catconv/qualcheck.hpp"
#include "catconv/wall_evolve.hpp"

namespace catconv {

enum class FluxForm { gradient, integral };

const char* to_string(FluxForm form) noexcept;

struct CouplerSettings {
  double tol = 1e-10;
  int max_iter = 50;
  FluxForm flux_form = FluxForm::gradient;
  double relaxation = 1.0;

  /// Throws Error(invalid_argument) unless tol > 0, max_iter >= 1 and relaxation in (0, 1].
  void check() const;
};

struct CouplingState {
  std::size_t step = 0;
  double time = 0.0;
  WallField wall;
  FluidField fluid;
  int iterations_last_step = 0;
  std::vector<double> residual_history;  // sup-norm wall deltas of the last step, one per iteration
};

/// Time loop pieces for one configuration. Each step iterates
/// wall iterate -> fluid march -> wall flux -> wall step (rates lagged at t_n) -> relaxation
/// until the sup-norm change of the wall iterate drops below tol.
class Coupler {
 public:
  Coupler(const ModelConfig& cfg, KineticsModel kinetics, CouplerSettings settings);

  CouplingState initial_state() const;

  /// One time step to t = (step + 1) dt. initial_iterate overrides the starting wall guess
  /// (default: the wall at t_n). Throws NonConvergedError(step + 1, residuals) when max_iter is exhausted.
  CouplingState advance(const CouplingState& state, const WallField* initial_iterate = nullptr) const;

  /// Kinetic rates on the wall, per species and z node, at the given wall state.
  std::vector<std::vector<double>> wall_rates(const WallField& wall) const;

  const ModelConfig& config() const noexcept { return cfg_; }
  const KineticsModel& kinetics() const noexcept { return kinetics_; }
  const CouplerSettings& settings() const noexcept { return settings_; }
  const FluidMarcher& marcher() const noexcept { return marcher_; }

 private:
  ModelConfig cfg_;
  KineticsModel kinetics_;
  CouplerSettings settings_;
  FluidMarcher marcher_;
  WallStepper stepper_;
};

CouplingState advance_step(const CouplingState& state, const CouplerSettings& settings, const ModelConfig& cfg,
                           const KineticsModel& kinetics);

struct ProbeSample {
  double time = 0.0;
  std::vector<double> values;  // wall values at z = 1, in species order

  friend bool operator==(const ProbeSample&, const ProbeSample&) = default;
};

struct RunOptions {
  std::uint64_t seed = 1;
  std::size_t probe_every = 1;
  std::size_t snapshot_every = 0;  // 0: initial and final level only
  std::size_t hypothesis_samples = 4096;
  std::size_t lipschitz_pairs = 100000;
  double check_tol = 1e-8;
  /// Called at t = 0, every snapshot_every steps and at the final step.
  std::function<void(const Snapshot&)> on_snapshot;
  /// Optional alternative wall guess per step, used to probe fixed-point uniqueness.
  std::function<WallField(const CouplingState&)> alternative_iterate;
};

inline constexpr double kReactionEndedThreshold = 1e-8;

struct RunReport {
  std::vector<std::string> species;
  ContractionDiagnostics diagnostics;
  ValidationReport validation;
  HypothesisReport hypotheses;
  std::vector<double> lipschitz_k;  // per species k_i used for the envelope
  double lambda = 0.0;
  bool lipschitz_from_hint = false;
  std::vector<std::string> warnings;

  double dt = 0.0;
  double t_end = 0.0;
  std::vector<int> iterations;  // per step
  double max_residual_ratio = 0.0;
  double max_final_residual = 0.0;
  double max_alternative_gap = 0.0;  // only when RunOptions::alternative_iterate is set

  QualityVerdicts checks;
  EnergyGrowthReport energy;
  std::optional<double> reaction_ended;
  std::vector<ProbeSample> probe;  // z = 1 series
  std::vector<double> outlet_final;

  bool all_checks_passed() const noexcept { return checks.all_pass(); }

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

struct SimulationResult {
  RunReport report;
  CouplingState final_state;
};

/// Runs the whole horizon. Throws Error(config) if validation finds errors or the kinetics cannot be built,
/// NonConvergedError from a failing step.
SimulationResult run_simulation(const ModelConfig& cfg, const CouplerSettings& settings, const RunOptions& options = {});

}  // namespace catconv
