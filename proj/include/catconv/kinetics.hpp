#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catconv/model.hpp"

namespace catconv {

/// Surface rate functions r_i. The raw rate callback only ever sees clipped, clamped states:
/// x_i -> min(max(x_i, 0), hi_i) (and at least lo_i).
class KineticsModel {
 public:
  using RateFn = std::function<void(std::span<const double> state, std::span<double> rates)>;

  KineticsModel(std::string name, std::size_t arity, RateFn rate, std::vector<Interval> box = {},
                std::optional<std::vector<double>> lipschitz_hint = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  std::size_t arity() const noexcept { return arity_; }
  const std::vector<Interval>& domain_box() const noexcept { return box_; }
  const std::optional<std::vector<double>>& lipschitz_hint() const noexcept { return hint_; }
  bool bounded() const noexcept;

  /// Positive part, then clamp into the domain box.
  void clip(std::span<const double> state, std::span<double> out) const;

  /// eval_rates: throws on non-finite input (naming the species index) or arity mismatch.
  std::vector<double> eval(std::span<const double> state) const;
  void eval(std::span<const double> state, std::span<double> rates, std::span<double> scratch) const;

 private:
  std::string name_;
  std::size_t arity_;
  RateFn rate_;
  std::vector<Interval> box_;
  std::optional<std::vector<double>> hint_;
};

KineticsModel zero_kinetics(std::size_t arity);

/// r_i(x) = x_i^+ on every channel.
KineticsModel linear_consumption(std::size_t arity);

struct CoOxidationConstants {
  double pre_factor = 1.0;
  double activation_energy = 0.0;  // E in exp(-E / T+)
  double heat_release = 0.0;       // scale of the temperature channel
};

/// Surrogate for CO + O2 -> CO2 on four channels ordered (fuel, oxidizer, product, temperature):
/// r = pre_factor * exp(-E / T+) * x_CO+ * x_O2+, rates (r, r, r, heat_release * r).
KineticsModel co_oxidation(const CoOxidationConstants& constants, std::vector<Interval> box = {});

/// Names of the built-in models and the constants each of them accepts.
const std::vector<std::string>& builtin_kinetics_names();
std::vector<std::string> kinetics_constant_names(const std::string& model);

/// Builds a built-in model from its config description. Throws Error(invalid_argument) on unknown
/// names, missing constants or an arity the model cannot serve.
KineticsModel make_kinetics(const KineticsSpec& spec, std::size_t species_count);

struct Violation {
  double magnitude = 0.0;   // 0 when no violation was seen
  std::size_t channel = 0;  // rate channel (or zeroed coordinate for H2)
  std::vector<double> x;    // location
  std::vector<double> y;    // second point for H3, empty otherwise

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct HypothesisReport {
  bool h1_pass = false;
  bool h2_pass = false;
  bool h3_pass = false;
  Violation worst_h1;
  Violation worst_h2;
  Violation worst_h3;
  std::size_t samples_used = 0;

  bool all_pass() const noexcept { return h1_pass && h2_pass && h3_pass; }

  friend bool operator==(const HypothesisReport&, const HypothesisReport&) = default;
};

inline constexpr double kHypothesisSlack = 1e-12;
inline constexpr std::size_t kMinHypothesisSamples = 1000;

/// Sampling checks of H1 (nonnegative rates), H2 (a consumed channel vanishes when its own species
/// is absent) and H3 (the weighted monotonicity sum, including the y = 0 consequence).
/// samples is raised to kMinHypothesisSamples if smaller.
HypothesisReport verify_hypotheses(const KineticsModel& model, std::span<const SpeciesParams> params,
                                   std::uint64_t seed, std::size_t samples = 4096);

struct LipschitzEstimate {
  std::vector<double> raw;  // max sampled difference quotient per channel
  std::vector<double> k;    // raw * kLipschitzSafety
  double lambda = 0.0;      // max_i k_i
  std::size_t pairs_used = 0;
};

inline constexpr double kLipschitzSafety = 1.25;

/// Largest |r_i(x) - r_i(y)| / sum_h |x_h - y_h| over sampled pairs. Requires a bounded box.
/// The pair sequence is a pure function of the seed, so more pairs never lower the estimate.
LipschitzEstimate estimate_lipschitz(const KineticsModel& model, std::uint64_t seed, std::size_t pairs = 100000);

/// The bounded box used for sampling: infinite upper ends are replaced by lo + max(1, |lo|).
std::vector<Interval> sampling_box(const KineticsModel& model);

}  // namespace catconv
