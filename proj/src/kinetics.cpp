#include "catconv/kinetics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "catconv/error.hpp"

namespace catconv {

KineticsModel::KineticsModel(std::string name, std::size_t arity, RateFn rate, std::vector<Interval> box,
                             std::optional<std::vector<double>> lipschitz_hint)
    : name_(std::move(name)), arity_(arity), rate_(std::move(rate)), box_(std::move(box)), hint_(std::move(lipschitz_hint)) {
  if (arity_ == 0) throw Error(ErrorCode::invalid_argument, "kinetics model needs at least one channel");
  if (!rate_) throw Error(ErrorCode::invalid_argument, "kinetics model without a rate function");
  if (box_.empty()) box_.assign(arity_, Interval{});
  if (box_.size() != arity_)
    throw Error(ErrorCode::invalid_argument,
                fmt::format("kinetics box has {} intervals for {} channels", box_.size(), arity_));
  for (auto& b : box_) {
    b.lo = std::max(b.lo, 0.0);
    if (!(b.lo <= b.hi)) throw Error(ErrorCode::invalid_argument, "kinetics box interval with lo > hi");
  }
  if (hint_ && hint_->size() != arity_)
    throw Error(ErrorCode::invalid_argument, "lipschitz hint length does not match arity");
}

bool KineticsModel::bounded() const noexcept {
  return std::all_of(box_.begin(), box_.end(), [](const Interval& b) { return std::isfinite(b.hi); });
}

void KineticsModel::clip(std::span<const double> state, std::span<double> out) const {
  for (std::size_t i = 0; i < arity_; ++i) out[i] = std::clamp(std::max(state[i], 0.0), box_[i].lo, box_[i].hi);
}

void KineticsModel::eval(std::span<const double> state, std::span<double> rates, std::span<double> scratch) const {
  if (state.size() != arity_ || rates.size() != arity_ || scratch.size() < arity_)
    throw Error(ErrorCode::invalid_argument,
                fmt::format("kinetics '{}' expects {} species, got {}", name_, arity_, state.size()));
  for (std::size_t i = 0; i < arity_; ++i)
    if (!std::isfinite(state[i]))
      throw Error(ErrorCode::invalid_argument, fmt::format("non-finite wall state for species index {}", i));
  clip(state, scratch.first(arity_));
  rate_(scratch.first(arity_), rates);
}

std::vector<double> KineticsModel::eval(std::span<const double> state) const {
  std::vector<double> rates(arity_, 0.0);
  std::vector<double> scratch(arity_);
  eval(state, rates, scratch);
  return rates;
}

KineticsModel zero_kinetics(std::size_t arity) {
  return KineticsModel(
      "zero", arity, [](std::span<const double>, std::span<double> r) { std::fill(r.begin(), r.end(), 0.0); }, {},
      std::vector<double>(arity, 0.0));
}

KineticsModel linear_consumption(std::size_t arity) {
  return KineticsModel(
      "linear_consumption", arity,
      [](std::span<const double> x, std::span<double> r) { std::copy(x.begin(), x.end(), r.begin()); }, {},
      std::vector<double>(arity, 1.0));
}

KineticsModel co_oxidation(const CoOxidationConstants& c, std::vector<Interval> box) {
  auto rate = [c](std::span<const double> x, std::span<double> r) {
    const double temperature = x[3];
    double arrhenius = 1.0;
    if (c.activation_energy != 0.0) arrhenius = temperature > 0.0 ? std::exp(-c.activation_energy / temperature) : 0.0;
    const double base = c.pre_factor * arrhenius * x[0] * x[1];
    r[0] = base;
    r[1] = base;
    r[2] = base;
    r[3] = c.heat_release * base;
  };
  return KineticsModel("co_oxidation", 4, std::move(rate), std::move(box));
}

const std::vector<std::string>& builtin_kinetics_names() {
  static const std::vector<std::string> names{"zero", "linear_consumption", "co_oxidation"};
  return names;
}

std::vector<std::string> kinetics_constant_names(const std::string& model) {
  if (model == "co_oxidation") return {"pre_factor", "activation_energy", "heat_release"};
  return {};
}

KineticsModel make_kinetics(const KineticsSpec& spec, std::size_t species_count) {
  const auto& names = builtin_kinetics_names();
  if (std::find(names.begin(), names.end(), spec.model) == names.end())
    throw Error(ErrorCode::invalid_argument, fmt::format("unknown kinetics model '{}'", spec.model));
  const auto allowed = kinetics_constant_names(spec.model);
  for (const auto& [key, value] : spec.constants)
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw Error(ErrorCode::invalid_argument, fmt::format("kinetics '{}' has no constant '{}'", spec.model, key));
  for (const auto& key : allowed)
    if (!spec.constants.contains(key))
      throw Error(ErrorCode::invalid_argument, fmt::format("kinetics '{}' needs constant '{}'", spec.model, key));

  auto with_box = [&](KineticsModel m) {
    if (spec.box.empty()) return m;
    return KineticsModel(m.name(), m.arity(),
                         [m](std::span<const double> x, std::span<double> r) {
                           std::vector<double> scratch(x.size());
                           m.eval(x, r, scratch);
                         },
                         spec.box, m.lipschitz_hint());
  };

  if (spec.model == "zero") return with_box(zero_kinetics(species_count));
  if (spec.model == "linear_consumption") return with_box(linear_consumption(species_count));

  if (species_count != 4)
    throw Error(ErrorCode::invalid_argument,
                fmt::format("co_oxidation needs 4 species (fuel, oxidizer, product, temperature), got {}", species_count));
  CoOxidationConstants c;
  c.pre_factor = spec.constants.at("pre_factor");
  c.activation_energy = spec.constants.at("activation_energy");
  c.heat_release = spec.constants.at("heat_release");
  return co_oxidation(c, spec.box);
}

std::vector<Interval> sampling_box(const KineticsModel& model) {
  auto box = model.domain_box();
  for (auto& b : box)
    if (!std::isfinite(b.hi)) b.hi = b.lo + std::max(1.0, std::abs(b.lo));
  return box;
}

namespace {

constexpr std::array<unsigned, 16> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::uint64_t index, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double value = 0.0;
  while (index > 0) {
    value += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return value;
}

// Halton points with a seed-dependent Cranley-Patterson shift; plain uniforms past 16 dimensions.
class QuasiRandom {
 public:
  QuasiRandom(std::size_t dim, std::uint64_t seed) : dim_(dim), rng_(seed), shift_(dim) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& s : shift_) s = u(rng_);
  }

  void next(std::span<const Interval> box, std::span<double> out) {
    ++index_;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t d = 0; d < dim_; ++d) {
      double v = d < kPrimes.size() ? radical_inverse(index_, kPrimes[d]) + shift_[d] : u(rng_);
      v -= std::floor(v);
      out[d] = box[d].lo + v * (box[d].hi - box[d].lo);
    }
  }

 private:
  std::size_t dim_;
  std::uint64_t index_ = 0;
  std::mt19937_64 rng_;
  std::vector<double> shift_;
};

void record(Violation& worst, double magnitude, std::size_t channel, std::span<const double> x,
            std::span<const double> y = {}) {
  if (magnitude <= worst.magnitude) return;
  worst.magnitude = magnitude;
  worst.channel = channel;
  worst.x.assign(x.begin(), x.end());
  worst.y.assign(y.begin(), y.end());
}

double h3_sum(std::span<const SpeciesParams> params, std::span<const double> rx, std::span<const double> ry,
              std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i)
    sum += params[i].delta * (params[i].beta_f / params[i].gamma_s) * (rx[i] - ry[i]) * (x[i] - y[i]);
  return -sum;
}

}  // namespace

HypothesisReport verify_hypotheses(const KineticsModel& model, std::span<const SpeciesParams> params,
                                   std::uint64_t seed, std::size_t samples) {
  const auto n = model.arity();
  if (params.size() != n)
    throw Error(ErrorCode::invalid_argument,
                fmt::format("verify_hypotheses: {} species parameters for a {}-channel model", params.size(), n));
  samples = std::max(samples, kMinHypothesisSamples);
  const auto box = sampling_box(model);

  HypothesisReport report;
  QuasiRandom points(n, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  std::vector<double> x(n), y(n), cx(n), cy(n), rx(n), ry(n), scratch(n), zeroed(n), rz(n);
  const std::vector<double> origin(n, 0.0);
  for (std::size_t s = 0; s < samples; ++s) {
    points.next(box, x);
    model.clip(x, cx);
    model.eval(cx, rx, scratch);

    // H1
    for (std::size_t c = 0; c < n; ++c)
      if (rx[c] < -kHypothesisSlack) record(report.worst_h1, -rx[c], c, cx);

    // H2: a consumed species that is absent cannot be consumed.
    for (std::size_t i = 0; i < n; ++i) {
      if (params[i].delta != -1) continue;
      zeroed = cx;
      zeroed[i] = 0.0;
      model.eval(zeroed, rz, scratch);
      if (std::abs(rz[i]) > kHypothesisSlack) record(report.worst_h2, std::abs(rz[i]), i, zeroed);
    }

    // H3 on an independent pair, and on (x, 0).
    for (std::size_t d = 0; d < n; ++d) y[d] = box[d].lo + u(rng) * (box[d].hi - box[d].lo);
    model.clip(y, cy);
    model.eval(cy, ry, scratch);
    const double pair = h3_sum(params, rx, ry, cx, cy);
    if (pair < -kHypothesisSlack) record(report.worst_h3, -pair, 0, cx, cy);

    model.clip(origin, cy);
    model.eval(cy, ry, scratch);
    const double to_origin = h3_sum(params, rx, ry, cx, cy);
    if (to_origin < -kHypothesisSlack) record(report.worst_h3, -to_origin, 0, cx, cy);
  }

  report.samples_used = samples;
  report.h1_pass = report.worst_h1.magnitude == 0.0;
  report.h2_pass = report.worst_h2.magnitude == 0.0;
  report.h3_pass = report.worst_h3.magnitude == 0.0;
  return report;
}

LipschitzEstimate estimate_lipschitz(const KineticsModel& model, std::uint64_t seed, std::size_t pairs) {
  if (!model.bounded())
    throw Error(ErrorCode::invalid_argument,
                fmt::format("estimate_lipschitz: kinetics '{}' has an unbounded domain box", model.name()));
  const auto n = model.arity();
  const auto& box = model.domain_box();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  LipschitzEstimate est;
  est.raw.assign(n, 0.0);
  std::vector<double> x(n), y(n), rx(n), ry(n), scratch(n);

  for (std::size_t p = 0; p < pairs; ++p) {
    // Fixed number of draws per pair keeps the sequence prefix-stable.
    for (std::size_t d = 0; d < n; ++d) {
      const double v = u(rng);
      const double mode = u(rng);
      const double width = box[d].hi - box[d].lo;
      // Rate laws often peak on faces of the box, so a quarter of the coordinates snap there.
      if (mode < 0.125) x[d] = box[d].lo;
      else if (mode < 0.25) x[d] = box[d].hi;
      else x[d] = box[d].lo + v * width;
    }
    const double axis_draw = u(rng);
    const double scale_draw = u(rng);
    const double sign_draw = u(rng);
    for (std::size_t d = 0; d < n; ++d) y[d] = box[d].lo + u(rng) * (box[d].hi - box[d].lo);

    if (p % 4 != 3) {
      // Short axis-aligned pair: these approach the directional derivatives that bound the L1 quotient.
      const auto axis = std::min(n - 1, static_cast<std::size_t>(axis_draw * static_cast<double>(n)));
      const double width = box[axis].hi - box[axis].lo;
      if (width <= 0.0) continue;
      const double h = width * std::pow(10.0, -4.0 * scale_draw);
      y = x;
      double moved = x[axis] + (sign_draw < 0.5 ? -h : h);
      if (moved < box[axis].lo || moved > box[axis].hi) moved = x[axis] + (sign_draw < 0.5 ? h : -h);
      y[axis] = std::clamp(moved, box[axis].lo, box[axis].hi);
    }

    double dist = 0.0;
    for (std::size_t d = 0; d < n; ++d) dist += std::abs(x[d] - y[d]);
    if (!(dist > 0.0)) continue;
    model.eval(x, rx, scratch);
    model.eval(y, ry, scratch);
    for (std::size_t c = 0; c < n; ++c) est.raw[c] = std::max(est.raw[c], std::abs(rx[c] - ry[c]) / dist);
  }

  est.pairs_used = pairs;
  est.k.resize(n);
  for (std::size_t c = 0; c < n; ++c) est.k[c] = kLipschitzSafety * est.raw[c];
  est.lambda = est.k.empty() ? 0.0 : *std::max_element(est.k.begin(), est.k.end());
  return est;
}

}  // namespace catconv
