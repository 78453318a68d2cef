#include "catconv/wall_evolve.hpp"

#include <fmt/format.h>

#include "catconv/error.hpp"

namespace catconv {

namespace {

// theta * D_zz c at node k, in differences; ghost nodes mirror c_1 and c_{nz-1}.
double axial_diffusion(std::span<const double> c, std::size_t k, double coef) {
  const auto last = c.size() - 1;
  if (k == 0) return coef * 2.0 * (c[1] - c[0]);
  if (k == last) return coef * 2.0 * (c[last - 1] - c[last]);
  return coef * ((c[k + 1] - c[k]) + (c[k - 1] - c[k]));
}

}  // namespace

WallStepper::WallStepper(std::span<const SpeciesParams> params, int nz, double dt)
    : params_(params.begin(), params.end()), nz_(nz), dt_(dt) {
  if (nz < 2) throw Error(ErrorCode::invalid_argument, "wall step needs nz >= 2");
  if (!(dt > 0.0)) throw Error(ErrorCode::invalid_argument, "wall step needs dt > 0");
  const auto n1 = static_cast<std::size_t>(nz) + 1;
  const double dz = 1.0 / nz;
  std::vector<double> lo(n1), diag(n1), up(n1);
  for (const auto& p : params_) {
    if (!(p.theta_s >= 0.0))
      throw Error(ErrorCode::invalid_argument, fmt::format("species {}: theta_s must be >= 0", p.name));
    const double a = dt * p.theta_s / (dz * dz);
    for (std::size_t k = 0; k < n1; ++k) {
      diag[k] = 1.0 + 2.0 * a;
      lo[k] = -a;
      up[k] = -a;
    }
    up[0] = -2.0 * a;
    lo[n1 - 1] = -2.0 * a;
    factors_.emplace_back(lo, diag, up);
  }
}

WallField WallStepper::step(const WallField& wall_prev, const std::vector<std::vector<double>>& flux,
                            const std::vector<std::vector<double>>& rates) const {
  const auto ns = params_.size();
  const auto n1 = static_cast<std::size_t>(nz_) + 1;
  if (wall_prev.values.size() != ns || flux.size() != ns || rates.size() != ns)
    throw Error(ErrorCode::invalid_argument, "wall step: species count mismatch");
  const double dz = 1.0 / nz_;

  WallField next;
  next.time = wall_prev.time + dt_;
  next.values.resize(ns);
  std::vector<double> rhs(n1);
  for (std::size_t i = 0; i < ns; ++i) {
    const auto& c = wall_prev.values[i];
    if (c.size() != n1 || flux[i].size() != n1 || rates[i].size() != n1)
      throw Error(ErrorCode::invalid_argument, "wall step: profile length does not match the grid");
    const auto& p = params_[i];
    const double coef = p.theta_s / (dz * dz);
    for (std::size_t k = 0; k < n1; ++k)
      rhs[k] = dt_ * (axial_diffusion(c, k, coef) - p.gamma_s * flux[i][k] + p.delta * rates[i][k]);
    factors_[i].solve(rhs);
    auto& out = next.values[i];
    out.resize(n1);
    for (std::size_t k = 0; k < n1; ++k) out[k] = c[k] + rhs[k];
  }
  return next;
}

WallField step_wall(const WallStepInput& input) {
  if (input.wall_prev.values.empty() || input.wall_prev.values.front().size() < 3)
    throw Error(ErrorCode::invalid_argument, "step_wall: wall field too short");
  const int nz = static_cast<int>(input.wall_prev.values.front().size()) - 1;
  return WallStepper(input.params, nz, input.dt).step(input.wall_prev, input.flux, input.rates);
}

double wall_integral(std::span<const double> profile) {
  if (profile.size() < 2) return 0.0;
  const double dz = 1.0 / static_cast<double>(profile.size() - 1);
  double acc = 0.5 * (profile.front() + profile.back());
  for (std::size_t k = 1; k + 1 < profile.size(); ++k) acc += profile[k];
  return acc * dz;
}

}  // namespace catconv
