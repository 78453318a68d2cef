#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "catconv/coupler.hpp"
#include "catconv/model.hpp"

namespace catconv {

/// Where a profile came from, so a parsed document can be written back in the same form.
struct ProfileSource {
  enum class Kind { constant, file };
  Kind kind = Kind::constant;
  double value = 0.0;
  std::string path;  // as written in the config (relative paths resolve against the config directory)

  friend bool operator==(const ProfileSource&, const ProfileSource&) = default;
};

struct ConfigDocument {
  ModelConfig model;
  CouplerSettings coupler;
  std::vector<ProfileSource> inlet_source;
  std::vector<ProfileSource> wall_source;
};

/// Parses the sectioned key = value format:
///
///   [grid]            nr, nz, dt, t_end
///   [coupler]         tol, max_iter, flux_form (gradient | integral), relaxation   -- all optional
///   [kinetics]        model plus the model's named constants
///   [species.<name>]  beta_f, gamma_s, theta_s, delta, inlet, wall_init, optional box = lo,hi
///
/// Profiles are `const:<number>` or `file:<path>` (one value per line, exactly one per grid node).
/// '#' starts a comment. Every problem found is collected; throws ConfigError if there is any.
ConfigDocument parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads the file and parses it with its directory as base for `file:` profiles.
ConfigDocument load_config(const std::filesystem::path& path);

/// Canonical text: fixed section and key order, shortest round-trip numbers, coupler defaults spelled out.
std::string serialize_config(const ConfigDocument& doc);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace catconv
