#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "catconv/coupler.hpp"
#include "catconv/model.hpp"

namespace catconv {

/// Header `r,z,<species...>`, one row per node in z-major order, 9 significant digits.
std::string snapshot_csv(const FluidField& field, const Grid& grid, std::span<const std::string> species);
void write_snapshot_csv(const FluidField& field, const Grid& grid, std::span<const std::string> species,
                        const std::filesystem::path& path);

/// Header `t,<species...>`, one row per probe sample (wall values at z = 1).
std::string probe_csv(std::span<const ProbeSample> series, std::span<const std::string> species);
void write_probe_csv(std::span<const ProbeSample> series, std::span<const std::string> species,
                     const std::filesystem::path& path);

/// Human-readable report ending in a KEY=VALUE footer block.
std::string format_report(const RunReport& report);
void write_report(const RunReport& report, const std::filesystem::path& path);

/// Lossless JSON form of a report (non-finite numbers are written as strings).
std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);
void write_report_json(const RunReport& report, const std::filesystem::path& path);

/// Writes text to path, throwing Error(io) naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace catconv
