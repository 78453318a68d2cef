#include "catconv/catconv.h"

#include <filesystem>
#include <new>
#include <string>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "catconv/config_io.hpp"
#include "catconv/coupler.hpp"
#include "catconv/error.hpp"
#include "catconv/kinetics.hpp"
#include "catconv/output.hpp"
#include "catconv/study.hpp"

struct catconv_config {
  catconv::ConfigDocument doc;
};

struct catconv_run {
  catconv::RunReport report;
};

struct catconv_text {
  std::string data;
};

namespace {

thread_local std::string last_error;

catconv_status status_of(catconv::ErrorCode code) {
  switch (code) {
    case catconv::ErrorCode::config: return CATCONV_ERR_CONFIG;
    case catconv::ErrorCode::non_converged: return CATCONV_ERR_NON_CONVERGED;
    case catconv::ErrorCode::io: return CATCONV_ERR_IO;
    case catconv::ErrorCode::invalid_argument: return CATCONV_ERR_INVALID_ARGUMENT;
    case catconv::ErrorCode::numerical: return CATCONV_ERR_NUMERICAL;
  }
  return CATCONV_ERR_INTERNAL;
}

catconv_status fail(catconv_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <class F>
catconv_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const catconv::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CATCONV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CATCONV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CATCONV_ERR_INTERNAL, "unknown exception");
  }
}

catconv_status null_argument(const char* fn) { return fail(CATCONV_ERR_INVALID_ARGUMENT, fmt::format("{}: null argument", fn)); }

catconv_text* make_text(std::string s) { return new catconv_text{std::move(s)}; }

catconv_contraction to_c(const catconv::ContractionDiagnostics& d) {
  return {d.mu, d.threshold, d.margin, d.alpha_opt, d.satisfied ? 1 : 0, d.degenerate ? 1 : 0};
}

std::string violation_text(const catconv::Violation& v) {
  std::string s = fmt::format("magnitude {:.6g} on channel {} at x = ({:.6g})", v.magnitude, v.channel, fmt::join(v.x, ", "));
  if (!v.y.empty()) s += fmt::format(", y = ({:.6g})", fmt::join(v.y, ", "));
  return s;
}

}  // namespace

extern "C" {

const char* catconv_version(void) { return "0.3.0"; }

const char* catconv_last_error(void) { return last_error.c_str(); }

const char* catconv_text_data(const catconv_text* text) { return text ? text->data.c_str() : ""; }
size_t catconv_text_size(const catconv_text* text) { return text ? text->data.size() : 0; }
void catconv_text_free(catconv_text* text) { delete text; }

catconv_status catconv_config_load(const char* path, catconv_config** out) {
  if (!path || !out) return null_argument("catconv_config_load");
  *out = nullptr;
  return guarded([&] {
    *out = new catconv_config{catconv::load_config(path)};
    return CATCONV_OK;
  });
}

catconv_status catconv_config_parse(const char* text, const char* base_dir, catconv_config** out) {
  if (!text || !out) return null_argument("catconv_config_parse");
  *out = nullptr;
  return guarded([&] {
    *out = new catconv_config{catconv::parse_config(text, base_dir ? base_dir : "")};
    return CATCONV_OK;
  });
}

void catconv_config_free(catconv_config* cfg) { delete cfg; }

size_t catconv_config_species_count(const catconv_config* cfg) { return cfg ? cfg->doc.model.species.size() : 0; }

const char* catconv_config_species_name(const catconv_config* cfg, size_t index) {
  if (!cfg || index >= cfg->doc.model.species.size()) return nullptr;
  return cfg->doc.model.species[index].name.c_str();
}

catconv_status catconv_config_serialize(const catconv_config* cfg, catconv_text** out) {
  if (!cfg || !out) return null_argument("catconv_config_serialize");
  return guarded([&] {
    *out = make_text(catconv::serialize_config(cfg->doc));
    return CATCONV_OK;
  });
}

catconv_status catconv_config_validate(const catconv_config* cfg, catconv_text** out, size_t* error_count) {
  if (!cfg || !out) return null_argument("catconv_config_validate");
  return guarded([&] {
    const auto report = catconv::validate_config(cfg->doc.model);
    std::string s;
    for (const auto& v : report.issues)
      s += fmt::format("{} {} {}{}{}: {}\n", v.severity == catconv::Severity::error ? "ERROR" : "WARNING", v.code,
                       v.species, v.species.empty() || v.field.empty() ? "" : ".", v.field, v.message);
    *out = make_text(std::move(s));
    if (error_count) *error_count = report.error_count();
    return CATCONV_OK;
  });
}

catconv_status catconv_config_contraction(const catconv_config* cfg, catconv_contraction* out) {
  if (!cfg || !out) return null_argument("catconv_config_contraction");
  return guarded([&] {
    *out = to_c(catconv::contraction_margin(cfg->doc.model.species));
    return CATCONV_OK;
  });
}

catconv_status catconv_check_hypotheses(const catconv_config* cfg, uint64_t seed, size_t samples,
                                        catconv_hypotheses* out, catconv_text** report) {
  if (!cfg || !out) return null_argument("catconv_check_hypotheses");
  return guarded([&] {
    const auto& model = cfg->doc.model;
    const auto kinetics = catconv::make_kinetics(model.kinetics, model.species.size());
    const auto h = catconv::verify_hypotheses(kinetics, model.species, seed, samples);
    *out = {h.h1_pass ? 1 : 0,        h.h2_pass ? 1 : 0,        h.h3_pass ? 1 : 0, h.worst_h1.magnitude,
            h.worst_h2.magnitude, h.worst_h3.magnitude, h.samples_used};
    if (report) {
      std::string s = fmt::format("kinetics {} ({} samples, seed {})\n", kinetics.name(), h.samples_used, seed);
      auto line = [&s](const char* name, bool ok, const catconv::Violation& v) {
        s += ok ? fmt::format("{} PASS\n", name) : fmt::format("{} FAIL worst {}\n", name, violation_text(v));
      };
      line("H1", h.h1_pass, h.worst_h1);
      line("H2", h.h2_pass, h.worst_h2);
      line("H3", h.h3_pass, h.worst_h3);
      *report = make_text(std::move(s));
    }
    return CATCONV_OK;
  });
}

void catconv_sim_options_init(catconv_sim_options* options) {
  if (!options) return;
  options->seed = 1;
  options->probe_every = 1;
  options->snapshot_every = 0;
}

catconv_status catconv_simulate(const catconv_config* cfg, const catconv_sim_options* options, const char* out_dir,
                                catconv_run** out) {
  if (!cfg || !out) return null_argument("catconv_simulate");
  *out = nullptr;
  catconv_sim_options opts;
  catconv_sim_options_init(&opts);
  if (options) opts = *options;
  if (opts.probe_every == 0) return fail(CATCONV_ERR_INVALID_ARGUMENT, "catconv_simulate: probe_every must be >= 1");

  return guarded([&] {
    const auto& model = cfg->doc.model;
    std::vector<std::string> names;
    for (const auto& p : model.species) names.push_back(p.name);

    std::filesystem::path dir;
    if (out_dir) {
      dir = out_dir;
      std::error_code ec;
      std::filesystem::create_directories(dir / "snapshots", ec);
      if (ec) throw catconv::Error(catconv::ErrorCode::io, fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
    }

    catconv::RunOptions ro;
    ro.seed = opts.seed;
    ro.probe_every = opts.probe_every;
    ro.snapshot_every = opts.snapshot_every;
    if (out_dir)
      ro.on_snapshot = [&](const catconv::Snapshot& s) {
        catconv::write_snapshot_csv(s.fluid, model.grid, names, dir / "snapshots" / fmt::format("snapshot_{:06d}.csv", s.step));
      };

    auto result = catconv::run_simulation(model, cfg->doc.coupler, ro);
    if (out_dir) {
      catconv::write_probe_csv(result.report.probe, names, dir / "probe.csv");
      catconv::write_report(result.report, dir / "report.txt");
      catconv::write_report_json(result.report, dir / "report.json");
    }
    *out = new catconv_run{std::move(result.report)};
    return CATCONV_OK;
  });
}

void catconv_run_free(catconv_run* run) { delete run; }

int catconv_run_all_checks_passed(const catconv_run* run) { return run && run->report.all_checks_passed() ? 1 : 0; }

catconv_status catconv_run_contraction(const catconv_run* run, catconv_contraction* out) {
  if (!run || !out) return null_argument("catconv_run_contraction");
  *out = to_c(run->report.diagnostics);
  return CATCONV_OK;
}

int catconv_run_reaction_ended(const catconv_run* run, double* time) {
  if (!run || !run->report.reaction_ended) return 0;
  if (time) *time = *run->report.reaction_ended;
  return 1;
}

size_t catconv_run_step_count(const catconv_run* run) { return run ? run->report.iterations.size() : 0; }

int catconv_run_iterations(const catconv_run* run, size_t step) {
  if (!run || step >= run->report.iterations.size()) return -1;
  return run->report.iterations[step];
}

size_t catconv_run_probe_count(const catconv_run* run) { return run ? run->report.probe.size() : 0; }

size_t catconv_run_species_count(const catconv_run* run) { return run ? run->report.species.size() : 0; }

catconv_status catconv_run_probe(const catconv_run* run, size_t index, double* time, double* values) {
  if (!run || !values) return null_argument("catconv_run_probe");
  if (index >= run->report.probe.size())
    return fail(CATCONV_ERR_INVALID_ARGUMENT, fmt::format("catconv_run_probe: index {} out of range", index));
  const auto& p = run->report.probe[index];
  if (time) *time = p.time;
  std::copy(p.values.begin(), p.values.end(), values);
  return CATCONV_OK;
}

catconv_status catconv_run_report_text(const catconv_run* run, catconv_text** out) {
  if (!run || !out) return null_argument("catconv_run_report_text");
  return guarded([&] {
    *out = make_text(catconv::format_report(run->report));
    return CATCONV_OK;
  });
}

catconv_status catconv_run_report_json(const catconv_run* run, catconv_text** out) {
  if (!run || !out) return null_argument("catconv_run_report_json");
  return guarded([&] {
    *out = make_text(catconv::report_to_json(run->report));
    return CATCONV_OK;
  });
}

catconv_status catconv_run_write_report(const catconv_run* run, const char* path) {
  if (!run || !path) return null_argument("catconv_run_write_report");
  return guarded([&] {
    catconv::write_report(run->report, path);
    return CATCONV_OK;
  });
}

catconv_status catconv_convergence_study(int levels, catconv_text** out) {
  if (!out) return null_argument("catconv_convergence_study");
  return guarded([&] {
    const auto s = catconv::convergence_study(levels);
    std::string t = fmt::format("Graetz problem: inlet 1, wall 0, beta 1\n\n");
    t += fmt::format("centerline C(0, 1), nz = {}\n", s.radial.front().nz);
    t += fmt::format("{:>6} {:>20} {:>12}\n", "nr", "value", "order");
    for (std::size_t l = 0; l < s.radial.size(); ++l)
      t += fmt::format("{:>6} {:>20.12e} {:>12}\n", s.radial[l].nr, s.radial[l].value,
                       l >= 2 ? fmt::format("{:.4f}", s.radial_order[l - 2]) : "-");
    t += fmt::format("\nflux forms, L2 gap over z in [1/8, 1], nz = 2 nr\n");
    t += fmt::format("{:>6} {:>6} {:>20} {:>12}\n", "nr", "nz", "gap", "order");
    for (std::size_t l = 0; l < s.flux.size(); ++l)
      t += fmt::format("{:>6} {:>6} {:>20.12e} {:>12}\n", s.flux[l].nr, s.flux[l].nz, s.flux[l].value,
                       l >= 1 ? fmt::format("{:.4f}", s.flux_order[l - 1]) : "-");
    *out = make_text(std::move(t));
    return CATCONV_OK;
  });
}

}  // extern "C"
