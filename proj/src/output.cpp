#include "catconv/output.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "catconv/error.hpp"

namespace catconv {

using nlohmann::json;

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, fmt::format("cannot open '{}' for writing", path.string()));
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::io, fmt::format("write to '{}' failed", path.string()));
}

namespace {

std::string cell(double v) { return fmt::format("{:.9g}", v); }

std::string header(std::string_view first, std::span<const std::string> species) {
  std::string h(first);
  for (const auto& s : species) h += "," + s;
  return h + "\n";
}

// Always carries a decimal point or exponent, so 0 prints as 0.0.
std::string decimal(double v) {
  auto s = fmt::format("{:.9g}", v);
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

const char* pass(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string species_name(const RunReport& r, std::size_t i) {
  return i < r.species.size() ? r.species[i] : fmt::format("#{}", i);
}

}  // namespace

std::string snapshot_csv(const FluidField& field, const Grid& grid, std::span<const std::string> species) {
  if (species.size() != field.species_count())
    throw Error(ErrorCode::invalid_argument, "snapshot_csv: species names do not match the field");
  std::string out = header("r,z", species);
  for (std::size_t k = 0; k < field.axial_nodes(); ++k)
    for (std::size_t j = 0; j < field.radial_nodes(); ++j) {
      out += cell(grid.r(j));
      out += ',';
      out += cell(grid.z(k));
      for (std::size_t i = 0; i < field.species_count(); ++i) {
        out += ',';
        out += cell(field(i, k, j));
      }
      out += '\n';
    }
  return out;
}

void write_snapshot_csv(const FluidField& field, const Grid& grid, std::span<const std::string> species,
                        const std::filesystem::path& path) {
  write_text_file(path, snapshot_csv(field, grid, species));
}

std::string probe_csv(std::span<const ProbeSample> series, std::span<const std::string> species) {
  std::string out = header("t", species);
  for (const auto& s : series) {
    if (s.values.size() != species.size())
      throw Error(ErrorCode::invalid_argument, "probe_csv: sample width does not match the species list");
    out += cell(s.time);
    for (double v : s.values) {
      out += ',';
      out += cell(v);
    }
    out += '\n';
  }
  return out;
}

void write_probe_csv(std::span<const ProbeSample> series, std::span<const std::string> species,
                     const std::filesystem::path& path) {
  write_text_file(path, probe_csv(series, species));
}

std::string format_report(const RunReport& r) {
  std::string out;
  auto line = [&out](const std::string& s) { out += s + "\n"; };

  line("catconv run report");
  line(fmt::format("species: {}", fmt::join(r.species, " ")));
  line(fmt::format("dt = {}, t_end = {}, steps = {}", cell(r.dt), cell(r.t_end), r.iterations.size()));
  line("");

  const auto& d = r.diagnostics;
  line("contraction");
  line(fmt::format("  mu = {}  threshold = {}  margin = {}  alpha_opt = {}", cell(d.mu), cell(d.threshold),
                   cell(d.margin), cell(d.alpha_opt)));
  line(fmt::format("  satisfied = {}{}", d.satisfied, d.degenerate ? "  (degenerate: some theta_s = 0)" : ""));
  line("");

  if (!r.validation.issues.empty()) {
    line("validation");
    for (const auto& v : r.validation.issues)
      line(fmt::format("  {} {} {}{}{}: {}", v.severity == Severity::error ? "ERROR" : "WARNING", v.code, v.species,
                       v.field.empty() ? "" : ".", v.field, v.message));
    line("");
  }

  const auto& h = r.hypotheses;
  line(fmt::format("hypotheses ({} samples)", h.samples_used));
  auto hyp = [&](const char* name, bool ok, const Violation& w) {
    if (ok) {
      line(fmt::format("  {} PASS", name));
    } else {
      std::string where = fmt::format("x = ({})", fmt::join(w.x, ", "));
      if (!w.y.empty()) where += fmt::format(", y = ({})", fmt::join(w.y, ", "));
      line(fmt::format("  {} FAIL worst {} on channel {} at {}", name, cell(w.magnitude), w.channel, where));
    }
  };
  hyp("H1", h.h1_pass, h.worst_h1);
  hyp("H2", h.h2_pass, h.worst_h2);
  hyp("H3", h.h3_pass, h.worst_h3);
  line("");

  line(fmt::format("lipschitz ({})", r.lipschitz_from_hint ? "model hint" : "sampled"));
  for (std::size_t i = 0; i < r.lipschitz_k.size(); ++i)
    line(fmt::format("  k[{}] = {}", species_name(r, i), cell(r.lipschitz_k[i])));
  line(fmt::format("  lambda = {}", cell(r.lambda)));
  line("");

  if (!r.warnings.empty()) {
    line("warnings");
    for (const auto& w : r.warnings) line("  " + w);
    line("");
  }

  int max_it = 0;
  double total = 0.0;
  for (int it : r.iterations) {
    max_it = std::max(max_it, it);
    total += it;
  }
  line("coupling");
  line(fmt::format("  iterations: max {}, mean {}", max_it,
                   cell(r.iterations.empty() ? 0.0 : total / static_cast<double>(r.iterations.size()))));
  line(fmt::format("  max residual ratio = {}  max final residual = {}", cell(r.max_residual_ratio),
                   cell(r.max_final_residual)));
  if (r.max_alternative_gap > 0.0) line(fmt::format("  max gap between start iterates = {}", cell(r.max_alternative_gap)));
  line("");

  const auto& nn = r.checks.nonnegativity;
  line("checks");
  line(fmt::format("  nonnegativity {}  violations = {}  most negative = {}", pass(nn.pass), nn.violation_count,
                   cell(nn.most_negative)));
  for (const auto& e : r.checks.envelopes)
    line(fmt::format("  {} {} {}  worst excess = {} at t = {}", species_name(r, e.species), to_string(e.item),
                     pass(e.pass), cell(e.worst_excess), cell(e.worst_time)));
  line("");

  line("energy envelope  E(t) <= a t + b");
  for (std::size_t i = 0; i < r.energy.slope.size(); ++i)
    line(fmt::format("  {}  wall a = {} b = {}  fluid a = {} b = {}", species_name(r, i), cell(r.energy.slope[i]),
                     cell(r.energy.intercept[i]), cell(r.energy.fluid_slope[i]), cell(r.energy.fluid_intercept[i])));
  line("");

  line("outlet (z = 1) at t_end");
  for (std::size_t i = 0; i < r.outlet_final.size(); ++i)
    line(fmt::format("  {} = {}", species_name(r, i), cell(r.outlet_final[i])));
  line(fmt::format("reaction ended: {}", r.reaction_ended ? "t = " + decimal(*r.reaction_ended) : "never"));
  line("");

  line("[summary]");
  line(fmt::format("MU={:.9f}", d.mu));
  line(fmt::format("THRESHOLD={:.9f}", d.threshold));
  line(fmt::format("MARGIN={:.9f}", d.margin));
  line(fmt::format("ALPHA_OPT={:.9f}", d.alpha_opt));
  line(fmt::format("SATISFIED={}", d.satisfied));
  line(fmt::format("LAMBDA={}", cell(r.lambda)));
  line(fmt::format("REACTION_ENDED={}", r.reaction_ended ? decimal(*r.reaction_ended) : "never"));
  line(fmt::format("H1={}", pass(h.h1_pass)));
  line(fmt::format("H2={}", pass(h.h2_pass)));
  line(fmt::format("H3={}", pass(h.h3_pass)));
  line(fmt::format("NONNEGATIVITY={}", pass(nn.pass)));
  for (const auto& e : r.checks.envelopes)
    line(fmt::format("{}_{}={}", species_name(r, e.species), to_string(e.item), pass(e.pass)));
  line(fmt::format("ENERGY_ENVELOPE={}", pass(r.energy.dominated())));
  line(fmt::format("ALL_CHECKS={}", pass(r.all_checks_passed())));
  return out;
}

void write_report(const RunReport& report, const std::filesystem::path& path) {
  write_text_file(path, format_report(report));
}

// JSON ----------------------------------------------------------------------

namespace {

json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_num(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw Error(ErrorCode::invalid_argument, fmt::format("report json: '{}' is not a number", s));
  }
  return j.get<double>();
}

json nums(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> read_nums(const json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(read_num(x));
  return v;
}

json nums2(const std::vector<std::vector<double>>& v) {
  json a = json::array();
  for (const auto& row : v) a.push_back(nums(row));
  return a;
}

std::vector<std::vector<double>> read_nums2(const json& j) {
  std::vector<std::vector<double>> v;
  for (const auto& row : j) v.push_back(read_nums(row));
  return v;
}

json violation(const Violation& v) {
  return {{"magnitude", num(v.magnitude)}, {"channel", v.channel}, {"x", nums(v.x)}, {"y", nums(v.y)}};
}

Violation read_violation(const json& j) {
  return {read_num(j.at("magnitude")), j.at("channel").get<std::size_t>(), read_nums(j.at("x")), read_nums(j.at("y"))};
}

EnvelopeItem envelope_item(const std::string& s) {
  for (auto item : {EnvelopeItem::upper_consumed, EnvelopeItem::lower_produced, EnvelopeItem::exponential_produced})
    if (s == to_string(item)) return item;
  throw Error(ErrorCode::invalid_argument, fmt::format("report json: unknown envelope item '{}'", s));
}

}  // namespace

std::string report_to_json(const RunReport& r) {
  json j;
  j["species"] = r.species;
  const auto& d = r.diagnostics;
  j["diagnostics"] = {{"mu", num(d.mu)},
                      {"threshold", num(d.threshold)},
                      {"margin", num(d.margin)},
                      {"alpha_opt", num(d.alpha_opt)},
                      {"satisfied", d.satisfied},
                      {"degenerate", d.degenerate}};
  json issues = json::array();
  for (const auto& v : r.validation.issues)
    issues.push_back({{"severity", v.severity == Severity::error ? "error" : "warning"},
                      {"code", v.code},
                      {"species", v.species},
                      {"field", v.field},
                      {"message", v.message}});
  j["validation"] = issues;
  const auto& h = r.hypotheses;
  j["hypotheses"] = {{"h1_pass", h.h1_pass},
                     {"h2_pass", h.h2_pass},
                     {"h3_pass", h.h3_pass},
                     {"worst_h1", violation(h.worst_h1)},
                     {"worst_h2", violation(h.worst_h2)},
                     {"worst_h3", violation(h.worst_h3)},
                     {"samples_used", h.samples_used}};
  j["lipschitz_k"] = nums(r.lipschitz_k);
  j["lambda"] = num(r.lambda);
  j["lipschitz_from_hint"] = r.lipschitz_from_hint;
  j["warnings"] = r.warnings;
  j["dt"] = num(r.dt);
  j["t_end"] = num(r.t_end);
  j["iterations"] = r.iterations;
  j["max_residual_ratio"] = num(r.max_residual_ratio);
  j["max_final_residual"] = num(r.max_final_residual);
  j["max_alternative_gap"] = num(r.max_alternative_gap);

  const auto& nn = r.checks.nonnegativity;
  json viol = json::array();
  for (const auto& p : nn.violations)
    viol.push_back({{"species", p.species},
                    {"time", num(p.time)},
                    {"k", p.k},
                    {"j", p.j},
                    {"on_wall", p.on_wall},
                    {"value", num(p.value)}});
  json env = json::array();
  for (const auto& e : r.checks.envelopes)
    env.push_back({{"species", e.species},
                   {"item", to_string(e.item)},
                   {"pass", e.pass},
                   {"worst_excess", num(e.worst_excess)},
                   {"worst_time", num(e.worst_time)}});
  j["checks"] = {{"nonnegativity",
                  {{"pass", nn.pass},
                   {"violation_count", nn.violation_count},
                   {"violations", viol},
                   {"most_negative", num(nn.most_negative)}}},
                 {"envelopes", env}};

  const auto& e = r.energy;
  j["energy"] = {{"times", nums(e.times)},
                 {"wall_energy", nums2(e.wall_energy)},
                 {"slope", nums(e.slope)},
                 {"intercept", nums(e.intercept)},
                 {"fluid_station", nums2(e.fluid_station)},
                 {"fluid_sup", nums2(e.fluid_sup)},
                 {"fluid_slope", nums(e.fluid_slope)},
                 {"fluid_intercept", nums(e.fluid_intercept)}};
  j["reaction_ended"] = r.reaction_ended ? num(*r.reaction_ended) : json(nullptr);
  json probe = json::array();
  for (const auto& p : r.probe) probe.push_back({{"t", num(p.time)}, {"values", nums(p.values)}});
  j["probe"] = probe;
  j["outlet_final"] = nums(r.outlet_final);
  return j.dump(1) + "\n";
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, fmt::format("report json: {}", e.what()));
  }
  try {
    RunReport r;
    r.species = j.at("species").get<std::vector<std::string>>();
    const auto& d = j.at("diagnostics");
    r.diagnostics = {read_num(d.at("mu")),  read_num(d.at("threshold")),    read_num(d.at("margin")),
                     read_num(d.at("alpha_opt")), d.at("satisfied").get<bool>(), d.at("degenerate").get<bool>()};
    for (const auto& v : j.at("validation"))
      r.validation.issues.push_back({v.at("severity") == "error" ? Severity::error : Severity::warning,
                                     v.at("code"), v.at("species"), v.at("field"), v.at("message")});
    const auto& h = j.at("hypotheses");
    r.hypotheses.h1_pass = h.at("h1_pass");
    r.hypotheses.h2_pass = h.at("h2_pass");
    r.hypotheses.h3_pass = h.at("h3_pass");
    r.hypotheses.worst_h1 = read_violation(h.at("worst_h1"));
    r.hypotheses.worst_h2 = read_violation(h.at("worst_h2"));
    r.hypotheses.worst_h3 = read_violation(h.at("worst_h3"));
    r.hypotheses.samples_used = h.at("samples_used");
    r.lipschitz_k = read_nums(j.at("lipschitz_k"));
    r.lambda = read_num(j.at("lambda"));
    r.lipschitz_from_hint = j.at("lipschitz_from_hint");
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.dt = read_num(j.at("dt"));
    r.t_end = read_num(j.at("t_end"));
    r.iterations = j.at("iterations").get<std::vector<int>>();
    r.max_residual_ratio = read_num(j.at("max_residual_ratio"));
    r.max_final_residual = read_num(j.at("max_final_residual"));
    r.max_alternative_gap = read_num(j.at("max_alternative_gap"));

    const auto& nn = j.at("checks").at("nonnegativity");
    r.checks.nonnegativity.pass = nn.at("pass");
    r.checks.nonnegativity.violation_count = nn.at("violation_count");
    r.checks.nonnegativity.most_negative = read_num(nn.at("most_negative"));
    for (const auto& p : nn.at("violations"))
      r.checks.nonnegativity.violations.push_back({p.at("species"), read_num(p.at("time")), p.at("k"), p.at("j"),
                                                   p.at("on_wall"), read_num(p.at("value"))});
    for (const auto& e : j.at("checks").at("envelopes"))
      r.checks.envelopes.push_back({e.at("species"), envelope_item(e.at("item")), e.at("pass"),
                                    read_num(e.at("worst_excess")), read_num(e.at("worst_time"))});

    const auto& e = j.at("energy");
    r.energy.times = read_nums(e.at("times"));
    r.energy.wall_energy = read_nums2(e.at("wall_energy"));
    r.energy.slope = read_nums(e.at("slope"));
    r.energy.intercept = read_nums(e.at("intercept"));
    r.energy.fluid_station = read_nums2(e.at("fluid_station"));
    r.energy.fluid_sup = read_nums2(e.at("fluid_sup"));
    r.energy.fluid_slope = read_nums(e.at("fluid_slope"));
    r.energy.fluid_intercept = read_nums(e.at("fluid_intercept"));

    if (!j.at("reaction_ended").is_null()) r.reaction_ended = read_num(j.at("reaction_ended"));
    for (const auto& p : j.at("probe")) r.probe.push_back({read_num(p.at("t")), read_nums(p.at("values"))});
    r.outlet_final = read_nums(j.at("outlet_final"));
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, fmt::format("report json: {}", e.what()));
  }
}

void write_report_json(const RunReport& report, const std::filesystem::path& path) {
  write_text_file(path, report_to_json(report));
}

}  // namespace catconv
