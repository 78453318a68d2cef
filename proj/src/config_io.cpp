#include "catconv/config_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "catconv/error.hpp"
#include "catconv/kinetics.hpp"

namespace catconv {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

using Kind = ConfigIssue::Kind;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long long> parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string name;
  std::size_t line = 0;
  std::vector<std::pair<std::string, Entry>> entries;  // declaration order

  const Entry* find(std::string_view key) const {
    for (const auto& [k, e] : entries)
      if (k == key) return &e;
    return nullptr;
  }
};

bool valid_species_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

class Reader {
 public:
  explicit Reader(std::filesystem::path base) : base_(std::move(base)) {}

  std::vector<ConfigIssue> issues;

  void issue(Kind kind, std::string section, std::string key, std::size_t line, std::string message) {
    issues.push_back({kind, std::move(section), std::move(key), line, std::move(message)});
  }

  std::vector<Section> split(std::string_view text) {
    std::vector<Section> sections;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto eol = text.find('\n', pos);
      auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
      pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;

      if (line.front() == '[') {
        if (line.back() != ']') {
          issue(Kind::syntax, "", "", line_no, "unterminated section header");
          continue;
        }
        const std::string name(trim(line.substr(1, line.size() - 2)));
        const bool known = name == "grid" || name == "coupler" || name == "kinetics" ||
                           (name.starts_with("species.") && valid_species_name(std::string_view(name).substr(8)));
        if (!known) issue(Kind::unknown_key, name, "", line_no, "unknown section");
        if (std::any_of(sections.begin(), sections.end(), [&](const Section& s) { return s.name == name; }))
          issue(Kind::syntax, name, "", line_no, "section declared twice");
        sections.push_back({name, line_no, {}});
        continue;
      }

      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        issue(Kind::syntax, sections.empty() ? "" : sections.back().name, "", line_no, "expected key = value");
        continue;
      }
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (sections.empty()) {
        issue(Kind::syntax, "", key, line_no, "key outside of any section");
        continue;
      }
      auto& sec = sections.back();
      if (sec.find(key)) {
        issue(Kind::syntax, sec.name, key, line_no, "key given twice");
        continue;
      }
      sec.entries.push_back({key, {value, line_no}});
    }
    return sections;
  }

  void reject_unknown(const Section& sec, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, entry] : sec.entries)
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        issue(Kind::unknown_key, sec.name, key, entry.line, "unknown key");
  }

  const Entry* require(const Section& sec, std::string_view key) {
    const auto* e = sec.find(key);
    if (!e) issue(Kind::missing_key, sec.name, std::string(key), sec.line, "required key is missing");
    return e;
  }

  template <class T>
  void number(const Section& sec, std::string_view key, T& out, bool required) {
    const auto* e = required ? require(sec, key) : sec.find(key);
    if (!e) return;
    if constexpr (std::is_integral_v<T>) {
      const auto v = parse_int(e->value);
      if (!v || *v < std::numeric_limits<T>::min() || *v > std::numeric_limits<T>::max())
        issue(Kind::bad_number, sec.name, std::string(key), e->line, fmt::format("'{}' is not an integer", e->value));
      else
        out = static_cast<T>(*v);
    } else {
      const auto v = parse_double(e->value);
      if (!v)
        issue(Kind::bad_number, sec.name, std::string(key), e->line, fmt::format("'{}' is not a finite number", e->value));
      else
        out = *v;
    }
  }

  std::optional<std::vector<double>> read_profile_file(const std::string& section, const std::string& key,
                                                       const Entry& entry, const std::string& path) {
    const auto full = base_ / path;
    std::ifstream in(full);
    if (!in) {
      issue(Kind::file_not_found, section, key, entry.line, fmt::format("cannot open '{}'", full.string()));
      return std::nullopt;
    }
    std::vector<double> values;
    std::string line;
    std::size_t file_line = 0;
    bool ok = true;
    while (std::getline(in, line)) {
      ++file_line;
      const auto t = trim(line);
      if (t.empty()) continue;
      const auto v = parse_double(t);
      if (!v) {
        issue(Kind::bad_number, section, key, entry.line,
              fmt::format("'{}' line {}: '{}' is not a finite number", path, file_line, std::string(t)));
        ok = false;
        continue;
      }
      values.push_back(*v);
    }
    if (!ok) return std::nullopt;
    return values;
  }

  // Returns the source; fills samples when the grid size is known.
  std::optional<ProfileSource> profile(const Section& sec, std::string_view key, std::size_t nodes,
                                       std::vector<double>& samples) {
    const auto* e = require(sec, key);
    if (!e) return std::nullopt;
    ProfileSource src;
    const std::string k(key);
    if (e->value.starts_with("const:")) {
      const auto v = parse_double(std::string_view(e->value).substr(6));
      if (!v) {
        issue(Kind::bad_number, sec.name, k, e->line, fmt::format("'{}' is not const:<number>", e->value));
        return std::nullopt;
      }
      src.kind = ProfileSource::Kind::constant;
      src.value = *v;
      samples.assign(nodes, *v);
      return src;
    }
    if (e->value.starts_with("file:")) {
      src.kind = ProfileSource::Kind::file;
      src.path = std::string(trim(std::string_view(e->value).substr(5)));
      auto values = read_profile_file(sec.name, k, *e, src.path);
      if (!values) return std::nullopt;
      if (nodes > 0 && values->size() != nodes) {
        issue(Kind::length_mismatch, sec.name, k, e->line,
              fmt::format("'{}' has {} values, grid needs {}", src.path, values->size(), nodes));
        return std::nullopt;
      }
      samples = std::move(*values);
      return src;
    }
    issue(Kind::bad_number, sec.name, k, e->line, fmt::format("'{}' must be const:<number> or file:<path>", e->value));
    return std::nullopt;
  }

 private:
  std::filesystem::path base_;
};

}  // namespace

ConfigDocument parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  Reader reader(base_dir);
  const auto sections = reader.split(text);

  auto find_section = [&](std::string_view name) -> const Section* {
    for (const auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  };

  ConfigDocument doc;
  auto& model = doc.model;

  // grid
  bool grid_ok = false;
  if (const auto* grid = find_section("grid")) {
    reader.reject_unknown(*grid, {"nr", "nz", "dt", "t_end"});
    const auto before = reader.issues.size();
    reader.number(*grid, "nr", model.grid.nr, true);
    reader.number(*grid, "nz", model.grid.nz, true);
    reader.number(*grid, "dt", model.grid.dt, true);
    reader.number(*grid, "t_end", model.grid.t_end, true);
    grid_ok = reader.issues.size() == before && model.grid.nr >= 0 && model.grid.nz >= 0;
  } else {
    reader.issue(ConfigIssue::Kind::missing_key, "grid", "", 0, "section [grid] is required");
  }

  // coupler: every key optional
  if (const auto* coupler = find_section("coupler")) {
    reader.reject_unknown(*coupler, {"tol", "max_iter", "flux_form", "relaxation"});
    reader.number(*coupler, "tol", doc.coupler.tol, false);
    reader.number(*coupler, "max_iter", doc.coupler.max_iter, false);
    reader.number(*coupler, "relaxation", doc.coupler.relaxation, false);
    if (const auto* e = coupler->find("flux_form")) {
      if (e->value == "gradient") doc.coupler.flux_form = FluxForm::gradient;
      else if (e->value == "integral") doc.coupler.flux_form = FluxForm::integral;
      else
        reader.issue(ConfigIssue::Kind::bad_number, "coupler", "flux_form", e->line,
                     fmt::format("'{}' must be gradient or integral", e->value));
    }
  }

  // kinetics
  if (const auto* kin = find_section("kinetics")) {
    if (const auto* m = reader.require(*kin, "model")) {
      model.kinetics.model = m->value;
      const auto& names = builtin_kinetics_names();
      if (std::find(names.begin(), names.end(), m->value) == names.end()) {
        reader.issue(ConfigIssue::Kind::unknown_key, "kinetics", "model", m->line,
                     fmt::format("unknown kinetics model '{}'", m->value));
      } else {
        const auto allowed = kinetics_constant_names(m->value);
        for (const auto& [key, entry] : kin->entries) {
          if (key == "model") continue;
          if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            reader.issue(ConfigIssue::Kind::unknown_key, "kinetics", key, entry.line,
                         fmt::format("model '{}' has no constant '{}'", m->value, key));
            continue;
          }
        }
        for (const auto& key : allowed) {
          double v = 0.0;
          const auto before = reader.issues.size();
          reader.number(*kin, key, v, true);
          if (reader.issues.size() == before) model.kinetics.constants[key] = v;
        }
      }
    }
  } else {
    reader.issue(ConfigIssue::Kind::missing_key, "kinetics", "model", 0, "section [kinetics] is required");
  }

  // species
  bool any_box = false;
  std::vector<Interval> boxes;
  for (const auto& sec : sections) {
    if (!sec.name.starts_with("species.")) continue;
    SpeciesParams p;
    p.name = sec.name.substr(8);
    if (!valid_species_name(p.name)) continue;
    reader.reject_unknown(sec, {"beta_f", "gamma_s", "theta_s", "delta", "inlet", "wall_init", "box"});
    reader.number(sec, "beta_f", p.beta_f, true);
    reader.number(sec, "gamma_s", p.gamma_s, true);
    reader.number(sec, "theta_s", p.theta_s, true);
    reader.number(sec, "delta", p.delta, true);

    std::vector<double> inlet, wall;
    const auto nr1 = grid_ok ? model.grid.radial_nodes() : 0;
    const auto nz1 = grid_ok ? model.grid.axial_nodes() : 0;
    const auto inlet_src = reader.profile(sec, "inlet", nr1, inlet);
    const auto wall_src = reader.profile(sec, "wall_init", nz1, wall);

    Interval box;
    if (const auto* e = sec.find("box")) {
      any_box = true;
      const auto comma = e->value.find(',');
      const auto lo = comma == std::string::npos ? std::nullopt : parse_double(std::string_view(e->value).substr(0, comma));
      const auto hi = comma == std::string::npos ? std::nullopt : parse_double(std::string_view(e->value).substr(comma + 1));
      if (!lo || !hi)
        reader.issue(ConfigIssue::Kind::bad_number, sec.name, "box", e->line,
                     fmt::format("'{}' must be lo,hi", e->value));
      else
        box = {*lo, *hi};
    }

    model.species.push_back(p);
    model.initial.inlet.push_back(std::move(inlet));
    model.initial.wall_init.push_back(std::move(wall));
    doc.inlet_source.push_back(inlet_src.value_or(ProfileSource{}));
    doc.wall_source.push_back(wall_src.value_or(ProfileSource{}));
    boxes.push_back(box);
  }
  if (model.species.empty())
    reader.issue(ConfigIssue::Kind::missing_key, "species", "", 0, "at least one [species.<name>] section is required");
  if (any_box) model.kinetics.box = std::move(boxes);

  if (reader.issues.empty()) {
    try {
      (void)make_kinetics(model.kinetics, model.species.size());
    } catch (const Error& e) {
      const auto* kin = find_section("kinetics");
      reader.issue(ConfigIssue::Kind::syntax, "kinetics", "model", kin ? kin->line : 0, e.what());
    }
  }

  if (!reader.issues.empty()) throw ConfigError(std::move(reader.issues));
  return doc;
}

ConfigDocument load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError({{ConfigIssue::Kind::file_not_found, "", "", 0, fmt::format("cannot open '{}'", path.string())}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

namespace {

std::string profile_text(const ProfileSource& src) {
  if (src.kind == ProfileSource::Kind::file) return "file:" + src.path;
  return "const:" + format_number(src.value);
}

}  // namespace

std::string serialize_config(const ConfigDocument& doc) {
  const auto& m = doc.model;
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) { out += fmt::format("{} = {}\n", key, value); };

  out += "[grid]\n";
  line("nr", std::to_string(m.grid.nr));
  line("nz", std::to_string(m.grid.nz));
  line("dt", format_number(m.grid.dt));
  line("t_end", format_number(m.grid.t_end));

  out += "\n[coupler]\n";
  line("tol", format_number(doc.coupler.tol));
  line("max_iter", std::to_string(doc.coupler.max_iter));
  line("flux_form", to_string(doc.coupler.flux_form));
  line("relaxation", format_number(doc.coupler.relaxation));

  out += "\n[kinetics]\n";
  line("model", m.kinetics.model);
  for (const auto& [key, value] : m.kinetics.constants) line(key, format_number(value));

  for (std::size_t i = 0; i < m.species.size(); ++i) {
    const auto& p = m.species[i];
    out += fmt::format("\n[species.{}]\n", p.name);
    line("beta_f", format_number(p.beta_f));
    line("gamma_s", format_number(p.gamma_s));
    line("theta_s", format_number(p.theta_s));
    line("delta", std::to_string(p.delta));
    line("inlet", profile_text(i < doc.inlet_source.size() ? doc.inlet_source[i] : ProfileSource{}));
    line("wall_init", profile_text(i < doc.wall_source.size() ? doc.wall_source[i] : ProfileSource{}));
    if (i < m.kinetics.box.size()) {
      const auto& b = m.kinetics.box[i];
      if (std::isfinite(b.hi) || b.lo != 0.0) line("box", format_number(b.lo) + "," + format_number(b.hi));
    }
  }
  return out;
}

}  // namespace catconv
