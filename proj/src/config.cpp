#include "blowup/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace blowup {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::string canonical_value(const std::string& raw, int line_no) {
  if (raw.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') {
      throw ConfigError("line " + std::to_string(line_no) + ": unterminated string");
    }
    return raw;
  }
  if (raw.front() != '[') return raw;
  if (raw.back() != ']') {
    throw ConfigError("line " + std::to_string(line_no) + ": unterminated array");
  }
  const std::string body = trim(std::string_view(raw).substr(1, raw.size() - 2));
  if (body.empty()) return "[]";
  std::string out = "[";
  std::stringstream ss(body);
  std::string item;
  bool first = true;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty array element");
    if (!first) out += ", ";
    out += t;
    first = false;
  }
  return out + "]";
}

struct Line {
  enum Kind { Blank, Header, KeyValue } kind = Blank;
  std::string name;
  std::string value;
};

Line classify(std::string_view text, int line_no) {
  const std::string s = trim(strip_comment(text));
  if (s.empty()) return {};
  if (s.front() == '[') {
    if (s.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": bad section header");
    const std::string name = trim(std::string_view(s).substr(1, s.size() - 2));
    if (!is_identifier(name)) {
      throw ConfigError("line " + std::to_string(line_no) + ": bad section name '" + name + "'");
    }
    return {Line::Header, name, ""};
  }
  const auto eq = s.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
  }
  const std::string key = trim(std::string_view(s).substr(0, eq));
  if (!is_identifier(key)) {
    throw ConfigError("line " + std::to_string(line_no) + ": bad key '" + key + "'");
  }
  return {Line::KeyValue, key, canonical_value(trim(std::string_view(s).substr(eq + 1)), line_no)};
}

std::pair<std::string, std::string> split_dotted(std::string_view dotted) {
  const auto dot = dotted.find('.');
  if (dot == std::string_view::npos) return {"", std::string(dotted)};
  return {std::string(dotted.substr(0, dot)), std::string(dotted.substr(dot + 1))};
}

std::optional<double> parse_number(const std::string& s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

[[noreturn]] void bad_value(std::string_view dotted, const std::string& raw, const char* want) {
  throw ConfigError("key '" + std::string(dotted) + "': expected " + want + ", got '" + raw + "'");
}

}  // namespace

FlatConfig FlatConfig::parse(std::string_view text) {
  FlatConfig cfg;
  std::set<std::string> seen_sections;
  std::set<std::pair<std::string, std::string>> seen_keys;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const Line l = classify(line, line_no);
    if (l.kind == Line::Blank) continue;
    if (l.kind == Line::Header) {
      if (!seen_sections.insert(l.name).second) {
        throw ConfigError("line " + std::to_string(line_no) + ": section [" + l.name + "] repeated");
      }
      section = l.name;
      continue;
    }
    if (!seen_keys.insert({section, l.name}).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + l.name + "'");
    }
    cfg.entries_.push_back({section, l.name, l.value});
  }
  return cfg;
}

FlatConfig FlatConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string FlatConfig::serialize() const {
  std::string out;
  std::optional<std::string> current;
  for (const auto& e : entries_) {
    if (!current || *current != e.section) {
      if (!e.section.empty()) {
        if (!out.empty()) out += '\n';
        out += "[" + e.section + "]\n";
      }
      current = e.section;
    }
    out += e.key + " = " + e.value + "\n";
  }
  return out;
}

const std::string* FlatConfig::raw(std::string_view dotted) const {
  const auto [section, key] = split_dotted(dotted);
  for (const auto& e : entries_) {
    if (e.section == section && e.key == key) return &e.value;
  }
  return nullptr;
}

bool FlatConfig::has(std::string_view dotted) const { return raw(dotted) != nullptr; }

void FlatConfig::set(std::string_view section, std::string_view key, std::string value) {
  value = canonical_value(trim(value), 0);
  auto last = entries_.end();
  for (auto it = entries_.begin(); it != entries_.end(); ++it) {
    if (it->section != section) continue;
    if (it->key == key) {
      it->value = std::move(value);
      return;
    }
    last = it;
  }
  Entry e{std::string(section), std::string(key), std::move(value)};
  if (last == entries_.end()) {
    // Unnamed-section keys must precede every header.
    if (section.empty()) {
      entries_.insert(entries_.begin(), std::move(e));
    } else {
      entries_.push_back(std::move(e));
    }
  } else {
    entries_.insert(last + 1, std::move(e));
  }
}

std::optional<double> FlatConfig::get_double(std::string_view dotted) const {
  const std::string* r = raw(dotted);
  if (!r) return std::nullopt;
  const auto v = parse_number(*r);
  if (!v) bad_value(dotted, *r, "a number");
  return v;
}

std::optional<long> FlatConfig::get_int(std::string_view dotted) const {
  const std::string* r = raw(dotted);
  if (!r) return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(r->c_str(), &end, 10);
  if (r->empty() || end != r->c_str() + r->size()) bad_value(dotted, *r, "an integer");
  return v;
}

std::optional<bool> FlatConfig::get_bool(std::string_view dotted) const {
  const std::string* r = raw(dotted);
  if (!r) return std::nullopt;
  if (*r == "true") return true;
  if (*r == "false") return false;
  bad_value(dotted, *r, "true or false");
}

std::optional<std::string> FlatConfig::get_string(std::string_view dotted) const {
  const std::string* r = raw(dotted);
  if (!r) return std::nullopt;
  if (r->front() == '"') return r->substr(1, r->size() - 2);
  if (r->front() == '[') bad_value(dotted, *r, "a string");
  return *r;
}

std::optional<std::vector<double>> FlatConfig::get_double_list(std::string_view dotted) const {
  const std::string* r = raw(dotted);
  if (!r) return std::nullopt;
  if (r->front() != '[') bad_value(dotted, *r, "an array");
  std::vector<double> out;
  if (*r == "[]") return out;
  std::stringstream ss(r->substr(1, r->size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_number(trim(item));
    if (!v) bad_value(dotted, *r, "an array of numbers");
    out.push_back(*v);
  }
  return out;
}

std::string normalize_config_text(std::string_view text) {
  std::string out;
  std::string pending_header;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const Line l = classify(line, line_no);
    if (l.kind == Line::Blank) continue;
    if (l.kind == Line::Header) {
      pending_header = "[" + l.name + "]\n";
      continue;
    }
    if (!pending_header.empty()) {
      if (!out.empty()) out += '\n';
      out += pending_header;
      pending_header.clear();
    }
    out += l.name + " = " + l.value + "\n";
  }
  return out;
}

std::uint64_t config_hash(const FlatConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : cfg.serialize()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex_hash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const char* to_string(Command c) {
  switch (c) {
    case Command::CheckParams: return "check-params";
    case Command::ProfileNorms: return "profile-norms";
    case Command::Evolve: return "evolve";
    case Command::BlowupStudy: return "blowup-study";
    case Command::FitRates: return "fit-rates";
  }
  return "?";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::CheckParams, Command::ProfileNorms, Command::Evolve,
                    Command::BlowupStudy, Command::FitRates}) {
    if (name == to_string(c)) return c;
  }
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"", {"N", "alpha", "lambda_re", "lambda_im", "k"}},
      {"params", {"N", "alpha", "lambda_re", "lambda_im", "k"}},
      {"grid", {"mode", "points", "radius"}},
      {"solve",
       {"dt", "t_start", "t_end", "scheme", "viscosity_eps", "diag_every", "validation_mode"}},
      {"initial", {"shape", "amplitude", "width", "center", "time"}},
      {"study",
       {"n_list", "delta", "dt", "fit_lo", "fit_hi", "diag_every", "scheme", "viscosity_eps",
        "self_convergence", "workers"}},
      {"profile", {"t_first", "t_last", "count", "p_list"}},
      {"run", {"seed", "output_dir"}},
  };
  return keys;
}

void check_known(const FlatConfig& cfg) {
  const auto& keys = known_keys();
  for (const auto& e : cfg.entries()) {
    const auto it = keys.find(e.section);
    if (it == keys.end()) throw ConfigError("unknown section [" + e.section + "]");
    if (!it->second.count(e.key)) {
      throw ConfigError("unknown key '" + e.key + "' in " +
                        (e.section.empty() ? std::string("top level") : "[" + e.section + "]"));
    }
  }
}

const std::string* param_raw(const FlatConfig& cfg, const std::string& key) {
  if (const auto* r = cfg.raw("params." + key)) return r;
  return cfg.raw(key);
}

double require_param(const FlatConfig& cfg, const std::string& key) {
  const std::string dotted = cfg.has("params." + key) ? "params." + key : key;
  const auto v = cfg.get_double(dotted);
  if (!v) throw ConfigError("missing parameter '" + key + "'");
  return *v;
}

Scheme parse_scheme(const std::optional<std::string>& s) {
  if (!s || *s == "strang") return Scheme::StrangSplit;
  if (*s == "lie") return Scheme::LieSplit;
  throw ConfigError("scheme must be strang or lie, got '" + *s + "'");
}

int positive_int(const FlatConfig& cfg, std::string_view key, int fallback) {
  const auto v = cfg.get_int(key);
  if (!v) return fallback;
  if (*v < 1) throw ConfigError("'" + std::string(key) + "' must be a positive integer");
  return static_cast<int>(*v);
}

}  // namespace

PhysParams read_params(const FlatConfig& cfg) {
  PhysParams p;
  const double n = require_param(cfg, "N");
  if (n != std::floor(n)) throw ConfigError("N must be an integer");
  p.dim = static_cast<int>(n);
  p.alpha = require_param(cfg, "alpha");
  p.lambda = {require_param(cfg, "lambda_re"), require_param(cfg, "lambda_im")};
  if (const std::string* k = param_raw(cfg, "k")) {
    if (*k == "auto" || *k == "\"auto\"") {
      try {
        p.k = min_admissible_k(p.dim, p.alpha, {2.0, 4.0, std::numeric_limits<double>::infinity()});
      } catch (const std::exception& e) {
        throw ConfigError(std::string("k = auto: ") + e.what());
      }
    } else {
      p.k = require_param(cfg, "k");
    }
  }
  try {
    check_well_formed(p);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

RunConfig make_run_config(const FlatConfig& cfg, Command command) {
  check_known(cfg);
  RunConfig rc;
  rc.command = command;
  rc.source = cfg;
  rc.params = read_params(cfg);
  const PhysParams& p = rc.params;

  if (const auto s = cfg.get_int("run.seed")) rc.seed = static_cast<std::uint64_t>(*s);
  if (const auto s = cfg.get_string("run.output_dir")) rc.output_dir = *s;

  const std::string mode = cfg.get_string("grid.mode").value_or(p.dim == 1 ? "cartesian" : "radial");
  const auto points = static_cast<std::size_t>(positive_int(cfg, "grid.points", 1024));
  const double radius = cfg.get_double("grid.radius").value_or(20.0);
  try {
    if (mode == "cartesian") {
      if (p.dim != 1) throw ConfigError("a Cartesian grid needs N = 1");
      rc.grid = Grid::cartesian(points, radius);
    } else if (mode == "radial") {
      rc.grid = Grid::radial(p.dim, points, radius);
    } else {
      throw ConfigError("grid.mode must be cartesian or radial");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  SolveConfig& sc = rc.solve;
  sc.dt = cfg.get_double("solve.dt").value_or(1e-3);
  sc.t_start = cfg.get_double("solve.t_start").value_or(0.0);
  sc.t_end = cfg.get_double("solve.t_end").value_or(-0.5);
  sc.scheme = parse_scheme(cfg.get_string("solve.scheme"));
  sc.viscosity_eps = cfg.get_double("solve.viscosity_eps").value_or(0.0);
  sc.diag_every = positive_int(cfg, "solve.diag_every", 1);
  sc.validation_mode = cfg.get_bool("solve.validation_mode").value_or(false);
  if (!(sc.dt > 0.0)) throw ConfigError("solve.dt must be positive");

  InitialData& in = rc.initial;
  in.shape = cfg.get_string("initial.shape").value_or(in.shape);
  in.amplitude = cfg.get_double("initial.amplitude").value_or(in.amplitude);
  in.width = cfg.get_double("initial.width").value_or(in.width);
  in.center = cfg.get_double("initial.center").value_or(in.center);
  in.time = cfg.get_double("initial.time").value_or(in.time);
  if (in.shape != "gaussian" && in.shape != "profile") {
    throw ConfigError("initial.shape must be gaussian or profile");
  }

  ProfileNormsConfig& pn = rc.profile;
  pn.t_first = cfg.get_double("profile.t_first").value_or(pn.t_first);
  pn.t_last = cfg.get_double("profile.t_last").value_or(pn.t_last);
  pn.count = positive_int(cfg, "profile.count", pn.count);
  if (const auto l = cfg.get_double_list("profile.p_list")) pn.p_list = *l;

  const bool wants_study = command == Command::BlowupStudy || command == Command::FitRates;
  const bool has_study = std::any_of(cfg.entries().begin(), cfg.entries().end(),
                                     [](const auto& e) { return e.section == "study"; });
  if (wants_study || has_study) {
    StudyConfig st;
    st.params = p;
    if (const auto l = cfg.get_double_list("study.n_list")) {
      st.n_list.clear();
      for (double v : *l) {
        if (v != std::floor(v) || v < 1) throw ConfigError("study.n_list must hold positive integers");
        st.n_list.push_back(static_cast<int>(v));
      }
      if (st.n_list.empty()) throw ConfigError("study.n_list is empty");
    }
    st.delta = cfg.get_double("study.delta").value_or(default_delta(st.n_list));
    st.dt = cfg.get_double("study.dt").value_or(st.dt);
    st.fit_lo = cfg.get_double("study.fit_lo").value_or(st.fit_lo);
    st.fit_hi = cfg.get_double("study.fit_hi").value_or(st.fit_hi);
    st.diag_every = positive_int(cfg, "study.diag_every", st.diag_every);
    st.scheme = parse_scheme(cfg.get_string("study.scheme"));
    st.viscosity_eps = cfg.get_double("study.viscosity_eps").value_or(0.0);
    st.self_convergence = cfg.get_bool("study.self_convergence").value_or(true);
    if (const auto w = cfg.get_int("study.workers")) st.workers = static_cast<int>(*w);
    if (wants_study) {
      if (!(p.lambda.imag() > 0.0)) {
        throw ConfigError("blow-up studies need lambda_im > 0; use evolve with validation_mode");
      }
      if (!std::isfinite(p.k)) throw ConfigError("blow-up studies need k (a number or auto)");
      const bool explicit_grid = cfg.has("grid.radius") || cfg.has("grid.mode");
      st.grid = explicit_grid ? rc.grid : default_study_grid(p, st.n_list, st.delta, points);
    } else {
      st.grid = rc.grid;
    }
    rc.study = st;
  }
  return rc;
}

void refine_dt(RunConfig& cfg) {
  cfg.solve.dt /= 2.0;
  cfg.solve.diag_every *= 2;
  if (cfg.study) {
    cfg.study->dt /= 2.0;
    cfg.study->diag_every *= 2;
  }
}

}  // namespace blowup
