#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace trefftz::cli {

ConfigError::ConfigError(const std::string& origin, int line, const std::string& what)
    : std::runtime_error(line > 0 ? fmt::format("{}:{}: {}", origin, line, what) : fmt::format("{}: {}", origin, what)),
      origin_(origin),
      line_(line) {}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "material.lambda",     "material.mu",
      "surface.kind",        "surface.center",
      "surface.radius",      "surface.semi_axes",
      "surface.radial",      "surface.symmetry",
      "surface.axis",        "problem.type",
      "problem.degrees",     "problem.degree",
      "problem.n_theta",     "problem.n_phi",
      "problem.svd_tol",     "problem.vector_weight",
      "problem.reproject_tangential",
      "problem.tangency_tol", "source.kind",
      "source.y0",           "source.row",
      "source.index",        "source.path",
      "probe.count",         "probe.seed",
      "output.dir",
  };
  return keys;
}

class Reader {
public:
  explicit Reader(const ConfigFile& cfg) : cfg_(cfg) {}

  const ConfigEntry* get(const std::string& key) const { return cfg_.find(key); }

  [[noreturn]] void fail(const ConfigEntry& e, const std::string& key, const std::string& what) const {
    throw ConfigError(e.origin, e.line, fmt::format("{}: {}", key, what));
  }

  double real(const std::string& key, double fallback) const {
    const auto* e = get(key);
    if (!e) return fallback;
    std::istringstream is(e->value);
    double v = 0.0;
    std::string rest;
    if (!(is >> v) || (is >> rest)) fail(*e, key, fmt::format("expected a real number, got '{}'", e->value));
    return v;
  }

  long long integer(const std::string& key, long long fallback) const {
    const auto* e = get(key);
    if (!e) return fallback;
    std::istringstream is(e->value);
    long long v = 0;
    std::string rest;
    if (!(is >> v) || (is >> rest)) fail(*e, key, fmt::format("expected an integer, got '{}'", e->value));
    return v;
  }

  Vec3 triple(const std::string& key, const Vec3& fallback) const {
    const auto* e = get(key);
    if (!e) return fallback;
    std::string text = e->value;
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream is(text);
    Vec3 v;
    std::string rest;
    if (!(is >> v[0] >> v[1] >> v[2]) || (is >> rest)) {
      fail(*e, key, fmt::format("expected three real numbers, got '{}'", e->value));
    }
    return v;
  }

  bool boolean(const std::string& key, bool fallback) const {
    const auto* e = get(key);
    if (!e) return fallback;
    const std::string v = lower(e->value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail(*e, key, fmt::format("expected true or false, got '{}'", e->value));
  }

  std::string word(const std::string& key, const std::string& fallback) const {
    const auto* e = get(key);
    return e ? lower(e->value) : fallback;
  }

private:
  const ConfigFile& cfg_;
};

}  // namespace

ConfigFile ConfigFile::parse(std::istream& is, const std::string& origin) {
  ConfigFile cfg;
  std::string section;
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(origin, lineno, "unterminated section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError(origin, lineno, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(origin, lineno, fmt::format("expected 'key = value', got '{}'", line));
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin, lineno, "missing key before '='");
    if (section.empty()) throw ConfigError(origin, lineno, fmt::format("key '{}' appears before any [section]", key));
    const std::string full = section + "." + key;
    if (!known_keys().count(full)) throw ConfigError(origin, lineno, fmt::format("unknown key '{}'", full));
    if (cfg.has(full)) throw ConfigError(origin, lineno, fmt::format("duplicate key '{}'", full));
    cfg.entries_[full] = {value, origin, lineno};
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  return parse(in, path);
}

void ConfigFile::set(const std::string& key, const std::string& value, const std::string& origin, int line) {
  const std::string k = lower(key);
  if (!known_keys().count(k)) throw ConfigError(origin, line, fmt::format("unknown key '{}'", k));
  entries_[k] = {value, origin, line};
}

void ConfigFile::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override", 0, fmt::format("expected section.key=value, got '{}'", assignment));
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), "override '" + assignment + "'");
}

const ConfigEntry* ConfigFile::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<int> parse_degree_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("empty entry in degree list");
    const auto dots = item.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument("bad degree '" + item + "'");
    } else {
      const std::string lo_s = trim(item.substr(0, dots));
      const std::string hi_s = trim(item.substr(dots + 2));
      const int lo = std::stoi(lo_s, &used);
      if (used != lo_s.size()) throw std::invalid_argument("bad degree '" + lo_s + "'");
      const int hi = std::stoi(hi_s, &used);
      if (used != hi_s.size()) throw std::invalid_argument("bad degree '" + hi_s + "'");
      if (hi < lo) throw std::invalid_argument("empty degree range '" + item + "'");
      for (int k = lo; k <= hi; ++k) out.push_back(k);
    }
  }
  return out;
}

StudyConfig to_study_config(const ConfigFile& cfg) {
  const Reader r(cfg);
  StudyConfig sc;

  const double lambda = r.real("material.lambda", 1.0);
  const double mu = r.real("material.mu", 1.0);
  if (!Material::admissible(lambda, mu)) {
    const ConfigEntry* e = r.get("material.mu") ? r.get("material.mu") : r.get("material.lambda");
    const std::string msg = fmt::format("inadmissible Lame constants (lambda={}, mu={}): need mu > 0 and 3 lambda + 2 mu > 0",
                                        lambda, mu);
    if (e) r.fail(*e, "material", msg);
    throw ConfigError("config", 0, msg);
  }
  sc.material = Material(lambda, mu);

  const std::string kind = r.word("surface.kind", "sphere");
  const Vec3 center = r.triple("surface.center", Vec3::Zero());
  if (kind == "sphere") {
    sc.surface = Sphere{center, r.real("surface.radius", 1.0)};
  } else if (kind == "ellipsoid") {
    sc.surface = Ellipsoid{center, r.triple("surface.semi_axes", Vec3::Ones())};
  } else if (kind == "star") {
    StarShaped s;
    s.center = center;
    const ConfigEntry* e = r.get("surface.radial");
    if (!e) throw ConfigError("config", 0, "surface.radial is required for kind = star");
    std::istringstream terms(e->value);
    std::string term;
    while (std::getline(terms, term, ';')) {
      if (trim(term).empty()) continue;
      std::istringstream ts(term);
      RadialTerm t;
      std::string rest;
      if (!(ts >> t.degree >> t.index >> t.value) || (ts >> rest)) {
        r.fail(*e, "surface.radial", fmt::format("expected 'degree index value' triples separated by ';', got '{}'",
                                                 trim(term)));
      }
      s.radial.push_back(t);
    }
    const std::string sym = r.word("surface.symmetry", "generic");
    if (sym == "generic") {
      s.symmetry = StarShaped::Symmetry::Generic;
    } else if (sym == "axisymmetric") {
      s.symmetry = StarShaped::Symmetry::Axisymmetric;
    } else if (sym == "sphere") {
      s.symmetry = StarShaped::Symmetry::Sphere;
    } else {
      r.fail(*r.get("surface.symmetry"), "surface.symmetry", "expected generic, axisymmetric or sphere");
    }
    s.axis = r.triple("surface.axis", Vec3::UnitZ());
    sc.surface = s;
  } else {
    r.fail(*r.get("surface.kind"), "surface.kind", fmt::format("expected sphere, ellipsoid or star, got '{}'", kind));
  }
  try {
    validate(sc.surface);
  } catch (const std::invalid_argument& ex) {
    const ConfigEntry* e = r.get("surface.kind");
    throw ConfigError(e ? e->origin : "config", e ? e->line : 0, ex.what());
  }

  const std::string type = r.word("problem.type", "iii");
  if (type == "iii" || type == "3") {
    sc.problem = Problem::III;
  } else if (type == "iv" || type == "4") {
    sc.problem = Problem::IV;
  } else {
    r.fail(*r.get("problem.type"), "problem.type", fmt::format("expected III or IV, got '{}'", type));
  }
  if (const auto* e = r.get("problem.degrees")) {
    try {
      sc.degrees = parse_degree_list(e->value);
    } catch (const std::exception& ex) {
      r.fail(*e, "problem.degrees", ex.what());
    }
    for (std::size_t n = 0; n < sc.degrees.size(); ++n) {
      if (sc.degrees[n] < 0 || (n > 0 && sc.degrees[n] <= sc.degrees[n - 1])) {
        r.fail(*e, "problem.degrees", "degrees must be non-negative and strictly increasing");
      }
    }
  }
  sc.n_theta = static_cast<int>(r.integer("problem.n_theta", 32));
  sc.n_phi = static_cast<int>(r.integer("problem.n_phi", 64));
  if (sc.n_theta < 4) r.fail(*r.get("problem.n_theta"), "problem.n_theta", "must be >= 4");
  if (sc.n_phi < 8) r.fail(*r.get("problem.n_phi"), "problem.n_phi", "must be >= 8");
  sc.fit.svd_tol = r.real("problem.svd_tol", 1e-12);
  if (!(sc.fit.svd_tol > 0.0 && sc.fit.svd_tol < 1.0)) {
    r.fail(*r.get("problem.svd_tol"), "problem.svd_tol", "must lie in (0, 1)");
  }
  sc.fit.vector_weight = r.real("problem.vector_weight", 1.0);
  if (!(sc.fit.vector_weight > 0.0)) r.fail(*r.get("problem.vector_weight"), "problem.vector_weight", "must be positive");
  sc.fit.reproject_tangential = r.boolean("problem.reproject_tangential", false);
  sc.fit.tangency_tol = r.real("problem.tangency_tol", 1e-8);

  const std::string src = r.word("source.kind", "kelvin");
  if (src == "kelvin") {
    KelvinSource k;
    k.y0 = r.triple("source.y0", Vec3(0.0, 0.0, 3.0));
    const long long row = r.integer("source.row", 1);
    if (row < 1 || row > 3) r.fail(*r.get("source.row"), "source.row", "must be 1, 2 or 3");
    k.row = static_cast<int>(row - 1);
    if (!strictly_outside(sc.surface, k.y0)) {
      const ConfigEntry* e = r.get("source.y0");
      const std::string msg = "Kelvin source point must lie strictly outside the surface";
      if (e) r.fail(*e, "source.y0", msg);
      throw ConfigError("config", 0, "source.y0: " + msg);
    }
    sc.source = k;
  } else if (src == "basis") {
    const long long idx = r.integer("source.index", 0);
    if (idx < 0) r.fail(*r.get("source.index"), "source.index", "must be >= 0");
    sc.source = BasisElementSource{static_cast<std::size_t>(idx)};
  } else if (src == "rotation") {
    sc.source = RotationFieldSource{static_cast<int>(r.integer("source.index", 0))};
  } else if (src == "csv") {
    const ConfigEntry* e = r.get("source.path");
    if (!e || e->value.empty()) throw ConfigError("config", 0, "source.path is required for kind = csv");
    sc.source = UserCsvSource{e->value};
  } else {
    r.fail(*r.get("source.kind"), "source.kind", fmt::format("expected kelvin, basis, rotation or csv, got '{}'", src));
  }

  sc.probe_count = static_cast<int>(r.integer("probe.count", 20));
  sc.probe_seed = static_cast<std::uint64_t>(r.integer("probe.seed", 20240101));
  return sc;
}

int solve_degree(const ConfigFile& cfg, const StudyConfig& study) {
  const Reader r(cfg);
  const long long k = r.integer("problem.degree", study.degrees.empty() ? 8 : study.degrees.back());
  if (k < 0) r.fail(*r.get("problem.degree"), "problem.degree", "must be >= 0");
  return static_cast<int>(k);
}

}  // namespace trefftz::cli
