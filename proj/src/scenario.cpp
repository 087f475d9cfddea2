#include "bargmann/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <Eigen/Geometry>

namespace bargmann {

namespace {

using json = nlohmann::json;

constexpr std::string_view kKnownChecks[] = {kCheckProjection, kCheckVertical,   kCheckConstraint,
                                             kCheckCharges,    kCheckSymmetries, kCheckQuantum};

// Typed access to one JSON object that remembers which keys were consumed so
// unknown keys can be reported.
class FieldReader {
 public:
  FieldReader(const json& obj, std::string where, const std::string& source)
      : obj_(obj), where_(std::move(where)), source_(source) {
    if (!obj_.is_object()) fail(where_.empty() ? "<root>" : where_, "must be an object");
  }

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw ConfigError(source_ + ": field '" + field + "' " + msg);
  }

  [[nodiscard]] std::string path(const std::string& key) const {
    return where_.empty() ? key : where_ + "." + key;
  }

  [[nodiscard]] bool has(const std::string& key) const { return obj_.contains(key); }

  const json& at(const std::string& key) {
    if (!obj_.contains(key)) fail(path(key), "is missing");
    seen_.insert(key);
    return obj_.at(key);
  }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) fail(path(key), "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path(key), "must be finite");
    return d;
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  std::string string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) fail(path(key), "must be a string");
    return v.get<std::string>();
  }

  std::string string_or(const std::string& key, const std::string& fallback) {
    return has(key) ? string(key) : fallback;
  }

  Vec3 vec3(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array() || v.size() != 3) fail(path(key), "must be an array of three numbers");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
      if (!v[static_cast<std::size_t>(i)].is_number()) {
        fail(path(key), "must be an array of three numbers");
      }
      out[i] = v[static_cast<std::size_t>(i)].get<double>();
    }
    if (!out.allFinite()) fail(path(key), "must be finite");
    return out;
  }

  Vec3 vec3_or(const std::string& key, const Vec3& fallback) {
    return has(key) ? vec3(key) : fallback;
  }

  void reject_unknown() const {
    for (const auto& item : obj_.items()) {
      if (!seen_.contains(item.key())) fail(path(item.key()), "is not part of the schema");
    }
  }

 private:
  const json& obj_;
  std::string where_;
  const std::string& source_;
  std::set<std::string> seen_;
};

PotentialSpec read_potential(FieldReader& root, const std::string& source) {
  FieldReader r(root.at("potential"), "potential", source);
  PotentialSpec spec;
  spec.family = r.string("family");
  if (spec.family == "free") {
  } else if (spec.family == "uniform") {
    spec.g = r.vec3("g");
  } else if (spec.family == "harmonic") {
    spec.omega = r.number("omega");
  } else if (spec.family == "kepler") {
    spec.k = r.number("k");
    spec.softening = r.number_or("softening", spec.softening);
  } else {
    r.fail("potential.family", "has unknown value '" + spec.family +
                                   "' (expected free, uniform, harmonic or kepler)");
  }
  r.reject_unknown();
  return spec;
}

Tolerances read_tolerances(FieldReader& root, const std::string& source) {
  Tolerances t;
  if (!root.has("tolerances")) return t;
  FieldReader r(root.at("tolerances"), "tolerances", source);
  t.projection = r.number_or("projection", t.projection);
  t.vertical = r.number_or("vertical", t.vertical);
  t.constraint = r.number_or("constraint", t.constraint);
  t.charges = r.number_or("charges", t.charges);
  t.symmetries = r.number_or("symmetries", t.symmetries);
  t.commutation = r.number_or("commutation", t.commutation);
  t.quantum = r.number_or("quantum", t.quantum);
  r.reject_unknown();
  return t;
}

[[noreturn]] void invalid(const std::string& source, const std::string& field, const std::string& msg) {
  throw ConfigError(source + ": field '" + field + "' " + msg);
}

}  // namespace

Potential PotentialSpec::build() const {
  if (family == "free") return Potential::free();
  if (family == "uniform") return Potential::uniform(g);
  if (family == "harmonic") return Potential::harmonic(omega);
  if (family == "kepler") return Potential::kepler(k, softening);
  throw ConfigError("unknown potential family '" + family + "'");
}

BargmannMetric Scenario::metric() const { return BargmannMetric(potential.build(), mass, hbar); }

bool Scenario::wants(std::string_view check) const {
  return std::find(checks.begin(), checks.end(), check) != checks.end();
}

nlohmann::ordered_json Scenario::to_json() const {
  nlohmann::ordered_json pot;
  pot["family"] = potential.family;
  if (potential.family == "uniform") pot["g"] = {potential.g.x(), potential.g.y(), potential.g.z()};
  if (potential.family == "harmonic") pot["omega"] = potential.omega;
  if (potential.family == "kepler") {
    pot["k"] = potential.k;
    pot["softening"] = potential.softening;
  }
  nlohmann::ordered_json j;
  j["name"] = name;
  j["potential"] = pot;
  j["mass"] = mass;
  j["hbar"] = hbar;
  j["initial"] = {{"t0", t0},
                  {"r0", {r0.x(), r0.y(), r0.z()}},
                  {"v0", {v0.x(), v0.y(), v0.z()}},
                  {"s0", s0}};
  j["dt_step"] = dt_step;
  j["t_end"] = t_end;
  j["checks"] = checks;
  j["tolerances"] = {{"projection", tolerances.projection}, {"vertical", tolerances.vertical},
                     {"constraint", tolerances.constraint}, {"charges", tolerances.charges},
                     {"symmetries", tolerances.symmetries}, {"commutation", tolerances.commutation},
                     {"quantum", tolerances.quantum}};
  j["sample_points"] = sample_points;
  j["plot_data"] = plot_data;
  return j;
}

void validate_scenario(const Scenario& sc, const std::string& source) {
  if (sc.name.empty()) invalid(source, "name", "must be non-empty");
  if (sc.name.find_first_of("/\\") != std::string::npos) {
    invalid(source, "name", "must not contain path separators");
  }
  if (!(sc.mass > 0.0)) invalid(source, "mass", "must be > 0");
  if (!(sc.hbar > 0.0)) invalid(source, "hbar", "must be > 0");
  if (!(sc.dt_step > 0.0) || !std::isfinite(sc.dt_step)) invalid(source, "dt_step", "must be > 0");
  if (!(sc.t_end > sc.t0)) invalid(source, "t_end", "must be greater than initial.t0");
  if (sc.potential.family == "harmonic" && !(sc.potential.omega > 0.0)) {
    invalid(source, "potential.omega", "must be > 0");
  }
  if (sc.potential.family == "kepler") {
    if (!(sc.potential.k > 0.0)) invalid(source, "potential.k", "must be > 0");
    if (sc.potential.softening < 0.0) invalid(source, "potential.softening", "must be >= 0");
  }
  if (sc.output_format != "csv" && sc.output_format != "json") {
    invalid(source, "output.format", "must be 'csv' or 'json'");
  }
  if (sc.sample_points < 1) invalid(source, "sample_points", "must be >= 1");
  std::set<std::string> unique;
  for (const std::string& c : sc.checks) {
    if (std::find(std::begin(kKnownChecks), std::end(kKnownChecks), c) == std::end(kKnownChecks)) {
      invalid(source, "checks", "has unknown check '" + c + "'");
    }
    if (!unique.insert(c).second) invalid(source, "checks", "lists '" + c + "' twice");
  }
  if (sc.wants(kCheckQuantum) && sc.potential.family != "free" && sc.potential.family != "harmonic") {
    invalid(source, "checks",
            "requests 'quantum', which has builtin solutions only for free and harmonic potentials");
  }
}

Scenario parse_scenario(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }
  FieldReader root(doc, "", source);
  Scenario sc;
  sc.name = root.string("name");
  sc.potential = read_potential(root, source);
  sc.mass = root.number_or("mass", sc.mass);
  sc.hbar = root.number_or("hbar", sc.hbar);
  {
    FieldReader init(root.at("initial"), "initial", source);
    sc.t0 = init.number_or("t0", sc.t0);
    sc.r0 = init.vec3("r0");
    sc.v0 = init.vec3("v0");
    sc.s0 = init.number_or("s0", sc.s0);
    init.reject_unknown();
  }
  sc.dt_step = root.number("dt_step");
  sc.t_end = root.number("t_end");
  if (root.has("checks")) {
    const json& checks = root.at("checks");
    if (!checks.is_array()) root.fail("checks", "must be an array of strings");
    for (const json& c : checks) {
      if (!c.is_string()) root.fail("checks", "must be an array of strings");
      sc.checks.push_back(c.get<std::string>());
    }
  }
  sc.tolerances = read_tolerances(root, source);
  if (root.has("output")) {
    FieldReader out(root.at("output"), "output", source);
    sc.output_format = out.string_or("format", sc.output_format);
    sc.output_path = out.string_or("path", sc.output_path);
    out.reject_unknown();
  }
  if (root.has("seed")) {
    const json& seed = root.at("seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
      root.fail("seed", "must be a non-negative integer");
    }
    sc.seed = seed.get<std::uint64_t>();
  }
  if (root.has("sample_points")) {
    const json& n = root.at("sample_points");
    if (!n.is_number_integer()) root.fail("sample_points", "must be an integer");
    sc.sample_points = n.get<int>();
  }
  if (root.has("plot_data")) {
    const json& p = root.at("plot_data");
    if (!p.is_boolean()) root.fail("plot_data", "must be true or false");
    sc.plot_data = p.get<bool>();
  }
  root.reject_unknown();
  validate_scenario(sc, source);
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::vector<NamedGenerator> applicable_generators(const PotentialSpec& spec) {
  const auto& all = unit_generators();
  if (spec.family == "free" || (spec.family == "uniform" && spec.g.norm() == 0.0)) {
    return {all.begin(), all.end()};
  }
  std::vector<NamedGenerator> out;
  if (spec.family == "harmonic" || spec.family == "kepler") {
    // Central potentials keep rotations and both translations along t and s.
    for (int i = 0; i < 3; ++i) out.push_back(all[static_cast<std::size_t>(i)]);
    out.push_back(all[9]);
    out.push_back(all[10]);
    return out;
  }
  // Uniform field: rotations about g, translations and boosts orthogonal to g.
  const Vec3 axis = spec.g.normalized();
  const Vec3 e1 = axis.unitOrthogonal();
  const Vec3 e2 = axis.cross(e1);
  NamedGenerator rot{"rotation_g", {}};
  rot.params.omega = axis;
  out.push_back(rot);
  const Vec3 perp[2] = {e1, e2};
  for (int i = 0; i < 2; ++i) {
    NamedGenerator tr{"translation_perp" + std::to_string(i + 1), {}};
    tr.params.gamma = perp[i];
    out.push_back(tr);
    NamedGenerator bo{"boost_perp" + std::to_string(i + 1), {}};
    bo.params.beta = perp[i];
    out.push_back(bo);
  }
  out.push_back(all[9]);
  out.push_back(all[10]);
  return out;
}

double expected_lambda(const SchrodingerParams& params, const ExtendedPoint& p) {
  return params.delta + 2.0 * params.kappa * p.t;
}

}  // namespace bargmann
