#include "lfvdw/config.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lfvdw/errors.hpp"

namespace lfvdw::config {

using nlohmann::json;

namespace {

void only_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ValidationError(where + ": unknown key '" + key + "'");
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing '" + key + "'");
  if (!it->is_number()) throw ValidationError(where + "." + key + ": expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ValidationError(where + "." + key + ": not finite");
  return v;
}

double number_or(const json& obj, const std::string& key, const std::string& where, double fallback) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::optional<double> optional_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) return std::nullopt;
  if (obj.at(key).is_string() && obj.at(key).get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  return number(obj, key, where);
}

std::optional<std::string> optional_string(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) return std::nullopt;
  if (!obj.at(key).is_string()) throw ValidationError(where + "." + key + ": expected a string");
  return obj.at(key).get<std::string>();
}

std::vector<double> grid(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) return {};
  const auto& arr = obj.at(key);
  const std::string path = where + "." + key;
  std::vector<double> out;
  if (arr.is_object()) {
    // {"from": a, "to": b, "points": n, "spacing": "log"|"linear"}
    only_keys(arr, path, {"from", "to", "points", "spacing"});
    const double a = number(arr, "from", path);
    const double b = number(arr, "to", path);
    const double n = number(arr, "points", path);
    if (n < 2 || n != std::floor(n)) throw ValidationError(path + ".points: need an integer >= 2");
    const std::string spacing = arr.value("spacing", std::string("log"));
    if (spacing != "log" && spacing != "linear") throw ValidationError(path + ".spacing: 'log' or 'linear'");
    if (spacing == "log" && !(a > 0.0 && b > 0.0)) throw ValidationError(path + ": log grid needs positive ends");
    const int np = static_cast<int>(n);
    for (int i = 0; i < np; ++i) {
      const double t = static_cast<double>(i) / (np - 1);
      out.push_back(spacing == "log" ? a * std::pow(b / a, t) : a + (b - a) * t);
    }
  } else if (arr.is_array()) {
    for (const auto& v : arr) {
      if (!v.is_number()) throw ValidationError(path + ": expected numbers");
      out.push_back(v.get<double>());
    }
  } else {
    throw ValidationError(path + ": expected an array or a range object");
  }
  if (out.empty()) throw ValidationError(path + ": grid is empty");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) throw ValidationError(path + ": grid must be strictly increasing");
  }
  return out;
}

std::vector<LorentzTerm> lorentz_terms(const json& arr, const std::string& where, const UnitSystem& u) {
  if (!arr.is_array()) throw ValidationError(where + ": expected an array of oscillators");
  std::vector<LorentzTerm> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = where + "[" + std::to_string(i) + "]";
    only_keys(arr[i], path, {"strength", "resonance", "damping"});
    LorentzTerm t{number(arr[i], "strength", path), number(arr[i], "resonance", path),
                  number_or(arr[i], "damping", path, 0.0)};
    if (u.si) {
      const auto s = u.scale();
      t.plasma_strength = s.frequency_squared_to_reduced(t.plasma_strength);
      t.resonance = s.frequency_to_reduced(t.resonance);
      t.damping = s.frequency_to_reduced(t.damping);
    }
    out.push_back(t);
  }
  return out;
}

MediumResponse parse_material(const json& obj, const std::string& where, const UnitSystem& u) {
  only_keys(obj, where, {"eps", "mu", "eps_static", "eps_resonance", "mu_static", "mu_resonance"});
  const bool explicit_terms = obj.contains("eps") || obj.contains("mu");
  const bool shorthand = obj.contains("eps_static") || obj.contains("mu_static");
  if (explicit_terms && shorthand) {
    throw ValidationError(where + ": give either oscillator lists or static values, not both");
  }
  MediumResponse m;
  if (shorthand) {
    const double scale = u.si ? u.omega_ref : 1.0;
    m = MediumResponse::single_resonance(number_or(obj, "eps_static", where, 1.0),
                                         number_or(obj, "eps_resonance", where, scale) / scale,
                                         number_or(obj, "mu_static", where, 1.0),
                                         number_or(obj, "mu_resonance", where, scale) / scale);
  } else {
    if (obj.contains("eps")) m.eps_terms = lorentz_terms(obj.at("eps"), where + ".eps", u);
    if (obj.contains("mu")) m.mu_terms = lorentz_terms(obj.at("mu"), where + ".mu", u);
  }
  validate(m);
  return m;
}

std::vector<Resonance> resonances(const json& arr, const std::string& where, const UnitSystem& u) {
  if (!arr.is_array() || arr.empty()) throw ValidationError(where + ": expected a non-empty array");
  std::vector<Resonance> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = where + "[" + std::to_string(i) + "]";
    only_keys(arr[i], path, {"frequency", "static"});
    Resonance r{number(arr[i], "frequency", path), number(arr[i], "static", path)};
    if (u.si) {
      r.frequency = u.scale().frequency_to_reduced(r.frequency);
      r.static_strength = u.scale().volume_to_reduced(r.static_strength);
    }
    out.push_back(r);
  }
  return out;
}

AtomSpec parse_atom(const json& obj, const std::string& where, const UnitSystem& u) {
  only_keys(obj, where, {"polarizability", "magnetizability"});
  if (!obj.contains("polarizability")) throw ValidationError(where + ": missing 'polarizability'");
  AtomSpec a;
  a.polarizability.resonances = resonances(obj.at("polarizability"), where + ".polarizability", u);
  validate(a.polarizability);
  if (obj.contains("magnetizability")) {
    a.magnetizability = MagnetizabilityModel{resonances(obj.at("magnetizability"), where + ".magnetizability", u)};
    validate(*a.magnetizability);
  }
  return a;
}

}  // namespace

const MediumResponse& RunConfig::material(const std::string& name) const {
  const auto it = materials.find(name);
  if (it == materials.end()) throw ValidationError("unknown material '" + name + "'");
  return it->second;
}

const AtomSpec& RunConfig::atom(const std::string& name) const {
  const auto it = atoms.find(name);
  if (it == atoms.end()) throw ValidationError("unknown atom '" + name + "'");
  return it->second;
}

RunConfig parse(const json& doc, const std::string& base_dir) {
  only_keys(doc, "config", {"unit_system", "quadrature", "materials", "atoms", "sweep", "run"});
  RunConfig cfg;
  cfg.base_dir = base_dir;

  if (doc.contains("unit_system")) {
    const auto& us = doc.at("unit_system");
    only_keys(us, "unit_system", {"kind", "omega_ref"});
    const std::string kind = us.value("kind", std::string("reduced"));
    if (kind == "si") {
      cfg.units.si = true;
      cfg.units.omega_ref = number(us, "omega_ref", "unit_system");
      if (!(cfg.units.omega_ref > 0.0)) throw ValidationError("unit_system.omega_ref must be positive");
    } else if (kind == "reduced") {
      if (us.contains("omega_ref")) throw ValidationError("unit_system.omega_ref only applies to kind 'si'");
    } else {
      throw ValidationError("unit_system.kind must be 'reduced' or 'si'");
    }
  }
  const UnitSystem& u = cfg.units;

  if (doc.contains("quadrature")) {
    const auto& q = doc.at("quadrature");
    only_keys(q, "quadrature", {"rel_tol", "abs_tol", "max_subdivisions", "transform", "scale"});
    cfg.quadrature.rel_tol = number_or(q, "rel_tol", "quadrature", cfg.quadrature.rel_tol);
    cfg.quadrature.abs_tol = number_or(q, "abs_tol", "quadrature", cfg.quadrature.abs_tol);
    cfg.quadrature.max_subdivisions =
        static_cast<int>(number_or(q, "max_subdivisions", "quadrature", cfg.quadrature.max_subdivisions));
    cfg.quadrature.scale = number_or(q, "scale", "quadrature", 0.0);
    if (u.si && cfg.quadrature.scale > 0.0) cfg.quadrature.scale = u.scale().frequency_to_reduced(cfg.quadrature.scale);
    if (q.contains("transform")) {
      const std::string t = q.at("transform").get<std::string>();
      if (t == "rational") {
        cfg.quadrature.transform = quad::Transform::rational_map;
      } else if (t == "exp") {
        cfg.quadrature.transform = quad::Transform::exp_map;
      } else {
        throw ValidationError("quadrature.transform must be 'rational' or 'exp'");
      }
    }
    quad::validate(cfg.quadrature);
  }

  for (const char* section : {"materials", "atoms"}) {
    if (doc.contains(section) && !doc.at(section).is_object()) {
      throw ValidationError(std::string(section) + ": expected an object of named entries");
    }
  }
  const json materials = doc.value("materials", json::object());
  const json atoms = doc.value("atoms", json::object());
  for (const auto& [name, obj] : materials.items()) {
    cfg.materials[name] = parse_material(obj, "materials." + name, u);
  }
  cfg.materials.emplace("vacuum", MediumResponse::vacuum());
  for (const auto& [name, obj] : atoms.items()) {
    cfg.atoms[name] = parse_atom(obj, "atoms." + name, u);
  }

  if (doc.contains("sweep")) {
    const auto& s = doc.at("sweep");
    only_keys(s, "sweep", {"distances", "radii", "u_grid", "static_permittivities"});
    cfg.sweep.distances = grid(s, "distances", "sweep");
    cfg.sweep.radii = grid(s, "radii", "sweep");
    cfg.sweep.u_grid = grid(s, "u_grid", "sweep");
    cfg.sweep.static_permittivities = grid(s, "static_permittivities", "sweep");
    if (u.si) {
      for (auto& v : cfg.sweep.distances) v = u.scale().length_to_reduced(v);
      for (auto& v : cfg.sweep.radii) v = u.scale().length_to_reduced(v);
      for (auto& v : cfg.sweep.u_grid) v = u.scale().frequency_to_reduced(v);
    }
  }

  if (doc.contains("run")) {
    const auto& r = doc.at("run");
    only_keys(r, "run", {"atom_a", "atom_b", "material", "host_atom", "positions_file", "cavity_radius",
                         "outer_radius", "host_density", "corrected"});
    cfg.run.atom_a = optional_string(r, "atom_a", "run");
    cfg.run.atom_b = optional_string(r, "atom_b", "run");
    cfg.run.material = optional_string(r, "material", "run");
    cfg.run.host_atom = optional_string(r, "host_atom", "run");
    cfg.run.positions_file = optional_string(r, "positions_file", "run");
    cfg.run.cavity_radius = optional_number(r, "cavity_radius", "run");
    cfg.run.outer_radius = optional_number(r, "outer_radius", "run");
    cfg.run.host_density = optional_number(r, "host_density", "run");
    if (r.contains("corrected")) {
      if (!r.at("corrected").is_boolean()) throw ValidationError("run.corrected: expected true or false");
      cfg.run.corrected = r.at("corrected").get<bool>();
    }
    if (u.si) {
      if (cfg.run.cavity_radius) cfg.run.cavity_radius = u.scale().length_to_reduced(*cfg.run.cavity_radius);
      if (cfg.run.outer_radius) cfg.run.outer_radius = u.scale().length_to_reduced(*cfg.run.outer_radius);
      if (cfg.run.host_density) cfg.run.host_density = u.scale().density_to_reduced(*cfg.run.host_density);
    }
  }
  for (const auto* name : {&cfg.run.atom_a, &cfg.run.atom_b, &cfg.run.host_atom}) {
    if (*name) cfg.atom(**name);
  }
  if (cfg.run.material) cfg.material(*cfg.run.material);
  return cfg;
}

RunConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  const auto dir = std::filesystem::path(path).parent_path();
  return parse(doc, dir.empty() ? "." : dir.string());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace lfvdw::config
