#pragma once

// Run configuration for the command-line front end: a JSON document with
// named materials and atoms, quadrature overrides, sweep grids and the
// selection used by each command. Unknown keys are rejected. In SI mode every
// dimensional input is converted to reduced units here.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfvdw/quad.hpp"
#include "lfvdw/response.hpp"
#include "lfvdw/units.hpp"

namespace lfvdw::config {

struct UnitSystem {
  bool si = false;
  double omega_ref = 1.0;  // rad/s, SI mode only

  units::SiScale scale() const { return {omega_ref}; }
};

struct AtomSpec {
  AtomModel polarizability;
  std::optional<MagnetizabilityModel> magnetizability;
};

struct Sweep {
  std::vector<double> distances;
  std::vector<double> radii;
  std::vector<double> u_grid;
  std::vector<double> static_permittivities;
};

/// Names and scalars picked by the individual commands.
struct Selection {
  std::optional<std::string> atom_a;
  std::optional<std::string> atom_b;
  std::optional<std::string> material;
  std::optional<std::string> host_atom;
  std::optional<std::string> positions_file;
  std::optional<double> cavity_radius;
  std::optional<double> outer_radius;
  std::optional<double> host_density;
  bool corrected = true;
};

struct RunConfig {
  UnitSystem units;
  quad::QuadSpec quadrature;
  std::map<std::string, MediumResponse> materials;
  std::map<std::string, AtomSpec> atoms;
  Sweep sweep;
  Selection run;
  std::string base_dir;  // directory of the config file, for relative paths

  const MediumResponse& material(const std::string& name) const;
  const AtomSpec& atom(const std::string& name) const;
};

/// Parses and validates a configuration document; throws ValidationError.
RunConfig parse(const nlohmann::json& doc, const std::string& base_dir = ".");
RunConfig load(const std::string& path);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace lfvdw::config
