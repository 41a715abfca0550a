#pragma once

// Local-field corrected van der Waals potentials, coefficients and forces for
// one, two and N ground-state atoms, in reduced units.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lfvdw/cavity.hpp"
#include "lfvdw/green.hpp"
#include "lfvdw/quad.hpp"
#include "lfvdw/response.hpp"

namespace lfvdw {

// ---------------------------------------------------------------- one atom

/// Small-radius single-atom cavity term, split into its R_c^-3 and R_c^-1
/// contributions.
struct U1Expanded {
  double radius_cubed_term = 0.0;
  double radius_inverse_term = 0.0;
  double total() const { return radius_cubed_term + radius_inverse_term; }
};

U1Expanded u1_expanded(const AtomModel& atom, const CavitySpec& spec, const quad::QuadSpec& q);

/// Cavity term from the exact C_1(iu).
double u1_exact(const AtomModel& atom, const CavitySpec& spec, const quad::QuadSpec& q);

/// u -> Tr G^(1)_med(r_A, r_A, iu) of the undisturbed host.
using ScatterTrace = std::function<double(double)>;

struct U2Result {
  double value = 0.0;
  /// Extremes of the pointwise enhancement [3eps/(2eps+1)]^2 at the quadrature nodes.
  double factor_min = 1.0;
  double factor_max = 1.0;
};

/// Local-field corrected medium-scattering term (leading-order D^2).
U2Result u2_single(const AtomModel& atom, const CavitySpec& spec, const ScatterTrace& scatter_trace,
                   const quad::QuadSpec& q);

/// Uncorrected single-atom potential for the same scattering trace (D = 1).
double u_single_uncorrected(const AtomModel& atom, const ScatterTrace& scatter_trace,
                            const quad::QuadSpec& q);

struct SingleAtomResult {
  double u1 = 0.0;  // small-radius cavity term
  double u2 = 0.0;
  double total = 0.0;  // u1 + u2
  U1Expanded u1_terms;
  double u1_exact = 0.0;
  U2Result u2_detail;
  std::vector<std::string> warnings;
};

SingleAtomResult single_atom(const AtomModel& atom, const CavitySpec& spec,
                             const ScatterTrace& scatter_trace, const quad::QuadSpec& q);

// --------------------------------------------------------------- two atoms

enum class PairParts { electric, magnetic, both };

struct PairEnergy {
  double electric = 0.0;
  double magnetic = 0.0;
  double total() const { return electric + magnetic; }
};

/// Free-space two-atom potential between a polarizable atom A and a partner
/// with polarizability alpha_B and (optional) magnetizability beta_B.
PairEnergy pair_free_space(const AtomModel& a, const AtomModel& b, const MagnetizabilityModel* beta_b,
                           double l, const quad::QuadSpec& q, PairParts parts = PairParts::both);

struct PairOptions {
  /// Cavity radius of the guest atoms; 0 disables the l >> R_c guard.
  double cavity_radius = 0.0;
  /// Number of log-spaced samples in [1e-3, 1e3] * w_max for the enhancement profile.
  int profile_points = 13;
};

struct PairResult {
  double separation = 0.0;
  double energy = 0.0;
  bool corrected = true;
  double ratio_min = 1.0;  // corrected/uncorrected integrand at the nodes
  double ratio_max = 1.0;
  std::vector<std::pair<double, double>> enhancement_profile;  // (u, [3eps/(2eps+1)]^4)
  std::vector<std::string> warnings;
};

/// Two atoms in magnetoelectric bulk; `corrected` applies [3eps/(2eps+1)]^4.
PairResult pair_bulk(const AtomModel& a, const AtomModel& b, const MediumResponse& m, double l,
                     const quad::QuadSpec& q, bool corrected = true, const PairOptions& opts = {});

/// Retarded coefficient C_r with U -> -C_r / l^7.
double coeff_retarded(const AtomModel& a, const AtomModel& b, const MediumResponse& m,
                      bool corrected = true);
/// Non-retarded coefficient C_nr with U -> -C_nr / l^6.
double coeff_nonretarded(const AtomModel& a, const AtomModel& b, const MediumResponse& m,
                         const quad::QuadSpec& q, bool corrected = true);

/// Radial force -dU/dl on atom A (negative = attractive).
struct ForceResult {
  double separation = 0.0;
  double force = 0.0;
};
ForceResult force_pair(const AtomModel& a, const AtomModel& b, const MediumResponse& m, double l,
                       const quad::QuadSpec& q, bool corrected = true, const PairOptions& opts = {});

// ----------------------------------------------------------------- N atoms

struct PlacedAtom {
  std::string name;
  AtomModel model;
  Vec3 position = Vec3::Zero();
};

struct CycleTerm {
  std::vector<int> cycle;  // atom indices; closed back to cycle.front()
  double energy = 0.0;
};

struct NBodyResult {
  double energy = 0.0;
  std::vector<CycleTerm> orderings;
  std::vector<std::string> warnings;
};

inline constexpr int max_nbody_atoms = 6;

/// N-atom local-field corrected potential in bulk, summed over the (N-1)!/2
/// distinct closed orderings (one for N = 2).
NBodyResult n_atom_bulk(const std::vector<PlacedAtom>& atoms, const MediumResponse& m,
                        const quad::QuadSpec& q, bool corrected = true, const PairOptions& opts = {});

/// Distinct closed orderings of N atoms starting at atom 0.
std::vector<std::vector<int>> distinct_cycles(int n);

// ------------------------------------------------------ cavity-centre force

enum class CentreRegime { neutral, unstable, restoring };
enum class HostClass { vacuum, dielectric, magnetic, magnetodielectric };

struct StiffnessResult {
  double k_exact = 0.0;          // from the exact C_2^E
  double k_small_radius = 0.0;   // two-term small-radius form
  double k_small_leading = 0.0;  // R_c^-5 part
  double k_small_next = 0.0;     // R_c^-3 part
  CentreRegime regime = CentreRegime::neutral;
  HostClass host = HostClass::vacuum;
  bool signs_agree = true;
  std::vector<std::string> diagnostics;
};

/// Linear force constant K (F = K * displacement) for an atom near the
/// centre of its cavity.
StiffnessResult cavity_center_stiffness(const AtomModel& atom, const CavitySpec& spec,
                                        const quad::QuadSpec& q);

HostClass classify_host(const MediumResponse& m);
const char* to_string(CentreRegime r);
const char* to_string(HostClass h);

}  // namespace lfvdw
