#pragma once

// Brute-force checks of the linear (dilute-host) theory by pairwise summation
// of free-space two-atom potentials, and a Richardson finite-difference
// derivative used to verify analytic forces.

#include <functional>
#include <limits>
#include <optional>

#include "lfvdw/green.hpp"
#include "lfvdw/quad.hpp"
#include "lfvdw/response.hpp"

namespace lfvdw::oracle {

/// Host medium made of independent atoms at number density rho.
struct DiluteHost {
  double density = 0.0;  // atoms per (c/w_ref)^3
  AtomModel atom;
  std::optional<MagnetizabilityModel> magnetizability;

  double chi(double u) const;   // 4 pi rho alpha(iu)
  double zeta(double u) const;  // 4 pi rho beta(iu)
  /// eps = 1 + chi, mu = 1 + zeta as Lorentz terms.
  MediumResponse medium() const;
  /// Centred spherical body of this host with the given radii.
  BodyShell body(double inner_radius, double outer_radius) const;
};

/// Largest |chi(iu)| and |zeta(iu)| allowed.
inline constexpr double dilute_limit = 0.01;

/// Throws ValidationError unless the host is dilute on the whole axis.
void validate(const DiluteHost& host);

/// rho * int_{R_c}^inf 4 pi s^2 [U_el(s) + U_mag(s)] ds.
double u1_pairwise_sum(const AtomModel& guest, const DiluteHost& host, double cavity_radius,
                       const quad::QuadSpec& q);

/// Pairwise sum over a centred sphere of radius outer_radius minus the
/// cavity. outer_radius = +inf is the infinite bulk.
double total_pairwise_sum(const AtomModel& guest, const DiluteHost& host, double outer_radius,
                          double cavity_radius, const quad::QuadSpec& q);

struct StepPolicy {
  double initial_step = 0.05;  // relative to |x| (absolute if x = 0)
  int levels = 4;              // step halvings in the Richardson table
};

struct FdResult {
  double value = 0.0;  // -dU/dx
  double error = 0.0;  // difference of the last two extrapolants
};

/// -dU/dx at x by Richardson-extrapolated central differences.
FdResult finite_difference_force(const std::function<double(double)>& potential, double x,
                                 const StepPolicy& policy = {});

}  // namespace lfvdw::oracle
