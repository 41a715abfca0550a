#pragma once

// Dyadic Green tensors on the imaginary frequency axis, the traced pair
// kernels of the free-space two-atom potential, and the linear-Born
// scattering trace of a homogeneous spherical body around the atom.

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "lfvdw/quad.hpp"
#include "lfvdw/response.hpp"

namespace lfvdw {

using Vec3 = Eigen::Vector3d;
using Mat3c = Eigen::Matrix3cd;

struct GreenDyad {
  Mat3c matrix = Mat3c::Zero();
  Vec3 separation = Vec3::Zero();  // r - r'
  double frequency = 0.0;          // u
};

/// Bulk Green tensor of the infinitely extended medium between r and rp at
/// w = iu. Throws SingularityError for coincident points.
GreenDyad bulk_dyad(const MediumResponse& m, const Vec3& r, const Vec3& rp, double u);
GreenDyad free_dyad(const Vec3& r, const Vec3& rp, double u);

/// Electric pair kernel g(x) = 2 e^{-2x} (3 + 6x + 5x^2 + 2x^3 + x^4).
double pair_kernel_g(double x);
/// dg/dx.
double pair_kernel_g_deriv(double x);
/// Magnetic pair kernel h(x) = 2 e^{-2x} (1 + 2x + x^2).
double pair_kernel_h(double x);

/// Concentric spherical body of host material around the atom. The atom sits
/// at the centre; outer_radius may be +inf (infinite bulk).
struct BodyShell {
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  std::function<double(double)> chi;   // chi(iu)
  std::function<double(double)> zeta;  // zeta(iu); empty means 0
};

void validate(const BodyShell& shell);

/// Tr G^(1)_med(r_A, r_A, iu) of the undisturbed host body to linear order in
/// chi and zeta. For a finite sphere the material missing outside
/// outer_radius is subtracted from the bulk, which itself scatters nothing.
/// Susceptibilities above 0.1 in magnitude append a warning to `warnings`.
double born_scatter_trace(const BodyShell& shell, double u, const quad::QuadSpec& q,
                          std::vector<std::string>* warnings = nullptr);

}  // namespace lfvdw
