#pragma once

// Real-cavity coefficients on the imaginary frequency axis: the cavity
// reflection coefficient C_l (electric and magnetic multipoles), the
// transmission factor D, and their small-radius expansions.
//
// All functions take u > 0 and return real numbers. C_l(iu) is evaluated
// exactly as a complex ratio of spherical Bessel/Hankel products at
// z0 = i u R, z = n(iu) z0 and checked to be real; the single-atom cavity
// Green tensor at the centre is then -(u/6 pi) C_1(iu) I.

#include "lfvdw/response.hpp"

namespace lfvdw {

struct CavitySpec {
  double radius = 0.0;  // R_c in c/w_ref
  MediumResponse host;
};

void validate(const CavitySpec& spec);

enum class Multipole { electric, magnetic };

/// C_l at a single frequency for given local permittivity/permeability values.
/// x = u R_c. The magnetic coefficient is the electric one with eps <-> mu.
double cavity_C_exact(double eps, double mu, double x, int l, Multipole kind = Multipole::electric);

double coeff_C_exact(const CavitySpec& spec, int l, double u, Multipole kind = Multipole::electric);

/// The three retained terms of the small-radius expansion of C_1^E:
/// leading ~ (uR)^-3, middle ~ (uR)^-1 and the radius-independent constant.
struct CExpansion {
  double leading = 0.0;
  double middle = 0.0;
  double constant = 0.0;
  double total() const { return leading + middle + constant; }
};

CExpansion cavity_C_expansion(double eps, double mu, double x);
CExpansion coeff_C_expansion(const CavitySpec& spec, double u);

/// Two-term small-radius form of C_2^E: (uR)^-5 and (uR)^-3 terms.
struct C2Expansion {
  double leading = 0.0;
  double next = 0.0;
  double total() const { return leading + next; }
};
C2Expansion cavity_C2_expansion(double eps, double mu, double x);

/// Transmission factor D at a single frequency; asserts D is real, finite
/// and positive.
double cavity_D_exact(double eps, double mu, double x);
double coeff_D_exact(const CavitySpec& spec, double u);

/// Leading-order transmission factor 3 eps / (2 eps + 1).
inline double local_field_factor(double eps) { return 3.0 * eps / (2.0 * eps + 1.0); }
double coeff_D_leading(const MediumResponse& m, double u);

}  // namespace lfvdw
