#pragma once

// Reduced unit system. Frequencies are measured in a reference frequency
// w_ref, lengths in c/w_ref, energies in hbar*w_ref and polarizabilities in
// 4*pi*eps0*(c/w_ref)^3. In these units hbar = c = 1, 4*pi*eps0 = 1 and
// mu0 = 4*pi, so e.g. chi = rho*alpha/eps0 becomes 4*pi*rho*alpha.

#include <numbers>

namespace lfvdw::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double eps0 = 1.0 / (4.0 * pi);
inline constexpr double mu0 = 4.0 * pi;

namespace si {
inline constexpr double c = 299792458.0;             // m/s
inline constexpr double hbar = 1.054571817e-34;      // J s
}  // namespace si

/// Converts between SI and reduced quantities for a given w_ref [rad/s].
struct SiScale {
  double omega_ref;

  double frequency_to_reduced(double w) const { return w / omega_ref; }
  double frequency_squared_to_reduced(double w2) const { return w2 / (omega_ref * omega_ref); }
  double length_to_reduced(double meters) const { return meters * omega_ref / si::c; }
  double length_to_si(double l) const { return l * si::c / omega_ref; }
  /// Polarizability volume alpha/(4 pi eps0) in m^3.
  double volume_to_reduced(double m3) const {
    const double unit = si::c / omega_ref;
    return m3 / (unit * unit * unit);
  }
  double volume_to_si(double v) const {
    const double unit = si::c / omega_ref;
    return v * unit * unit * unit;
  }
  double energy_to_si(double e) const { return e * si::hbar * omega_ref; }
  double force_to_si(double f) const { return f * si::hbar * omega_ref * omega_ref / si::c; }
  double stiffness_to_si(double k) const {
    return k * si::hbar * omega_ref * omega_ref * omega_ref / (si::c * si::c);
  }
  /// Density in atoms per m^3.
  double density_to_reduced(double per_m3) const {
    const double unit = si::c / omega_ref;
    return per_m3 * unit * unit * unit;
  }
};

}  // namespace lfvdw::units
