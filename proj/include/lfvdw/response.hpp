#pragma once

// Material and atomic response on the imaginary frequency axis w = iu, in
// reduced units (see units.hpp).

#include <vector>

namespace lfvdw {

/// One Drude-Lorentz oscillator: S / (w_T^2 + gamma*u + u^2) on the imaginary axis.
struct LorentzTerm {
  double plasma_strength = 0.0;  // S, units w_ref^2
  double resonance = 1.0;        // w_T
  double damping = 0.0;          // gamma
};

struct MediumResponse {
  std::vector<LorentzTerm> eps_terms;
  std::vector<LorentzTerm> mu_terms;

  static MediumResponse vacuum() { return {}; }
  /// Single undamped oscillator in each channel with the given static values.
  static MediumResponse single_resonance(double eps_static, double eps_resonance,
                                         double mu_static = 1.0, double mu_resonance = 1.0);
  /// Same response with the electric and magnetic channels exchanged.
  MediumResponse swapped() const { return {mu_terms, eps_terms}; }
};

/// One atomic transition of an isotropic ground-state atom.
struct Resonance {
  double frequency = 1.0;        // w_k
  double static_strength = 0.0;  // contribution to alpha(0) [4 pi eps0 (c/w_ref)^3]
};

/// Isotropic polarizability alpha(iu) = sum_k a_k w_k^2 / (w_k^2 + u^2).
struct AtomModel {
  std::vector<Resonance> resonances;

  static AtomModel single(double frequency, double static_polarizability) {
    return {{{frequency, static_polarizability}}};
  }
};

/// Isotropic magnetizability with the same oscillator form as AtomModel;
/// strengths are mu0*beta/(4 pi) in (c/w_ref)^3.
struct MagnetizabilityModel {
  std::vector<Resonance> resonances;
};

void validate(const LorentzTerm& t);
void validate(const MediumResponse& m);
void validate(const AtomModel& a);
void validate(const MagnetizabilityModel& b);

double eps_iu(const MediumResponse& m, double u);
double mu_iu(const MediumResponse& m, double u);
double n_iu(const MediumResponse& m, double u);
double alpha_iu(const AtomModel& a, double u);
double beta_iu(const MagnetizabilityModel& b, double u);

inline double eps_static(const MediumResponse& m) { return eps_iu(m, 0.0); }
inline double mu_static(const MediumResponse& m) { return mu_iu(m, 0.0); }
inline double alpha_static(const AtomModel& a) { return alpha_iu(a, 0.0); }

/// Smallest / largest resonance frequency among the given models. Models with
/// no resonances are ignored; returns 1 (the reference frequency) if none.
double max_resonance(const std::vector<const AtomModel*>& atoms, const MediumResponse* medium);
double min_resonance(const std::vector<const AtomModel*>& atoms, const MediumResponse* medium);

}  // namespace lfvdw
