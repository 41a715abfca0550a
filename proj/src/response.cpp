#include "lfvdw/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lfvdw/errors.hpp"

namespace lfvdw {
namespace {

void check_u(double u) {
  if (!(u >= 0.0)) throw DomainError("imaginary frequency u must be >= 0, got " + std::to_string(u));
}

double lorentz_sum(const std::vector<LorentzTerm>& terms, double u) {
  check_u(u);
  double s = 1.0;
  for (const auto& t : terms) {
    s += t.plasma_strength / (t.resonance * t.resonance + t.damping * u + u * u);
  }
  return s;
}

double oscillator_sum(const std::vector<Resonance>& rs, double u) {
  check_u(u);
  double s = 0.0;
  for (const auto& r : rs) {
    const double w2 = r.frequency * r.frequency;
    s += r.static_strength * w2 / (w2 + u * u);
  }
  return s;
}

void validate_resonances(const std::vector<Resonance>& rs, const char* what) {
  for (const auto& r : rs) {
    if (!(r.frequency > 0.0) || !std::isfinite(r.frequency)) {
      throw ValidationError(std::string(what) + ": transition frequency must be > 0");
    }
    if (!(r.static_strength >= 0.0) || !std::isfinite(r.static_strength)) {
      throw ValidationError(std::string(what) + ": static strength must be >= 0");
    }
  }
}

}  // namespace

MediumResponse MediumResponse::single_resonance(double eps_static, double eps_resonance,
                                                double mu_static, double mu_resonance) {
  MediumResponse m;
  if (eps_static != 1.0) {
    m.eps_terms.push_back({(eps_static - 1.0) * eps_resonance * eps_resonance, eps_resonance, 0.0});
  }
  if (mu_static != 1.0) {
    m.mu_terms.push_back({(mu_static - 1.0) * mu_resonance * mu_resonance, mu_resonance, 0.0});
  }
  validate(m);
  return m;
}

void validate(const LorentzTerm& t) {
  if (!(t.resonance > 0.0) || !std::isfinite(t.resonance)) {
    throw ValidationError("Lorentz term resonance must be > 0");
  }
  if (!(t.plasma_strength >= 0.0) || !std::isfinite(t.plasma_strength)) {
    throw ValidationError("Lorentz term plasma strength must be >= 0");
  }
  if (!(t.damping >= 0.0) || !std::isfinite(t.damping)) {
    throw ValidationError("Lorentz term damping must be >= 0");
  }
}

void validate(const MediumResponse& m) {
  for (const auto& t : m.eps_terms) validate(t);
  for (const auto& t : m.mu_terms) validate(t);
}

void validate(const AtomModel& a) { validate_resonances(a.resonances, "atom"); }
void validate(const MagnetizabilityModel& b) { validate_resonances(b.resonances, "magnetizability"); }

double eps_iu(const MediumResponse& m, double u) { return lorentz_sum(m.eps_terms, u); }
double mu_iu(const MediumResponse& m, double u) { return lorentz_sum(m.mu_terms, u); }
double n_iu(const MediumResponse& m, double u) { return std::sqrt(eps_iu(m, u) * mu_iu(m, u)); }
double alpha_iu(const AtomModel& a, double u) { return oscillator_sum(a.resonances, u); }
double beta_iu(const MagnetizabilityModel& b, double u) { return oscillator_sum(b.resonances, u); }

namespace {
template <class Pick>
double fold_resonances(const std::vector<const AtomModel*>& atoms, const MediumResponse* medium,
                       double init, Pick pick) {
  double w = init;
  for (const auto* a : atoms) {
    if (!a) continue;
    for (const auto& r : a->resonances) w = pick(w, r.frequency);
  }
  if (medium) {
    for (const auto& t : medium->eps_terms) w = pick(w, t.resonance);
    for (const auto& t : medium->mu_terms) w = pick(w, t.resonance);
  }
  return std::isfinite(w) && w > 0.0 ? w : 1.0;
}
}  // namespace

double max_resonance(const std::vector<const AtomModel*>& atoms, const MediumResponse* medium) {
  return fold_resonances(atoms, medium, 0.0, [](double a, double b) { return std::max(a, b); });
}

double min_resonance(const std::vector<const AtomModel*>& atoms, const MediumResponse* medium) {
  return fold_resonances(atoms, medium, std::numeric_limits<double>::infinity(),
                         [](double a, double b) { return std::min(a, b); });
}

}  // namespace lfvdw
