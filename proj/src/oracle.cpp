#include "lfvdw/oracle.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "lfvdw/errors.hpp"
#include "lfvdw/potentials.hpp"
#include "lfvdw/units.hpp"

namespace lfvdw::oracle {

using units::pi;

double DiluteHost::chi(double u) const { return 4.0 * pi * density * alpha_iu(atom, u); }

double DiluteHost::zeta(double u) const {
  return magnetizability ? 4.0 * pi * density * beta_iu(*magnetizability, u) : 0.0;
}

MediumResponse DiluteHost::medium() const {
  MediumResponse m;
  for (const auto& r : atom.resonances) {
    m.eps_terms.push_back({4.0 * pi * density * r.static_strength * r.frequency * r.frequency, r.frequency, 0.0});
  }
  if (magnetizability) {
    for (const auto& r : magnetizability->resonances) {
      m.mu_terms.push_back({4.0 * pi * density * r.static_strength * r.frequency * r.frequency, r.frequency, 0.0});
    }
  }
  return m;
}

BodyShell DiluteHost::body(double inner_radius, double outer_radius) const {
  BodyShell b;
  b.inner_radius = inner_radius;
  b.outer_radius = outer_radius;
  const DiluteHost self = *this;
  b.chi = [self](double u) { return self.chi(u); };
  if (magnetizability) b.zeta = [self](double u) { return self.zeta(u); };
  return b;
}

void validate(const DiluteHost& host) {
  if (!(host.density >= 0.0) || !std::isfinite(host.density)) {
    throw ValidationError("host density must be finite and non-negative");
  }
  validate(host.atom);
  if (host.magnetizability) validate(*host.magnetizability);
  // alpha(iu) and beta(iu) are largest at u = 0
  const double chi0 = std::abs(host.chi(0.0));
  const double zeta0 = std::abs(host.zeta(0.0));
  if (chi0 >= dilute_limit || zeta0 >= dilute_limit) {
    std::ostringstream os;
    os << "host is not dilute: chi(0) = " << chi0 << ", zeta(0) = " << zeta0 << " (limit " << dilute_limit << ")";
    throw ValidationError(os.str());
  }
}

namespace {

double pair_energy(const AtomModel& guest, const DiluteHost& host, double s, const quad::QuadSpec& q) {
  const MagnetizabilityModel* beta = host.magnetizability ? &*host.magnetizability : nullptr;
  return pair_free_space(guest, host.atom, beta, s, q).total();
}

// Retarded-limit coefficient C with U(s) -> -C / s^7.
double retarded_coefficient(const AtomModel& guest, const DiluteHost& host) {
  double c = 23.0 * alpha_static(guest) * alpha_static(host.atom) / (4.0 * pi);
  if (host.magnetizability) {
    c -= 7.0 * alpha_static(guest) * beta_iu(*host.magnetizability, 0.0) / (4.0 * pi);
  }
  return c;
}

double radial_sum(const AtomModel& guest, const DiluteHost& host, double lo, double hi,
                  const quad::QuadSpec& q) {
  if (hi <= lo) return 0.0;
  // s = e^t spreads the s^-4 near-cavity region and the far tail evenly
  auto weighted = [&](double s) { return 4.0 * pi * s * s * s * pair_energy(guest, host, s, q); };
  double norm = std::abs(weighted(lo));
  if (!(norm > 0.0) || !std::isfinite(norm)) norm = 1.0;
  const auto res = quad::integrate_finite(
      [&](double t) { return weighted(std::exp(t)) / norm; }, std::log(lo), std::log(hi), q);
  return host.density * norm * res.value;
}

}  // namespace

double u1_pairwise_sum(const AtomModel& guest, const DiluteHost& host, double cavity_radius,
                       const quad::QuadSpec& q) {
  return total_pairwise_sum(guest, host, std::numeric_limits<double>::infinity(), cavity_radius, q);
}

double total_pairwise_sum(const AtomModel& guest, const DiluteHost& host, double outer_radius,
                          double cavity_radius, const quad::QuadSpec& q) {
  validate(guest);
  validate(host);
  if (!(cavity_radius > 0.0)) throw ValidationError("cavity radius must be positive");
  if (!(outer_radius >= cavity_radius)) throw ValidationError("outer radius must not be below the cavity radius");
  if (host.density == 0.0 || outer_radius == cavity_radius) return 0.0;

  const quad::QuadSpec& qs = q;
  if (std::isfinite(outer_radius)) return radial_sum(guest, host, cavity_radius, outer_radius, qs);

  double w_min = min_resonance({&guest, &host.atom}, nullptr);
  if (host.magnetizability) {
    for (const auto& r : host.magnetizability->resonances) w_min = std::min(w_min, r.frequency);
  }
  const double s_max = std::max(1e4 / w_min, 10.0 * cavity_radius);
  const double tail = -host.density * 4.0 * pi * retarded_coefficient(guest, host) / (4.0 * std::pow(s_max, 4));
  return radial_sum(guest, host, cavity_radius, s_max, qs) + tail;
}

FdResult finite_difference_force(const std::function<double(double)>& potential, double x,
                                 const StepPolicy& policy) {
  if (!(policy.initial_step > 0.0) || policy.levels < 2) {
    throw ValidationError("step policy needs a positive initial step and at least two levels");
  }
  double h = policy.initial_step * (x != 0.0 ? std::abs(x) : 1.0);
  std::vector<std::vector<double>> table;
  for (int i = 0; i < policy.levels; ++i, h *= 0.5) {
    std::vector<double> row{(potential(x + h) - potential(x - h)) / (2.0 * h)};
    double factor = 4.0;
    for (int k = 1; k <= i; ++k, factor *= 4.0) {
      row.push_back(row[k - 1] + (row[k - 1] - table[i - 1][k - 1]) / (factor - 1.0));
    }
    table.push_back(std::move(row));
  }
  const auto& last = table.back();
  const auto& prev = table[table.size() - 2];
  return {-last.back(), std::abs(last.back() - prev.back())};
}

}  // namespace lfvdw::oracle
