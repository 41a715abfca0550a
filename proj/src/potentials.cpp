#include "lfvdw/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lfvdw/errors.hpp"
#include "lfvdw/units.hpp"

namespace lfvdw {
namespace {

using units::pi;

// Below this u*R_c the exact cavity coefficients are replaced by their
// small-radius forms; the neglected terms are O(uR_c) relative to the
// radius-independent part.
constexpr double kSmallArgument = 1e-6;
constexpr double kBoundSlack = 1e-12;

// Quadrature settings plus the frequencies at which the integrands change
// character; the u axis is split there unless the user fixed a map scale.
struct Axis {
  quad::QuadSpec q;
  std::vector<double> breaks;

  void add(double w) { breaks.push_back(w); }
  void add(const std::vector<Resonance>& rs) {
    for (const auto& r : rs) add(r.frequency);
  }
  quad::QuadResult integrate(const quad::Integrand& f) const { return quad::integrate_axis(f, q, breaks); }
};

Axis make_axis(const quad::QuadSpec& q, std::vector<const AtomModel*> atoms, const MediumResponse* medium) {
  Axis axis{q, {}};
  for (const auto* a : atoms) axis.add(a->resonances);
  if (medium) {
    for (const auto& t : medium->eps_terms) axis.add(t.resonance);
    for (const auto& t : medium->mu_terms) axis.add(t.resonance);
  }
  if (axis.breaks.empty()) axis.add(1.0);
  return axis;
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(what) + " must be positive and finite");
  }
}

void check_factor(double f, double upper, const char* what) {
  if (f < 1.0 - kBoundSlack || f > upper + kBoundSlack) {
    std::ostringstream os;
    os << what << " enhancement factor " << f << " outside [1, " << upper << "]";
    throw AssertionError(os.str());
  }
}

struct Extremes {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

void check_separation_guard(double l, const PairOptions& opts, std::vector<std::string>& warnings) {
  check_positive(l, "separation");
  if (opts.cavity_radius > 0.0) {
    if (l < 2.0 * opts.cavity_radius) {
      throw ValidationError("separation below 2 R_c: cavities overlap the partner atom");
    }
    if (l < 5.0 * opts.cavity_radius) {
      std::ostringstream os;
      os << "separation " << l << " is less than 5 R_c; the real-cavity result assumes l >> R_c";
      warnings.push_back(os.str());
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- one atom

U1Expanded u1_expanded(const AtomModel& atom, const CavitySpec& spec, const quad::QuadSpec& q) {
  validate(atom);
  validate(spec);
  const auto qs = make_axis(q, {&atom}, &spec.host);
  const double r = spec.radius;

  const auto cubed = qs.integrate(
      [&](double u) {
        const double eps = eps_iu(spec.host, u);
        return (eps - 1.0) / (2.0 * eps + 1.0) * alpha_iu(atom, u);
      });
  const auto inverse = qs.integrate(
      [&](double u) {
        const double eps = eps_iu(spec.host, u);
        const double mu = mu_iu(spec.host, u);
        const double d = 2.0 * eps + 1.0;
        return 3.0 * (eps * eps * (1.0 - 5.0 * mu) + 3.0 * eps + 1.0) / (5.0 * d * d) * u * u *
               alpha_iu(atom, u);
      });

  U1Expanded out;
  out.radius_cubed_term = -3.0 / (pi * r * r * r) * cubed.value;
  out.radius_inverse_term = -3.0 / (pi * r) * inverse.value;
  return out;
}

double u1_exact(const AtomModel& atom, const CavitySpec& spec, const quad::QuadSpec& q) {
  validate(atom);
  validate(spec);
  auto qs = make_axis(q, {&atom}, &spec.host);
  const double r = spec.radius;
  qs.add(1.0 / (n_iu(spec.host, 0.0) * r));
  const auto res = qs.integrate(
      [&](double u) {
        const double eps = eps_iu(spec.host, u);
        const double mu = mu_iu(spec.host, u);
        const double x = u * r;
        double u3c;
        if (x < kSmallArgument) {
          const auto e = cavity_C_expansion(eps, mu, x);
          const double lead = 3.0 * (eps - 1.0) / (2.0 * eps + 1.0) / (r * r * r);
          u3c = lead + e.middle * u * u * u + e.constant * u * u * u;
        } else {
          u3c = u * u * u * cavity_C_exact(eps, mu, x, 1);
        }
        return u3c * alpha_iu(atom, u);
      });
  return -res.value / pi;
}

U2Result u2_single(const AtomModel& atom, const CavitySpec& spec, const ScatterTrace& scatter_trace,
                   const quad::QuadSpec& q) {
  validate(atom);
  validate(spec);
  const auto qs = make_axis(q, {&atom}, &spec.host);
  Extremes ex;
  const auto res = qs.integrate(
      [&](double u) {
        const double d = coeff_D_leading(spec.host, u);
        const double f = d * d;
        check_factor(f, 9.0 / 4.0, "single-atom");
        ex.add(f);
        const double tr = scatter_trace(u);
        if (tr == 0.0) return 0.0;
        return 2.0 * u * u * alpha_iu(atom, u) * f * tr;
      });
  U2Result out;
  out.value = res.value;
  out.factor_min = ex.lo;
  out.factor_max = ex.hi;
  return out;
}

double u_single_uncorrected(const AtomModel& atom, const ScatterTrace& scatter_trace,
                            const quad::QuadSpec& q) {
  validate(atom);
  const auto qs = make_axis(q, {&atom}, nullptr);
  const auto res = qs.integrate(
      [&](double u) {
        const double tr = scatter_trace(u);
        if (tr == 0.0) return 0.0;
        return 2.0 * u * u * alpha_iu(atom, u) * tr;
      });
  return res.value;
}

SingleAtomResult single_atom(const AtomModel& atom, const CavitySpec& spec,
                             const ScatterTrace& scatter_trace, const quad::QuadSpec& q) {
  SingleAtomResult out;
  out.u1_terms = u1_expanded(atom, spec, q);
  out.u1 = out.u1_terms.total();
  out.u1_exact = u1_exact(atom, spec, q);
  out.u2_detail = u2_single(atom, spec, scatter_trace, q);
  out.u2 = out.u2_detail.value;
  out.total = out.u1 + out.u2;
  const double wr = max_resonance({&atom}, &spec.host) * spec.radius;
  if (wr > 0.1) {
    std::ostringstream os;
    os << "w_max R_c = " << wr << " is not small; small-radius expansion may be inaccurate";
    out.warnings.push_back(os.str());
  }
  return out;
}

// --------------------------------------------------------------- two atoms

PairEnergy pair_free_space(const AtomModel& a, const AtomModel& b, const MagnetizabilityModel* beta_b,
                           double l, const quad::QuadSpec& q, PairParts parts) {
  validate(a);
  validate(b);
  if (beta_b) validate(*beta_b);
  check_positive(l, "separation");
  auto qs = make_axis(q, {&a, &b}, nullptr);
  if (beta_b) {
    qs.add(beta_b->resonances);
  }
  qs.add(1.0 / l);

  PairEnergy out;
  if (parts != PairParts::magnetic) {
    const auto el = qs.integrate(
        [&](double u) { return alpha_iu(a, u) * alpha_iu(b, u) * pair_kernel_g(u * l); });
    out.electric = -el.value / (2.0 * pi * std::pow(l, 6));
  }
  if (parts != PairParts::electric && beta_b && !beta_b->resonances.empty()) {
    const auto mag = qs.integrate(
        [&](double u) { return u * u * alpha_iu(a, u) * beta_iu(*beta_b, u) * pair_kernel_h(u * l); });
    out.magnetic = mag.value / (2.0 * pi * std::pow(l, 4));
  }
  return out;
}

PairResult pair_bulk(const AtomModel& a, const AtomModel& b, const MediumResponse& m, double l,
                     const quad::QuadSpec& q, bool corrected, const PairOptions& opts) {
  validate(a);
  validate(b);
  validate(m);
  PairResult out;
  out.separation = l;
  out.corrected = corrected;
  check_separation_guard(l, opts, out.warnings);
  auto qs = make_axis(q, {&a, &b}, &m);
  qs.add(1.0 / (n_iu(m, 0.0) * l));

  Extremes ex;
  const auto res = qs.integrate(
      [&](double u) {
        const double eps = eps_iu(m, u);
        const double n = n_iu(m, u);
        double factor = 1.0;
        if (corrected) {
          const double d = local_field_factor(eps);
          factor = d * d * d * d;
          check_factor(factor, 81.0 / 16.0, "pair");
        }
        ex.add(factor);
        return alpha_iu(a, u) * alpha_iu(b, u) / (eps * eps) * factor * pair_kernel_g(n * u * l);
      });
  out.energy = -res.value / (2.0 * pi * std::pow(l, 6));
  out.ratio_min = ex.lo;
  out.ratio_max = ex.hi;

  const double profile_scale = q.scale > 0.0 ? q.scale : max_resonance({&a, &b}, &m);
  const int np = std::max(opts.profile_points, 2);
  for (int i = 0; i < np; ++i) {
    const double u = profile_scale * std::pow(10.0, -3.0 + 6.0 * i / (np - 1));
    const double d = local_field_factor(eps_iu(m, u));
    out.enhancement_profile.emplace_back(u, corrected ? d * d * d * d : 1.0);
  }
  return out;
}

double coeff_retarded(const AtomModel& a, const AtomModel& b, const MediumResponse& m, bool corrected) {
  validate(a);
  validate(b);
  validate(m);
  const double eps0 = eps_static(m);
  const double n0 = n_iu(m, 0.0);
  const double d = corrected ? local_field_factor(eps0) : 1.0;
  return 23.0 / (4.0 * pi) * alpha_static(a) * alpha_static(b) / (n0 * eps0 * eps0) * d * d * d * d;
}

double coeff_nonretarded(const AtomModel& a, const AtomModel& b, const MediumResponse& m,
                         const quad::QuadSpec& q, bool corrected) {
  validate(a);
  validate(b);
  validate(m);
  const auto qs = make_axis(q, {&a, &b}, &m);
  const auto res = qs.integrate(
      [&](double u) {
        const double eps = eps_iu(m, u);
        const double d = corrected ? local_field_factor(eps) : 1.0;
        return alpha_iu(a, u) * alpha_iu(b, u) / (eps * eps) * d * d * d * d;
      });
  return 3.0 / pi * res.value;
}

ForceResult force_pair(const AtomModel& a, const AtomModel& b, const MediumResponse& m, double l,
                       const quad::QuadSpec& q, bool corrected, const PairOptions& opts) {
  validate(a);
  validate(b);
  validate(m);
  std::vector<std::string> ignored;
  check_separation_guard(l, opts, ignored);
  auto qs = make_axis(q, {&a, &b}, &m);
  qs.add(1.0 / (n_iu(m, 0.0) * l));
  // d/dl [l^-6 g(n u l)] = l^-7 [y g'(y) - 6 g(y)], y = n u l
  const auto res = qs.integrate(
      [&](double u) {
        const double eps = eps_iu(m, u);
        const double y = n_iu(m, u) * u * l;
        double factor = 1.0;
        if (corrected) {
          const double d = local_field_factor(eps);
          factor = d * d * d * d;
        }
        return alpha_iu(a, u) * alpha_iu(b, u) / (eps * eps) * factor *
               (6.0 * pair_kernel_g(y) - y * pair_kernel_g_deriv(y));
      });
  return {l, -res.value / (2.0 * pi * std::pow(l, 7))};
}

// ----------------------------------------------------------------- N atoms

std::vector<std::vector<int>> distinct_cycles(int n) {
  if (n < 2) throw ValidationError("a closed ordering needs at least two atoms");
  if (n == 2) return {{0, 1}};
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    if (rest.front() < rest.back()) {
      std::vector<int> c{0};
      c.insert(c.end(), rest.begin(), rest.end());
      out.push_back(std::move(c));
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

NBodyResult n_atom_bulk(const std::vector<PlacedAtom>& atoms, const MediumResponse& m,
                        const quad::QuadSpec& q, bool corrected, const PairOptions& opts) {
  const int n = static_cast<int>(atoms.size());
  if (n < 2) throw ValidationError("N-atom potential needs N >= 2; use the single-atom path for N = 1");
  if (n > max_nbody_atoms) {
    throw ValidationError("N-atom potential supports at most " + std::to_string(max_nbody_atoms) + " atoms");
  }
  validate(m);
  NBodyResult out;
  std::vector<const AtomModel*> models;
  for (const auto& a : atoms) {
    validate(a.model);
    models.push_back(&a.model);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      check_separation_guard((atoms[i].position - atoms[j].position).norm(), opts, out.warnings);
    }
  }
  auto qs = make_axis(q, models, &m);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      qs.add(1.0 / (n_iu(m, 0.0) * (atoms[i].position - atoms[j].position).norm()));
    }
  }

  const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^(N-1)
  const double prefactor = sign * std::pow(4.0 * pi, n) / ((n == 2 ? 2.0 : 1.0) * pi);

  for (const auto& cycle : distinct_cycles(n)) {
    const auto res = qs.integrate(
        [&](double u) {
          const double eps = eps_iu(m, u);
          double weight = 1.0;
          for (int i = 0; i < n; ++i) {
            double w = alpha_iu(atoms[i].model, u);
            if (corrected) {
              const double d = local_field_factor(eps);
              w *= d * d;
            }
            weight *= w;
          }
          if (weight == 0.0) return 0.0;
          // each link carries one u^2 so the product stays finite as u -> 0
          Mat3c prod = Mat3c::Identity();
          for (int k = 0; k < n; ++k) {
            const int from = cycle[k];
            const int to = cycle[(k + 1) % n];
            prod = prod * (u * u * bulk_dyad(m, atoms[from].position, atoms[to].position, u).matrix);
          }
          return weight * prod.trace().real();
        });
    out.orderings.push_back({cycle, prefactor * res.value});
  }
  for (const auto& t : out.orderings) out.energy += t.energy;
  return out;
}

// ------------------------------------------------------ cavity-centre force

HostClass classify_host(const MediumResponse& m) {
  auto active = [](const std::vector<LorentzTerm>& ts) {
    return std::any_of(ts.begin(), ts.end(), [](const LorentzTerm& t) { return t.plasma_strength > 0.0; });
  };
  const bool e = active(m.eps_terms);
  const bool mg = active(m.mu_terms);
  if (e && mg) return HostClass::magnetodielectric;
  if (e) return HostClass::dielectric;
  if (mg) return HostClass::magnetic;
  return HostClass::vacuum;
}

const char* to_string(CentreRegime r) {
  switch (r) {
    case CentreRegime::neutral: return "neutral";
    case CentreRegime::unstable: return "unstable";
    case CentreRegime::restoring: return "restoring";
  }
  return "?";
}

const char* to_string(HostClass h) {
  switch (h) {
    case HostClass::vacuum: return "vacuum";
    case HostClass::dielectric: return "dielectric";
    case HostClass::magnetic: return "magnetic";
    case HostClass::magnetodielectric: return "magnetodielectric";
  }
  return "?";
}

StiffnessResult cavity_center_stiffness(const AtomModel& atom, const CavitySpec& spec,
                                        const quad::QuadSpec& q) {
  validate(atom);
  validate(spec);
  auto qs = make_axis(q, {&atom}, &spec.host);
  const double r = spec.radius;
  qs.add(1.0 / (n_iu(spec.host, 0.0) * r));
  const double r3 = r * r * r;
  const double r5 = r3 * r * r;

  StiffnessResult out;
  out.host = classify_host(spec.host);

  const auto exact = qs.integrate(
      [&](double u) {
        const double eps = eps_iu(spec.host, u);
        const double mu = mu_iu(spec.host, u);
        const double x = u * r;
        double u5c;
        if (x < kSmallArgument) {
          const double d = 3.0 * eps + 2.0;
          u5c = -90.0 * (eps - 1.0) / d / r5 +
                75.0 / 7.0 * (eps * eps * (7.0 * mu + 3.0) - 6.0 * eps - 4.0) / (d * d) * u * u / r3;
        } else {
          u5c = std::pow(u, 5) * cavity_C_exact(eps, mu, x, 2);
        }
        return u5c * alpha_iu(atom, u);
      });
  out.k_exact = -exact.value / (3.0 * pi);

  const auto lead = qs.integrate(
      [&](double u) {
        const double eps = eps_iu(spec.host, u);
        return (eps - 1.0) / (3.0 * eps + 2.0) * alpha_iu(atom, u);
      });
  const auto next = qs.integrate(
      [&](double u) {
        const double eps = eps_iu(spec.host, u);
        const double mu = mu_iu(spec.host, u);
        const double d = 3.0 * eps + 2.0;
        return (eps * eps * (7.0 * mu + 3.0) - 6.0 * eps - 4.0) / (d * d) * u * u * alpha_iu(atom, u);
      });
  out.k_small_leading = 90.0 / r5 * lead.value / (3.0 * pi);
  out.k_small_next = -75.0 / 7.0 / r3 * next.value / (3.0 * pi);
  out.k_small_radius = out.k_small_leading + out.k_small_next;

  if (out.k_exact > 0.0) {
    out.regime = CentreRegime::unstable;
  } else if (out.k_exact < 0.0) {
    out.regime = CentreRegime::restoring;
  }
  auto sgn = [](double v) { return (v > 0.0) - (v < 0.0); };
  out.signs_agree = sgn(out.k_exact) == sgn(out.k_small_radius);
  if (!out.signs_agree) {
    std::ostringstream os;
    os << "exact K = " << out.k_exact << " and small-radius K = " << out.k_small_radius
       << " differ in sign";
    out.diagnostics.push_back(os.str());
  }
  const double wr = max_resonance({&atom}, &spec.host) * r;
  if (wr > 1e-2) {
    std::ostringstream os;
    os << "w_max R_c = " << wr << " > 1e-2; small-radius K is only indicative";
    out.diagnostics.push_back(os.str());
  }
  return out;
}

}  // namespace lfvdw
