#include "lfvdw/green.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "lfvdw/errors.hpp"
#include "lfvdw/units.hpp"

namespace lfvdw {
namespace {
using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};
constexpr double kExpCut = 350.0;
}  // namespace

GreenDyad bulk_dyad(const MediumResponse& m, const Vec3& r, const Vec3& rp, double u) {
  if (!(u > 0.0)) throw DomainError("bulk Green tensor needs u > 0");
  const Vec3 sep = r - rp;
  const double dist = sep.norm();
  if (!(dist > 0.0)) throw SingularityError("bulk Green tensor evaluated at coincident points");

  const double n = n_iu(m, u);
  const double mu = mu_iu(m, u);
  const cplx k = kI * n * u;
  const cplx q = k * dist;
  const cplx q2 = q * q;
  const cplx q3 = q2 * q;
  const cplx a = 1.0 / q + kI / q2 - 1.0 / q3;
  const cplx b = 1.0 / q + 3.0 * kI / q2 - 3.0 / q3;
  const cplx pref = mu * k / (4.0 * units::pi) * std::exp(kI * q);

  const Vec3 v = sep / dist;
  GreenDyad g;
  g.matrix = pref * (a * Mat3c::Identity() - b * (v * v.transpose()).cast<cplx>());
  g.separation = sep;
  g.frequency = u;
  return g;
}

GreenDyad free_dyad(const Vec3& r, const Vec3& rp, double u) {
  return bulk_dyad(MediumResponse::vacuum(), r, rp, u);
}

double pair_kernel_g(double x) {
  if (x > kExpCut) return 0.0;
  const double x2 = x * x;
  return 2.0 * std::exp(-2.0 * x) * (3.0 + 6.0 * x + 5.0 * x2 + 2.0 * x2 * x + x2 * x2);
}

double pair_kernel_g_deriv(double x) {
  if (x > kExpCut) return 0.0;
  const double x2 = x * x;
  return -4.0 * std::exp(-2.0 * x) * (x + 2.0 * x2 + x2 * x2);
}

double pair_kernel_h(double x) {
  if (x > kExpCut) return 0.0;
  return 2.0 * std::exp(-2.0 * x) * (1.0 + 2.0 * x + x * x);
}

void validate(const BodyShell& shell) {
  if (!(shell.inner_radius >= 0.0)) throw ValidationError("shell inner radius must be >= 0");
  if (!(shell.outer_radius >= shell.inner_radius)) {
    throw ValidationError("shell outer radius must not be smaller than the inner radius");
  }
  if (!shell.chi) throw ValidationError("shell needs a susceptibility chi(iu)");
}

double born_scatter_trace(const BodyShell& shell, double u, const quad::QuadSpec& q,
                          std::vector<std::string>* warnings) {
  validate(shell);
  if (!(u > 0.0)) throw DomainError("scattering trace needs u > 0");
  if (std::isinf(shell.outer_radius)) return 0.0;

  const double chi = shell.chi(u);
  const double zeta = shell.zeta ? shell.zeta(u) : 0.0;
  if (warnings && (std::abs(chi) > 0.1 || std::abs(zeta) > 0.1)) {
    warnings->push_back("susceptibility above 0.1: linear Born approximation may be inaccurate");
  }
  if (chi == 0.0 && zeta == 0.0) return 0.0;

  // Missing material beyond the outer surface; the traced free-space kernels
  // reduce the angular integrals to 4 pi s^2.
  const double rout = shell.outer_radius;
  const double x = u * rout;
  const auto radial = q.with_scale(1.0);
  double trace = 0.0;
  if (chi != 0.0) {
    const auto el = quad::integrate_from(
        [x](double t) { return pair_kernel_g(x * t) / (t * t * t * t); }, 1.0, radial);
    trace += chi / (4.0 * units::pi * u * u * rout * rout * rout) * el.value;
  }
  if (zeta != 0.0) {
    const auto mag =
        quad::integrate_from([x](double t) { return pair_kernel_h(x * t) / (t * t); }, 1.0, radial);
    trace -= zeta / (4.0 * units::pi * rout) * mag.value;
  }
  return trace;
}

}  // namespace lfvdw
