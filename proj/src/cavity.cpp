#include "lfvdw/cavity.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "lfvdw/errors.hpp"
#include "lfvdw/specfun.hpp"

namespace lfvdw {
namespace {

using specfun::cplx;

void check_frequency(double u) {
  if (u < 0.0 || std::isnan(u)) throw DomainError("cavity coefficient needs u >= 0");
  if (u == 0.0) throw PoleError("cavity coefficient is singular at u = 0");
}

void check_response(double eps, double mu) {
  if (!(eps >= 1.0) || !(mu >= 1.0) || !std::isfinite(eps) || !std::isfinite(mu)) {
    throw AssertionError("eps(iu), mu(iu) must be finite and >= 1 on the imaginary axis");
  }
}

double real_part_checked(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw AssertionError(std::string(what) + " is not finite");
  }
  if (std::abs(v.imag()) > 1e-10 * std::abs(v)) {
    throw AssertionError(std::string(what) + " has a non-negligible imaginary part on the imaginary axis");
  }
  return v.real();
}

}  // namespace

void validate(const CavitySpec& spec) {
  if (!(spec.radius > 0.0) || !std::isfinite(spec.radius)) {
    throw ValidationError("cavity radius must be > 0");
  }
  validate(spec.host);
}

double cavity_C_exact(double eps, double mu, double x, int l, Multipole kind) {
  if (l != 1 && l != 2) {
    throw UnsupportedOrderError("cavity coefficient C_l supports l = 1, 2 only");
  }
  check_frequency(x);
  check_response(eps, mu);
  if (kind == Multipole::magnetic) std::swap(eps, mu);
  const double n = std::sqrt(eps * mu);
  const cplx z0{0.0, x};
  const cplx z = n * z0;

  const auto j0 = specfun::bessel_j_scaled_pair(l, z0);
  const auto h0 = specfun::hankel1_scaled_pair(l, z0);
  const auto hz = specfun::hankel1_scaled_pair(l, z);

  // Common factors exp(i z0) exp(i z) (numerator) and exp(|Im z0|) exp(i z)
  // (denominator) are pulled out; what remains is exp(-2x).
  const cplx num = h0.value * hz.riccati - eps * hz.value * h0.riccati;
  const cplx den = eps * hz.value * j0.riccati - j0.value * hz.riccati;
  return real_part_checked(num / den * std::exp(-2.0 * x), "cavity coefficient C");
}

double coeff_C_exact(const CavitySpec& spec, int l, double u, Multipole kind) {
  validate(spec);
  check_frequency(u);
  return cavity_C_exact(eps_iu(spec.host, u), mu_iu(spec.host, u), u * spec.radius, l, kind);
}

CExpansion cavity_C_expansion(double eps, double mu, double x) {
  check_frequency(x);
  const double n = std::sqrt(eps * mu);
  const double d = 2.0 * eps + 1.0;
  CExpansion e;
  e.leading = 3.0 * (eps - 1.0) / d / (x * x * x);
  e.middle = -1.8 * (eps * eps * (5.0 * mu - 1.0) - 3.0 * eps - 1.0) / (d * d) / x;
  e.constant = 9.0 * eps * n * n * n / (d * d) - 1.0;
  return e;
}

CExpansion coeff_C_expansion(const CavitySpec& spec, double u) {
  validate(spec);
  check_frequency(u);
  return cavity_C_expansion(eps_iu(spec.host, u), mu_iu(spec.host, u), u * spec.radius);
}

C2Expansion cavity_C2_expansion(double eps, double mu, double x) {
  check_frequency(x);
  const double d = 3.0 * eps + 2.0;
  C2Expansion e;
  e.leading = -90.0 * (eps - 1.0) / d / std::pow(x, 5);
  e.next = 75.0 / 7.0 * (eps * eps * (7.0 * mu + 3.0) - 6.0 * eps - 4.0) / (d * d) / (x * x * x);
  return e;
}

double cavity_D_exact(double eps, double mu, double x) {
  check_frequency(x);
  check_response(eps, mu);
  const double n = std::sqrt(eps * mu);
  const cplx z0{0.0, x};
  const cplx z = n * z0;

  const auto j0 = specfun::bessel_j_scaled_pair(1, z0);
  const auto h0 = specfun::hankel1_scaled_pair(1, z0);
  const auto hz = specfun::hankel1_scaled_pair(1, z);

  // Numerator is the Riccati-Wronskian i/z0; written out from the same
  // function values so that the vacuum case reduces to exactly 1.
  const cplx num = j0.value * h0.riccati - j0.riccati * h0.value;
  const cplx den = j0.value * hz.riccati - eps * j0.riccati * hz.value;
  const double growth = std::exp((n - 1.0) * x);
  const double d = real_part_checked(num / (mu * den) * growth, "transmission factor D");
  if (!(d > 0.0)) {
    throw AssertionError("transmission factor D(iu) is not positive (eps=" + std::to_string(eps) +
                         ", mu=" + std::to_string(mu) + ", uR=" + std::to_string(x) + ")");
  }
  return d;
}

double coeff_D_exact(const CavitySpec& spec, double u) {
  validate(spec);
  check_frequency(u);
  return cavity_D_exact(eps_iu(spec.host, u), mu_iu(spec.host, u), u * spec.radius);
}

double coeff_D_leading(const MediumResponse& m, double u) {
  return local_field_factor(eps_iu(m, u));
}

}  // namespace lfvdw
