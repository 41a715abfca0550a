#include "lfvdw/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include "lfvdw/errors.hpp"

namespace lfvdw::specfun {
namespace {

constexpr double kOverflowImag = 700.0;
constexpr cplx kI{0.0, 1.0};

void check_order(int l) {
  if (l < min_order || l > max_order) {
    throw UnsupportedOrderError("spherical function order " + std::to_string(l) +
                                " outside supported range 1..4");
  }
}

void check_finite(cplx x) {
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
    throw DomainError("non-finite argument to spherical function");
  }
}

// sin(x) exp(-|Im x|) and cos(x) exp(-|Im x|) without overflow.
struct ScaledTrig {
  cplx sin, cos;
};

ScaledTrig scaled_trig(cplx x) {
  const double a = x.real();
  const double b = x.imag();
  const double e = std::exp(-2.0 * std::abs(b));
  const double ch = 0.5 * (1.0 + e);
  const double sh = std::copysign(-0.5 * std::expm1(-2.0 * std::abs(b)), b);
  return {cplx{std::sin(a) * ch, std::cos(a) * sh}, cplx{std::cos(a) * ch, -std::sin(a) * sh}};
}

// Power series of j_l(x), unscaled, truncated at relative 1e-14.
cplx j_series(int l, cplx x) {
  double dfact = 1.0;  // (2l+1)!!
  for (int k = 3; k <= 2 * l + 1; k += 2) dfact *= k;
  cplx lead = 1.0;
  for (int k = 0; k < l; ++k) lead *= x;
  lead /= dfact;

  const cplx w = -0.5 * x * x;
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= w / (static_cast<double>(k) * static_cast<double>(2 * l + 2 * k + 1));
    sum += term;
    if (std::abs(term) < 1e-14 * std::abs(sum) * 1e-2) break;
  }
  return lead * sum;
}

// Scaled j_0..j_lmax. Orders with |x| < l come from the series, the rest
// from upward recurrence, which is stable there.
std::array<cplx, max_order + 1> j_table_scaled(int lmax, cplx x) {
  std::array<cplx, max_order + 1> j{};
  const double r = std::abs(x);
  const double scale = std::exp(-std::abs(x.imag()));
  const auto trig = scaled_trig(x);

  if (r == 0.0) {
    j[0] = 1.0;
    return j;
  }
  j[0] = (r < 1e-4) ? scale * (1.0 - x * x / 6.0 + x * x * x * x / 120.0) : trig.sin / x;
  for (int l = 1; l <= lmax; ++l) {
    if (r < static_cast<double>(l)) {
      j[l] = scale * j_series(l, x);
    } else if (l == 1) {
      j[1] = trig.sin / (x * x) - trig.cos / x;
    } else {
      j[l] = static_cast<double>(2 * l - 1) / x * j[l - 1] - j[l - 2];
    }
  }
  return j;
}

std::array<cplx, max_order + 1> h_table_scaled(int lmax, cplx x) {
  std::array<cplx, max_order + 1> h{};
  h[0] = -kI / x;
  h[1] = -(1.0 / x + kI / (x * x));
  for (int l = 2; l <= lmax; ++l) {
    h[l] = static_cast<double>(2 * l - 1) / x * h[l - 1] - h[l - 2];
  }
  return h;
}

}  // namespace

ScaledPair bessel_j_scaled_pair(int l, cplx x) {
  check_order(l);
  check_finite(x);
  const auto j = j_table_scaled(l, x);
  cplx deriv;
  if (std::abs(x) == 0.0) {
    deriv = 0.0;
  } else if (std::abs(x) < static_cast<double>(l)) {
    // d/dx [x j_l] from the term-wise differentiated series, avoiding the
    // cancellation in x j_{l-1} - l j_l for small x.
    double dfact = 1.0;
    for (int k = 3; k <= 2 * l + 1; k += 2) dfact *= k;
    cplx lead = 1.0;
    for (int k = 0; k < l; ++k) lead *= x;
    lead /= dfact;
    const cplx w = -0.5 * x * x;
    cplx term = 1.0;
    cplx sum = static_cast<double>(l + 1);
    for (int k = 1; k < 200; ++k) {
      term *= w / (static_cast<double>(k) * static_cast<double>(2 * l + 2 * k + 1));
      const cplx add = term * static_cast<double>(l + 2 * k + 1);
      sum += add;
      if (std::abs(add) < 1e-16 * std::abs(sum)) break;
    }
    deriv = std::exp(-std::abs(x.imag())) * lead * sum;
  } else {
    deriv = x * j[l - 1] - static_cast<double>(l) * j[l];
  }
  return {j[l], deriv};
}

ScaledPair hankel1_scaled_pair(int l, cplx x) {
  check_order(l);
  check_finite(x);
  if (x == cplx{0.0, 0.0}) throw PoleError("spherical Hankel function evaluated at x = 0");
  const auto h = h_table_scaled(l, x);
  return {h[l], x * h[l - 1] - static_cast<double>(l) * h[l]};
}

cplx sph_j_scaled(int l, cplx x) { return bessel_j_scaled_pair(l, x).value; }
cplx sph_h1_scaled(int l, cplx x) { return hankel1_scaled_pair(l, x).value; }

cplx riccati_deriv_scaled(Family f, int l, cplx x) {
  return f == Family::bessel_j ? bessel_j_scaled_pair(l, x).riccati
                               : hankel1_scaled_pair(l, x).riccati;
}

namespace {
double j_unscale(cplx x) {
  if (std::abs(x.imag()) > kOverflowImag) {
    throw DomainError("spherical Bessel argument beyond overflow threshold");
  }
  return std::exp(std::abs(x.imag()));
}
cplx h_unscale(cplx x) {
  if (-x.imag() > kOverflowImag) {
    throw DomainError("spherical Hankel argument beyond overflow threshold");
  }
  return std::exp(kI * x);
}
}  // namespace

cplx sph_j(int l, cplx x) {
  const auto v = sph_j_scaled(l, x);
  return v * j_unscale(x);
}

cplx sph_h1(int l, cplx x) {
  const auto v = sph_h1_scaled(l, x);
  return v * h_unscale(x);
}

cplx riccati_deriv(Family f, int l, cplx x) {
  const auto v = riccati_deriv_scaled(f, l, x);
  return f == Family::bessel_j ? v * j_unscale(x) : v * h_unscale(x);
}

}  // namespace lfvdw::specfun
