#pragma once

// Spherical Bessel j_l and Hankel h_l^(1) functions of orders 1..4 at complex
// argument, together with the Riccati derivative d/dx [x f_l(x)].
//
// The *_scaled variants remove the exponential behaviour so that products
// appearing in ratios can be formed without overflow:
//   sph_j_scaled(l, x)  = j_l(x)    * exp(-|Im x|)
//   sph_h1_scaled(l, x) = h_l^(1)(x) * exp(-i x)
// and riccati_deriv_scaled applies the same factor as its underlying function.

#include <complex>

namespace lfvdw::specfun {

using cplx = std::complex<double>;

enum class Family { bessel_j, hankel1 };

inline constexpr int min_order = 1;
inline constexpr int max_order = 4;

cplx sph_j(int l, cplx x);
cplx sph_h1(int l, cplx x);
cplx riccati_deriv(Family f, int l, cplx x);

cplx sph_j_scaled(int l, cplx x);
cplx sph_h1_scaled(int l, cplx x);
cplx riccati_deriv_scaled(Family f, int l, cplx x);

/// j_l, its Riccati derivative and the same pair for h_l^(1), all scaled.
struct ScaledPair {
  cplx value;
  cplx riccati;
};
ScaledPair bessel_j_scaled_pair(int l, cplx x);
ScaledPair hankel1_scaled_pair(int l, cplx x);

}  // namespace lfvdw::specfun
