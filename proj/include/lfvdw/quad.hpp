#pragma once

// Adaptive Gauss-Kronrod (10/21) quadrature on finite intervals and on the
// semi-infinite imaginary-frequency axis [0, inf).

#include <functional>
#include <vector>

namespace lfvdw::quad {

enum class Transform {
  rational_map,  // u = s t / (1 - t),          t in (0, 1)
  exp_map,       // u = s exp(v / (1 - v^2)),   v in (-1, 1)
};

struct QuadSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  Transform transform = Transform::rational_map;
  /// Characteristic scale s of the semi-infinite map; <= 0 means "let the
  /// caller choose" (potential routines use the largest resonance frequency).
  double scale = 0.0;

  QuadSpec with_scale(double s) const {
    QuadSpec q = *this;
    q.scale = s;
    return q;
  }
};

void validate(const QuadSpec& spec);

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
  long evals = 0;
};

using Integrand = std::function<double(double)>;

/// Integrates f over [0, inf). f is only evaluated on the open interval.
/// Throws ConvergenceError (carrying the partial result) when the error
/// target is not met within max_subdivisions bisections.
QuadResult integrate_semi_infinite(const Integrand& f, const QuadSpec& spec);

/// Integrates f over [lo, inf) by shifting the semi-infinite map.
QuadResult integrate_from(const Integrand& f, double lo, const QuadSpec& spec);

QuadResult integrate_finite(const Integrand& f, double a, double b, const QuadSpec& spec);

/// Integrates f over [0, inf) split at the given characteristic frequencies:
/// [0, b_1] directly, [b_k, b_k+1] in log u, and the tail from b_last through
/// the semi-infinite map with scale b_last. f is first divided by its largest
/// sampled |f(u) u| so that abs_tol acts on an integrand of unit size. An
/// explicit spec.scale > 0 replaces the breakpoints by that single scale.
QuadResult integrate_axis(const Integrand& f, const QuadSpec& spec, std::vector<double> breaks);

}  // namespace lfvdw::quad
