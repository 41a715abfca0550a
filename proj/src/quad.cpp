#include "lfvdw/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "lfvdw/errors.hpp"

namespace lfvdw::quad {
namespace {

// QUADPACK qk21 abscissae/weights; odd entries of kXgk are the Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a, b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

Panel kronrod21(const Integrand& g, double a, double b, long& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(center);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::abs(resk);
  std::array<double, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = g(center - dx);
    f2[j] = g(center + dx);
    const double s = f1[j] + f2[j];
    resk += kWgk[j] * s;
    if (j % 2 == 1) resg += kWg[j / 2] * s;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
  }
  evals += 21;
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
  }
  const double result = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return {a, b, result, err};
}

QuadResult adaptive(const Integrand& g, double a, double b, const QuadSpec& spec, int initial_panels) {
  validate(spec);
  long evals = 0;
  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  const double width = (b - a) / initial_panels;
  double total = 0.0;
  double total_err = 0.0;
  for (int i = 0; i < initial_panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == initial_panels) ? b : lo + width;
    auto p = kronrod21(g, lo, hi, evals);
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }

  auto target = [&] { return std::max(spec.rel_tol * std::abs(total), spec.abs_tol); };
  int subdivisions = 0;
  bool converged = total_err <= target();
  while (!converged) {
    if (subdivisions >= spec.max_subdivisions) break;
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        std::abs(worst.b - worst.a) < 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      // Panel can no longer be bisected in floating point; remaining error is roundoff.
      break;
    }
    heap.pop();
    auto left = kronrod21(g, worst.a, mid, evals);
    auto right = kronrod21(g, mid, worst.b, evals);
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    converged = total_err <= target();
  }

  // Re-sum in left-to-right order so the result does not depend on the
  // accumulated update history.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double value = 0.0, err = 0.0;
  for (const auto& p : panels) {
    value += p.value;
    err += p.error;
  }
  if (!converged && err > std::max(spec.rel_tol * std::abs(value), spec.abs_tol)) {
    const bool roundoff_limited = subdivisions < spec.max_subdivisions;
    if (!roundoff_limited || err > 1e3 * std::max(spec.rel_tol * std::abs(value), spec.abs_tol)) {
      throw ConvergenceError("adaptive quadrature did not converge after " +
                                 std::to_string(subdivisions) + " subdivisions (err_est " +
                                 std::to_string(err) + ")",
                             value, err, evals);
    }
  }
  return {value, err, evals};
}

double checked(double v, double u) {
  if (!std::isfinite(v)) {
    throw AssertionError("non-finite integrand value at abscissa " + std::to_string(u));
  }
  return v;
}

}  // namespace

void validate(const QuadSpec& spec) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) {
    throw ValidationError("quadrature tolerances must be > 0");
  }
  if (spec.max_subdivisions < 8) throw ValidationError("max_subdivisions must be >= 8");
}

QuadResult integrate_finite(const Integrand& f, double a, double b, const QuadSpec& spec) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("finite integration bounds required");
  if (a == b) return {0.0, 0.0, 0};
  return adaptive([&](double x) { return checked(f(x), x); }, a, b, spec, 1);
}

QuadResult integrate_from(const Integrand& f, double lo, const QuadSpec& spec) {
  const double s = spec.scale > 0.0 ? spec.scale : 1.0;
  if (spec.transform == Transform::rational_map) {
    auto g = [&](double t) {
      const double one_minus = 1.0 - t;
      const double u = s * t / one_minus;
      if (!std::isfinite(u)) return 0.0;
      return checked(f(lo + u), lo + u) * s / (one_minus * one_minus);
    };
    return adaptive(g, 0.0, 1.0, spec, 8);
  }
  auto g = [&](double v) {
    const double w = 1.0 - v * v;
    const double x = v / w;
    // Beyond e^{+-200} the integrands of interest are negligible and powers of
    // u would start to under/overflow.
    if (x > 200.0 || x < -200.0) return 0.0;
    const double u = s * std::exp(x);
    const double jac = u * (1.0 + v * v) / (w * w);
    if (!std::isfinite(jac)) return 0.0;
    const double fv = checked(f(lo + u), lo + u);
    return fv == 0.0 ? 0.0 : fv * jac;
  };
  return adaptive(g, -1.0, 1.0, spec, 8);
}

QuadResult integrate_semi_infinite(const Integrand& f, const QuadSpec& spec) {
  return integrate_from(f, 0.0, spec);
}

QuadResult integrate_axis(const Integrand& f, const QuadSpec& spec, std::vector<double> breaks) {
  if (spec.scale > 0.0) breaks = {spec.scale};
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [](double b) { return !(b > 0.0) || !std::isfinite(b); }),
               breaks.end());
  std::sort(breaks.begin(), breaks.end());
  // Breakpoints closer than a factor 2 add nothing but panel boundaries.
  std::vector<double> kept;
  for (double b : breaks) {
    if (kept.empty() || b > 2.0 * kept.back()) kept.push_back(b);
  }
  if (kept.empty()) kept.push_back(1.0);

  double norm = 0.0;
  for (double b : kept) {
    for (double u : {0.1 * b, b, 10.0 * b}) {
      const double v = std::abs(f(u)) * u;
      if (std::isfinite(v)) norm = std::max(norm, v);
    }
  }
  if (!(norm > 0.0) || !std::isfinite(norm)) norm = 1.0;
  const Integrand g = [&](double u) { return f(u) / norm; };

  std::vector<std::function<QuadResult(const QuadSpec&)>> pieces;
  pieces.push_back([&](const QuadSpec& s) { return integrate_finite(g, 0.0, kept.front(), s); });
  for (std::size_t k = 1; k < kept.size(); ++k) {
    pieces.push_back([&, k](const QuadSpec& s) {
      return integrate_finite([&](double t) {
            const double u = std::exp(t);
            return g(u) * u;
          },
          std::log(kept[k - 1]), std::log(kept[k]), s);
    });
  }
  pieces.push_back([&](const QuadSpec& s) { return integrate_from(g, kept.back(), s.with_scale(kept.back())); });

  // A coarse pass fixes the size of the whole integral, so that a piece much
  // smaller than the total is not driven into its own roundoff floor.
  QuadSpec piece_spec = spec;
  if (pieces.size() > 1) {
    QuadSpec coarse = spec;
    coarse.rel_tol = std::max(spec.rel_tol, 1e-3);
    double rough = 0.0;
    for (const auto& p : pieces) {
      try {
        rough += std::abs(p(coarse).value);
      } catch (const ConvergenceError& e) {
        rough += std::abs(e.partial_value());
      }
    }
    piece_spec.abs_tol = std::max(spec.abs_tol, spec.rel_tol * rough / static_cast<double>(pieces.size()));
  }

  QuadResult total;
  try {
    for (const auto& p : pieces) {
      const auto r = p(piece_spec);
      total.value += r.value;
      total.err_est += r.err_est;
      total.evals += r.evals;
    }
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(e.what(), (total.value + e.partial_value()) * norm,
                           (total.err_est + e.error_estimate()) * norm, total.evals + e.evaluations());
  }
  total.value *= norm;
  total.err_est *= norm;
  return total;
}

}  // namespace lfvdw::quad
