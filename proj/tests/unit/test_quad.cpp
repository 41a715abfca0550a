#include <doctest.h>

#include <cmath>

#include "lfvdw/errors.hpp"
#include "lfvdw/quad.hpp"

using namespace lfvdw;
using namespace lfvdw::quad;

namespace {

struct Case {
  const char* name;
  double (*f)(double);
  double exact;
};

const Case kSuite[] = {
    {"exp(-u)", [](double u) { return std::exp(-u); }, 1.0},
    {"1/(1+u^2)", [](double u) { return 1.0 / (1.0 + u * u); }, M_PI / 2},
    {"u^4 exp(-2u)", [](double u) { return std::pow(u, 4) * std::exp(-2.0 * u); }, 0.75},
};

}  // namespace

TEST_CASE("Analytic suite with both transforms") {
  for (auto t : {Transform::rational_map, Transform::exp_map}) {
    for (const auto& c : kSuite) {
      QuadSpec q;
      q.transform = t;
      q.scale = 1.0;
      const auto r = integrate_semi_infinite(c.f, q);
      INFO(c.name);
      CHECK(std::abs(r.value - c.exact) <= q.rel_tol * c.exact);
      CHECK(r.evals > 0);
      CHECK(r.err_est >= 0.0);
    }
  }
}

TEST_CASE("Tightening rel_tol never increases the error") {
  for (auto t : {Transform::rational_map, Transform::exp_map}) {
    for (const auto& c : kSuite) {
      QuadSpec q;
      q.transform = t;
      q.scale = 1.0;
      q.rel_tol = 1e-4;
      double prev = INFINITY;
      for (int k = 0; k < 12; ++k, q.rel_tol /= 2) {
        const double err = std::abs(integrate_semi_infinite(c.f, q).value - c.exact);
        // a few ulp of roundoff are not an increase
        CHECK(err <= prev + 4 * std::numeric_limits<double>::epsilon() * c.exact);
        prev = std::min(prev, err);
      }
    }
  }
}

TEST_CASE("Scale invariance of the map") {
  for (double s : {1e-3, 1.0, 1e3}) {
    const auto r = integrate_semi_infinite([](double u) { return 1.0 / (1.0 + u * u); }, QuadSpec{}.with_scale(s));
    CHECK(r.value == doctest::Approx(M_PI / 2).epsilon(1e-8));
  }
}

TEST_CASE("Shifted and finite intervals") {
  const auto r = integrate_from([](double u) { return std::exp(-u); }, 2.0, QuadSpec{}.with_scale(1.0));
  CHECK(r.value == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
  const auto f = integrate_finite([](double x) { return std::sin(x); }, 0.0, M_PI, QuadSpec{});
  CHECK(f.value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(integrate_semi_infinite([](double) { return 0.0; }, QuadSpec{}.with_scale(1.0)).value == 0.0);
}

TEST_CASE("Axis integration with breakpoints") {
  QuadSpec q;
  // Lorentzians at 1 and 1e6: a single map scale of 1e6 sees the narrow one poorly.
  auto f = [](double u) { return 1.0 / (1.0 + u * u) + 1e6 / (1e12 + u * u); };
  const auto r = integrate_axis(f, q, {1e6, 1.0});
  CHECK(std::abs(r.value - M_PI) < 1e-8 * M_PI);

  // Tiny integrands keep their relative accuracy.
  auto g = [](double u) { return 1e-20 * std::exp(-u); };
  const auto t = integrate_axis(g, q, {1.0});
  CHECK(std::abs(t.value - 1e-20) < 1e-8 * 1e-20);

  // An explicit scale overrides the breakpoints.
  const auto s = integrate_axis([](double u) { return std::exp(-u); }, q.with_scale(2.0), {1e-9, 1e9});
  CHECK(std::abs(s.value - 1.0) < 1e-8);

  CHECK(integrate_axis([](double) { return 0.0; }, q, {}).value == 0.0);
}

TEST_CASE("Non-convergence reports a partial result") {
  QuadSpec q;
  q.scale = 1.0;
  q.max_subdivisions = 8;
  q.rel_tol = 1e-14;
  q.abs_tol = 1e-300;
  try {
    integrate_semi_infinite([](double u) { return std::sin(50.0 * u) / (1.0 + u); }, q);
    FAIL("expected a ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.partial_value()));
    CHECK(e.error_estimate() > 0.0);
    CHECK(e.evaluations() > 0);
  }
}

TEST_CASE("Invalid inputs") {
  QuadSpec q;
  q.rel_tol = 0.0;
  CHECK_THROWS_AS(validate(q), ValidationError);
  q = QuadSpec{};
  q.max_subdivisions = 4;
  CHECK_THROWS_AS(validate(q), ValidationError);
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return NAN; }, QuadSpec{}.with_scale(1.0)), AssertionError);
}
