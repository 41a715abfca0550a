#include <doctest.h>

#include <cmath>

#include "lfvdw/errors.hpp"
#include "lfvdw/oracle.hpp"
#include "lfvdw/potentials.hpp"

using namespace lfvdw;
using namespace lfvdw::oracle;

namespace {

const AtomModel kGuest = AtomModel::single(1.0, 1e-3);
const quad::QuadSpec kQ;

// chi(0) = 4 pi rho alpha(0) = target
DiluteHost host_with_chi(double target, bool magnetic = false) {
  DiluteHost h;
  h.atom = AtomModel::single(1.5, 1e-3);
  h.density = target / (4 * M_PI * 1e-3);
  if (magnetic) h.magnetizability = MagnetizabilityModel{{{0.5, 5e-4}}};
  return h;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double module_total(const DiluteHost& h, double rc, double outer) {
  const auto shell = h.body(rc, outer);
  const ScatterTrace tr = [&](double u) { return std::isinf(outer) ? 0.0 : born_scatter_trace(shell, u, kQ); };
  return single_atom(kGuest, {rc, h.medium()}, tr, kQ).total;
}

}  // namespace

TEST_CASE("Dilute host medium") {
  const auto h = host_with_chi(1e-3, true);
  const auto m = h.medium();
  for (double u : {0.0, 0.3, 4.0}) {
    CHECK(eps_iu(m, u) - 1.0 == doctest::Approx(h.chi(u)).epsilon(1e-12));
    CHECK(mu_iu(m, u) - 1.0 == doctest::Approx(h.zeta(u)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(validate(host_with_chi(0.02)), ValidationError);
}

TEST_CASE("Pairwise sum over the whole host matches the cavity term") {
  const auto h = host_with_chi(1e-3);
  const double rc = 0.01;
  CHECK(rel(u1_expanded(kGuest, {rc, h.medium()}, kQ).total(), u1_pairwise_sum(kGuest, h, rc, kQ)) < 0.01);
}

TEST_CASE("Pairwise sums are linear in the density") {
  auto h = host_with_chi(1e-3, true);
  const double a = u1_pairwise_sum(kGuest, h, 0.05, kQ);
  const double s = total_pairwise_sum(kGuest, h, 10.0, 0.05, kQ);
  h.density *= 2;
  CHECK(rel(u1_pairwise_sum(kGuest, h, 0.05, kQ), 2 * a) < 1e-10);
  CHECK(rel(total_pairwise_sum(kGuest, h, 10.0, 0.05, kQ), 2 * s) < 1e-10);
  h.density = 0.0;
  CHECK(u1_pairwise_sum(kGuest, h, 0.05, kQ) == 0.0);
}

TEST_CASE("Body geometries") {
  const auto h = host_with_chi(1e-3);
  CHECK(total_pairwise_sum(kGuest, h, 0.05, 0.05, kQ) == 0.0);
  CHECK(total_pairwise_sum(kGuest, h, INFINITY, 0.05, kQ) == u1_pairwise_sum(kGuest, h, 0.05, kQ));
  CHECK_THROWS_AS(total_pairwise_sum(kGuest, h, 0.01, 0.05, kQ), ValidationError);
}

TEST_CASE("Centred sphere: module path against pairwise summation") {
  for (bool magnetic : {false, true}) {
    const auto h = host_with_chi(1e-3, magnetic);
    CHECK(rel(module_total(h, 0.05, 10.0), total_pairwise_sum(kGuest, h, 10.0, 0.05, kQ)) < 0.01);
  }
}

TEST_CASE("Bulk plus missing-shell decomposition") {
  const auto h = host_with_chi(1e-3);
  const double rc = 0.05, outer = 2.0;
  const double bulk = total_pairwise_sum(kGuest, h, INFINITY, rc, kQ);
  const double body = total_pairwise_sum(kGuest, h, outer, rc, kQ);
  const auto shell = h.body(rc, outer);
  const double u2 = u2_single(kGuest, {rc, h.medium()}, [&](double u) { return born_scatter_trace(shell, u, kQ); }, kQ).value;
  const double u1 = u1_expanded(kGuest, {rc, h.medium()}, kQ).total();
  CHECK(rel(bulk, u1) < 0.01);
  CHECK(rel(body - bulk, u2) < 0.01);
}

TEST_CASE("Finite-difference force") {
  const auto quadratic = finite_difference_force([](double x) { return 3 * x * x - 2 * x + 1; }, 1.5);
  CHECK(std::abs(quadratic.value - -(6 * 1.5 - 2)) < 1e-10);
  CHECK(finite_difference_force([](double) { return 4.2; }, 3.0).value == 0.0);
  const auto p = finite_difference_force([](double x) { return -1.0 / std::pow(x, 6); }, 2.0);
  CHECK(rel(p.value, -6.0 / std::pow(2.0, 7)) < 1e-9);
  CHECK(p.error < 1e-7 * std::abs(p.value));
  CHECK_THROWS_AS(finite_difference_force([](double x) { return x; }, 1.0, {0.0, 4}), ValidationError);
}
