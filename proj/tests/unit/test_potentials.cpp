#include <doctest.h>

#include <cmath>
#include <vector>

#include "lfvdw/errors.hpp"
#include "lfvdw/oracle.hpp"
#include "lfvdw/potentials.hpp"

using namespace lfvdw;

namespace {

const AtomModel kA = AtomModel::single(1.0, 1e-3);
const AtomModel kB{{{1.4, 6e-4}, {3.0, 2e-4}}};
const quad::QuadSpec kQ;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// eps(iu) constant to ~1e-12 below u ~ 1e3
MediumResponse flat_medium(double eps) {
  MediumResponse m;
  m.eps_terms = {{(eps - 1.0) * 1e18, 1e9, 0.0}};
  return m;
}

double slope(const std::function<double(double)>& f, double lo, double hi) {
  return std::log(std::abs(f(hi) / f(lo))) / std::log(hi / lo);
}

}  // namespace

TEST_CASE("U1 expansion: vacuum and radius scaling") {
  const auto v = u1_expanded(kA, {0.01, MediumResponse::vacuum()}, kQ);
  CHECK(v.radius_cubed_term == 0.0);
  CHECK(v.radius_inverse_term == 0.0);

  const auto m = MediumResponse::single_resonance(5.0, 2.0, 1.5, 0.7);
  const auto a = u1_expanded(kA, {0.02, m}, kQ), b = u1_expanded(kA, {0.01, m}, kQ);
  CHECK(b.radius_cubed_term / a.radius_cubed_term == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(b.radius_inverse_term / a.radius_inverse_term == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(a.total() == a.radius_cubed_term + a.radius_inverse_term);
}

TEST_CASE("Exact and expanded U1 converge as the cavity shrinks") {
  const auto m = MediumResponse::single_resonance(5.0, 2.0, 1.5, 0.7);
  std::vector<double> radii{1e-2, 1e-3, 1e-4}, dev;
  for (double r : radii) {
    const CavitySpec spec{r, m};
    dev.push_back(rel(u1_exact(kA, spec, kQ), u1_expanded(kA, spec, kQ).total()));
  }
  CHECK(dev[0] < 1e-2);
  for (std::size_t i = 1; i < dev.size(); ++i) {
    CHECK(std::log(dev[i - 1] / dev[i]) / std::log(radii[i - 1] / radii[i]) >= 1.9);
  }
  CHECK(u1_exact(kA, {0.01, MediumResponse::vacuum()}, kQ) == 0.0);
}

TEST_CASE("U2 and the single-atom decomposition") {
  const auto m = MediumResponse::single_resonance(5.0, 2.0);
  const CavitySpec spec{0.01, m};
  const ScatterTrace none = [](double) { return 0.0; };
  CHECK(u2_single(kA, spec, none, kQ).value == 0.0);

  const ScatterTrace some = [](double u) { return 1e-4 * std::exp(-u) / (1.0 + u); };
  const auto r = single_atom(kA, spec, some, kQ);
  CHECK(r.total == r.u1 + r.u2);
  CHECK(r.u2_detail.factor_min >= 1.0 - 1e-12);
  CHECK(r.u2_detail.factor_max <= 9.0 / 4.0 + 1e-12);
  CHECK(r.u2 > u_single_uncorrected(kA, some, kQ));

  const CavitySpec vac{0.01, MediumResponse::vacuum()};
  CHECK(rel(u2_single(kA, vac, some, kQ).value, u_single_uncorrected(kA, some, kQ)) <= 1e-12);
}

TEST_CASE("Single-atom regime warning") {
  const auto r = single_atom(kA, {0.5, MediumResponse::single_resonance(2.0, 1.0)},
                             [](double) { return 0.0; }, kQ);
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("Free-space pair limits") {
  const double cr = 23.0 * 1e-3 * 1e-3 / (4 * M_PI);
  const double l = 200.0;
  const auto far = pair_free_space(kA, kA, nullptr, l, kQ);
  CHECK(std::abs(far.electric * std::pow(l, 7) / cr + 1.0) < 0.01);
  CHECK(far.magnetic == 0.0);

  const double near_l = 1e-4;
  const double london = 3.0 / M_PI * (M_PI / 4) * 1e-6;  // (3/pi) int alpha^2 du
  CHECK(pair_free_space(kA, kA, nullptr, near_l, kQ).electric * std::pow(near_l, 6) / london ==
        doctest::Approx(-1.0).epsilon(1e-6));

  const MagnetizabilityModel beta{{{0.5, 5e-4}}};
  const auto mag = pair_free_space(kA, kA, &beta, l, kQ, PairParts::magnetic);
  CHECK(mag.electric == 0.0);
  CHECK(mag.magnetic * std::pow(l, 7) / (7.0 * 1e-3 * 5e-4 / (4 * M_PI)) == doctest::Approx(1.0).epsilon(0.02));
  const MagnetizabilityModel zero{};
  CHECK(pair_free_space(kA, kA, &zero, 1.0, kQ).magnetic == 0.0);
}

TEST_CASE("Bulk pair in vacuum equals the free-space electric part") {
  for (double l : {0.01, 1.0, 50.0}) {
    const double bulk = pair_bulk(kA, kB, MediumResponse::vacuum(), l, kQ).energy;
    const double free = pair_free_space(kA, kB, nullptr, l, kQ).electric;
    CHECK(rel(bulk, free) <= 1e-12);
    CHECK(rel(bulk, pair_bulk(kA, kB, MediumResponse::vacuum(), l, kQ, false).energy) <= 1e-12);
  }
}

TEST_CASE("Pair potential is attractive and the enhancement is bounded") {
  const std::vector<MediumResponse> media{MediumResponse::single_resonance(80.0, 0.5),
                                          MediumResponse::single_resonance(2.25, 2.0, 1.1, 0.5),
                                          MediumResponse::single_resonance(1.0, 1.0, 3.0, 0.3)};
  for (const auto& m : media) {
    for (double l : {1e-3, 0.3, 30.0}) {
      const auto r = pair_bulk(kA, kB, m, l, kQ);
      CHECK(r.energy < 0.0);
      CHECK(r.ratio_min >= 1.0 - 1e-12);
      CHECK(r.ratio_max <= 81.0 / 16.0 + 1e-12);
      CHECK(r.enhancement_profile.size() == 13);
    }
  }
}

TEST_CASE("Power laws in two media") {
  for (const auto& m : {MediumResponse::vacuum(), MediumResponse::single_resonance(2.25, 2.0, 1.1, 0.5)}) {
    const double n0 = n_iu(m, 0.0);
    const double wmin = min_resonance({&kA}, &m), wmax = max_resonance({&kA}, &m);
    auto U = [&](double l) { return pair_bulk(kA, kA, m, l, kQ).energy; };
    CHECK(slope(U, 20.0 / (n0 * wmin), 200.0 / (n0 * wmin)) == doctest::Approx(-7.0).epsilon(0.02));
    CHECK(slope(U, 1e-3 / (n0 * wmax), 1e-2 / (n0 * wmax)) == doctest::Approx(-6.0).epsilon(0.02));
  }
}

TEST_CASE("Retarded coefficient") {
  const auto vac = MediumResponse::vacuum();
  const double c0 = coeff_retarded(kA, kB, vac);
  CHECK(c0 == doctest::Approx(23.0 * 1e-3 * 8e-4 / (4 * M_PI)).epsilon(1e-15));
  const auto water = MediumResponse::single_resonance(80.0, 0.5);
  CHECK(coeff_retarded(kA, kB, water) / c0 == doctest::Approx(std::pow(240.0 / 161.0, 4) / std::pow(80.0, 2.5)).epsilon(1e-13));
  for (const auto& m : {vac, water}) {
    const double l = 200.0 / max_resonance({&kA, &kB}, &m);
    // the slowest resonance sets how retarded this separation is
    const double lr = 200.0 / (n_iu(m, 0.0) * min_resonance({&kA, &kB}, &m));
    CHECK(pair_bulk(kA, kB, m, std::max(l, lr), kQ).energy * std::pow(std::max(l, lr), 7) /
              coeff_retarded(kA, kB, m) ==
          doctest::Approx(-1.0).epsilon(0.01));
  }
}

TEST_CASE("Non-retarded coefficient") {
  CHECK(coeff_nonretarded(kA, kA, MediumResponse::vacuum(), kQ) == doctest::Approx(0.75 * 1e-6).epsilon(1e-9));
  const double c0 = coeff_nonretarded(kA, kB, MediumResponse::vacuum(), kQ);
  CHECK(coeff_nonretarded(kA, kB, flat_medium(80.0), kQ) / c0 ==
        doctest::Approx(std::pow(240.0 / 161.0, 4) / 6400.0).epsilon(1e-9));
  CHECK(coeff_nonretarded(kA, kB, flat_medium(80.0), kQ, false) / c0 == doctest::Approx(1.0 / 6400.0).epsilon(1e-9));
}

TEST_CASE("Force") {
  const auto m = MediumResponse::single_resonance(2.25, 2.0, 1.1, 0.5);
  quad::QuadSpec tight;
  tight.rel_tol = 1e-12;
  for (double l : {0.003, 0.1, 1.0, 10.0, 100.0}) {
    const double f = force_pair(kA, kB, m, l, tight).force;
    CHECK(f < 0.0);
    const auto fd = oracle::finite_difference_force([&](double x) { return pair_bulk(kA, kB, m, x, tight).energy; }, l);
    CHECK(rel(f, fd.value) < 1e-6);
    PairOptions a, b;
    a.cavity_radius = 0.01, b.cavity_radius = 0.02;
    if (l > 0.1) CHECK(rel(force_pair(kA, kB, m, l, tight, true, a).force, force_pair(kA, kB, m, l, tight, true, b).force) <= 1e-12);
  }
  const double l = 300.0;
  const double cr = coeff_retarded(kA, kA, MediumResponse::vacuum());
  CHECK(force_pair(kA, kA, MediumResponse::vacuum(), l, kQ).force * std::pow(l, 8) / cr ==
        doctest::Approx(-7.0).epsilon(0.01));
}

TEST_CASE("Separation guard") {
  PairOptions o;
  o.cavity_radius = 0.1;
  CHECK_THROWS_AS(pair_bulk(kA, kA, MediumResponse::vacuum(), 0.15, kQ, true, o), ValidationError);
  CHECK(pair_bulk(kA, kA, MediumResponse::vacuum(), 0.3, kQ, true, o).warnings.size() == 1);
  CHECK(pair_bulk(kA, kA, MediumResponse::vacuum(), 0.6, kQ, true, o).warnings.empty());
  CHECK_THROWS_AS(pair_bulk(kA, kA, MediumResponse::vacuum(), 0.0, kQ), ValidationError);
}

TEST_CASE("Distinct closed orderings") {
  CHECK(distinct_cycles(2).size() == 1);
  CHECK(distinct_cycles(3).size() == 1);
  CHECK(distinct_cycles(4).size() == 3);
  CHECK(distinct_cycles(5).size() == 12);
  CHECK(distinct_cycles(6).size() == 60);
  for (const auto& c : distinct_cycles(5)) CHECK(c.front() == 0);
}

TEST_CASE("N-atom potential") {
  const auto m = MediumResponse::single_resonance(2.25, 2.0, 1.1, 0.5);
  SUBCASE("two atoms reduce to the pair potential") {
    for (double l : {0.01, 0.7, 20.0}) {
      const std::vector<PlacedAtom> two{{"a", kA, Vec3::Zero()}, {"b", kB, Vec3(0, l, 0)}};
      CHECK(rel(n_atom_bulk(two, m, kQ).energy, pair_bulk(kA, kB, m, l, kQ).energy) <= 1e-10);
      CHECK(rel(n_atom_bulk(two, m, kQ, false).energy, pair_bulk(kA, kB, m, l, kQ, false).energy) <= 1e-10);
    }
  }
  SUBCASE("three atoms reproduce the third-order coupled-dipole energy") {
    const double r = 1e-3;
    std::vector<PlacedAtom> tri{{"a", kA, Vec3::Zero()}, {"b", kA, Vec3(r, 0, 0)},
                                {"c", kA, Vec3(r / 2, r * std::sqrt(3.0) / 2, 0)}};
    const auto vac = MediumResponse::vacuum();
    CHECK(n_atom_bulk(tri, vac, kQ).energy == doctest::Approx(773437500000000000.0).epsilon(1e-5));
    CHECK(rel(n_atom_bulk(tri, vac, kQ).energy, n_atom_bulk(tri, vac, kQ, false).energy) <= 1e-12);
    tri[2].position = Vec3(2 * r, 0, 0);
    CHECK(n_atom_bulk(tri, vac, kQ).energy == doctest::Approx(-140625000000000000.0).epsilon(1e-5));
  }
  SUBCASE("relabelling atoms leaves the energy unchanged") {
    std::vector<PlacedAtom> four{{"a", kA, Vec3::Zero()}, {"b", kB, Vec3(0.3, 0, 0)},
                                 {"c", kA, Vec3(0.1, 0.4, 0)}, {"d", kB, Vec3(0.2, 0.1, 0.5)}};
    const double e = n_atom_bulk(four, m, kQ).energy;
    std::swap(four[0], four[2]);
    std::swap(four[1], four[3]);
    CHECK(rel(n_atom_bulk(four, m, kQ).energy, e) <= 1e-9);
    CHECK(n_atom_bulk(four, m, kQ).orderings.size() == 3);
  }
  SUBCASE("atom count limits") {
    CHECK_THROWS_AS(n_atom_bulk({{"a", kA, Vec3::Zero()}}, m, kQ), ValidationError);
    std::vector<PlacedAtom> seven;
    for (int i = 0; i < 7; ++i) seven.push_back({"x", kA, Vec3(i, 0, 0)});
    CHECK_THROWS_AS(n_atom_bulk(seven, m, kQ), ValidationError);
  }
}

TEST_CASE("Cavity-centre stiffness") {
  const double r = 0.005;  // w_max R_c <= 1e-2
  const auto vac = cavity_center_stiffness(kA, {r, MediumResponse::vacuum()}, kQ);
  CHECK(std::abs(vac.k_exact) < 1e-12);
  CHECK(vac.regime == CentreRegime::neutral);
  CHECK(vac.host == HostClass::vacuum);

  const auto d = cavity_center_stiffness(kA, {r, MediumResponse::single_resonance(2.0, 2.0)}, kQ);
  CHECK(d.k_exact > 0.0);
  CHECK(d.regime == CentreRegime::unstable);
  CHECK(d.host == HostClass::dielectric);
  CHECK(d.signs_agree);
  CHECK(rel(d.k_small_radius, d.k_exact) < 0.1);

  const auto g = cavity_center_stiffness(kA, {r, MediumResponse::single_resonance(1.0, 1.0, 2.0, 2.0)}, kQ);
  CHECK(g.k_exact < 0.0);
  CHECK(g.regime == CentreRegime::restoring);
  CHECK(g.host == HostClass::magnetic);
  CHECK(g.signs_agree);
  CHECK(rel(g.k_small_radius, g.k_exact) < 0.1);
  CHECK(g.k_small_leading == 0.0);
}

TEST_CASE("Three-atom energy against the coupled-dipole reference") {
  // third-order log-determinant term for alpha0 = 1e-3, w = 1 at side r = 1e-3
  const double r = 1e-3;
  const std::vector<PlacedAtom> line{{"A", kA, Vec3::Zero()}, {"B", kA, Vec3(r, 0, 0)}, {"C", kA, Vec3(2 * r, 0, 0)}};
  const std::vector<PlacedAtom> tri{
      {"A", kA, Vec3::Zero()}, {"B", kA, Vec3(r, 0, 0)}, {"C", kA, Vec3(r / 2, r * std::sqrt(3.0) / 2, 0)}};
  const double e_line = n_atom_bulk(line, MediumResponse::vacuum(), kQ).energy;
  const double e_tri = n_atom_bulk(tri, MediumResponse::vacuum(), kQ).energy;
  CHECK(rel(e_line, -1.40625e17) < 1e-4);
  CHECK(rel(e_tri, 7.734375e17) < 1e-4);
  CHECK(e_line < 0.0);
  CHECK(e_tri > 0.0);
}
