#include <doctest.h>

#include <cmath>
#include <limits>

#include "ligpso/energy.hpp"
#include "ligpso/rng.hpp"

using namespace ligpso;

namespace {

LigandTree one_group(GroupCode code, Point at) {
  LigandTree t;
  t.right.assign(10, GroupCode::nul);
  t.left.assign(7, GroupCode::nul);
  t.right[0] = code;
  t.coords[{Side::right, 1}] = at;
  return t;
}

ActiveSite site_of(std::vector<Residue> residues) {
  ActiveSite s;
  s.name = "t";
  s.residues = std::move(residues);
  s.major_axis_right = 10.0;
  s.major_axis_left = 10.0;
  return s;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("vdw") {
  EnergyParams p;
  CHECK(vdw(1.0, p) == doctest::Approx(1.0).epsilon(1e-15));
  EnergyParams eq = p;
  eq.c_m = eq.c_n;
  CHECK(vdw(1.0, eq) == 0.0);
  CHECK(std::abs(vdw(100.0, p)) < 1e-10 * p.c_n);
  CHECK_THROWS_AS(vdw(0.0, p), std::domain_error);
  CHECK_THROWS_AS(vdw(-1.0, p), std::domain_error);

  EnergyParams conv = p;
  conv.sign = VdwSign::conventional;
  CHECK(vdw(1.3, conv) == doctest::Approx(-vdw(1.3, p)));
}

TEST_CASE("vdw matches a direct evaluation") {
  EnergyParams p;
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const double r = 0.7 + 2.0 * rng.uniform();
    // r^-6 written out as a product, independent of std::pow.
    const double inv2 = 1.0 / (r * r);
    const double inv6 = inv2 * inv2 * inv2;
    const double expected = p.c_n * inv6 - p.c_m * inv6 * inv6;
    CHECK(rel_err(vdw(r, p), expected) <= 1e-12);
  }
}

TEST_CASE("interaction energy examples") {
  EnergyParams p;
  SUBCASE("empty ligand") {
    LigandTree t;
    t.right.assign(10, GroupCode::nul);
    t.left.assign(7, GroupCode::nul);
    const auto r = interaction_energy(t, site_of({{1, {0, 0}, Polarity::polar}}), p);
    CHECK(r.total == 0.0);
    CHECK(r.groups.empty());
  }
  SUBCASE("single polar pair at 1 A") {
    const auto r = interaction_energy(one_group(GroupCode::polar, {0, 0}), site_of({{1, {1, 0}, Polarity::polar}}), p);
    CHECK(r.total == doctest::Approx(1.0));
    REQUIRE(r.groups.size() == 1);
    CHECK(r.groups[0].polarity_penalty == 0.0);
    CHECK(r.groups[0].range_penalty == 0.0);
  }
  SUBCASE("polarity mismatch with nearer polar residue") {
    const auto r = interaction_energy(one_group(GroupCode::alkyl_1c, {0, 0}),
                                      site_of({{1, {1, 0}, Polarity::polar}, {2, {0, 2.5}, Polarity::nonpolar}}), p);
    CHECK(r.total == doctest::Approx(vdw(1.0, p) + p.penalty_polarity));
    CHECK(r.groups[0].residue_id == 1);
  }
  SUBCASE("out of window") {
    const auto far = interaction_energy(one_group(GroupCode::polar, {0, 0}), site_of({{1, {3, 0}, Polarity::polar}}), p);
    CHECK(far.total == p.penalty_range);
    CHECK(far.groups[0].pair_energy == 0.0);
    const auto near = interaction_energy(one_group(GroupCode::polar, {0, 0}), site_of({{1, {0.5, 0}, Polarity::polar}}), p);
    CHECK(near.total == p.penalty_range);
  }
  SUBCASE("coincident point is a range violation") {
    const auto r = interaction_energy(one_group(GroupCode::polar, {1, 1}), site_of({{1, {1, 1}, Polarity::polar}}), p);
    CHECK(r.total == p.penalty_range);
  }
  SUBCASE("nearest-residue ties go to the lowest id") {
    const auto r = interaction_energy(one_group(GroupCode::polar, {0, 0}),
                                      site_of({{9, {0, 1}, Polarity::nonpolar}, {4, {0, -1}, Polarity::polar}}), p);
    CHECK(r.groups[0].residue_id == 4);
    CHECK(r.groups[0].polarity_penalty == 0.0);
  }
}

TEST_CASE("energy report reconciles and is translation invariant") {
  EnergyParams p;
  const LigandModel m;
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Residue> res;
    const int n = 1 + static_cast<int>(rng.uniform() * 8);
    for (int k = 0; k < n; ++k)
      res.push_back({k + 1, {rng.uniform() * 12 - 6, rng.uniform() * 6 - 3},
                     rng.uniform() < 0.5 ? Polarity::polar : Polarity::nonpolar});
    const ActiveSite site = site_of(res);
    BitString b(51);
    for (std::size_t j = 0; j < 51; ++j) b.set(j, rng.uniform() < 0.5);

    const LigandTree t = m.decode(b, site.origin);
    const auto rep = interaction_energy(t, site, p);
    double sum = 0.0;
    for (const auto& g : rep.groups) sum += g.total();
    REQUIRE(rep.groups.size() == t.coords.size());
    REQUIRE(std::abs(sum - rep.total) <= 1e-9 * std::max(1.0, std::abs(rep.total)));

    const double dx = rng.uniform() * 20 - 10, dy = rng.uniform() * 20 - 10;
    const ActiveSite moved = site.translated(dx, dy);
    const auto rep2 = interaction_energy(m.decode(b, moved.origin), moved, p);
    REQUIRE(std::abs(rep2.total - rep.total) <= 1e-9 * std::max(1.0, std::abs(rep.total)));
  }
}

TEST_CASE("fitness") {
  EnergyParams p;
  CHECK(std::round(fitness(12.4489, p) * 1e4) / 1e4 == doctest::Approx(8.0328).epsilon(1e-12));
  CHECK(std::round(fitness(8.5707, p) * 1e4) / 1e4 == doctest::Approx(11.6677).epsilon(1e-12));
  CHECK(fitness(p.k, p) == 1.0);
  CHECK(fitness(-5.0, p) == p.k / p.e_floor);
  CHECK(fitness(0.0, p) == p.k / p.e_floor);
  CHECK_THROWS(fitness(std::numeric_limits<double>::infinity(), p));

  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const double a = p.e_floor + rng.uniform() * 50.0;
    const double b = a + 1e-6 + rng.uniform();
    REQUIRE(fitness(a, p) > fitness(b, p));
  }
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(EnergyParams{}.validate());
  EnergyParams p;
  p.r_min = 3.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.k = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK(parse_vdw_sign("conventional") == VdwSign::conventional);
  CHECK_THROWS_AS(parse_vdw_sign("inverted"), std::invalid_argument);
}
