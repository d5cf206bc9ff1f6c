#include <doctest.h>

#include <cmath>
#include <limits>

#include "ligpso/oracle.hpp"

using namespace ligpso;

namespace {

ActiveSite single_residue_site() {
  ActiveSite s;
  s.name = "single";
  s.residues = {{1, {2.5, 1.0}, Polarity::polar}};
  s.major_axis_right = 10.0;
  s.major_axis_left = 5.0;
  return s;
}

}  // namespace

TEST_CASE("node list parsing") {
  const auto nodes = parse_node_list("R1,R3,L2");
  REQUIRE(nodes.size() == 3);
  CHECK(nodes[0].side == Side::right);
  CHECK(nodes[2].side == Side::left);
  CHECK(nodes[2].node == 2);
  CHECK(format_node_list(nodes) == "R1,R3,L2");
  CHECK_THROWS_AS(parse_node_list("X1"), std::invalid_argument);

  // Ids and duplicates are checked against the topology on construction.
  const auto make = [](const char* list) {
    return ReducedProblem(parse_node_list(list), LigandModel(), single_residue_site(), EnergyParams{},
                          LengthMode::variable);
  };
  CHECK_NOTHROW(make("R10,L7"));
  CHECK_THROWS(make("R11"));
  CHECK_THROWS(make("L8"));
  CHECK_THROWS(make("R0"));
  CHECK_THROWS_AS(make("R1,R1"), std::invalid_argument);
}

TEST_CASE("one active node matches a hand evaluation of all 8 codes") {
  const EnergyParams p;
  const ReducedProblem prob({{Side::right, 1}}, LigandModel(), single_residue_site(), p, LengthMode::variable);
  CHECK(prob.search_space() == 8);

  // Node 1 sits at (bond, 0); NUL is filled with Alkyl-1C to reach one group.
  double best = std::numeric_limits<double>::infinity();
  unsigned best_code = 0;
  for (unsigned code = 0; code < 8; ++code) {
    const unsigned placed = code == 0 ? 1 : code;
    const auto& info = group_info(static_cast<GroupCode>(placed));
    const double dx = info.bond_length_x - 2.5, dy = -1.0;
    const double r = std::sqrt(dx * dx + dy * dy);
    double e = (r >= p.r_min && r <= p.r_max) ? p.c_n / std::pow(r, 6) - p.c_m / std::pow(r, 12) : p.penalty_range;
    if (info.polarity != Polarity::polar) e += p.penalty_polarity;
    if (e < best) {
      best = e;
      best_code = placed;
    }
  }

  const OracleResult res = exhaustive_best(prob);
  CHECK(res.evaluations == 8);
  CHECK(res.energy == doctest::Approx(best).epsilon(1e-12));
  CHECK(res.chromosome.field(0, 3) == best_code);
  for (std::size_t i = 3; i < 51; ++i) CHECK_FALSE(res.chromosome[i]);
}

TEST_CASE("no active nodes gives the empty ligand") {
  const ReducedProblem prob({}, LigandModel(), single_residue_site(), EnergyParams{}, LengthMode::variable);
  const OracleResult res = exhaustive_best(prob);
  CHECK(res.energy == 0.0);
  CHECK(res.chromosome == BitString(51));
}

TEST_CASE("three active nodes on barrel-default") {
  const auto nodes = parse_node_list("R1,R3,R6");
  const ReducedProblem prob(nodes, LigandModel(), generate_site(SiteProfile::barrel_default), EnergyParams{},
                            LengthMode::variable);
  const OracleResult a = exhaustive_best(prob);
  CHECK(a.evaluations == 512);

  SUBCASE("order and worker count do not matter") {
    const OracleResult b = exhaustive_best(prob, {.workers = 4});
    const OracleResult c = exhaustive_best(prob, {.workers = 3, .reverse_order = true});
    CHECK(b.chromosome == a.chromosome);
    CHECK(c.chromosome == a.chromosome);
    CHECK(b.energy == a.energy);
    CHECK(c.energy == a.energy);
  }
  SUBCASE("optimum is a fixed point of repair and matches a direct evaluation") {
    CHECK(prob.repair_full(a.chromosome) == a.chromosome);
    CHECK(prob.energy_full(a.chromosome) == a.energy);
  }
  SUBCASE("optimizer never beats the oracle") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      QbpsoConfig cfg;
      cfg.dimension = prob.dimension();
      cfg.generations = 30;
      cfg.seed = seed;
      const RunResult r = run_qbpso(cfg, prob.fitness_fn(), prob.repair_fn());
      CHECK(prob.energy_full(prob.expand(r.best_position)) >= a.energy - 1e-12);
    }
  }
}

TEST_CASE("oversized search spaces are refused") {
  const ReducedProblem prob(parse_node_list("R1,R2,R3,R4,R5,R6,R7,R8,R9"), LigandModel(),
                            generate_site(SiteProfile::barrel_default), EnergyParams{}, LengthMode::variable);
  CHECK_THROWS_AS(exhaustive_best(prob), SearchSpaceTooLarge);
}

TEST_CASE("expand and contract") {
  const ReducedProblem prob(parse_node_list("R2,L1"), LigandModel(), generate_site(SiteProfile::barrel_default),
                            EnergyParams{}, LengthMode::variable);
  const BitString reduced = BitString::from_string("101011");
  const BitString full = prob.expand(reduced);
  CHECK(full.field(3, 3) == 5);
  CHECK(full.field(30, 3) == 3);
  CHECK(full.count() == 4);
  CHECK(prob.contract(full) == reduced);
}
