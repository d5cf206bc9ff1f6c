#include <doctest.h>

#include <cmath>

#include "ligpso/ligand.hpp"
#include "ligpso/rng.hpp"

#include "constraint_check.hpp"

using namespace ligpso;
using ligpso::check::SideCheck;

namespace {

constexpr double kTol = 1e-9;

BitString random_bits(std::size_t n, Rng& rng) {
  BitString b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, rng.uniform() < 0.5);
  return b;
}

// Chromosome with the listed right/left node codes set and every other node NUL.
BitString with_codes(const LigandModel& m, std::initializer_list<std::pair<int, unsigned>> right,
                     std::initializer_list<std::pair<int, unsigned>> left = {}) {
  BitString b(m.chromosome_bits());
  for (auto [node, code] : right) b.set_field(m.field_offset(Side::right, node), 3, code);
  for (auto [node, code] : left) b.set_field(m.field_offset(Side::left, node), 3, code);
  return b;
}

}  // namespace

TEST_CASE("group table") {
  struct Row {
    unsigned code;
    const char* name;
    double bond;
    Polarity pol;
  };
  const Row rows[] = {
      {0, "NUL", 0.0, Polarity::none},          {1, "Alkyl-1C", 0.65, Polarity::nonpolar},
      {2, "Alkyl-3C", 1.75, Polarity::nonpolar}, {3, "Alkyl-1C-Polar", 1.1, Polarity::polar},
      {4, "Alkyl-3C-Polar", 2.2, Polarity::polar}, {5, "Polar", 0.01, Polarity::polar},
      {6, "Aromatic", 1.9, Polarity::nonpolar},  {7, "Aromatic-Polar", 2.7, Polarity::polar},
  };
  for (const auto& r : rows) {
    const auto& info = group_info(static_cast<GroupCode>(r.code));
    CHECK(info.name == r.name);
    CHECK(info.bond_length_x == r.bond);
    CHECK(info.polarity == r.pol);
  }
  CHECK(nonpolar_counterpart(GroupCode::alkyl_1c_polar) == GroupCode::alkyl_1c);
  CHECK(nonpolar_counterpart(GroupCode::alkyl_3c_polar) == GroupCode::alkyl_3c);
  CHECK(nonpolar_counterpart(GroupCode::aromatic_polar) == GroupCode::aromatic);
  CHECK(nonpolar_counterpart(GroupCode::polar) == GroupCode::alkyl_1c);
  CHECK(nonpolar_counterpart(GroupCode::aromatic) == GroupCode::aromatic);
}

TEST_CASE("default topologies") {
  const auto r = TreeTopology::default_right();
  const auto l = TreeTopology::default_left();
  CHECK(r.parent == std::vector<int>{0, 1, 1, 3, 3, 3, 6, 6, 6, 6});
  CHECK(l.parent == std::vector<int>{0, 1, 1, 3, 3, 3, 3});
  CHECK(r.backbone == std::vector<int>{1, 3, 6});
  CHECK(l.backbone == std::vector<int>{1, 3});
  CHECK(r.dependent_groups.at(6) == std::vector<int>{8, 9, 10});
  CHECK(l.dependent_groups.at(3) == std::vector<int>{5, 6, 7});
  CHECK(r.is_ancestor(1, 9));
  CHECK_FALSE(r.is_ancestor(2, 9));
  CHECK(LigandModel().chromosome_bits() == 51);
}

TEST_CASE("topology parsing") {
  const auto r = TreeTopology::default_right();
  CHECK(parse_topology(serialize_topology(r)) == r);
  CHECK_THROWS_AS(parse_topology("{"), TopologyError);
  CHECK_THROWS_AS(parse_topology(R"({"side":"right","parent":[0,5],"backbone":[1],)"
                                 R"("junction_polar_restricted":[],"dependent_groups":{}})"),
                  TopologyError);
  CHECK_THROWS_AS(parse_topology(R"({"side":"up","parent":[0],"backbone":[1],)"
                                 R"("junction_polar_restricted":[],"dependent_groups":{}})"),
                  TopologyError);
  CHECK_THROWS_AS(parse_topology(R"({"side":"right","parent":[0],"backbone":[1],"extra":1,)"
                                 R"("junction_polar_restricted":[],"dependent_groups":{}})"),
                  TopologyError);
}

TEST_CASE("decode") {
  const LigandModel m;
  SUBCASE("all zero is empty") {
    const auto t = m.decode(BitString(51));
    CHECK(t.group_count(Side::right) == 0);
    CHECK(t.group_count(Side::left) == 0);
    CHECK(t.coords.empty());
  }
  SUBCASE("first field is right node 1") {
    const auto t = m.decode(BitString::from_string("001" + std::string(48, '0')));
    CHECK(t.right[0] == GroupCode::alkyl_1c);
    CHECK(group_info(t.right[0]).bond_length_x == 0.65);
    CHECK(m.field_offset(Side::right, 1) == 0);
    CHECK(m.field_offset(Side::left, 1) == 30);
  }
  SUBCASE("left fields follow the right tree") {
    const auto t = m.decode(BitString::from_string(std::string(30, '0') + "111" + std::string(18, '0')));
    CHECK(t.left[0] == GroupCode::aromatic_polar);
    CHECK(t.group_count(Side::right) == 0);
  }
  SUBCASE("wrong length") { CHECK_THROWS_AS(m.decode(BitString(50)), std::invalid_argument); }
}

TEST_CASE("decode and encode are inverse") {
  const LigandModel m;
  for (unsigned code = 0; code < 8; ++code) {
    for (std::size_t f = 0; f < 17; ++f) {
      BitString b(51);
      b.set_field(3 * f, 3, code);
      REQUIRE(m.encode(m.decode(b)) == b);
    }
  }
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const BitString b = random_bits(51, rng);
    REQUIRE(m.encode(m.decode(b)) == b);
  }
}

TEST_CASE("layout") {
  const LigandModel m;
  SUBCASE("single node") {
    const auto t = m.decode(with_codes(m, {{1, 4}}));
    REQUIRE(t.coords.size() == 1);
    const Point p = t.coords.at({Side::right, 1});
    CHECK(p.x == doctest::Approx(2.2));
    CHECK(p.y == 0.0);
  }
  SUBCASE("empty tree") { CHECK(m.decode(BitString(51)).coords.empty()); }
  SUBCASE("backbone chain") {
    const auto t = m.decode(with_codes(m, {{1, 1}, {3, 1}, {6, 1}}));
    CHECK(t.coords.at({Side::right, 1}).x == doctest::Approx(0.65));
    CHECK(t.coords.at({Side::right, 3}).x == doctest::Approx(1.30));
    CHECK(t.coords.at({Side::right, 6}).x == doctest::Approx(1.95));
    for (const auto& [k, p] : t.coords) CHECK(p.y == 0.0);
  }
  SUBCASE("left tree grows in -x") {
    const auto t = m.decode(with_codes(m, {}, {{1, 2}}));
    CHECK(t.coords.at({Side::left, 1}).x == doctest::Approx(-1.75));
  }
  SUBCASE("NUL node takes no space") {
    const auto t = m.decode(with_codes(m, {{3, 1}}));
    CHECK(t.coords.at({Side::right, 3}).x == doctest::Approx(0.65));
  }
  SUBCASE("siblings fan out") {
    const auto t = m.decode(with_codes(m, {{1, 1}, {2, 1}}));
    CHECK(t.coords.at({Side::right, 2}).y == doctest::Approx(0.55));
  }
}

TEST_CASE("layout is translation equivariant") {
  const LigandModel m;
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const BitString b = random_bits(51, rng);
    const Point o{rng.uniform() * 10 - 5, rng.uniform() * 10 - 5};
    const auto a = m.decode(b).coords;
    const auto s = m.decode(b, o).coords;
    REQUIRE(a.size() == s.size());
    for (const auto& [k, p] : a) {
      REQUIRE(s.at(k).x == doctest::Approx(p.x + o.x));
      REQUIRE(s.at(k).y == doctest::Approx(p.y + o.y));
    }
  }
}

TEST_CASE("compute_bounds") {
  CHECK(compute_bounds(18.9, 10).min_groups == 7);
  CHECK(compute_bounds(5.4, 7).min_groups == 2);
  CHECK(compute_bounds(2.7, 10).min_groups == 1);
  CHECK(compute_bounds(18.9, 10).max_groups == 10);
  CHECK(compute_bounds(5.4, 7).max_groups == 7);
  CHECK(compute_bounds(1.3, 10).max_groups == 2);
  CHECK_THROWS_AS(compute_bounds(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(compute_bounds(-1.0, 10), std::invalid_argument);
}

TEST_CASE("correct examples") {
  const LigandModel m;
  const SideLimits roomy{{0, 10}, 100.0};
  const SideLimits roomy_left{{0, 7}, 100.0};
  SUBCASE("dependency fill") {
    const BitString out = m.correct(with_codes(m, {{1, 1}, {3, 1}, {8, 1}}), LengthMode::variable, roomy, roomy_left);
    CHECK(out.field(m.field_offset(Side::right, 6), 3) == 1);
  }
  SUBCASE("polar junction with descendants") {
    const BitString out = m.correct(with_codes(m, {{1, 1}, {3, 7}, {4, 1}}), LengthMode::variable, roomy, roomy_left);
    CHECK(out.field(m.field_offset(Side::right, 3), 3) == 6);
  }
  SUBCASE("polar terminal junction is allowed") {
    const BitString in = with_codes(m, {{1, 1}, {3, 7}});
    CHECK(m.correct(in, LengthMode::variable, roomy, roomy_left) == in);
  }
  SUBCASE("feasible input unchanged") {
    const BitString in = with_codes(m, {{1, 1}, {3, 2}, {6, 6}, {8, 3}}, {{1, 1}, {3, 1}});
    CHECK(m.correct(in, LengthMode::variable, roomy, roomy_left) == in);
  }
  SUBCASE("fixed mode removes NUL") {
    const BitString out = m.correct(BitString(51), LengthMode::fixed, roomy, roomy_left);
    for (std::size_t f = 0; f < 17; ++f) CHECK(out.field(3 * f, 3) != 0);
  }
  SUBCASE("extent truncated to the axis") {
    const SideLimits tight{{0, 10}, 3.0};
    const BitString out = m.correct(with_codes(m, {{1, 7}, {3, 7}, {6, 7}}), LengthMode::variable, tight, roomy_left);
    const auto t = m.decode(out);
    CHECK(m.extent(Side::right, t.right) <= 3.0);
    CHECK(t.group_count(Side::right) >= 1);
  }
  SUBCASE("minimum fill") {
    const SideLimits need3{{3, 10}, 100.0};
    const BitString out = m.correct(BitString(51), LengthMode::variable, need3, roomy_left);
    CHECK(m.decode(out).group_count(Side::right) == 3);
    CHECK(out.field(m.field_offset(Side::right, 1), 3) == 1);
    CHECK(out.field(m.field_offset(Side::right, 3), 3) == 1);
    CHECK(out.field(m.field_offset(Side::right, 6), 3) == 1);
  }
}

TEST_CASE("correct soundness on random chromosomes") {
  const LigandModel m;
  ActiveSite site;
  site.major_axis_right = 18.9;
  site.major_axis_left = 5.4;
  site.residues = {{1, {0.0, 2.0}, Polarity::polar}};
  const auto [rl, ll] = m.limits_for(site);
  REQUIRE(rl.bounds.min_groups == 7);
  REQUIRE(ll.bounds.min_groups == 2);

  Rng rng(20240601);
  for (int i = 0; i < 10000; ++i) {
    const BitString in = random_bits(51, rng);
    for (LengthMode mode : {LengthMode::fixed, LengthMode::variable}) {
      const BitString out = m.correct(in, mode, rl, ll);
      REQUIRE(m.correct(out, mode, rl, ll) == out);
      const auto t = m.decode(out);
      for (Side s : {Side::right, Side::left}) {
        const SideLimits& lim = s == Side::right ? rl : ll;
        const SideCheck c{m.topology(s), t.groups(s)};
        REQUIRE(c.junction_rule());
        REQUIRE(c.dependency_rule());
        if (mode == LengthMode::fixed) {
          REQUIRE(c.count() == m.topology(s).node_count());
        } else {
          REQUIRE(c.extent() <= lim.major_axis + kTol);
          REQUIRE(c.count() <= lim.bounds.max_groups);
          REQUIRE(c.count() >= lim.bounds.min_groups);
          REQUIRE(std::abs(c.extent() - m.extent(s, t.groups(s))) <= kTol);
        }
      }
    }
  }
}

TEST_CASE("length mode parsing") {
  CHECK(parse_length_mode("fixed") == LengthMode::fixed);
  CHECK(parse_length_mode("variable") == LengthMode::variable);
  CHECK(to_string(LengthMode::variable) == "variable");
  CHECK_THROWS_AS(parse_length_mode("elastic"), std::invalid_argument);
  CHECK(parse_side("left") == Side::left);
  CHECK_THROWS_AS(parse_side("middle"), std::invalid_argument);
}
