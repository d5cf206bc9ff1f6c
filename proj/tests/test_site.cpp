#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ligpso/ligand.hpp"
#include "ligpso/rng.hpp"
#include "ligpso/site.hpp"

using namespace ligpso;

namespace {

const char* kMinimal = R"({
  "schema_version": 1,
  "name": "one",
  "origin": {"x": 0.0, "y": 0.0},
  "major_axis_right": 3.0,
  "major_axis_left": 2.0,
  "residues": [{"id": 1, "x": 1.0, "y": 2.0, "polarity": "polar"}]
})";

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string error_of(std::string_view doc) {
  try {
    parse_site(doc);
  } catch (const SiteError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse a minimal site") {
  const ActiveSite s = parse_site(kMinimal);
  CHECK(s.name == "one");
  REQUIRE(s.residues.size() == 1);
  CHECK(s.residues[0].position == Point{1.0, 2.0});
  CHECK(s.residues[0].polarity == Polarity::polar);
  CHECK(parse_site(serialize_site(s)) == s);
}

TEST_CASE("parse errors name the field") {
  CHECK(error_of("{ not json") != "");
  CHECK(error_of(R"({"schema_version": 2, "name": "x", "origin": {"x":0,"y":0}, "major_axis_right": 1,
                    "major_axis_left": 1, "residues": [{"id":1,"x":0,"y":0,"polarity":"polar"}]})")
            .find("schema_version") != std::string::npos);
  const std::string dup = error_of(R"({"schema_version": 1, "name": "x", "origin": {"x":0,"y":0},
      "major_axis_right": 1, "major_axis_left": 1,
      "residues": [{"id":4,"x":0,"y":0,"polarity":"polar"},{"id":4,"x":1,"y":0,"polarity":"polar"}]})");
  CHECK(dup.find("4") != std::string::npos);
  CHECK(dup.find("duplicate") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "name": "x", "origin": {"x":0,"y":0}, "major_axis_right": 0,
                    "major_axis_left": 1, "residues": [{"id":1,"x":0,"y":0,"polarity":"polar"}]})")
            .find("major_axis_right") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "name": "x", "origin": {"x":0,"y":0}, "major_axis_right": 1,
                    "major_axis_left": 1, "residues": [{"id":1,"x":0,"y":0,"polarity":"acidic"}]})")
            .find("residues[0].polarity") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "name": "x", "origin": {"x":0,"y":0}, "major_axis_right": 1,
                    "major_axis_left": 1, "colour": "red",
                    "residues": [{"id":1,"x":0,"y":0,"polarity":"polar"}]})")
            .find("colour") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "name": "x", "origin": {"x":0,"y":0}, "major_axis_right": 1,
                    "major_axis_left": 1, "residues": []})") != "");
}

TEST_CASE("generated sites") {
  const ActiveSite b = generate_site(SiteProfile::barrel_default);
  CHECK(b == generate_site(SiteProfile::barrel_default, 99));
  CHECK(parse_site(serialize_site(b)) == b);
  CHECK(compute_bounds(b, Side::right, TreeTopology::default_right()).min_groups == 7);
  CHECK(compute_bounds(b, Side::left, TreeTopology::default_left()).min_groups == 2);

  const ActiveSite r1 = generate_site(SiteProfile::random, 7);
  CHECK(r1 == generate_site(SiteProfile::random, 7));
  CHECK(r1 != generate_site(SiteProfile::random, 8));
  CHECK(parse_site(serialize_site(r1)) == r1);
  REQUIRE(r1.residues.size() == b.residues.size());
  for (std::size_t i = 0; i < b.residues.size(); ++i) {
    CHECK(std::abs(r1.residues[i].position.x - b.residues[i].position.x) <= 0.3);
    CHECK(std::abs(r1.residues[i].position.y - b.residues[i].position.y) <= 0.3);
  }
}

TEST_CASE("barrel-default matches the golden snapshot") {
  const std::string golden = read_file(std::string(LIGPSO_TEST_DATA_DIR) + "/barrel_default.json");
  REQUIRE_FALSE(golden.empty());
  CHECK(serialize_site(generate_site(SiteProfile::barrel_default)) == golden);
}

TEST_CASE("save and load") {
  const auto path = std::filesystem::temp_directory_path() / "ligpso_test_site.json";
  const ActiveSite r = generate_site(SiteProfile::random, 3);
  save_site(r, path.string());
  CHECK(load_site(path.string()) == r);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_site(path.string()), SiteError);
}

TEST_CASE("every barrel-default residue is within interaction range of some reachable node") {
  // Reachable node positions collected by decoding many random chromosomes.
  const LigandModel m;
  const ActiveSite site = generate_site(SiteProfile::barrel_default);
  std::vector<Point> reachable;
  Rng rng(1);
  for (int i = 0; i < 20000; ++i) {
    BitString b(51);
    for (std::size_t j = 0; j < 51; ++j) b.set(j, rng.uniform() < 0.5);
    for (const auto& [k, p] : m.decode(b, site.origin).coords) reachable.push_back(p);
  }
  for (const auto& res : site.residues) {
    bool hit = false;
    for (const Point& p : reachable) {
      const double d = distance(p, res.position);
      if (d >= 0.7 && d <= 2.7) {
        hit = true;
        break;
      }
    }
    CHECK_MESSAGE(hit, "residue " << res.id << " unreachable");
  }
}
