#include "ligpso/site.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ligpso/rng.hpp"

namespace ligpso {

using nlohmann::json;

namespace {

// Geometry of the synthetic barrel. The two axis lengths are chosen so that
// ceil(axis / 2.7) gives 7 groups on the right and 2 on the left; the wall
// layout only has to keep every residue reachable by some ligand node.
constexpr double kRightAxis = 18.9;
constexpr double kLeftAxis = 5.4;
constexpr double kWallY = 2.0;
constexpr double kResidueSpacing = 2.5;
constexpr int kRightColumns = 5;
constexpr int kLeftColumns = 2;
constexpr double kRandomJitter = 0.3;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw SiteError(path + ": " + message);
}

void reject_unknown_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json& member(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

double number(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  const std::string where = path.empty() ? key : path + "." + key;
  if (!v.is_number()) fail(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where, "expected a finite number");
  return d;
}

Point point(const json& obj, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object with x and y");
  reject_unknown_keys(obj, path, {"x", "y"});
  return {number(obj, path, "x"), number(obj, path, "y")};
}

std::vector<Residue> barrel_residues() {
  std::vector<Residue> out;
  int id = 1;
  auto wall = [&](int columns, double direction, double y, int parity) {
    for (int k = 0; k < columns; ++k) {
      const double x = direction * (kResidueSpacing / 2.0 + kResidueSpacing * k);
      const Polarity p = (k + parity) % 2 == 0 ? Polarity::polar : Polarity::nonpolar;
      out.push_back({id++, {x, y}, p});
    }
  };
  wall(kRightColumns, +1.0, +kWallY, 0);
  wall(kRightColumns, +1.0, -kWallY, 1);
  wall(kLeftColumns, -1.0, +kWallY, 1);
  wall(kLeftColumns, -1.0, -kWallY, 0);
  return out;
}

}  // namespace

std::string to_string(Polarity p) {
  switch (p) {
    case Polarity::polar: return "polar";
    case Polarity::nonpolar: return "nonpolar";
    case Polarity::none: break;
  }
  return "none";
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void ActiveSite::validate() const {
  if (residues.empty()) throw SiteError("residues: at least one residue is required");
  if (!(major_axis_right > 0.0)) throw SiteError("major_axis_right: must be positive");
  if (!(major_axis_left > 0.0)) throw SiteError("major_axis_left: must be positive");
  std::set<int> ids;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (!ids.insert(residues[i].id).second) {
      throw SiteError("residues[" + std::to_string(i) + "].id: duplicate residue id " +
                      std::to_string(residues[i].id));
    }
    if (residues[i].polarity == Polarity::none) {
      throw SiteError("residues[" + std::to_string(i) + "].polarity: must be polar or nonpolar");
    }
  }
}

ActiveSite ActiveSite::translated(double dx, double dy) const {
  ActiveSite out = *this;
  out.origin = {origin.x + dx, origin.y + dy};
  for (auto& r : out.residues) r.position = {r.position.x + dx, r.position.y + dy};
  return out;
}

ActiveSite parse_site(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SiteError(std::string("document: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");
  reject_unknown_keys(doc, "",
                      {"schema_version", "name", "origin", "major_axis_right", "major_axis_left", "residues"});

  const json& version = member(doc, "", "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kSiteSchemaVersion) {
    fail("schema_version", "unsupported version (expected " + std::to_string(kSiteSchemaVersion) + ")");
  }

  ActiveSite site;
  const json& name = member(doc, "", "name");
  if (!name.is_string()) fail("name", "expected a string");
  site.name = name.get<std::string>();
  site.origin = point(member(doc, "", "origin"), "origin");
  site.major_axis_right = number(doc, "", "major_axis_right");
  site.major_axis_left = number(doc, "", "major_axis_left");

  const json& residues = member(doc, "", "residues");
  if (!residues.is_array()) fail("residues", "expected an array");
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const std::string path = "residues[" + std::to_string(i) + "]";
    const json& r = residues[i];
    if (!r.is_object()) fail(path, "expected an object");
    reject_unknown_keys(r, path, {"id", "x", "y", "polarity"});
    const json& id = member(r, path, "id");
    if (!id.is_number_integer()) fail(path + ".id", "expected an integer");
    const json& pol = member(r, path, "polarity");
    if (!pol.is_string() || (pol != "polar" && pol != "nonpolar")) {
      fail(path + ".polarity", "expected \"polar\" or \"nonpolar\"");
    }
    site.residues.push_back({id.get<int>(), {number(r, path, "x"), number(r, path, "y")},
                             pol == "polar" ? Polarity::polar : Polarity::nonpolar});
  }
  site.validate();
  return site;
}

std::string serialize_site(const ActiveSite& site) {
  site.validate();
  json doc;
  doc["schema_version"] = kSiteSchemaVersion;
  doc["name"] = site.name;
  doc["origin"] = {{"x", site.origin.x}, {"y", site.origin.y}};
  doc["major_axis_right"] = site.major_axis_right;
  doc["major_axis_left"] = site.major_axis_left;
  json residues = json::array();
  for (const auto& r : site.residues) {
    residues.push_back({{"id", r.id}, {"x", r.position.x}, {"y", r.position.y}, {"polarity", to_string(r.polarity)}});
  }
  doc["residues"] = std::move(residues);
  return doc.dump(2) + "\n";
}

ActiveSite load_site(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SiteError(path + ": cannot open site file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_site(buf.str());
  } catch (const SiteError& e) {
    throw SiteError(path + ": " + e.what());
  }
}

void save_site(const ActiveSite& site, const std::string& path) {
  const std::string text = serialize_site(site);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SiteError(path + ": cannot open for writing");
  out << text;
  if (!out) throw SiteError(path + ": write failed");
}

SiteProfile parse_site_profile(std::string_view text) {
  if (text == "barrel-default") return SiteProfile::barrel_default;
  if (text == "random") return SiteProfile::random;
  throw std::invalid_argument("unknown site profile '" + std::string(text) + "' (expected barrel-default or random)");
}

std::string to_string(SiteProfile p) { return p == SiteProfile::barrel_default ? "barrel-default" : "random"; }

ActiveSite generate_site(SiteProfile profile, std::uint64_t seed) {
  ActiveSite site;
  site.name = "barrel-default";
  site.major_axis_right = kRightAxis;
  site.major_axis_left = kLeftAxis;
  site.residues = barrel_residues();
  if (profile == SiteProfile::random) {
    site.name = "random-" + std::to_string(seed);
    Rng rng(splitmix64(seed));
    for (auto& r : site.residues) {
      r.position.x += kRandomJitter * (2.0 * rng.uniform() - 1.0);
      r.position.y += kRandomJitter * (2.0 * rng.uniform() - 1.0);
      r.polarity = rng.uniform() < 0.5 ? Polarity::polar : Polarity::nonpolar;
    }
  }
  return site;
}

}  // namespace ligpso
