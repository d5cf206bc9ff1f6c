#pragma once

// Active-site model: residues with 2D coordinates and polarity, per-side
// major-axis lengths and the pharmacophore anchor. Sites are read from and
// written to a versioned JSON document:
//
//   {
//     "schema_version": 1,
//     "name": "barrel-default",
//     "origin": {"x": 0.0, "y": 0.0},
//     "major_axis_right": 18.9,
//     "major_axis_left": 5.4,
//     "residues": [{"id": 1, "x": 1.25, "y": 2.0, "polarity": "polar"}, ...]
//   }
//
// Unknown keys are rejected at every level.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ligpso {

inline constexpr int kSiteSchemaVersion = 1;

enum class Polarity { none, polar, nonpolar };

std::string to_string(Polarity p);

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

struct Residue {
  int id = 0;
  Point position;
  Polarity polarity = Polarity::nonpolar;
  friend bool operator==(const Residue&, const Residue&) = default;
};

struct ActiveSite {
  std::string name;
  std::vector<Residue> residues;
  double major_axis_right = 0.0;
  double major_axis_left = 0.0;
  Point origin;

  /// Throws SiteError when the site is empty, ids repeat or an axis is not positive.
  void validate() const;
  ActiveSite translated(double dx, double dy) const;

  friend bool operator==(const ActiveSite&, const ActiveSite&) = default;
};

/// Parse or validation failure. The message starts with the offending field path.
class SiteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ActiveSite parse_site(std::string_view document);
std::string serialize_site(const ActiveSite& site);

ActiveSite load_site(const std::string& path);
void save_site(const ActiveSite& site, const std::string& path);

enum class SiteProfile { barrel_default, random };

/// Accepts "barrel-default" or "random".
SiteProfile parse_site_profile(std::string_view text);
std::string to_string(SiteProfile p);

/// barrel-default ignores the seed. random perturbs barrel-default residue
/// positions by up to +/-0.3 A and re-draws each residue's polarity.
ActiveSite generate_site(SiteProfile profile, std::uint64_t seed = 0);

}  // namespace ligpso
