#pragma once

// Van Atta layouts: centrosymmetric antenna pairs joined by transmission
// lines whose electrical lengths are congruent modulo the design wavelength.

#include <cmath>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace vanatta::geometry {

inline constexpr double kDefaultAbsorptionEfficiency = 0.82;
inline constexpr double kDefaultTolerance = 1e-9;  // meters
/// Electrical length of the innermost (shortest) line, in wavelengths.
inline constexpr double kBaselineLineWavelengths = 10.0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;

  double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

struct AntennaElement {
  int id = 0;
  Vec2 position;  // meters
  int pair_id = 0;

  friend bool operator==(const AntennaElement&, const AntennaElement&) = default;
};

struct TransmissionLine {
  int pair_id = 0;
  double base_length = 0.0;  // electrical length, meters
  bool has_switch = false;
  /// Extra electrical length inserted when the switch is engaged; λ/2 iff has_switch.
  double switched_extra_length = 0.0;

  friend bool operator==(const TransmissionLine&, const TransmissionLine&) = default;
};

struct SurfaceLayout {
  std::vector<AntennaElement> elements;
  std::vector<TransmissionLine> lines;  // one per pair
  double wavelength = 0.0;              // design wavelength, meters
  Vec2 center;
  double absorption_efficiency = kDefaultAbsorptionEfficiency;

  std::size_t pair_count() const { return lines.size(); }
  const TransmissionLine* line_for(int pair_id) const;
  /// The two elements carrying pair_id, or {nullptr, nullptr} if the pair is malformed.
  std::pair<const AntennaElement*, const AntennaElement*> pair_elements(int pair_id) const;

  friend bool operator==(const SurfaceLayout&, const SurfaceLayout&) = default;
};

enum class Rule {
  structure,        // pairing / line bookkeeping
  centrosymmetry,   // p_a + p_b == 2 * center
  line_congruence,  // |l_i - l_j| == k * wavelength
  min_spacing,      // every element pair >= wavelength / 2 apart
};

std::string_view rule_name(Rule rule);

struct Violation {
  Rule rule = Rule::structure;
  std::vector<int> ids;  // pair ids (centrosymmetry, congruence) or element ids (spacing)
  double deviation = 0.0;  // meters
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
  bool has(Rule rule) const;
};

/// c / frequency. Throws DomainError for frequency <= 0.
double wavelength_of(double frequency_hz);

/// 2 * n_pairs elements on the x axis, uniformly spaced and centered at the
/// origin. Pair 1 is the outermost; each enclosing pair's line is one
/// wavelength longer than the pair it encloses. Even-indexed pairs carry a
/// λ/2 switch.
SurfaceLayout build_linear_array(int n_pairs, double spacing, double wavelength);

/// Concentric rings of radius base_radius + m * wavelength / pi, each pair
/// diametrically opposite and joined by the 180-degree arc on its ring.
SurfaceLayout build_concentric_surface(int n_rings, double base_radius, double wavelength);

ValidationReport validate_layout(const SurfaceLayout& layout, double tolerance = kDefaultTolerance);

/// Smallest distance between any two elements.
double min_element_spacing(const SurfaceLayout& layout);

}  // namespace vanatta::geometry
