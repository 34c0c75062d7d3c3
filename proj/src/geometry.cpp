#include "vanatta/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "vanatta/constants.hpp"
#include "vanatta/errors.hpp"

namespace vanatta::geometry {

namespace {

// Relative slack used when comparing a constructed spacing against λ/2.
constexpr double kSpacingSlack = 1e-12;

void require_wavelength(double wavelength) {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw DomainError("wavelength must be positive and finite, got " + std::to_string(wavelength));
  }
}

TransmissionLine make_line(int pair_id, double base_length, double wavelength) {
  const bool has_switch = pair_id % 2 == 0;
  return {pair_id, base_length, has_switch, has_switch ? wavelength / 2.0 : 0.0};
}

SurfaceLayout concentric_with_count(int n_rings, double base_radius, double wavelength,
                                    int per_ring) {
  SurfaceLayout layout;
  layout.wavelength = wavelength;
  const int half = per_ring / 2;
  // Consecutive rings are rotated by half an angular step so neighbors on
  // adjacent rings (radius gap λ/π < λ/2) do not line up radially.
  const double step = kTwoPi / per_ring;
  int pair_id = 0;
  int element_id = 0;
  for (int ring = 0; ring < n_rings; ++ring) {
    const double radius = base_radius + ring * wavelength / kPi;
    const double offset = (ring % 2) * step / 2.0;
    for (int j = 0; j < half; ++j) {
      ++pair_id;
      const double phi = offset + j * step;
      const Vec2 a{radius * std::cos(phi), radius * std::sin(phi)};
      const Vec2 b{-a.x, -a.y};
      layout.elements.push_back({element_id++, a, pair_id});
      layout.elements.push_back({element_id++, b, pair_id});
      layout.lines.push_back(make_line(pair_id, kPi * radius, wavelength));
    }
  }
  return layout;
}

}  // namespace

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::structure: return "structure";
    case Rule::centrosymmetry: return "centrosymmetry";
    case Rule::line_congruence: return "line_congruence";
    case Rule::min_spacing: return "min_spacing";
  }
  return "unknown";
}

const TransmissionLine* SurfaceLayout::line_for(int pair_id) const {
  auto it = std::find_if(lines.begin(), lines.end(),
                         [pair_id](const TransmissionLine& l) { return l.pair_id == pair_id; });
  return it == lines.end() ? nullptr : &*it;
}

std::pair<const AntennaElement*, const AntennaElement*> SurfaceLayout::pair_elements(
    int pair_id) const {
  const AntennaElement* first = nullptr;
  const AntennaElement* second = nullptr;
  for (const auto& e : elements) {
    if (e.pair_id != pair_id) continue;
    if (first == nullptr) {
      first = &e;
    } else if (second == nullptr) {
      second = &e;
    } else {
      return {nullptr, nullptr};
    }
  }
  if (second == nullptr) return {nullptr, nullptr};
  return {first, second};
}

bool ValidationReport::has(Rule rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [rule](const Violation& v) { return v.rule == rule; });
}

double wavelength_of(double frequency_hz) {
  if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz)) {
    throw DomainError("frequency must be positive, got " + std::to_string(frequency_hz));
  }
  return kSpeedOfLight / frequency_hz;
}

SurfaceLayout build_linear_array(int n_pairs, double spacing, double wavelength) {
  require_wavelength(wavelength);
  if (n_pairs < 1) throw DomainError("n_pairs must be >= 1");
  if (spacing < wavelength / 2.0 * (1.0 - kSpacingSlack)) {
    throw ConstraintError("element spacing " + std::to_string(spacing) +
                          " m is below half a wavelength (" + std::to_string(wavelength / 2.0) +
                          " m)");
  }

  SurfaceLayout layout;
  layout.wavelength = wavelength;
  const int n = 2 * n_pairs;
  layout.elements.resize(n);
  for (int i = 0; i < n; ++i) {
    layout.elements[i].id = i;
    layout.elements[i].position = {(i - (n - 1) / 2.0) * spacing, 0.0};
  }
  const double shortest = kBaselineLineWavelengths * wavelength;
  for (int p = 1; p <= n_pairs; ++p) {
    layout.elements[p - 1].pair_id = p;
    layout.elements[n - p].pair_id = p;
    layout.lines.push_back(make_line(p, shortest + (n_pairs - p) * wavelength, wavelength));
  }
  return layout;
}

SurfaceLayout build_concentric_surface(int n_rings, double base_radius, double wavelength) {
  require_wavelength(wavelength);
  if (n_rings < 1) throw DomainError("n_rings must be >= 1");
  const double half_wl = wavelength / 2.0;
  // Two diametric elements on the innermost ring need 2 r0 >= λ/2.
  if (!(2.0 * base_radius >= half_wl * (1.0 - kSpacingSlack))) {
    throw ConstraintError("base radius " + std::to_string(base_radius) +
                          " m cannot hold a λ/2-spaced pair (needs >= " +
                          std::to_string(wavelength / 4.0) + " m)");
  }

  // Densest even count on the innermost ring, then back off until adjacent
  // rings also clear λ/2.
  const double ratio = std::clamp(half_wl / (2.0 * base_radius), -1.0, 1.0);
  int per_ring = static_cast<int>(std::floor(kPi / std::asin(ratio) + 1e-9));
  per_ring -= per_ring % 2;
  for (; per_ring >= 2; per_ring -= 2) {
    SurfaceLayout candidate = concentric_with_count(n_rings, base_radius, wavelength, per_ring);
    if (min_element_spacing(candidate) >= half_wl * (1.0 - kSpacingSlack)) return candidate;
  }
  throw ConstraintError("no ring population satisfies the λ/2 spacing rule");
}

double min_element_spacing(const SurfaceLayout& layout) {
  double best = std::numeric_limits<double>::infinity();
  const auto& els = layout.elements;
  for (std::size_t i = 0; i < els.size(); ++i) {
    for (std::size_t j = i + 1; j < els.size(); ++j) {
      best = std::min(best, distance(els[i].position, els[j].position));
    }
  }
  return best;
}

ValidationReport validate_layout(const SurfaceLayout& layout, double tolerance) {
  if (layout.elements.empty()) throw PreconditionError("layout has no elements");
  require_wavelength(layout.wavelength);

  ValidationReport report;
  auto add = [&report](Rule rule, std::vector<int> ids, double deviation) {
    report.violations.push_back({rule, std::move(ids), deviation});
  };
  const double wl = layout.wavelength;

  // Structure: every pair has exactly two distinct elements and one line.
  std::map<int, std::vector<int>> members;
  std::map<int, int> id_count;
  for (const auto& e : layout.elements) {
    members[e.pair_id].push_back(e.id);
    ++id_count[e.id];
  }
  for (const auto& [id, count] : id_count) {
    if (count > 1) add(Rule::structure, {id}, 0.0);
  }
  std::map<int, int> line_count;
  for (const auto& l : layout.lines) ++line_count[l.pair_id];
  for (const auto& [pair, ids] : members) {
    if (ids.size() != 2 || line_count[pair] != 1) add(Rule::structure, {pair}, 0.0);
  }
  for (const auto& l : layout.lines) {
    if (!members.contains(l.pair_id)) add(Rule::structure, {l.pair_id}, 0.0);
    if (!(l.base_length > 0.0)) add(Rule::structure, {l.pair_id}, std::abs(l.base_length));
    const double expected_extra = l.has_switch ? wl / 2.0 : 0.0;
    const double extra_dev = std::abs(l.switched_extra_length - expected_extra);
    if (extra_dev > tolerance) add(Rule::structure, {l.pair_id}, extra_dev);
  }

  // Centrosymmetry about the shared center.
  for (const auto& [pair, ids] : members) {
    auto [a, b] = layout.pair_elements(pair);
    if (a == nullptr) continue;
    const double dev = (a->position + b->position - 2.0 * layout.center).norm();
    if (dev > tolerance) add(Rule::centrosymmetry, {pair}, dev);
  }

  // Line lengths congruent modulo the wavelength.
  for (std::size_t i = 0; i < layout.lines.size(); ++i) {
    for (std::size_t j = i + 1; j < layout.lines.size(); ++j) {
      const double diff = std::abs(layout.lines[i].base_length - layout.lines[j].base_length);
      const double rem = std::fmod(diff, wl);
      const double dev = std::min(rem, wl - rem);
      if (dev > tolerance) {
        add(Rule::line_congruence, {layout.lines[i].pair_id, layout.lines[j].pair_id}, dev);
      }
    }
  }

  // Minimum spacing.
  const auto& els = layout.elements;
  for (std::size_t i = 0; i < els.size(); ++i) {
    for (std::size_t j = i + 1; j < els.size(); ++j) {
      const double d = distance(els[i].position, els[j].position);
      if (d < wl / 2.0 - tolerance) add(Rule::min_spacing, {els[i].id, els[j].id}, wl / 2.0 - d);
    }
  }
  return report;
}

}  // namespace vanatta::geometry
