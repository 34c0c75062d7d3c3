#pragma once

// Brute-force reference implementations. They only use the public layout data
// and textbook formulas, never the library's kernels.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <set>
#include <vector>

#include "vanatta/geometry.hpp"

namespace oracle {

using cd = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

inline double rad(double deg) { return deg * pi / 180.0; }

/// Direct double loop over pairs and both traversal directions.
inline cd van_atta_field(const vanatta::geometry::SurfaceLayout& layout, const std::set<int>& toggled,
                         double wavelength, double theta_deg, double phi_deg, double amplitude = 1.0,
                         double engaged_weight = 1.0) {
  const double k = 2.0 * pi / wavelength;
  cd sum = 0.0;
  for (const auto& line : layout.lines) {
    std::vector<const vanatta::geometry::AntennaElement*> members;
    for (const auto& e : layout.elements) {
      if (e.pair_id == line.pair_id) members.push_back(&e);
    }
    const bool on = toggled.count(line.pair_id) > 0;
    const double l = line.base_length + (on ? line.switched_extra_length : 0.0);
    const double w = on ? engaged_weight : 1.0;
    for (int dir = 0; dir < 2; ++dir) {
      const double x_in = members[dir]->position.x - layout.center.x;
      const double x_out = members[1 - dir]->position.x - layout.center.x;
      const double phase = k * (x_in * std::sin(rad(theta_deg)) + l + x_out * std::sin(rad(phi_deg)));
      sum += w * std::polar(1.0, -phase);
    }
  }
  return sum * amplitude * std::sqrt(layout.absorption_efficiency);
}

/// |sin(N psi / 2) / sin(psi / 2)|, psi = k d (sin phi - sin theta).
inline double dirichlet(int n, double spacing, double wavelength, double theta_deg, double phi_deg) {
  const double psi = 2.0 * pi / wavelength * spacing * (std::sin(rad(phi_deg)) - std::sin(rad(theta_deg)));
  const double den = std::sin(psi / 2.0);
  if (std::abs(den) < 1e-300) return n;
  return std::abs(std::sin(n * psi / 2.0) / den);
}

/// O(N^2) DFT, X_k = sum_n x_n exp(-2 pi j k n / N).
inline std::vector<cd> naive_dft(const std::vector<cd>& x) {
  const std::size_t n = x.size();
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cd acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += x[i] * std::polar(1.0, -2.0 * pi * static_cast<double>((k * i) % n) / static_cast<double>(n));
    }
    out[k] = acc;
  }
  return out;
}

/// Physical-optics monostatic return of a strip: E cos(theta) sin(x)/x, x = k w sin(theta).
inline double plate_po(double width, double wavelength, double theta_deg, double amplitude = 1.0) {
  const double x = 2.0 * pi / wavelength * width * std::sin(rad(theta_deg));
  const double s = x == 0.0 ? 1.0 : std::sin(x) / x;
  return amplitude * std::cos(rad(theta_deg)) * s;
}

inline double min_pairwise_distance(const vanatta::geometry::SurfaceLayout& layout) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < layout.elements.size(); ++i) {
    for (std::size_t j = i + 1; j < layout.elements.size(); ++j) {
      const auto d = layout.elements[i].position - layout.elements[j].position;
      best = std::min(best, std::sqrt(d.x * d.x + d.y * d.y));
    }
  }
  return best;
}

}  // namespace oracle
