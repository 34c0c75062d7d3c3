#pragma once

// On-off keying by switching between constructive (bit 1) and destructive
// (bit 0) retro-beamforming states.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vanatta/emfield.hpp"
#include "vanatta/geometry.hpp"

namespace vanatta::modulation {

using emfield::SwitchConfig;
using Bits = std::vector<std::uint8_t>;

inline constexpr double kDefaultSwitchInterval = 1e-3;  // s
inline constexpr double kDefaultChirpDuration = 0.5e-3; // s

struct BitFrame {
  Bits bits;
  std::string label;
};

struct SwitchSchedule {
  double switch_interval = kDefaultSwitchInterval;
  std::vector<SwitchConfig> states;
  Bits bits;

  double duration() const { return switch_interval * static_cast<double>(states.size()); }
  friend bool operator==(const SwitchSchedule&, const SwitchSchedule&) = default;
};

/// Every line at its base length.
SwitchConfig constructive_config(const geometry::SurfaceLayout& layout);

/// Toggle the even-indexed (1-based) pairs: exactly half of them.
/// Throws ConfigurationError for an odd pair count or a missing switch.
SwitchConfig destructive_config(const geometry::SurfaceLayout& layout);

/// Toggle the first `count` switched pairs in pair-id order. Intermediate
/// counts give amplitude levels between the two OOK states.
SwitchConfig partial_config(const geometry::SurfaceLayout& layout, int count);

/// states[i] = constructive if bits[i] == 1 else destructive.
/// Throws SchedulingError if switch_interval < chirp_duration.
SwitchSchedule encode_bits(const BitFrame& frame, const geometry::SurfaceLayout& layout,
                           double switch_interval = kDefaultSwitchInterval,
                           double chirp_duration = kDefaultChirpDuration);

/// State active at time t with half-open intervals [i*Δ, (i+1)*Δ).
const SwitchConfig& config_at(const SwitchSchedule& schedule, double t);

/// Index of the interval containing t (same convention as config_at).
std::size_t state_index_at(const SwitchSchedule& schedule, double t);

/// n uniformly random bits from a seeded generator.
Bits random_bits(std::size_t n, std::uint64_t seed);

Bits parse_bits(std::string_view text);
std::string format_bits(const Bits& bits);

/// JSON document: switch_interval_s, bits ("0101..."), states[[toggled pair ids]].
std::string export_schedule(const SwitchSchedule& schedule);
SwitchSchedule import_schedule(std::string_view text);

}  // namespace vanatta::modulation
