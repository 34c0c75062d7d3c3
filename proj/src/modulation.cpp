#include "vanatta/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "vanatta/errors.hpp"

namespace vanatta::modulation {

namespace {

// Times within this fraction of an interval of a boundary snap onto it, so
// t = m * chirp_duration lands in the right interval despite rounding.
constexpr double kBoundarySnap = 1e-9;

}  // namespace

SwitchConfig constructive_config(const geometry::SurfaceLayout&) { return {}; }

SwitchConfig destructive_config(const geometry::SurfaceLayout& layout) {
  if (layout.pair_count() == 0 || layout.pair_count() % 2 != 0) {
    throw ConfigurationError("destructive state needs an even number of pairs, layout has " +
                             std::to_string(layout.pair_count()));
  }
  SwitchConfig config;
  for (const auto& line : layout.lines) {
    if (line.pair_id % 2 != 0) continue;
    if (!line.has_switch) {
      throw ConfigurationError("even-indexed pair " + std::to_string(line.pair_id) + " has no switch");
    }
    config.toggled.insert(line.pair_id);
  }
  if (2 * config.toggled.size() != layout.pair_count()) {
    throw ConfigurationError("even-indexed pairs are not exactly half of the layout");
  }
  return config;
}

SwitchConfig partial_config(const geometry::SurfaceLayout& layout, int count) {
  if (count < 0) throw DomainError("toggle count must be >= 0");
  std::vector<int> switched;
  for (const auto& line : layout.lines) {
    if (line.has_switch) switched.push_back(line.pair_id);
  }
  std::sort(switched.begin(), switched.end());
  if (static_cast<std::size_t>(count) > switched.size()) {
    throw ConfigurationError("layout has only " + std::to_string(switched.size()) + " switches");
  }
  SwitchConfig config;
  config.toggled.insert(switched.begin(), switched.begin() + count);
  return config;
}

SwitchSchedule encode_bits(const BitFrame& frame, const geometry::SurfaceLayout& layout,
                           double switch_interval, double chirp_duration) {
  if (frame.bits.empty()) throw DomainError("bit frame is empty");
  if (!(chirp_duration > 0.0)) throw DomainError("chirp duration must be > 0");
  if (!(switch_interval >= chirp_duration)) {
    throw SchedulingError("switch interval " + std::to_string(switch_interval) +
                          " s is shorter than one chirp (" + std::to_string(chirp_duration) + " s)");
  }
  const SwitchConfig on = constructive_config(layout);
  const SwitchConfig off = destructive_config(layout);
  SwitchSchedule schedule;
  schedule.switch_interval = switch_interval;
  schedule.bits = frame.bits;
  schedule.states.reserve(frame.bits.size());
  for (auto bit : frame.bits) {
    if (bit > 1) throw DomainError("bits must be 0 or 1");
    schedule.states.push_back(bit == 1 ? on : off);
  }
  return schedule;
}

std::size_t state_index_at(const SwitchSchedule& schedule, double t) {
  if (!(t >= 0.0) || !(t < schedule.duration())) {
    throw DomainError("time " + std::to_string(t) + " s outside the schedule [0, " +
                      std::to_string(schedule.duration()) + ")");
  }
  const double q = t / schedule.switch_interval;
  const double nearest = std::round(q);
  const double index = std::abs(q - nearest) < kBoundarySnap ? nearest : std::floor(q);
  return std::min(static_cast<std::size_t>(index), schedule.states.size() - 1);
}

const SwitchConfig& config_at(const SwitchSchedule& schedule, double t) {
  return schedule.states[state_index_at(schedule, t)];
}

Bits random_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Bits bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
  return bits;
}

Bits parse_bits(std::string_view text) {
  Bits bits;
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else {
      throw DomainError(std::string("invalid bit character '") + c + "'");
    }
  }
  return bits;
}

std::string format_bits(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::string export_schedule(const SwitchSchedule& schedule) {
  nlohmann::json doc;
  doc["switch_interval_s"] = schedule.switch_interval;
  doc["bits"] = format_bits(schedule.bits);
  auto states = nlohmann::json::array();
  for (const auto& s : schedule.states) states.push_back(s.toggled);
  doc["states"] = std::move(states);
  return doc.dump(2) + "\n";
}

SwitchSchedule import_schedule(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    SwitchSchedule schedule;
    schedule.switch_interval = doc.at("switch_interval_s").get<double>();
    schedule.bits = parse_bits(doc.at("bits").get<std::string>());
    for (const auto& s : doc.at("states")) {
      schedule.states.push_back({s.get<std::set<int>>()});
    }
    if (schedule.states.size() != schedule.bits.size()) {
      throw IoError("schedule has " + std::to_string(schedule.states.size()) + " states for " +
                    std::to_string(schedule.bits.size()) + " bits");
    }
    return schedule;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed schedule document: ") + e.what());
  }
}

}  // namespace vanatta::modulation
