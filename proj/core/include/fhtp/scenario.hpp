#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fhtp/channel_model.hpp"
#include "fhtp/vector.hpp"

namespace fhtp {

/// Everything needed to decide achievability of one target rate.
///
/// JSON schema (all keys required except gamma):
///   num_pairs      N
///   horizon        T >= 1
///   slot_duration  tau > 0
///   power_sets     N arrays of powers, each containing 0
///   noise          N positive noise powers
///   gains          N x N, gains[m][n] = gain from transmitter m to receiver n
///   target_rate    N nonnegative rates
///   gamma          N gap-to-capacity factors >= 1 (default all 1)
struct Scenario {
  std::size_t num_pairs = 0;
  int horizon = 1;
  double slot_duration = 1.0;
  std::vector<std::vector<double>> power_sets;
  std::vector<double> noise;
  std::vector<std::vector<double>> gains;
  std::vector<double> target_rate;
  std::vector<double> gamma;

  /// Channel with each direct gain divided by its gamma.
  ChannelModel channel() const;
  RateVector target() const { return RateVector(target_rate); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ParseError naming the offending field and position.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
void validate(const Scenario& scenario);

/// Full-precision JSON; parse_scenario(scenario_to_json(s)) == s.
std::string scenario_to_json(const Scenario& scenario);

/// Three pairs, on-off power {0, 2}, W = 0.1, tau = 1, T = 5, target [1, 1, 1],
/// direct gains 0.5/0.6/0.7 and cross gains 0.2. Achievable in 5 slots.
Scenario example1_scenario();
/// Same as example 1 with direct gains 0.2 and cross gains 0.5. Needs 8 slots.
Scenario example2_scenario();
/// Two pairs where max-weight fails for T = 1 although the rate is achievable.
Scenario counterexample_scenario();

}  // namespace fhtp
