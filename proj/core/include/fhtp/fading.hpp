#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <vector>

#include "fhtp/channel_model.hpp"
#include "fhtp/scenario.hpp"
#include "fhtp/ttm_solver.hpp"

namespace fhtp {

using FadingRng = std::mt19937_64;

/// Nakagami-m Monte Carlo setup. Gains of the base scenario are replaced by
/// random draws; everything else (power sets, noise, tau, T, target) is kept.
struct FadingConfig {
  double m = 3.0;
  double mean_power_direct = 0.6;
  double mean_power_cross = 0.2;
  int trials = 500;
  std::uint64_t seed = 1;
  Scenario base = example1_scenario();
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
  bool pruning = true;
  HeuristicMode heuristic = HeuristicMode::kInterferenceFree;
};

void validate(const FadingConfig& config);

/// Squared Nakagami-m amplitude: Gamma(shape m, scale omega / m), mean omega.
double nakagami_power_gain(double m, double omega, FadingRng& rng);

/// Independent draw for every gain entry; direct links use mean_power_direct,
/// cross links mean_power_cross.
ChannelModel sample_channel(const FadingConfig& config, FadingRng& rng);

/// Deterministic stream for one trial, independent of scheduling.
FadingRng trial_rng(std::uint64_t seed, std::size_t trial);

struct TrialRecord {
  /// Achievable with p* >= 1; only these enter the EBF average.
  bool solved = false;
  /// Certified p* > T by the horizon cutoff.
  bool unachievable = false;
  /// The trial threw and was skipped.
  bool failed = false;
  int p_star = 0;
  std::size_t expanded = 0;
  double ebf = 0.0;
  double wall_ms = 0.0;
  std::size_t refined_size = 0;
};

struct EbfStats {
  double m = 0.0;
  int trials = 0;
  /// Achievable trials with p* >= 1; the averages run over these.
  int solved = 0;
  /// Trials certified unachievable within the horizon.
  int unachievable = 0;
  /// Trials that threw (degenerate draw or depth guard) and were skipped.
  int failed = 0;
  double avg_ebf = 0.0;
  double avg_expanded = 0.0;
  double avg_wall_ms = 0.0;
  std::size_t max_refined_size = 0;
  std::vector<TrialRecord> records;

  double achievable_fraction() const { return trials > 0 ? double(solved) / trials : 0.0; }
};

using ChannelSampler = std::function<ChannelModel(const FadingConfig&, FadingRng&)>;

/// Checks achievability of the base target on every sampled channel, with the
/// search cut off at the horizon, and averages the effective branching factor
/// over achievable trials. Trials run in parallel with results identical to a
/// serial run.
EbfStats ebf_experiment(const FadingConfig& config);
EbfStats ebf_experiment(const FadingConfig& config, const ChannelSampler& sampler);

/// CSV header: m,trials,solved,avg_ebf,avg_expanded,avg_wall_ms
void write_ebf_csv_header(std::ostream& out);
void write_ebf_csv_row(std::ostream& out, const EbfStats& stats);

}  // namespace fhtp
