#include "fhtp/fading.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "fhtp/errors.hpp"
#include "fhtp/policy.hpp"

namespace fhtp {

void validate(const FadingConfig& config) {
  if (!(config.m >= 0.5)) throw UsageError("Nakagami shape m must be at least 0.5");
  if (!(config.mean_power_direct > 0.0) || !(config.mean_power_cross > 0.0)) {
    throw UsageError("mean powers must be positive");
  }
  if (config.trials < 1) throw UsageError("at least one trial is required");
  validate(config.base);
}

double nakagami_power_gain(double m, double omega, FadingRng& rng) {
  if (!(m >= 0.5)) throw UsageError("Nakagami shape m must be at least 0.5");
  if (!(omega > 0.0)) throw UsageError("mean power must be positive");
  std::gamma_distribution<double> unit(m, 1.0);
  return unit(rng) * (omega / m);
}

ChannelModel sample_channel(const FadingConfig& config, FadingRng& rng) {
  const std::size_t n = config.base.num_pairs;
  Scenario s = config.base;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double omega = i == j ? config.mean_power_direct : config.mean_power_cross;
      s.gains[i][j] = nakagami_power_gain(config.m, omega, rng);
    }
  }
  return s.channel();
}

FadingRng trial_rng(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return FadingRng(seq);
}

namespace {

TrialRecord run_trial(const FadingConfig& config, const ChannelSampler& sampler, std::size_t trial) {
  TrialRecord record;
  try {
    FadingRng rng = trial_rng(config.seed, trial);
    const ChannelModel channel = sampler(config, rng);
    const RefinedPowerSet refined = refined_power_set(channel);
    record.refined_size = refined.size();
    AchievabilityOptions options;
    options.cutoff = true;
    options.solver.pruning = config.pruning;
    options.solver.heuristic = config.heuristic;
    const auto start = std::chrono::steady_clock::now();
    const auto report =
        check_achievability(channel, refined, config.base.target(), config.base.horizon, options);
    record.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!report.achievable) {
      record.unachievable = true;
    } else if (*report.p_star >= 1) {
      record.solved = true;
      record.p_star = *report.p_star;
      record.expanded = report.solution.stats.expanded;
      record.ebf = report.solution.stats.ebf.value_or(0.0);
    }
  } catch (const Error&) {
    record.failed = true;
  }
  return record;
}

}  // namespace

EbfStats ebf_experiment(const FadingConfig& config, const ChannelSampler& sampler) {
  validate(config);
  EbfStats stats;
  stats.m = config.m;
  stats.trials = config.trials;
  stats.records.resize(config.trials);

  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(config.trials));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < stats.records.size(); t = next++) {
      stats.records[t] = run_trial(config, sampler, t);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();

  double ebf = 0.0;
  double expanded = 0.0;
  double wall = 0.0;
  for (const auto& r : stats.records) {
    stats.max_refined_size = std::max(stats.max_refined_size, r.refined_size);
    if (r.failed) ++stats.failed;
    if (r.unachievable) ++stats.unachievable;
    if (!r.solved) continue;
    ++stats.solved;
    ebf += r.ebf;
    expanded += static_cast<double>(r.expanded);
    wall += r.wall_ms;
  }
  if (stats.solved > 0) {
    stats.avg_ebf = ebf / stats.solved;
    stats.avg_expanded = expanded / stats.solved;
    stats.avg_wall_ms = wall / stats.solved;
  }
  return stats;
}

EbfStats ebf_experiment(const FadingConfig& config) {
  return ebf_experiment(config, [](const FadingConfig& c, FadingRng& rng) {
    return sample_channel(c, rng);
  });
}

void write_ebf_csv_header(std::ostream& out) {
  out << "m,trials,solved,avg_ebf,avg_expanded,avg_wall_ms\n";
}

void write_ebf_csv_row(std::ostream& out, const EbfStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.6g,%d,%d,%.6g,%.6g,%.6g\n", s.m, s.trials, s.solved, s.avg_ebf,
                s.avg_expanded, s.avg_wall_ms);
  out << buf;
}

}  // namespace fhtp
