#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fhtp/errors.hpp"
#include "fhtp/fading.hpp"
#include "fhtp/scenario.hpp"

namespace fhtp {
namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments sample_moments(double m, double omega, int draws, std::uint64_t seed) {
  FadingRng rng(seed);
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double g = nakagami_power_gain(m, omega, rng);
    sum += g;
    sq += g * g;
  }
  const double mean = sum / draws;
  return {mean, sq / draws - mean * mean};
}

TEST(NakagamiTest, MeanMatchesOmega) {
  const Moments s = sample_moments(3.0, 0.5, 100000, 7);
  EXPECT_NEAR(s.mean, 0.5, 0.01);
  // Gamma(m, omega/m) has variance omega^2 / m
  EXPECT_NEAR(s.variance, 0.25 / 3.0, 0.005);
}

TEST(NakagamiTest, RayleighVariance) {
  const Moments s = sample_moments(1.0, 0.6, 100000, 8);
  EXPECT_NEAR(s.mean, 0.6, 0.012);
  EXPECT_NEAR(s.variance, 0.36, 0.02);
}

TEST(NakagamiTest, ScalesWithOmega) {
  FadingRng a(11), b(11);
  for (int i = 0; i < 1000; ++i) {
    const double x = nakagami_power_gain(2.0, 0.3, a);
    const double y = nakagami_power_gain(2.0, 0.6, b);
    EXPECT_DOUBLE_EQ(y, 2.0 * x);
  }
}

TEST(NakagamiTest, LargeShapeConcentrates) {
  const Moments s = sample_moments(200.0, 1.0, 20000, 9);
  EXPECT_LT(std::sqrt(s.variance), 0.1);
}

TEST(NakagamiTest, RejectsBadParameters) {
  FadingRng rng(1);
  EXPECT_THROW(nakagami_power_gain(0.4, 1.0, rng), UsageError);
  EXPECT_THROW(nakagami_power_gain(1.0, 0.0, rng), UsageError);
  FadingConfig bad;
  bad.trials = 0;
  EXPECT_THROW(validate(bad), UsageError);
}

TEST(SampleChannelTest, KeepsEverythingButGains) {
  FadingConfig config;
  FadingRng rng = trial_rng(3, 0);
  const ChannelModel ch = sample_channel(config, rng);
  const ChannelModel base = config.base.channel();
  ASSERT_EQ(ch.num_pairs(), 3u);
  for (std::size_t m = 0; m < 3; ++m) {
    EXPECT_EQ(ch.noise(m), base.noise(m));
    EXPECT_EQ(ch.power_set(m), base.power_set(m));
    for (std::size_t n = 0; n < 3; ++n) EXPECT_GT(ch.gain(m, n), 0.0);
  }
}

TEST(SampleChannelTest, SeededStreamsAreReproducible) {
  FadingConfig config;
  FadingRng a = trial_rng(5, 17), b = trial_rng(5, 17), c = trial_rng(5, 18);
  const ChannelModel x = sample_channel(config, a);
  const ChannelModel y = sample_channel(config, b);
  const ChannelModel z = sample_channel(config, c);
  EXPECT_EQ(x.gain(0, 1), y.gain(0, 1));
  EXPECT_EQ(x.gain(2, 2), y.gain(2, 2));
  EXPECT_NE(x.gain(0, 0), z.gain(0, 0));
}

TEST(EbfExperimentTest, FixedChannelMatchesSolver) {
  FadingConfig config;
  config.trials = 4;
  const ChannelModel fixed = example1_scenario().channel();
  const EbfStats stats =
      ebf_experiment(config, [&](const FadingConfig&, FadingRng&) { return fixed; });
  const Solution s = solve(fixed, {5, 5, 5});
  EXPECT_EQ(stats.solved, 4);
  EXPECT_EQ(stats.unachievable, 0);
  EXPECT_NEAR(stats.avg_ebf, *s.stats.ebf, 1e-12);
  EXPECT_DOUBLE_EQ(stats.avg_expanded, static_cast<double>(s.stats.expanded));
  for (const auto& r : stats.records) EXPECT_EQ(r.p_star, 5);
}

TEST(EbfExperimentTest, UnachievableChannelIsCountedSeparately) {
  FadingConfig config;
  config.trials = 3;
  const ChannelModel fixed = example2_scenario().channel();
  const EbfStats stats =
      ebf_experiment(config, [&](const FadingConfig&, FadingRng&) { return fixed; });
  EXPECT_EQ(stats.solved, 0);
  EXPECT_EQ(stats.unachievable, 3);
  EXPECT_EQ(stats.avg_ebf, 0.0);
}

TEST(EbfExperimentTest, SerialAndParallelAgree) {
  FadingConfig config;
  config.trials = 60;
  config.seed = 99;
  config.threads = 1;
  const EbfStats serial = ebf_experiment(config);
  config.threads = 4;
  const EbfStats parallel = ebf_experiment(config);
  EXPECT_EQ(serial.solved, parallel.solved);
  EXPECT_EQ(serial.avg_ebf, parallel.avg_ebf);
  EXPECT_EQ(serial.avg_expanded, parallel.avg_expanded);
  ASSERT_EQ(serial.records.size(), parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    EXPECT_EQ(serial.records[i].p_star, parallel.records[i].p_star);
    EXPECT_EQ(serial.records[i].expanded, parallel.records[i].expanded);
  }
}

TEST(EbfExperimentTest, WeakerSearchExpandsMore) {
  FadingConfig config;
  config.trials = 40;
  config.seed = 5;
  const EbfStats astar = ebf_experiment(config);
  config.heuristic = HeuristicMode::kZero;
  const EbfStats ucs = ebf_experiment(config);
  config.heuristic = HeuristicMode::kInterferenceFree;
  config.pruning = false;
  const EbfStats unpruned = ebf_experiment(config);
  EXPECT_EQ(astar.solved, ucs.solved);
  EXPECT_EQ(astar.solved, unpruned.solved);
  for (std::size_t i = 0; i < astar.records.size(); ++i) {
    if (!astar.records[i].solved) continue;
    EXPECT_EQ(astar.records[i].p_star, ucs.records[i].p_star);
    EXPECT_GE(ucs.records[i].expanded, astar.records[i].expanded);
    EXPECT_GE(unpruned.records[i].expanded, astar.records[i].expanded);
  }
}

TEST(EbfCsvTest, HeaderAndRow) {
  std::ostringstream out;
  write_ebf_csv_header(out);
  EbfStats s;
  s.m = 2;
  s.trials = 10;
  s.solved = 7;
  s.avg_ebf = 1.5;
  s.avg_expanded = 30;
  s.avg_wall_ms = 0.25;
  write_ebf_csv_row(out, s);
  EXPECT_EQ(out.str(), "m,trials,solved,avg_ebf,avg_expanded,avg_wall_ms\n2,10,7,1.5,30,0.25\n");
}

}  // namespace
}  // namespace fhtp
