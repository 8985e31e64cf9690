// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fhtp/fhtp.hpp"
#include "support/instances.hpp"

using namespace fhtp;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s AC%d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs body, turning an exception into a failed criterion.
void criterion(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    report(id, name, ok, detail);
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<testing::SmallInstance> random_instances(std::uint64_t seed, int count, int max_slots) {
  std::mt19937_64 rng(seed);
  std::vector<testing::SmallInstance> out;
  for (int i = 0; i < count; ++i) out.push_back(testing::random_small_instance(rng, max_slots));
  return out;
}

Policy printed_policy(double mu5_second) {
  Policy p;
  p.horizon = 5;
  p.target = {1, 1, 1};
  p.slots = {
      {{3.4594, 0, 0}, {2, 0, 0}},
      {{0, 1.7655, 1.9260}, {0, 2, 2}},
      {{0, 1.7655, 1.9260}, {0, 2, 2}},
      {{1.0780, 1.2224, 1.1480}, {2, 2, 2}},
      {{0.4626, mu5_second, 0}, {2, 2, 0}},
  };
  return p;
}

}  // namespace

int main() {
  const auto instances = random_instances(20240601, 200, 4);

  criterion(1, "example 1 reproduction", [] {
    const auto start = Clock::now();
    const Scenario s = example1_scenario();
    const ChannelModel ch = s.channel();
    const auto r = check_achievability(ch, s.target(), s.horizon);
    bool ok = r.achievable && r.p_star == 5 && r.policy.has_value();
    double avg_err = 1.0;
    if (ok) {
      const auto v = verify_policy(ch, *r.policy);
      avg_err = v.max_average_error;
      ok = v.ok && avg_err < 1e-6;
    }

    QueueState q{5, 5, 5};
    const double tol = goal_tolerance(q);
    const std::vector<PowerVector> printed = {{2, 0, 0}, {0, 2, 2}, {0, 2, 2}, {2, 2, 2}, {2, 2, 0}};
    int cleared_at = -1;
    for (std::size_t t = 0; t < printed.size(); ++t) {
      q = queue_update(q, capacity_vector(ch, printed[t]), 1.0);
      if (cleared_at < 0 && is_goal(q, tol)) cleared_at = static_cast<int>(t) + 1;
    }
    const bool sequence_ok = cleared_at == 5;
    const VerifyTolerance printed_tol{1e-3, 1e-3};
    const bool corrected_ok = verify_policy(ch, printed_policy(0.2465), printed_tol).ok;
    const bool typo_fails = !verify_policy(ch, printed_policy(10.2465), printed_tol).ok;
    const double secs = seconds_since(start);
    return std::pair{ok && sequence_ok && corrected_ok && typo_fails && secs < 1.0,
                     fmt("p*=%d avg_err=%.2e printed_sequence_clears_at=%d corrected=%s typo_rejected=%s "
                         "%.3fs",
                         r.p_star.value_or(-1), avg_err, cleared_at, corrected_ok ? "ok" : "bad",
                         typo_fails ? "yes" : "no", secs)};
  });

  criterion(2, "example 2 reproduction", [] {
    const auto start = Clock::now();
    const Scenario s = example2_scenario();
    const ChannelModel ch = s.channel();
    const auto exhaustive = check_achievability(ch, s.target(), s.horizon);
    AchievabilityOptions cutoff;
    cutoff.cutoff = true;
    const auto cut = check_achievability(ch, s.target(), s.horizon, cutoff);
    const double secs = seconds_since(start);
    const bool ok = exhaustive.p_star == 8 && !exhaustive.achievable && !cut.achievable &&
                    cut.lower_bound > s.horizon && secs < 10.0;
    return std::pair{ok, fmt("exhaustive p*=%d, cutoff unachievable=%s lower_bound=%d, %.3fs",
                             exhaustive.p_star.value_or(-1), cut.achievable ? "no" : "yes",
                             cut.lower_bound, secs)};
  });

  criterion(3, "solver matches brute-force oracle", [&] {
    int agree_pruned = 0, agree_plain = 0, oracle_missing = 0;
    SolverOptions plain;
    plain.pruning = false;
    for (const auto& inst : instances) {
      const auto oracle = brute_force_min_time(inst.channel, inst.q0, 4, true);
      if (!oracle.p_star) {
        ++oracle_missing;
        continue;
      }
      if (solve(inst.channel, inst.q0).optimal_slots == *oracle.p_star) ++agree_pruned;
      if (solve(inst.channel, inst.q0, plain).optimal_slots == *oracle.p_star) ++agree_plain;
    }
    const int n = static_cast<int>(instances.size());
    return std::pair{agree_pruned == n && agree_plain == n,
                     fmt("pruning %d/%d, no pruning %d/%d, oracle p*>4 on %d", agree_pruned, n,
                         agree_plain, n, oracle_missing)};
  });

  criterion(4, "heuristic admissible and consistent", [&] {
    std::size_t checked = 0, admissibility = 0, consistency = 0;
    for (const auto& inst : instances) {
      const double tol = goal_tolerance(inst.q0);
      const RefinedPowerSet refined = refined_power_set(inst.channel);
      std::vector<QueueState> expanded;
      SolverOptions opts;
      opts.on_expand = [&](const SearchNode& node) { expanded.push_back(node.queue); };
      solve(inst.channel, refined, inst.q0, opts);
      for (const QueueState& q : expanded) {
        ++checked;
        const double h_search = search_heuristic(inst.channel, q, tol, true);
        const double h_plain = heuristic(inst.channel, q);
        // Nothing within ceil(h) slots clearing q already proves H*(q) > h.
        const int cap = static_cast<int>(std::ceil(h_search));
        try {
          const int cost = residual_cost(inst.channel, q, cap, tol);
          if (h_search > cost || heuristic(inst.channel, q, tol) > cost) ++admissibility;
        } catch (const InfeasibleError&) {
        }
        for (const auto& e : refined.entries) {
          const QueueState next = queue_update(q, e.rate, inst.channel.slot_duration());
          if (h_search > 1.0 + search_heuristic(inst.channel, next, tol, true)) ++consistency;
          if (h_plain > 1.0 + heuristic(inst.channel, next) + 1e-12) ++consistency;
        }
      }
    }
    return std::pair{admissibility == 0 && consistency == 0 && checked > 0,
                     fmt("%zu expanded nodes, %zu admissibility and %zu consistency violations",
                         checked, admissibility, consistency)};
  });

  criterion(5, "refined action set is sound", [] {
    const auto small = random_instances(777, 100, 3);
    int mismatches = 0;
    for (const auto& inst : small) {
      const auto full = brute_force_min_time(inst.channel, inst.q0, inst.planted_slots, false);
      const auto refined = brute_force_min_time(inst.channel, inst.q0, inst.planted_slots, true);
      if (full.p_star != refined.p_star || !refined.p_star) ++mismatches;
    }
    const ChannelModel ch = example1_scenario().channel();
    std::vector<RateVector> rates;
    for (const auto& p : capacity_set(ch)) rates.push_back(p.rate);
    const std::size_t frontier = pareto_frontier(rates).size();
    return std::pair{mismatches == 0 && rates.size() == 8 && frontier == 7,
                     fmt("%d/100 full-vs-refined mismatches, example 1 frontier %zu of %zu", mismatches,
                         frontier, rates.size())};
  });

  criterion(6, "max-weight is incomplete but never a false witness", [&] {
    const Scenario s = counterexample_scenario();
    const ChannelModel ch = s.channel();
    const auto refined = refined_power_set(ch);
    const QueueState q0{1.5, 1.7};
    const auto mw = max_weight_policy(ch, s.target(), s.horizon);
    const auto search = check_achievability(ch, s.target(), s.horizon);
    double chosen = 0.0, runner_up = 0.0;
    for (const auto& e : refined.entries) {
      const double w = q0[0] * e.rate[0] + q0[1] * e.rate[1];
      if (e.power == PowerVector{0, 2}) {
        chosen = w;
      } else {
        runner_up = std::max(runner_up, w);
      }
    }
    const bool canned = !mw.success && mw.policy.slots.at(0).power == PowerVector{0, 2} &&
                        search.achievable && search.p_star == 1 && chosen > runner_up;

    int mw_success = 0, false_witness = 0;
    for (const auto& inst : instances) {
      const int horizon = 4;
      RateVector mu(inst.q0.size());
      for (std::size_t i = 0; i < mu.size(); ++i) {
        mu[i] = inst.q0[i] / (inst.channel.slot_duration() * horizon);
      }
      if (!max_weight_policy(inst.channel, mu, horizon).success) continue;
      ++mw_success;
      if (!check_achievability(inst.channel, mu, horizon).achievable) ++false_witness;
    }
    return std::pair{canned && false_witness == 0,
                     fmt("counterexample: max-weight %s (picks [0,2], %.3f > %.3f), A* p*=%d; random: "
                         "%d max-weight successes, %d false witnesses",
                         mw.success ? "succeeds" : "fails", chosen, runner_up,
                         search.p_star.value_or(-1), mw_success, false_witness)};
  });

  criterion(7, "effective branching factor", [] {
    const double b = effective_branching_factor(849, 5);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> depth(1, 10);
    std::uniform_real_distribution<double> log_u(0.0, std::log(1e7));
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const int p = depth(rng);
      const auto u = std::max<std::size_t>(p, static_cast<std::size_t>(std::exp(log_u(rng))));
      const double x = effective_branching_factor(u, p);
      double sum = 0.0, power = 1.0;
      for (int t = 1; t <= p; ++t) sum += (power *= x);
      worst = std::max(worst, std::abs(sum - static_cast<double>(u)) / static_cast<double>(u));
    }
    return std::pair{std::abs(b - 3.6116) <= 1e-3 && worst < 1e-6,
                     fmt("EBF(849, 5) = %.6f, worst relative residual %.2e over 1000 pairs", b, worst)};
  });

  criterion(8, "Monte Carlo EBF under Nakagami fading", [] {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (int m = 1; m <= 5; ++m) {
      FadingConfig config;
      config.m = m;
      config.trials = 500;
      config.seed = 2024;
      const EbfStats st = ebf_experiment(config);
      const bool row_ok = st.solved > 0 && st.avg_ebf < static_cast<double>(st.max_refined_size) &&
                          st.max_refined_size <= 7 && st.avg_ebf < 5.0 &&
                          st.avg_expanded * 10.0 <= 37449.0;
      ok = ok && row_ok;
      detail += fmt("m=%d ebf=%.3f exp=%.1f |S|<=%zu solved=%d; ", m, st.avg_ebf, st.avg_expanded,
                    st.max_refined_size, st.solved);
    }
    const double secs = seconds_since(start);
    return std::pair{ok && secs < 300.0, detail + fmt("%.2fs", secs)};
  });

  criterion(9, "queue recursion telescopes and is monotone", [] {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> length(1, 20);
    std::uniform_real_distribution<double> amount(0.0, 10.0), rate(0.0, 4.0), tau(0.1, 2.0);
    int mismatches = 0, increases = 0;
    for (int i = 0; i < 10000; ++i) {
      const std::size_t n = 1 + i % 4;
      const double t = tau(rng);
      QueueState q0(n);
      for (double& v : q0) v = amount(rng);
      QueueState q = q0;
      RateVector delivered(n);
      const int steps = length(rng);
      for (int s = 0; s < steps; ++s) {
        RateVector c(n);
        for (double& v : c) v = rate(rng);
        const QueueState next = queue_update(q, c, t);
        for (std::size_t k = 0; k < n; ++k) {
          delivered[k] += t * c[k];
          if (next[k] > q[k]) ++increases;
          const double closed = std::max(q0[k] - delivered[k], 0.0);
          if (std::abs(next[k] - closed) > 1e-12 * std::max(1.0, q0[k])) ++mismatches;
        }
        q = next;
      }
    }
    return std::pair{mismatches == 0 && increases == 0,
                     fmt("10000 sequences, %d telescoping mismatches, %d increases", mismatches, increases)};
  });

  return failures == 0 ? 0 : 1;
}
