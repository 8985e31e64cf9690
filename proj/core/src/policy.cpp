#include "fhtp/policy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fhtp/errors.hpp"

namespace fhtp {

namespace {

void check_rate(const ChannelModel& channel, const RateVector& mu) {
  if (mu.size() != channel.num_pairs()) throw UsageError("target rate dimension mismatch");
  for (double v : mu) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("target rate must be finite and nonnegative");
  }
}

void check_horizon(int horizon) {
  if (horizon < 1) throw UsageError("horizon must be at least one slot");
}

QueueState initial_queue(const ChannelModel& channel, const RateVector& mu, int horizon) {
  QueueState q0(mu.size());
  for (std::size_t n = 0; n < mu.size(); ++n) q0[n] = channel.slot_duration() * horizon * mu[n];
  return q0;
}

}  // namespace

RateVector Policy::average_rate() const {
  RateVector avg(target.size());
  for (const auto& slot : slots) {
    for (std::size_t n = 0; n < avg.size() && n < slot.rate.size(); ++n) avg[n] += slot.rate[n];
  }
  for (double& v : avg) v /= horizon;
  return avg;
}

std::string describe(const Violation& v) {
  std::ostringstream out;
  switch (v.kind) {
    case ViolationKind::kNegativeRate:
      out << "negative rate";
      break;
    case ViolationKind::kCapacity:
      out << "rate above capacity";
      break;
    case ViolationKind::kAverage:
      out << "average rate differs from target";
      break;
    case ViolationKind::kShape:
      out << "policy shape mismatch";
      break;
  }
  if (v.slot) out << " at slot " << (*v.slot + 1);
  out << ", pair " << (v.component + 1) << ": " << v.value << " vs " << v.bound;
  return out.str();
}

PolicyVerification verify_policy(const ChannelModel& channel, const Policy& policy,
                                 const VerifyTolerance& tol) {
  PolicyVerification report;
  auto fail = [&](Violation v) {
    if (report.ok) {
      report.ok = false;
      report.first_violation = v;
    }
  };
  const std::size_t n = channel.num_pairs();
  if (policy.horizon < 1 || policy.slots.size() != static_cast<std::size_t>(policy.horizon) ||
      policy.target.size() != n) {
    fail({ViolationKind::kShape, std::nullopt, 0, static_cast<double>(policy.slots.size()),
          static_cast<double>(policy.horizon)});
    return report;
  }
  for (std::size_t t = 0; t < policy.slots.size(); ++t) {
    const auto& slot = policy.slots[t];
    if (slot.rate.size() != n || !channel.is_valid(slot.power)) {
      fail({ViolationKind::kShape, t, 0, static_cast<double>(slot.rate.size()),
            static_cast<double>(n)});
      continue;
    }
    const RateVector cap = capacity_vector(channel, slot.power);
    for (std::size_t i = 0; i < n; ++i) {
      if (slot.rate[i] < 0.0) fail({ViolationKind::kNegativeRate, t, i, slot.rate[i], 0.0});
      if (slot.rate[i] > cap[i] + tol.capacity_abs) {
        fail({ViolationKind::kCapacity, t, i, slot.rate[i], cap[i]});
      }
    }
  }
  const RateVector avg = policy.average_rate();
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = std::max(std::abs(policy.target[i]), 1.0);
    const double err = std::abs(avg[i] - policy.target[i]) / scale;
    report.max_average_error = std::max(report.max_average_error, err);
    if (err > tol.average_rel) fail({ViolationKind::kAverage, std::nullopt, i, avg[i], policy.target[i]});
  }
  return report;
}

Policy derive_policy(const Solution& solution, int horizon, const ChannelModel& channel,
                     const RateVector& mu) {
  check_horizon(horizon);
  check_rate(channel, mu);
  if (!solution.optimal() || solution.optimal_slots > horizon) {
    throw UsageError("rate is not achievable within " + std::to_string(horizon) + " slots");
  }
  const double tau = channel.slot_duration();
  const std::size_t n = channel.num_pairs();
  Policy policy;
  policy.horizon = horizon;
  policy.target = mu;
  for (int t = 1; t <= solution.optimal_slots; ++t) {
    const auto& before = solution.queue_trajectory[t - 1];
    const auto& after = solution.queue_trajectory[t];
    RateVector rate(n);
    for (std::size_t i = 0; i < n; ++i) rate[i] = (before[i] - after[i]) / tau;
    policy.slots.push_back({std::move(rate), solution.actions[t - 1]});
  }
  for (int t = solution.optimal_slots; t < horizon; ++t) {
    policy.slots.push_back({RateVector(n), PowerVector(n)});
  }
  return policy;
}

AchievabilityReport check_achievability(const ChannelModel& channel, const RefinedPowerSet& refined,
                                        const RateVector& mu, int horizon,
                                        const AchievabilityOptions& options) {
  check_horizon(horizon);
  check_rate(channel, mu);
  SolverOptions solver = options.solver;
  solver.horizon = horizon;
  if (options.cutoff) solver.depth_cap = horizon;
  AchievabilityReport report;
  report.solution = solve(channel, refined, initial_queue(channel, mu, horizon), solver);
  report.lower_bound = report.solution.lower_bound;
  if (report.solution.optimal()) {
    report.p_star = report.solution.optimal_slots;
    report.achievable = *report.p_star <= horizon;
    if (report.achievable) report.policy = derive_policy(report.solution, horizon, channel, mu);
  }
  return report;
}

AchievabilityReport check_achievability(const ChannelModel& channel, const RateVector& mu,
                                        int horizon, const AchievabilityOptions& options) {
  return check_achievability(channel, refined_power_set(channel), mu, horizon, options);
}

std::size_t max_weight_choice(const RefinedPowerSet& refined, const QueueState& q) {
  if (refined.entries.empty()) throw UsageError("refined power set is empty");
  std::size_t best = 0;
  double best_weight = -1.0;
  for (std::size_t k = 0; k < refined.entries.size(); ++k) {
    const auto& e = refined.entries[k];
    double weight = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) weight += q[i] * e.rate[i];
    if (weight > best_weight ||
        (weight == best_weight && e.power < refined.entries[best].power)) {
      best = k;
      best_weight = weight;
    }
  }
  return best;
}

MaxWeightResult max_weight_policy(const ChannelModel& channel, const RateVector& mu, int horizon) {
  check_horizon(horizon);
  check_rate(channel, mu);
  const RefinedPowerSet refined = refined_power_set(channel);
  const double tau = channel.slot_duration();
  const std::size_t n = channel.num_pairs();
  const QueueState q0 = initial_queue(channel, mu, horizon);

  MaxWeightResult result;
  result.policy.horizon = horizon;
  result.policy.target = mu;
  result.queue_trajectory.push_back(q0);
  for (int t = 0; t < horizon; ++t) {
    const QueueState& q = result.queue_trajectory.back();
    const auto& choice = refined.entries[max_weight_choice(refined, q)];
    RateVector rate(n);
    for (std::size_t i = 0; i < n; ++i) rate[i] = std::min(q[i] / tau, choice.rate[i]);
    QueueState next = queue_update(q, choice.rate, tau);
    result.policy.slots.push_back({std::move(rate), choice.power});
    result.queue_trajectory.push_back(std::move(next));
  }
  result.success = is_goal(result.queue_trajectory.back(), goal_tolerance(q0));
  return result;
}

std::string to_string(Quadrant q) {
  switch (q) {
    case Quadrant::kBothSucceed:
      return "both_succeed";
    case Quadrant::kSearchOnly:
      return "astar_succeeds_maxweight_fails";
    case Quadrant::kBothFail:
      return "both_fail";
    case Quadrant::kMaxWeightOnly:
      return "maxweight_succeeds_astar_fails";
  }
  return "unknown";
}

IncompletenessReport incompleteness_demo(const ChannelModel& channel, const RateVector& mu,
                                         int horizon) {
  IncompletenessReport report;
  AchievabilityOptions options;
  options.cutoff = true;
  report.search = check_achievability(channel, mu, horizon, options);
  report.max_weight = max_weight_policy(channel, mu, horizon);
  const bool a = report.search.achievable;
  const bool m = report.max_weight.success;
  if (a && m) {
    report.quadrant = Quadrant::kBothSucceed;
  } else if (a) {
    report.quadrant = Quadrant::kSearchOnly;
  } else if (m) {
    report.quadrant = Quadrant::kMaxWeightOnly;
  } else {
    report.quadrant = Quadrant::kBothFail;
  }
  return report;
}

}  // namespace fhtp
