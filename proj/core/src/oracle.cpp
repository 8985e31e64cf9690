#include "fhtp/oracle.hpp"

#include <cmath>
#include <string>

#include "fhtp/errors.hpp"
#include "fhtp/throughput_region.hpp"
#include "fhtp/ttm_solver.hpp"

namespace fhtp {

namespace {

struct Deepening {
  const std::vector<CapacityPoint>& actions;
  double tau;
  double tolerance;
  std::size_t explored = 0;
  std::vector<std::size_t> stack;

  bool dfs(const QueueState& q, int remaining) {
    ++explored;
    if (is_goal(q, tolerance)) return true;
    if (remaining == 0) return false;
    for (std::size_t a = 0; a < actions.size(); ++a) {
      stack.push_back(a);
      if (dfs(queue_update(q, actions[a].rate, tau), remaining - 1)) return true;
      stack.pop_back();
    }
    return false;
  }
};

}  // namespace

OracleResult brute_force_min_time(const ChannelModel& channel, const QueueState& q0, int depth_cap,
                                  bool use_refined, std::optional<double> tolerance) {
  if (q0.size() != channel.num_pairs()) throw UsageError("queue dimension mismatch");
  if (depth_cap < 0) throw UsageError("depth cap must be nonnegative");
  const std::vector<CapacityPoint> actions =
      use_refined ? refined_power_set(channel).entries : capacity_set(channel);
  if (std::pow(static_cast<double>(actions.size()), depth_cap) > kOracleGuard) {
    throw SizeError("oracle would explore " + std::to_string(actions.size()) + "^" +
                    std::to_string(depth_cap) + " sequences, above the guard");
  }

  Deepening search{actions, channel.slot_duration(), tolerance.value_or(goal_tolerance(q0)), 0, {}};
  OracleResult result;
  result.depth_cap = depth_cap;
  for (int depth = 0; depth <= depth_cap; ++depth) {
    search.stack.clear();
    if (search.dfs(q0, depth)) {
      result.p_star = depth;
      for (std::size_t a : search.stack) result.witness_actions.push_back(actions[a].power);
      break;
    }
  }
  result.explored_nodes = search.explored;
  return result;
}

int residual_cost(const ChannelModel& channel, const QueueState& q, int depth_cap,
                  std::optional<double> tolerance) {
  const OracleResult r = brute_force_min_time(channel, q, depth_cap, true, tolerance);
  if (!r.p_star) {
    throw InfeasibleError("queue not cleared within " + std::to_string(depth_cap) + " slots");
  }
  return *r.p_star;
}

}  // namespace fhtp
