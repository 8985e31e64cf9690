#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fhtp/channel_model.hpp"
#include "fhtp/throughput_region.hpp"
#include "fhtp/vector.hpp"

namespace fhtp {

/// Relative goal tolerance: a queue component counts as cleared once it is
/// at most kGoalToleranceRel * max(1, max_n Q0_n).
inline constexpr double kGoalToleranceRel = 1e-9;

double goal_tolerance(const QueueState& q0);
bool is_goal(const QueueState& q, double tolerance);

/// One slot of the virtual-queue recursion: max(q - tau * c, 0) per component.
QueueState queue_update(const QueueState& q, const RateVector& c, double tau);

/// Interference-free lower bound on the number of slots needed to drain q:
/// max over n of (q_n - slack)^+ / (tau * r_n), r_n the interference-free rate.
/// Pairs that cannot transmit contribute only when they still hold data, in
/// which case InfeasibleError is thrown.
double heuristic(const ChannelModel& channel, const QueueState& q, double slack = 0.0);

/// Heuristic the search actually uses: heuristic(channel, q, tolerance),
/// optionally rounded up to an integer. Stays admissible and consistent
/// because every step costs exactly one slot.
double search_heuristic(const ChannelModel& channel, const QueueState& q, double tolerance,
                        bool integer);

/// A* node as exposed to callers. The queue is derived from the cumulative
/// delivered data, so it depends only on the multiset of actions taken.
struct SearchNode {
  QueueState queue;
  std::vector<PowerVector> path;
  RateVector cumulative_capacity;  // tau * sum of C(s_i) along the path
  int g = 0;
  double h = 0.0;
  double f = 0.0;
};

/// a makes b redundant: no deeper, and has delivered at least as much data to
/// every pair.
bool dominates(const SearchNode& a, const SearchNode& b);

enum class HeuristicMode {
  kInterferenceFree,
  kZero,  // uniform-cost search
};

enum class ActionSet {
  kRefined,
  kFull,
};

struct SolverOptions {
  /// Achievability cutoff: stop once the smallest f on the frontier exceeds
  /// this many slots. Unset means search to the true optimum.
  std::optional<int> depth_cap;
  /// Horizon used for the hard depth cap; defaults to depth_cap when unset.
  std::optional<int> horizon;
  /// Overrides the computed hard depth cap.
  std::optional<int> hard_depth_cap;
  bool pruning = true;
  HeuristicMode heuristic = HeuristicMode::kInterferenceFree;
  /// Round the heuristic up to the next integer; admissible since step costs are 1.
  bool integer_heuristic = true;
  ActionSet actions = ActionSet::kRefined;
  double goal_tolerance_rel = kGoalToleranceRel;
  /// Called for every node taken off the frontier, before the goal test.
  std::function<void(const SearchNode&)> on_expand;
};

struct SearchStats {
  /// Nodes popped from the frontier, excluding the initial node.
  std::size_t expanded = 0;
  std::size_t generated = 0;
  /// Frontier nodes removed and children discarded as dominated.
  std::size_t pruned = 0;
  /// Children discarded because an identical (depth, delivered) node exists.
  std::size_t duplicates = 0;
  std::size_t action_count = 0;
  std::optional<double> ebf;
  std::chrono::duration<double, std::milli> wall_time{0};
};

enum class SolveStatus {
  kOptimal,
  kExceedsDepthCap,
};

struct Solution {
  SolveStatus status = SolveStatus::kOptimal;
  /// p*; meaningful only when status is kOptimal.
  int optimal_slots = 0;
  /// Certified lower bound on p*. Equal to optimal_slots when optimal.
  int lower_bound = 0;
  std::vector<PowerVector> actions;
  /// Q_0 .. Q_p* computed slot by slot.
  std::vector<QueueState> queue_trajectory;
  SearchStats stats;

  bool optimal() const noexcept { return status == SolveStatus::kOptimal; }
};

/// Hard depth cap used when none is supplied:
/// max(ceil(2 H(Q0)) + N T, N ceil(H(Q0))).
int default_hard_depth_cap(const ChannelModel& channel, const QueueState& q0, int horizon);

/// Minimum number of slots needed to drain q0, by A* over cumulative-capacity
/// states with dominance pruning.
Solution solve(const ChannelModel& channel, const QueueState& q0, const SolverOptions& options = {});
Solution solve(const ChannelModel& channel, const RefinedPowerSet& refined, const QueueState& q0,
               const SolverOptions& options = {});

/// B >= 1 with sum_{t=1..depth} B^t = expanded, by bisection to 1e-6.
double effective_branching_factor(std::size_t expanded, int depth);

}  // namespace fhtp
