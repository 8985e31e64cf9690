#include "fhtp/ttm_solver.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>

#include "fhtp/errors.hpp"

namespace fhtp {

namespace {

// Slack applied before rounding the heuristic up, so that a value that is an
// integer up to rounding error is not pushed to the next integer.
constexpr double kCeilSlack = 1e-9;

struct Action {
  PowerVector power;
  RateVector capacity;
  std::vector<double> delivered;  // tau * capacity
};

struct Node {
  int parent = -1;
  int action = -1;
  int g = 0;
  double h = 0.0;
  double f = 0.0;
  std::vector<double> cum;
  std::vector<double> queue;
  bool dead = false;
};

class AStar {
 public:
  AStar(const ChannelModel& channel, std::vector<Action> actions, const QueueState& q0,
        const SolverOptions& options)
      : channel_(channel), actions_(std::move(actions)), q0_(q0), options_(options) {
    const std::size_t n = channel.num_pairs();
    tolerance_ = options.goal_tolerance_rel * std::max(1.0, q0.max_component());
    for (std::size_t i = 0; i < n; ++i) {
      if (channel.max_power(i) == 0.0 && q0[i] > tolerance_) {
        throw InfeasibleError("pair " + std::to_string(i) +
                              " holds data but can never transmit");
      }
    }
    const int horizon = options.horizon.value_or(options.depth_cap.value_or(0));
    hard_cap_ = options.hard_depth_cap.value_or(default_hard_depth_cap(channel, q0, horizon));
  }

  Solution run() {
    const auto start = std::chrono::steady_clock::now();
    Solution solution = search();
    solution.stats.action_count = actions_.size();
    solution.stats.wall_time = std::chrono::steady_clock::now() - start;
    return solution;
  }

 private:
  struct Order {
    const std::vector<Node>* nodes;
    // true when a should be popped after b
    bool operator()(int a, int b) const {
      const Node& x = (*nodes)[a];
      const Node& y = (*nodes)[b];
      if (x.f != y.f) return x.f > y.f;
      if (x.g != y.g) return x.g < y.g;
      if (x.cum != y.cum) return x.cum > y.cum;
      return a > b;
    }
  };

  double heuristic_of(const std::vector<double>& queue) const {
    if (options_.heuristic == HeuristicMode::kZero) return 0.0;
    return search_heuristic(channel_, QueueState(queue), tolerance_, options_.integer_heuristic);
  }

  bool goal(const Node& node) const {
    return std::all_of(node.queue.begin(), node.queue.end(),
                       [&](double q) { return q <= tolerance_; });
  }

  // Delivered data is summed over the path's actions in sorted order so that
  // every permutation of the same actions lands on bit-identical states.
  std::vector<double> cumulative(int parent, int action) const {
    std::vector<int> path{action};
    for (int id = parent; id >= 0 && nodes_[id].action >= 0; id = nodes_[id].parent) {
      path.push_back(nodes_[id].action);
    }
    std::sort(path.begin(), path.end());
    std::vector<double> cum(channel_.num_pairs(), 0.0);
    for (int a : path) {
      for (std::size_t i = 0; i < cum.size(); ++i) cum[i] += actions_[a].delivered[i];
    }
    return cum;
  }

  int make_node(int parent, int action) {
    Node node;
    node.parent = parent;
    node.action = action;
    node.g = parent < 0 ? 0 : nodes_[parent].g + 1;
    node.cum = parent < 0 ? std::vector<double>(channel_.num_pairs(), 0.0)
                          : cumulative(parent, action);
    node.queue.resize(node.cum.size());
    for (std::size_t i = 0; i < node.cum.size(); ++i) {
      node.queue[i] = std::max(q0_[i] - node.cum[i], 0.0);
    }
    node.h = heuristic_of(node.queue);
    node.f = node.g + node.h;
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  // Returns false when the new node is redundant.
  bool admit(int id, SearchStats& stats) {
    const Node& node = nodes_[id];
    if (!options_.pruning) {
      std::vector<double> key = node.cum;
      key.insert(key.begin(), static_cast<double>(node.g));
      if (!seen_.insert(std::move(key)).second) {
        ++stats.duplicates;
        return false;
      }
      return true;
    }
    if (archive_.size() <= static_cast<std::size_t>(node.g)) archive_.resize(node.g + 1);
    for (int depth = 0; depth <= node.g; ++depth) {
      for (int other : archive_[depth]) {
        const Node& a = nodes_[other];
        if (!weakly_dominates(a.cum, node.cum)) continue;
        if (a.g == node.g && a.cum == node.cum) {
          ++stats.duplicates;
        } else {
          ++stats.pruned;
        }
        return false;
      }
    }
    for (std::size_t depth = node.g; depth < archive_.size(); ++depth) {
      auto& level = archive_[depth];
      std::erase_if(level, [&](int other) {
        Node& b = nodes_[other];
        if (!weakly_dominates(node.cum, b.cum)) return false;
        if (!closed_[other]) {
          b.dead = true;
          ++stats.pruned;
        }
        return true;
      });
    }
    archive_[node.g].push_back(id);
    return true;
  }

  SearchNode view(int id) const {
    const Node& node = nodes_[id];
    SearchNode out;
    out.queue = QueueState(node.queue);
    out.cumulative_capacity = RateVector(node.cum);
    out.g = node.g;
    out.h = node.h;
    out.f = node.f;
    for (int k = id; k >= 0 && nodes_[k].action >= 0; k = nodes_[k].parent) {
      out.path.push_back(actions_[nodes_[k].action].power);
    }
    std::reverse(out.path.begin(), out.path.end());
    return out;
  }

  Solution finish(int id, SearchStats stats) const {
    Solution solution;
    std::vector<int> path;
    for (int k = id; k >= 0 && nodes_[k].action >= 0; k = nodes_[k].parent) {
      path.push_back(nodes_[k].action);
    }
    std::reverse(path.begin(), path.end());
    solution.status = SolveStatus::kOptimal;
    solution.optimal_slots = static_cast<int>(path.size());
    solution.lower_bound = solution.optimal_slots;
    solution.queue_trajectory.push_back(q0_);
    for (int a : path) {
      solution.actions.push_back(actions_[a].power);
      solution.queue_trajectory.push_back(queue_update(solution.queue_trajectory.back(),
                                                       actions_[a].capacity,
                                                       channel_.slot_duration()));
    }
    if (solution.optimal_slots >= 1) {
      stats.ebf = effective_branching_factor(stats.expanded, solution.optimal_slots);
    }
    solution.stats = stats;
    return solution;
  }

  Solution search() {
    SearchStats stats;
    std::priority_queue<int, std::vector<int>, Order> open(Order{&nodes_});
    const int root = make_node(-1, -1);
    closed_.push_back(false);
    admit(root, stats);
    open.push(root);
    bool capped = false;

    while (!open.empty()) {
      const int id = open.top();
      open.pop();
      if (nodes_[id].dead) continue;
      if (options_.depth_cap && nodes_[id].f > *options_.depth_cap + kCeilSlack) {
        Solution bounded;
        bounded.status = SolveStatus::kExceedsDepthCap;
        bounded.lower_bound = static_cast<int>(std::ceil(nodes_[id].f - kCeilSlack));
        bounded.queue_trajectory.push_back(q0_);
        bounded.stats = stats;
        return bounded;
      }
      if (id != root) ++stats.expanded;
      if (options_.on_expand) options_.on_expand(view(id));
      if (goal(nodes_[id])) return finish(id, stats);
      closed_[id] = true;
      if (nodes_[id].g >= hard_cap_) {
        capped = true;
        continue;
      }
      for (std::size_t a = 0; a < actions_.size(); ++a) {
        const int child = make_node(id, static_cast<int>(a));
        closed_.push_back(false);
        ++stats.generated;
        if (admit(child, stats)) open.push(child);
      }
    }
    if (capped) {
      throw GuardExceededError("search exceeded the hard depth cap of " + std::to_string(hard_cap_) +
                               " slots");
    }
    throw InfeasibleError("frontier exhausted without clearing the queue");
  }

  const ChannelModel& channel_;
  std::vector<Action> actions_;
  QueueState q0_;
  const SolverOptions& options_;
  double tolerance_ = 0.0;
  int hard_cap_ = 0;
  std::vector<Node> nodes_;
  std::vector<bool> closed_;
  std::vector<std::vector<int>> archive_;
  std::set<std::vector<double>> seen_;
};

std::vector<Action> make_actions(const ChannelModel& channel, const RefinedPowerSet& refined,
                                 ActionSet which) {
  std::vector<CapacityPoint> points =
      which == ActionSet::kRefined ? refined.entries : capacity_set(channel);
  std::vector<Action> out;
  for (auto& p : points) {
    Action a{std::move(p.power), std::move(p.rate), {}};
    for (double c : a.capacity) a.delivered.push_back(channel.slot_duration() * c);
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

double goal_tolerance(const QueueState& q0) {
  return kGoalToleranceRel * std::max(1.0, q0.max_component());
}

bool is_goal(const QueueState& q, double tolerance) {
  return std::all_of(q.begin(), q.end(), [&](double v) { return v <= tolerance; });
}

QueueState queue_update(const QueueState& q, const RateVector& c, double tau) {
  if (q.size() != c.size()) throw UsageError("queue and rate vectors differ in length");
  QueueState next(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) next[i] = std::max(q[i] - tau * c[i], 0.0);
  return next;
}

double heuristic(const ChannelModel& channel, const QueueState& q, double slack) {
  if (q.size() != channel.num_pairs()) throw UsageError("queue dimension mismatch");
  double h = 0.0;
  for (std::size_t n = 0; n < q.size(); ++n) {
    if (q[n] < 0.0) throw UsageError("queue has a negative component");
    const double excess = q[n] - slack;
    if (excess <= 0.0) continue;
    if (channel.max_power(n) == 0.0) {
      throw InfeasibleError("pair " + std::to_string(n) + " holds data but can never transmit");
    }
    h = std::max(h, excess / (channel.slot_duration() * interference_free_rate(channel, n)));
  }
  return h;
}

double search_heuristic(const ChannelModel& channel, const QueueState& q, double tolerance,
                        bool integer) {
  const double h = heuristic(channel, q, tolerance);
  return integer ? std::max(0.0, std::ceil(h - kCeilSlack)) : h;
}

bool dominates(const SearchNode& a, const SearchNode& b) {
  return a.g <= b.g && weakly_dominates(a.cumulative_capacity, b.cumulative_capacity);
}

int default_hard_depth_cap(const ChannelModel& channel, const QueueState& q0, int horizon) {
  const double h = heuristic(channel, q0);
  const int n = static_cast<int>(channel.num_pairs());
  const int ceil_h = static_cast<int>(std::ceil(h));
  return std::max(static_cast<int>(std::ceil(2.0 * h)) + n * horizon, n * ceil_h);
}

Solution solve(const ChannelModel& channel, const RefinedPowerSet& refined, const QueueState& q0,
               const SolverOptions& options) {
  if (q0.size() != channel.num_pairs()) throw UsageError("initial queue dimension mismatch");
  for (double v : q0) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("initial queue must be finite and nonnegative");
  }
  if (options.actions == ActionSet::kRefined && refined.entries.empty()) {
    throw UsageError("refined power set is empty");
  }
  AStar search(channel, make_actions(channel, refined, options.actions), q0, options);
  return search.run();
}

Solution solve(const ChannelModel& channel, const QueueState& q0, const SolverOptions& options) {
  return solve(channel, refined_power_set(channel), q0, options);
}

double effective_branching_factor(std::size_t expanded, int depth) {
  if (depth <= 0) throw UsageError("effective branching factor is undefined for depth 0");
  const double u = static_cast<double>(expanded);
  if (u < depth) {
    throw UsageError("expanded count " + std::to_string(expanded) + " is below depth " +
                     std::to_string(depth));
  }
  if (depth == 1) return u;
  auto sum = [&](double b) {
    double total = 0.0;
    double term = 1.0;
    for (int t = 1; t <= depth; ++t) {
      term *= b;
      total += term;
      if (total > u) break;
    }
    return total;
  };
  double lo = 1.0;
  double hi = u;
  for (int iter = 0; iter < 200 && hi - lo > 1e-10; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (sum(mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace fhtp
