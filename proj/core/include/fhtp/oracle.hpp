#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fhtp/channel_model.hpp"
#include "fhtp/vector.hpp"

namespace fhtp {

/// Largest |actions|^depth_cap the oracle accepts.
inline constexpr double kOracleGuard = 1e7;

struct OracleResult {
  /// Minimal clearing length; unset when no sequence of length <= depth_cap clears the queue.
  std::optional<int> p_star;
  int depth_cap = 0;
  std::vector<PowerVector> witness_actions;
  std::size_t explored_nodes = 0;
};

/// Exhaustive iterative-deepening search over action sequences, using the
/// slot-by-slot queue recursion. Either the refined set or the full product
/// set is used as the action space. Throws SizeError when the guard is
/// exceeded. `tolerance` defaults to the goal tolerance of q0.
OracleResult brute_force_min_time(const ChannelModel& channel, const QueueState& q0, int depth_cap,
                                  bool use_refined, std::optional<double> tolerance = std::nullopt);

/// True remaining cost H*(q). Throws SizeError when the guard is exceeded and
/// InfeasibleError when nothing within depth_cap clears q.
int residual_cost(const ChannelModel& channel, const QueueState& q, int depth_cap,
                  std::optional<double> tolerance = std::nullopt);

}  // namespace fhtp
