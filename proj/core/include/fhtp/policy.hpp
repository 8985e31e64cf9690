#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fhtp/channel_model.hpp"
#include "fhtp/throughput_region.hpp"
#include "fhtp/ttm_solver.hpp"
#include "fhtp/vector.hpp"

namespace fhtp {

struct RatePowerPair {
  RateVector rate;
  PowerVector power;
};

/// Per-slot rate-power pairs over a horizon of T slots whose average is the
/// target rate.
struct Policy {
  std::vector<RatePowerPair> slots;
  int horizon = 0;
  RateVector target;

  RateVector average_rate() const;
};

struct VerifyTolerance {
  double capacity_abs = 1e-9;
  double average_rel = 1e-6;
};

enum class ViolationKind {
  kNegativeRate,
  kCapacity,
  kAverage,
  kShape,
};

struct Violation {
  ViolationKind kind;
  /// Zero-based slot index; unset for average and shape violations.
  std::optional<std::size_t> slot;
  std::size_t component = 0;
  double value = 0.0;
  double bound = 0.0;
};

struct PolicyVerification {
  bool ok = true;
  std::optional<Violation> first_violation;
  /// Largest relative deviation of the average from the target.
  double max_average_error = 0.0;
};

std::string describe(const Violation& v);

/// Checks capacity constraints, nonnegativity and the average-rate identity.
/// Violations are reported, never thrown.
PolicyVerification verify_policy(const ChannelModel& channel, const Policy& policy,
                                 const VerifyTolerance& tol = {});

/// Rate-achieving policy built from an optimal queue trajectory: slot t sends
/// (Q_{t-1} - Q_t) / tau with the solution's power vector, and every slot after
/// p* is silent. Throws UsageError when p* exceeds the horizon.
Policy derive_policy(const Solution& solution, int horizon, const ChannelModel& channel,
                     const RateVector& mu);

struct AchievabilityReport {
  bool achievable = false;
  /// p*; unset when the search stopped at the horizon cutoff.
  std::optional<int> p_star;
  int lower_bound = 0;
  std::optional<Policy> policy;
  Solution solution;
};

struct AchievabilityOptions {
  /// Stop as soon as p* > T is certified instead of computing p*.
  bool cutoff = false;
  SolverOptions solver;
};

/// Runs the solver on Q0 = tau * T * mu and attaches the derived policy when
/// the rate is achievable.
AchievabilityReport check_achievability(const ChannelModel& channel, const RateVector& mu,
                                        int horizon, const AchievabilityOptions& options = {});
AchievabilityReport check_achievability(const ChannelModel& channel, const RefinedPowerSet& refined,
                                        const RateVector& mu, int horizon,
                                        const AchievabilityOptions& options = {});

struct MaxWeightResult {
  Policy policy;
  std::vector<QueueState> queue_trajectory;
  bool success = false;
};

/// Greedy baseline: each slot picks the refined power vector whose capacity
/// has the largest inner product with the remaining queue (ties go to the
/// lexicographically smallest power vector) and sends min(Q / tau, C).
MaxWeightResult max_weight_policy(const ChannelModel& channel, const RateVector& mu, int horizon);

/// Index into refined.entries of the max-weight choice for queue q.
std::size_t max_weight_choice(const RefinedPowerSet& refined, const QueueState& q);

enum class Quadrant {
  kBothSucceed,
  kSearchOnly,
  kBothFail,
  kMaxWeightOnly,  // impossible for a correct search; reported, not hidden
};

std::string to_string(Quadrant q);

struct IncompletenessReport {
  AchievabilityReport search;
  MaxWeightResult max_weight;
  Quadrant quadrant = Quadrant::kBothFail;
};

IncompletenessReport incompleteness_demo(const ChannelModel& channel, const RateVector& mu,
                                         int horizon);

}  // namespace fhtp
