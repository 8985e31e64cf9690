#pragma once

#include <cstddef>
#include <vector>

#include "fhtp/channel_model.hpp"
#include "fhtp/vector.hpp"

namespace fhtp {

/// A power vector together with its capacity vector under one channel.
struct CapacityPoint {
  PowerVector power;
  RateVector rate;
};

/// Power vectors whose capacities form the Pareto frontier of the one-slot
/// capacity set. Searching over these instead of the full product set loses
/// no optimality.
struct RefinedPowerSet {
  std::vector<CapacityPoint> entries;

  std::size_t size() const noexcept { return entries.size(); }
};

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Cardinality of S_1 x ... x S_N, saturating at SIZE_MAX.
std::size_t power_vector_count(const ChannelModel& channel);

/// Full Cartesian product of the per-transmitter power sets in lexicographic
/// order (first transmitter varies slowest). Throws SizeError above `cap`.
std::vector<PowerVector> enumerate_power_vectors(const ChannelModel& channel,
                                                 std::size_t cap = kDefaultEnumerationCap);

/// Capacity point for every enumerated power vector, in enumeration order.
std::vector<CapacityPoint> capacity_set(const ChannelModel& channel,
                                        std::size_t cap = kDefaultEnumerationCap);

/// Points not strictly exceeded in every component by another point.
/// Input order is preserved and duplicates are kept.
std::vector<RateVector> weak_pareto_frontier(const std::vector<RateVector>& points);

/// Points whose only weak dominator is an equal point. Input order is
/// preserved; equal points collapse onto their first occurrence.
std::vector<RateVector> pareto_frontier(const std::vector<RateVector>& points);

/// Index form of pareto_frontier: positions of the kept representatives.
std::vector<std::size_t> pareto_frontier_indices(const std::vector<RateVector>& points);

/// Refined transmit-power-vector set. Among power vectors that map to the same
/// frontier capacity vector the one with the smallest total power is kept.
RefinedPowerSet refined_power_set(const ChannelModel& channel,
                                  std::size_t cap = kDefaultEnumerationCap);

/// True iff mu lies in the one-slot throughput region.
bool one_slot_membership(const ChannelModel& channel, const RateVector& mu);
bool one_slot_membership(const RefinedPowerSet& refined, const RateVector& mu);

}  // namespace fhtp
