#include "fhtp/throughput_region.hpp"

#include <limits>
#include <string>

#include "fhtp/errors.hpp"

namespace fhtp {

namespace {

void require_nonempty(const std::vector<RateVector>& points, const char* what) {
  if (points.empty()) throw UsageError(std::string(what) + " of an empty point set");
}

}  // namespace

std::size_t power_vector_count(const ChannelModel& channel) {
  std::size_t count = 1;
  for (const auto& set : channel.power_sets()) {
    if (count > std::numeric_limits<std::size_t>::max() / set.size()) {
      return std::numeric_limits<std::size_t>::max();
    }
    count *= set.size();
  }
  return count;
}

std::vector<PowerVector> enumerate_power_vectors(const ChannelModel& channel, std::size_t cap) {
  const std::size_t count = power_vector_count(channel);
  if (count > cap) {
    throw SizeError("power-vector set has " + std::to_string(count) +
                    " elements, above the enumeration cap of " + std::to_string(cap));
  }
  const std::size_t n = channel.num_pairs();
  std::vector<PowerVector> out;
  out.reserve(count);
  std::vector<std::size_t> digit(n, 0);
  for (std::size_t k = 0; k < count; ++k) {
    PowerVector s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = channel.power_set(i)[digit[i]];
    out.push_back(std::move(s));
    // odometer increment, last transmitter fastest
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < channel.power_set(i).size()) break;
      digit[i] = 0;
    }
  }
  return out;
}

std::vector<CapacityPoint> capacity_set(const ChannelModel& channel, std::size_t cap) {
  std::vector<CapacityPoint> out;
  for (auto& s : enumerate_power_vectors(channel, cap)) {
    RateVector c = capacity_vector(channel, s);
    out.push_back({std::move(s), std::move(c)});
  }
  return out;
}

std::vector<RateVector> weak_pareto_frontier(const std::vector<RateVector>& points) {
  require_nonempty(points, "weak Pareto frontier");
  std::vector<RateVector> out;
  for (const auto& b : points) {
    bool exceeded = false;
    for (const auto& a : points) {
      if (strictly_dominates(a, b)) {
        exceeded = true;
        break;
      }
    }
    if (!exceeded) out.push_back(b);
  }
  return out;
}

std::vector<std::size_t> pareto_frontier_indices(const std::vector<RateVector>& points) {
  require_nonempty(points, "Pareto frontier");
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto& b = points[j];
    bool keep = true;
    for (std::size_t i = 0; i < points.size() && keep; ++i) {
      if (i == j) continue;
      const auto& a = points[i];
      if (!weakly_dominates(a, b)) continue;
      // an equal point earlier in the list takes b's place
      if (a == b) {
        keep = i > j;
      } else {
        keep = false;
      }
    }
    if (keep) out.push_back(j);
  }
  return out;
}

std::vector<RateVector> pareto_frontier(const std::vector<RateVector>& points) {
  std::vector<RateVector> out;
  for (std::size_t i : pareto_frontier_indices(points)) out.push_back(points[i]);
  return out;
}

RefinedPowerSet refined_power_set(const ChannelModel& channel, std::size_t cap) {
  auto all = capacity_set(channel, cap);
  std::vector<RateVector> rates;
  rates.reserve(all.size());
  for (const auto& p : all) rates.push_back(p.rate);

  RefinedPowerSet refined;
  for (std::size_t i : pareto_frontier_indices(rates)) {
    // cheapest power vector with this exact capacity; first in order on ties
    std::size_t best = i;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (all[k].rate == rates[i] && all[k].power.sum() < all[best].power.sum()) best = k;
    }
    refined.entries.push_back(all[best]);
  }
  return refined;
}

bool one_slot_membership(const RefinedPowerSet& refined, const RateVector& mu) {
  for (double v : mu) {
    if (!(v >= 0.0)) throw UsageError("rate vector has a negative component");
  }
  if (mu.all_zero()) return true;
  for (const auto& e : refined.entries) {
    if (weakly_dominates(e.rate, mu)) return true;
  }
  return false;
}

bool one_slot_membership(const ChannelModel& channel, const RateVector& mu) {
  if (mu.size() != channel.num_pairs()) throw UsageError("rate vector dimension mismatch");
  return one_slot_membership(refined_power_set(channel), mu);
}

}  // namespace fhtp
