#include "fhtp/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fhtp/errors.hpp"

namespace fhtp {

namespace {

void check_pair(const ChannelModel& channel, std::size_t n) {
  if (n >= channel.num_pairs()) {
    throw UsageError("pair index " + std::to_string(n) + " out of range for " +
                     std::to_string(channel.num_pairs()) + " pairs");
  }
}

void check_power_vector(const ChannelModel& channel, const PowerVector& s) {
  if (s.size() != channel.num_pairs()) {
    throw UsageError("power vector has " + std::to_string(s.size()) + " components, expected " +
                     std::to_string(channel.num_pairs()));
  }
}

}  // namespace

ChannelModel::ChannelModel(std::vector<std::vector<double>> gains, std::vector<double> noise,
                           std::vector<std::vector<double>> power_sets, double slot_duration)
    : gains_(std::move(gains)),
      noise_(std::move(noise)),
      power_sets_(std::move(power_sets)),
      slot_duration_(slot_duration) {
  const std::size_t n = noise_.size();
  if (n == 0) throw UsageError("channel needs at least one pair");
  if (gains_.size() != n) {
    throw UsageError("gain matrix has " + std::to_string(gains_.size()) + " rows, expected " +
                     std::to_string(n));
  }
  if (power_sets_.size() != n) {
    throw UsageError("expected " + std::to_string(n) + " power sets, got " +
                     std::to_string(power_sets_.size()));
  }
  if (!(slot_duration_ > 0.0) || !std::isfinite(slot_duration_)) {
    throw UsageError("slot duration must be positive");
  }
  for (std::size_t m = 0; m < n; ++m) {
    if (gains_[m].size() != n) {
      throw UsageError("gain row " + std::to_string(m) + " has " + std::to_string(gains_[m].size()) +
                       " entries, expected " + std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double h = gains_[m][k];
      if (!(h >= 0.0) || !std::isfinite(h)) {
        throw UsageError("gain (" + std::to_string(m) + ", " + std::to_string(k) +
                         ") must be finite and nonnegative");
      }
    }
    if (!(gains_[m][m] > 0.0)) {
      throw UsageError("direct gain of pair " + std::to_string(m) + " must be positive");
    }
    if (!(noise_[m] > 0.0) || !std::isfinite(noise_[m])) {
      throw UsageError("noise power of pair " + std::to_string(m) + " must be positive");
    }
    auto& set = power_sets_[m];
    for (double p : set) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw UsageError("power set " + std::to_string(m) + " holds a negative or non-finite power");
      }
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.empty() || set.front() != 0.0) {
      throw UsageError("power set " + std::to_string(m) + " must contain 0");
    }
  }
}

bool ChannelModel::is_valid(const PowerVector& s) const {
  if (s.size() != num_pairs()) return false;
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (!std::binary_search(power_sets_[n].begin(), power_sets_[n].end(), s[n])) return false;
  }
  return true;
}

ChannelModel ChannelModel::with_slot_duration(double tau) const {
  return ChannelModel(gains_, noise_, power_sets_, tau);
}

double sinr(const ChannelModel& channel, const PowerVector& s, std::size_t n) {
  check_pair(channel, n);
  check_power_vector(channel, s);
  if (s[n] == 0.0) return 0.0;
  double interference = channel.noise(n);
  for (std::size_t m = 0; m < channel.num_pairs(); ++m) {
    if (m != n) interference += channel.gain(m, n) * s[m];
  }
  return channel.gain(n, n) * s[n] / interference;
}

RateVector capacity_vector(const ChannelModel& channel, const PowerVector& s) {
  check_power_vector(channel, s);
  RateVector c(channel.num_pairs());
  for (std::size_t n = 0; n < channel.num_pairs(); ++n) {
    c[n] = std::log2(1.0 + sinr(channel, s, n));
  }
  return c;
}

double interference_free_rate(const ChannelModel& channel, std::size_t n) {
  check_pair(channel, n);
  const double s_max = channel.max_power(n);
  if (s_max == 0.0) {
    throw DegenerateTransmitterError(
        "pair " + std::to_string(n) + " has power set {0} and can never transmit", n);
  }
  return std::log2(1.0 + channel.gain(n, n) * s_max / channel.noise(n));
}

}  // namespace fhtp
