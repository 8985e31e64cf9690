#pragma once

#include <cstddef>
#include <vector>

#include "fhtp/vector.hpp"

namespace fhtp {

/// Static interference channel shared by N transmitter-receiver pairs.
///
/// gain(m, n) is the power gain from transmitter m to receiver n, so the
/// diagonal holds the desired-link gains. Any gap-to-capacity factor must
/// already be folded into the diagonal. Power sets are stored sorted and
/// deduplicated; each one contains 0. The model is immutable.
class ChannelModel {
 public:
  ChannelModel(std::vector<std::vector<double>> gains, std::vector<double> noise,
               std::vector<std::vector<double>> power_sets, double slot_duration = 1.0);

  std::size_t num_pairs() const noexcept { return noise_.size(); }
  double gain(std::size_t from_tx, std::size_t to_rx) const { return gains_[from_tx][to_rx]; }
  double noise(std::size_t n) const { return noise_[n]; }
  const std::vector<double>& power_set(std::size_t n) const { return power_sets_[n]; }
  double max_power(std::size_t n) const { return power_sets_[n].back(); }
  double slot_duration() const noexcept { return slot_duration_; }

  const std::vector<std::vector<double>>& gains() const noexcept { return gains_; }
  const std::vector<double>& noise() const noexcept { return noise_; }
  const std::vector<std::vector<double>>& power_sets() const noexcept { return power_sets_; }

  /// True when s has N components, each a member of its power set.
  bool is_valid(const PowerVector& s) const;

  /// Same channel with a different slot duration.
  ChannelModel with_slot_duration(double tau) const;

 private:
  std::vector<std::vector<double>> gains_;
  std::vector<double> noise_;
  std::vector<std::vector<double>> power_sets_;
  double slot_duration_;
};

/// SINR of pair n under power vector s; interference is treated as noise.
double sinr(const ChannelModel& channel, const PowerVector& s, std::size_t n);

/// Per-pair capacity log2(1 + SINR) under power vector s.
RateVector capacity_vector(const ChannelModel& channel, const PowerVector& s);

/// log2(1 + h_nn * max(S_n) / W_n): the rate pair n would get at full power
/// with every other transmitter silent. Throws DegenerateTransmitterError
/// when max(S_n) = 0.
double interference_free_rate(const ChannelModel& channel, std::size_t n);

}  // namespace fhtp
