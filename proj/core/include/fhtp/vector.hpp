#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace fhtp {

/// Fixed-length real vector tagged with the quantity it carries, so that
/// power vectors, rate vectors and queue states cannot be mixed up.
template <class Tag>
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n, double value = 0.0) : data_(n, value) {}
  explicit Vec(std::vector<double> values) : data_(std::move(values)) {}
  Vec(std::initializer_list<double> values) : data_(values) {}

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  std::span<const double> view() const noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  double max_component() const {
    return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
  }
  double sum() const {
    double s = 0.0;
    for (double v : data_) s += v;
    return s;
  }
  bool all_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
  }

  friend bool operator==(const Vec&, const Vec&) = default;
  friend auto operator<=>(const Vec& a, const Vec& b) { return a.data_ <=> b.data_; }

 private:
  std::vector<double> data_;
};

struct PowerTag;
struct RateTag;
struct QueueTag;

/// Transmit powers, one entry per transmitter.
using PowerVector = Vec<PowerTag>;
/// Capacities or transmission rates, one entry per pair.
using RateVector = Vec<RateTag>;
/// Virtual data-queue lengths, one entry per transmitter.
using QueueState = Vec<QueueTag>;

/// a ⪰ b: every component of a is at least the matching component of b.
inline bool weakly_dominates(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

/// a ≻ b: every component of a strictly exceeds the matching component of b.
inline bool strictly_dominates(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > b[i])) return false;
  }
  return true;
}

template <class Tag>
bool weakly_dominates(const Vec<Tag>& a, const Vec<Tag>& b) {
  return weakly_dominates(a.view(), b.view());
}

template <class Tag>
bool strictly_dominates(const Vec<Tag>& a, const Vec<Tag>& b) {
  return strictly_dominates(a.view(), b.view());
}

}  // namespace fhtp
