#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "renyi/numeric.hpp"

namespace renyi {

// Finite probability vector over an ordered alphabet. Entries must be
// nonnegative and sum to 1 within 1e-12. Support = indices with mass > 0.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    require(!probs_.empty(), "Distribution: alphabet must be nonempty");
    num::CompensatedSum sum;
    for (double p : probs_) {
      require(std::isfinite(p) && p >= 0.0, "Distribution: entries must be finite and >= 0");
      sum.add(p);
    }
    require(std::abs(sum.value() - 1.0) <= 1e-12, "Distribution: entries must sum to 1");
  }

  // Bernoulli(p) as the vector (p, 1-p).
  static Distribution binary(double p) {
    require(p >= 0.0 && p <= 1.0, "Distribution::binary: p must be in [0,1]");
    return Distribution({p, 1.0 - p});
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  bool same_support(const Distribution& other) const {
    if (size() != other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
      if ((probs_[i] > 0.0) != (other.probs_[i] > 0.0)) return false;
    }
    return true;
  }

 private:
  std::vector<double> probs_;
};

// Order parameter of the Renyi divergence: zero, finite positive, one, or
// infinity. Orders within 1e-9 of 1 dispatch to the relative-entropy path.
class DivergenceOrder {
 public:
  DivergenceOrder(double alpha) : alpha_(alpha) {  // NOLINT: implicit by design
    require(!std::isnan(alpha) && alpha >= 0.0, "DivergenceOrder: alpha must be >= 0");
  }

  static DivergenceOrder infinity() { return DivergenceOrder(num::kInf); }

  double value() const { return alpha_; }
  bool is_zero() const { return alpha_ == 0.0; }
  bool is_one() const { return std::abs(alpha_ - 1.0) <= 1e-9; }
  bool is_infinite() const { return std::isinf(alpha_); }

 private:
  double alpha_;
};

}  // namespace renyi
