// SPDX-License-Identifier: Apache-2.0
//
// Compensated accumulation helpers.  Long q-logarithm sums (factorials up to
// n = 10^6) lose ~1e-3 absolute with a plain accumulator; Neumaier summation
// keeps them at the few-ulp level, which the Stirling-residual extrapolation
// depends on.

#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace tsallis {

class NeumaierSum {
 public:
  NeumaierSum() = default;
  NeumaierSum(double sum, double carry) : sum_(sum), carry_(carry) {}

  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      carry_ += (sum_ - t) + v;
    else
      carry_ += (v - t) + sum_;
    sum_ = t;
  }

  double value() const { return sum_ + carry_; }

  // Raw state, so a cache can persist and later resume a running sum
  // without perturbing the operation sequence.
  double raw_sum() const { return sum_; }
  double raw_carry() const { return carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// log(sum(exp(v_i))) anchored at the maximum; -inf entries (dead cells) are
// skipped, and an empty or all-dead input yields -inf.
inline double log_sum_exp(std::span<const double> v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double d : v)
    if (d > mx) mx = d;
  if (!(mx > -std::numeric_limits<double>::infinity())) return mx;
  NeumaierSum s;
  for (double d : v)
    if (d != -std::numeric_limits<double>::infinity()) s.add(std::exp(d - mx));
  return mx + std::log(s.value());
}

}  // namespace tsallis
