// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "tsallis/qcore.hpp"

namespace tsallis {

// Finite discrete distribution: entries >= 0 summing to 1 within 1e-12.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> p);
  ProbabilityVector(std::initializer_list<double> p)
      : ProbabilityVector(std::vector<double>(p)) {}

  const std::vector<double>& values() const noexcept { return p_; }
  double operator[](std::size_t i) const { return p_[i]; }
  std::size_t size() const noexcept { return p_.size(); }

  auto begin() const { return p_.begin(); }
  auto end() const { return p_.end(); }

 private:
  std::vector<double> p_;
};

// Occupation numbers (n_1, ..., n_k): k >= 1 cells, each n_i >= 0, and
// n = sum n_i >= 1.
class CountVector {
 public:
  explicit CountVector(std::vector<std::int64_t> counts);
  CountVector(std::initializer_list<std::int64_t> counts)
      : CountVector(std::vector<std::int64_t>(counts)) {}

  const std::vector<std::int64_t>& counts() const noexcept { return n_; }
  std::int64_t operator[](std::size_t i) const { return n_[i]; }
  std::size_t cells() const noexcept { return n_.size(); }
  std::int64_t total() const noexcept { return total_; }

 private:
  std::vector<std::int64_t> n_;
  std::int64_t total_ = 0;
};

}  // namespace tsallis
