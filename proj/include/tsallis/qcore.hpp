// SPDX-License-Identifier: Apache-2.0
//
// Deformed elementary functions of Tsallis statistics: q-logarithm,
// q-exponential (strict and cutoff variants), q-product and q-ratio.
// All functions are domain-checked and never return silent NaN.

#pragma once

#include <stdexcept>
#include <string>

namespace tsallis {

// |q - 1| below this routes to the classical (q = 1) branch.
inline constexpr double kClassicalWindow = 1e-12;

// Raised when a domain inequality fails (e.g. 1+(1-q)x <= 0 at q > 1).
class DomainViolation : public std::domain_error {
 public:
  DomainViolation(std::string function_name, double offending_value,
                  std::string constraint);

  const std::string& function_name() const noexcept { return function_name_; }
  double offending_value() const noexcept { return offending_value_; }
  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string function_name_;
  double offending_value_;
  std::string constraint_;
};

// Raised when an iterative numeric procedure cannot deliver its contract
// (root bracketing failure, iteration cap, non-converging extrapolation,
// zero tail in rate computations).
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(std::string where, std::string detail);

  const std::string& where() const noexcept { return where_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string where_;
  std::string detail_;
};

// ln_q x = (x^(1-q) - 1)/(1-q), natural log at q = 1.  Requires x > 0.
double q_ln(double q, double x);

// exp_q x = [1 + (1-q)x]^(1/(1-q)), e^x at q = 1.
// Strict variant: requires 1 + (1-q)x > 0.
double q_exp(double q, double x);

// Cutoff variant: returns 0 where 1 + (1-q)x <= 0 and q < 1 (the convention
// needed by the q-binomial normalization); still an error for q > 1, where
// the function diverges at the boundary instead of vanishing.
double q_exp_cutoff(double q, double x);

// x (x)_q y = [x^(1-q) + y^(1-q) - 1]^(1/(1-q)); plain product at q = 1.
// Requires x, y > 0 and x^(1-q) + y^(1-q) - 1 > 0.
double q_product(double q, double x, double y);

// Inverse of the q-product in its second argument:
// [x^(1-q) - y^(1-q) + 1]^(1/(1-q)); plain ratio at q = 1.
double q_ratio(double q, double x, double y);

}  // namespace tsallis
