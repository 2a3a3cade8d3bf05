// SPDX-License-Identifier: Apache-2.0

#include "tsallis/qcore.hpp"

#include <cmath>

namespace tsallis {

DomainViolation::DomainViolation(std::string function_name,
                                 double offending_value,
                                 std::string constraint)
    : std::domain_error(function_name + ": value " +
                        std::to_string(offending_value) + " violates " +
                        constraint),
      function_name_(std::move(function_name)),
      offending_value_(offending_value),
      constraint_(std::move(constraint)) {}

NumericFailure::NumericFailure(std::string where, std::string detail)
    : std::runtime_error(where + ": " + detail),
      where_(std::move(where)),
      detail_(std::move(detail)) {}

double q_ln(double q, double x) {
  if (!(x > 0.0)) throw DomainViolation("q_ln", x, "x > 0");
  if (std::fabs(q - 1.0) < kClassicalWindow) return std::log(x);
  // expm1 keeps the q->1 neighbourhood stable where x^(1-q) is close to 1.
  return std::expm1((1.0 - q) * std::log(x)) / (1.0 - q);
}

double q_exp(double q, double x) {
  if (std::isnan(x)) throw DomainViolation("q_exp", x, "x is NaN");
  if (std::fabs(q - 1.0) < kClassicalWindow) return std::exp(x);
  const double u = (1.0 - q) * x;
  if (!(u > -1.0)) throw DomainViolation("q_exp", x, "1 + (1-q)x > 0");
  return std::exp(std::log1p(u) / (1.0 - q));
}

double q_exp_cutoff(double q, double x) {
  if (std::isnan(x)) throw DomainViolation("q_exp_cutoff", x, "x is NaN");
  if (std::fabs(q - 1.0) < kClassicalWindow) return std::exp(x);
  const double u = (1.0 - q) * x;
  if (!(u > -1.0)) {
    if (q < 1.0) return 0.0;  // compact-support convention
    throw DomainViolation("q_exp_cutoff", x, "1 + (1-q)x > 0 (q > 1)");
  }
  return std::exp(std::log1p(u) / (1.0 - q));
}

double q_product(double q, double x, double y) {
  if (!(x > 0.0)) throw DomainViolation("q_product", x, "x > 0");
  if (!(y > 0.0)) throw DomainViolation("q_product", y, "y > 0");
  if (std::fabs(q - 1.0) < kClassicalWindow) return x * y;
  // u = x^(1-q) - 1 and v = y^(1-q) - 1 evaluated without the "- 1"
  // cancellation; the bracket x^(1-q) + y^(1-q) - 1 is then 1 + u + v.
  const double u = std::expm1((1.0 - q) * std::log(x));
  const double v = std::expm1((1.0 - q) * std::log(y));
  const double w = u + v;
  if (!(w > -1.0))
    throw DomainViolation("q_product", 1.0 + w, "x^(1-q) + y^(1-q) - 1 > 0");
  return std::exp(std::log1p(w) / (1.0 - q));
}

double q_ratio(double q, double x, double y) {
  if (!(x > 0.0)) throw DomainViolation("q_ratio", x, "x > 0");
  if (!(y > 0.0)) throw DomainViolation("q_ratio", y, "y > 0");
  if (std::fabs(q - 1.0) < kClassicalWindow) return x / y;
  const double u = std::expm1((1.0 - q) * std::log(x));
  const double v = std::expm1((1.0 - q) * std::log(y));
  const double w = u - v;
  if (!(w > -1.0))
    throw DomainViolation("q_ratio", 1.0 + w, "x^(1-q) - y^(1-q) + 1 > 0");
  return std::exp(std::log1p(w) / (1.0 - q));
}

}  // namespace tsallis
