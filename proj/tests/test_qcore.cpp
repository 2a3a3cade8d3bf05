// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "tsallis/qcore.hpp"

using namespace tsallis;

namespace {

const std::vector<double> kQGrid{0.3, 0.7, 1.0, 1.3, 1.8};

std::vector<double> log_grid(double lo_exp, double hi_exp, int steps) {
  std::vector<double> xs;
  for (int j = 0; j <= steps; ++j)
    xs.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * j / steps));
  return xs;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_CASE("q_ln values") {
  CHECK(near(q_ln(1.0, std::exp(1.0)), 1.0, 1e-15));
  CHECK(q_ln(1.0, 1.0) == 0.0);
  CHECK(near(q_ln(0.5, 4.0), 2.0, 1e-14));
  CHECK(near(q_ln(2.0, 2.0), 0.5, 1e-15));
  CHECK(near(q_ln(0.5, 3.0), 1.4641016151377546, 1e-14));
}

TEST_CASE("q_ln domain errors carry context") {
  CHECK_THROWS_AS(q_ln(0.5, 0.0), DomainViolation);
  CHECK_THROWS_AS(q_ln(1.3, -2.0), DomainViolation);
  CHECK_THROWS_AS(q_ln(1.0, std::nan("")), DomainViolation);
  try {
    q_ln(0.5, -1.0);
    CHECK(false);
  } catch (const DomainViolation& e) {
    CHECK(e.function_name() == "q_ln");
    CHECK(e.offending_value() == -1.0);
    CHECK(e.constraint() == "x > 0");
  }
}

TEST_CASE("q_exp values and cutoff convention") {
  CHECK(q_exp(1.0, 0.0) == 1.0);
  CHECK(near(q_exp(2.0, 0.5), 2.0, 1e-15));
  CHECK(near(q_exp(0.5, 2.0), 4.0, 1e-14));
  CHECK(near(q_exp(1.0, -50.0), std::exp(-50.0), 1e-15 * std::exp(-50.0)));

  CHECK_THROWS_AS(q_exp(0.5, -3.0), DomainViolation);
  CHECK(q_exp_cutoff(0.5, -3.0) == 0.0);
  CHECK(q_exp_cutoff(0.5, -2.0) == 0.0);  // boundary 1+(1-q)x = 0
  CHECK(near(q_exp_cutoff(0.5, 2.0), 4.0, 1e-14));
  // For q > 1 the boundary is a divergence, not a cutoff.
  CHECK_THROWS_AS(q_exp_cutoff(1.5, 2.0), DomainViolation);
  CHECK_THROWS_AS(q_exp_cutoff(1.5, 5.0), DomainViolation);
  CHECK_THROWS_AS(q_exp(0.7, std::nan("")), DomainViolation);
  CHECK_THROWS_AS(q_exp_cutoff(0.7, std::nan("")), DomainViolation);
}

TEST_CASE("q_exp inverts q_ln across the standard grids") {
  const auto xs = log_grid(-3.0, 3.0, 60);
  for (double q : kQGrid) {
    for (double x : xs) {
      const double y = q_ln(q, x);
      const double back = q_exp(q, y);
      CHECK(near(back, x, 1e-12 * x));
    }
  }
}

TEST_CASE("q_ln inverts q_exp on its domain") {
  for (double q : kQGrid) {
    for (double a = -2.0; a <= 2.0; a += 0.125) {
      if (!(1.0 + (1.0 - q) * a > 0.0)) continue;
      const double y = q_exp(q, a);
      CHECK(near(q_ln(q, y), a, 1e-12 * (1.0 + std::fabs(a))));
    }
  }
}

TEST_CASE("q_product values") {
  CHECK(near(q_product(1.0, 2.0, 3.0), 6.0, 1e-14));
  CHECK(near(q_product(0.5, 2.0, 3.0), 4.6064507456824115, 1e-13));
  for (double q : kQGrid)
    for (double x : log_grid(-1.0, 1.0, 4))
      CHECK(near(q_product(q, x, 1.0), x, 1e-13 * x));
  CHECK_THROWS_AS(q_product(0.5, 0.2, 0.2), DomainViolation);
  CHECK_THROWS_AS(q_product(0.5, 0.0, 2.0), DomainViolation);
  CHECK_THROWS_AS(q_product(1.0, std::nan(""), 2.0), DomainViolation);
}

TEST_CASE("q_product is the q_ln homomorphism") {
  const auto pts = log_grid(-2.0, 2.0, 12);
  for (double q : kQGrid) {
    for (double x : pts) {
      for (double y : pts) {
        double prod;
        try {
          prod = q_product(q, x, y);
        } catch (const DomainViolation&) {
          continue;  // bracket not positive for this (q, x, y)
        }
        const double lx = q_ln(q, x);
        const double ly = q_ln(q, y);
        CHECK(near(q_ln(q, prod), lx + ly,
                   1e-12 * (1.0 + std::fabs(lx) + std::fabs(ly))));
      }
    }
  }
}

TEST_CASE("q_exp satisfies the additive law through q_product") {
  for (double q : kQGrid) {
    for (double a = -2.0; a <= 2.0; a += 0.25) {
      for (double b = -2.0; b <= 2.0; b += 0.25) {
        if (!(1.0 + (1.0 - q) * a > 0.0)) continue;
        if (!(1.0 + (1.0 - q) * b > 0.0)) continue;
        if (!(1.0 + (1.0 - q) * (a + b) > 0.0)) continue;
        double lhs;
        try {
          lhs = q_product(q, q_exp(q, a), q_exp(q, b));
        } catch (const DomainViolation&) {
          continue;
        }
        const double rhs = q_exp(q, a + b);
        CHECK(near(lhs, rhs, 1e-12 * rhs));
      }
    }
  }
}

TEST_CASE("q_ratio values and inversion") {
  CHECK(near(q_ratio(1.0, 6.0, 3.0), 2.0, 1e-14));
  for (double q : kQGrid)
    for (double x : log_grid(-1.0, 1.0, 4))
      CHECK(near(q_ratio(q, x, x), 1.0, 1e-13));
  for (double q : kQGrid) {
    for (double x : log_grid(-0.5, 0.5, 4)) {
      for (double y : log_grid(-0.5, 0.5, 4)) {
        double prod;
        try {
          prod = q_product(q, x, y);
        } catch (const DomainViolation&) {
          continue;
        }
        CHECK(near(q_ratio(q, prod, y), x, 1e-12 * x));
      }
    }
  }
  CHECK_THROWS_AS(q_ratio(0.5, 0.01, 4.0), DomainViolation);
  CHECK_THROWS_AS(q_ratio(1.0, 1.0, 0.0), DomainViolation);
}

TEST_CASE("classical window and continuity in q") {
  for (double x : log_grid(-3.0, 3.0, 20)) {
    CHECK(q_ln(1.0 + 1e-13, x) == std::log(x));  // inside the window
    CHECK(q_ln(1.0 - 1e-13, x) == std::log(x));
    CHECK(near(q_ln(1.0 + 1e-9, x), std::log(x), 1e-7));
    CHECK(near(q_ln(1.0 - 1e-9, x), std::log(x), 1e-7));
  }
  for (double a = -3.0; a <= 3.0; a += 0.5) {
    const double e = std::exp(a);
    CHECK(near(q_exp(1.0 + 1e-9, a), e, 1e-7 * e));
    CHECK(near(q_exp(1.0 - 1e-9, a), e, 1e-7 * e));
  }
}

TEST_CASE("q_exp is strictly increasing") {
  for (double q : kQGrid) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double a = -1.5; a <= 1.5; a += 0.05) {
      if (!(1.0 + (1.0 - q) * a > 0.0)) continue;
      const double v = q_exp(q, a);
      CHECK(v > prev);
      prev = v;
    }
  }
}
