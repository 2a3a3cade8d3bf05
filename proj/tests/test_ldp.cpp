// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "tsallis/accum.hpp"
#include "tsallis/ldp.hpp"
#include "tsallis/qcore.hpp"
#include "tsallis/qdist.hpp"

using namespace tsallis;

namespace {

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_CASE("rate_function values") {
  CHECK(near(rate_function(1.0, 0.3, 0.5), 0.082282878505051846, 1e-13));
  CHECK(near(rate_function(0.5, 0.3, 0.5), 0.080840227208521679, 1e-13));
  CHECK(near(rate_function(1.5, 0.3, 0.5), 0.084374748277186829, 1e-13));
  for (double q : {0.3, 0.7, 1.0, 1.3, 1.8})
    CHECK(rate_function(q, 0.4, 0.4) == 0.0);
  // Steeper the further x sits from r.
  CHECK(rate_function(1.0, 0.45, 0.5) < rate_function(1.0, 0.4, 0.5));
  CHECK(rate_function(1.0, 0.4, 0.5) < rate_function(1.0, 0.3, 0.5));
  CHECK_THROWS_AS(rate_function(1.0, 0.0, 0.5), DomainViolation);
  CHECK_THROWS_AS(rate_function(1.0, 1.0, 0.5), DomainViolation);
  CHECK_THROWS_AS(rate_function(1.0, 0.3, 0.0), DomainViolation);
  CHECK_THROWS_AS(rate_function(2.0, 0.3, 0.5), DomainViolation);
}

TEST_CASE("empirical_rate classical trend") {
  const double want = rate_function(1.0, 0.3, 0.5);
  double prev_gap = std::numeric_limits<double>::infinity();
  const std::vector<double> frozen{0.10145541324646482, 0.085319757052829733,
                                   0.082701335982593334};
  int i = 0;
  for (std::int64_t n : {100, 1000, 10000}) {
    const double emp = empirical_rate(pmf({1.0, n, 0.5}), 0.3);
    CHECK(near(emp, frozen[static_cast<std::size_t>(i++)], 1e-9));
    const double gap = std::fabs(emp - want);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 0.05 * want);  // within 5% at n = 10^4
}

TEST_CASE("empirical_rate heavy-tail values") {
  CHECK(near(empirical_rate(pmf({1.5, 100, 0.5}), 0.3), 0.18419750123392029,
             1e-9));
  CHECK(near(empirical_rate(pmf({1.5, 1000, 0.5}), 0.3), 0.059962861968768303,
             1e-9));
  CHECK(near(empirical_rate(pmf({1.5, 10000, 0.5}), 0.3),
             0.019017210378870203, 1e-9));
}

TEST_CASE("empirical_rate edge behaviour") {
  // Compact support at q < 1: the event {K <= 30} has exactly zero mass.
  try {
    empirical_rate(pmf({0.5, 100, 0.5}), 0.3);
    CHECK(false);
  } catch (const NumericFailure& e) {
    CHECK(e.detail().find("tail cutoff") != std::string::npos);
  }
  // x close to 1 keeps nearly all mass: tiny but positive rate.
  const double shallow = empirical_rate(pmf({1.5, 100, 0.5}), 0.99);
  CHECK(shallow > 0.0);
  CHECK(shallow < 0.01);
  CHECK_THROWS_AS(empirical_rate(pmf({1.0, 10, 0.5}), 0.0), DomainViolation);
  CHECK_THROWS_AS(empirical_rate(pmf({1.0, 10, 0.5}), 1.0), DomainViolation);
}

TEST_CASE("tail_bounds sandwich") {
  const QBinomialPmf d = pmf({1.0, 4, 0.5});
  const TailBounds tb = tail_bounds(d, 0.3);  // m = 1
  CHECK(tb.lower == d.probabilities()[1]);
  CHECK(tb.upper == 2.0 * d.probabilities()[1]);
  CHECK(tb.monotone_ok);
  const double tail = cdf_below(d, 0.3);
  CHECK(tb.lower <= tail);
  CHECK(tail <= tb.upper);

  // m = 0 collapses the sandwich.
  const TailBounds edge = tail_bounds(d, 0.05);
  CHECK(edge.lower == d.probabilities()[0]);
  CHECK(edge.upper == d.probabilities()[0]);

  // Entire tail cut off (q < 1): both bounds vanish, trivially monotone.
  const TailBounds dead = tail_bounds(pmf({0.5, 1000, 0.5}), 0.2);
  CHECK(dead.lower == 0.0);
  CHECK(dead.upper == 0.0);
  CHECK(dead.monotone_ok);
}

TEST_CASE("tail_bounds verifies monotonicity instead of assuming it") {
  // Heavy-tailed q pushes mass to the edges; b_0 > b_1 breaks the
  // precondition and the bounds must say so.
  const QBinomialPmf d = pmf({1.8, 10, 0.5});
  const TailBounds tb = tail_bounds(d, 0.45);
  const auto& b = d.probabilities();
  bool rising = true;
  for (std::size_t k = 0; k + 1 <= 4; ++k)
    if (b[k] > b[k + 1]) rising = false;
  CHECK(tb.monotone_ok == rising);
}

TEST_CASE("three-case bounds, classical case") {
  const QBinomialPmf d = pmf({1.0, 1000, 0.5});
  const ThreeCaseBounds bounds = three_case_rate_bounds(d, 0.3);
  CHECK(bounds.case_id == 1);
  const double emp = empirical_rate(d, 0.3);
  CHECK(bounds.lower_rate_bound <= -emp);
  CHECK(-emp <= bounds.upper_rate_bound);
  CHECK(near(bounds.upper_rate_bound - bounds.lower_rate_bound,
             std::log(301.0) / 1000.0, 1e-12));
  CHECK(near(bounds.discarded_term, std::log(301.0) / 1000.0, 1e-12));
  CHECK(bounds.inequalities_ok);
}

TEST_CASE("three-case bounds, compact support case") {
  // The scanned tail is empty, yet every reported quantity stays finite:
  // q_ln saturates at -1/(1-q) on the cut-off cell.
  int i = 0;
  const std::vector<double> frozen{0.0091355287256600438, 0.0010340237847442486,
                                   0.0001075627673984187};
  double prev = std::numeric_limits<double>::infinity();
  for (std::int64_t n : {100, 1000, 10000}) {
    const QBinomialPmf d = pmf({0.5, n, 0.5});
    const ThreeCaseBounds bounds = three_case_rate_bounds(d, 0.3);
    CHECK(bounds.case_id == 2);
    const double nfac = std::pow(static_cast<double>(n), 1.5);
    CHECK(near(bounds.lower_rate_bound, -2.0 / nfac, 1e-15));
    CHECK(bounds.lower_rate_bound == bounds.upper_rate_bound);
    CHECK(near(bounds.discarded_term, frozen[static_cast<std::size_t>(i++)],
               1e-9));
    CHECK(bounds.discarded_term < prev);
    prev = bounds.discarded_term;
    if (n >= 1000)
      CHECK(bounds.discarded_term <= 0.1 * rate_function(0.5, 0.3, 0.5));
  }
}

TEST_CASE("three-case bounds, live q < 1 cell") {
  const QBinomialPmf d = pmf({0.5, 1000, 0.5});
  const ThreeCaseBounds bounds = three_case_rate_bounds(d, 0.498);
  CHECK(bounds.case_id == 2);
  CHECK(bounds.lower_rate_bound < bounds.upper_rate_bound);
  const double emp = empirical_rate(d, 0.498);
  CHECK(bounds.lower_rate_bound <= -emp);
  CHECK(-emp <= bounds.upper_rate_bound);
}

TEST_CASE("three-case bounds, heavy tail case") {
  for (std::int64_t n : {100, 1000, 10000}) {
    const QBinomialPmf d = pmf({1.5, n, 0.5});
    const ThreeCaseBounds bounds = three_case_rate_bounds(d, 0.3);
    CHECK(bounds.case_id == 3);
    CHECK(bounds.inequalities_ok);
    const double emp = empirical_rate(d, 0.3);
    CHECK(bounds.lower_rate_bound <= -emp);
    CHECK(-emp <= bounds.upper_rate_bound);
  }
}

TEST_CASE("ldp_scan emits ordered, self-consistent rows") {
  const auto rows = ldp_scan({1.0}, {100, 1000, 10000}, 0.5, 0.3);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    CHECK(row.q == 1.0);
    CHECK(row.r == 0.5);
    CHECK(row.x == 0.3);
    CHECK(row.error.empty());
    REQUIRE(row.empirical_rate.has_value());
    REQUIRE(row.three_case.has_value());
    CHECK(row.three_case->case_id == 1);
    CHECK(row.monotone_precondition_ok);
    const QBinomialPmf d = pmf({1.0, row.n, 0.5});
    CHECK(row.tail == cdf_below(d, 0.3));
    CHECK(*row.empirical_rate == empirical_rate(d, 0.3));
    CHECK(row.theoretical_rate == rate_function(1.0, 0.3, 0.5));
    const TailBounds tb = tail_bounds(d, 0.3);
    CHECK(row.lower_bound_value == tb.lower);
    CHECK(row.upper_bound_value == tb.upper);
  }
  CHECK(rows[0].n == 100);
  CHECK(rows[1].n == 1000);
  CHECK(rows[2].n == 10000);

  const auto grid = ldp_scan({0.5, 1.0}, {10, 100}, 0.5, 0.3);
  REQUIRE(grid.size() == 4);
  CHECK(grid[0].q == 0.5);
  CHECK(grid[0].n == 10);
  CHECK(grid[1].q == 0.5);
  CHECK(grid[1].n == 100);
  CHECK(grid[2].q == 1.0);
  CHECK(grid[3].q == 1.0);
}

TEST_CASE("ldp_scan captures cutoff rows instead of aborting") {
  const auto rows = ldp_scan({0.5}, {100}, 0.5, 0.3);
  REQUIRE(rows.size() == 1);
  const auto& row = rows[0];
  CHECK(!row.error.empty());
  CHECK(row.error.find("tail cutoff") != std::string::npos);
  CHECK(!row.empirical_rate.has_value());
  CHECK(row.tail == 0.0);
  // The three-case quantities survive: they only need the floor index.
  REQUIRE(row.three_case.has_value());
  CHECK(near(row.three_case->discarded_term, 0.0091355287256600438, 1e-9));
  CHECK(row.theoretical_rate == rate_function(0.5, 0.3, 0.5));
}

TEST_CASE("ldp_scan is continuous through q = 1") {
  const auto exact = ldp_scan({1.0}, {1000}, 0.5, 0.3);
  const auto above = ldp_scan({1.0 + 1e-6}, {1000}, 0.5, 0.3);
  const auto below = ldp_scan({1.0 - 1e-6}, {1000}, 0.5, 0.3);
  REQUIRE(exact[0].empirical_rate.has_value());
  REQUIRE(above[0].empirical_rate.has_value());
  REQUIRE(below[0].empirical_rate.has_value());
  const double e = *exact[0].empirical_rate;
  CHECK(near(*above[0].empirical_rate, e, 1e-3 * e));
  CHECK(near(*below[0].empirical_rate, e, 1e-3 * e));
}
