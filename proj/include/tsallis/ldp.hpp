// SPDX-License-Identifier: Apache-2.0
//
// Power-law large deviations for the q-binomial: lower-tail decay measured
// on the q-logarithmic scale, its generalized rate function, and the
// elementary sandwich b_m <= P(K <= m) <= (m+1) b_m that drives the limit
// argument (m = floor(n x), x < r).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsallis/qdist.hpp"

namespace tsallis {

// Generalized rate function D_{2-q}((x,1-x) || (r,1-r)) / (2-q).
double rate_function(double q, double x, double r);

// -(1/n^(2-q)) q_ln(q, P(K <= floor(n x))), with the tail evaluated in the
// log domain so classical tails below DBL_MIN still yield a finite rate.
// Throws NumericFailure when every term of the tail is cut off (q < 1).
double empirical_rate(const QBinomialPmf& pmf, double x);

struct TailBounds {
  double lower;      // b_m
  double upper;      // (m+1) b_m
  bool monotone_ok;  // b_0 <= b_1 <= ... <= b_m, verified not assumed
};

TailBounds tail_bounds(const QBinomialPmf& pmf, double x);

// The three-case limit argument (q = 1, q < 1, q > 1) reduced to checkable
// quantities at finite n.
struct ThreeCaseBounds {
  int case_id;              // 1: q = 1, 2: q < 1, 3: q > 1
  double lower_rate_bound;  // (1/n^(2-q)) q_ln(q, b_m)
  double upper_rate_bound;  // (1/n^(2-q)) q_ln(q, (m+1) b_m)
  double discarded_term;    // (1/n^(2-q)) q_ln(q, m+1), dropped in the limit
  bool inequalities_ok;     // the q > 1 chain's auxiliary inequalities
};

// Contract: lower_rate_bound <= -empirical_rate <= upper_rate_bound (the
// upper half under the monotone precondition).  For q > 1 the two auxiliary
// inequalities q_ln a < ln a (at a = (m+1) b_m) and ln a < a - 1 (at
// a = 1 + (q-1)(n^(2-q) rate - C_q), the exp_q bracket of the limit shape)
// are verified at the evaluated arguments.  A cut-off floor cell (q < 1)
// degenerates both bounds to the finite q_ln cutoff value -1/((1-q) n^(2-q)),
// so the row stays computable even when the tail itself is identically zero.
ThreeCaseBounds three_case_rate_bounds(const QBinomialPmf& pmf, double x);

struct RateScanRow {
  double q;
  std::int64_t n;
  double r;
  double x;
  double tail = 0.0;
  std::optional<double> empirical_rate;
  double theoretical_rate = 0.0;
  double lower_bound_value = 0.0;
  double upper_bound_value = 0.0;
  bool monotone_precondition_ok = false;
  std::optional<ThreeCaseBounds> three_case;
  std::string error;  // empty when the row is clean
};

// Deterministic scan over q (outer) x n (inner); per-row failures (tail
// cutoff, solver failure) are captured in the row instead of aborting.
std::vector<RateScanRow> ldp_scan(const std::vector<double>& qs,
                                  const std::vector<std::int64_t>& ns,
                                  double r, double x);

}  // namespace tsallis
