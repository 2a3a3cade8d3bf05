// SPDX-License-Identifier: Apache-2.0
//
// q-deformed combinatorics: the q-factorial through its logarithm
// ln_q n!_q = sum_{k=1..n} ln_q k, its rough and precise Stirling
// approximations, the q-Stirling constant delta_q, q-multinomial
// coefficients and their Tsallis-entropy approximants.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "tsallis/types.hpp"

namespace tsallis {

// ln_q of the q-factorial: sum of q_ln(q, k) for k = 1..n (0 for n = 0).
// Compensated summation throughout; served from a per-q prefix cache.
double q_ln_factorial(double q, std::int64_t n);

// Leading-order q-Stirling: (n ln_q n - n)/(2-q) for q != 2, n - ln n at
// q = 2.  Requires n >= 1.
double q_stirling_rough(double q, std::int64_t n);

// The constant delta_q appearing in the refined q-Stirling formula, plus the
// derived offset c_q = 1/(2-q) - delta_q (undefined at q = 2).
struct StirlingConstants {
  double q;
  double delta_q;

  double c_q() const;
};

// Refined q-Stirling:
//   q != 2: (n/(2-q) + 1/2) ln_q n - n/(2-q) + c_q
//   q  = 2: n - 1/(2n) - ln n - 1/2 - delta_2
// Requires n >= 1.
double q_stirling_precise(double q, std::int64_t n,
                          const StirlingConstants& constants);

struct DeltaEstimate {
  double value;           // extrapolated delta_q
  double error_estimate;  // honest scale of the residual uncertainty
  int points;             // checkpoints used
};

// Estimate delta_q by extrapolating the residual
//   q_ln_factorial(q, n) - [precise formula with delta = 0]
// over a geometric checkpoint schedule up to n_max (>= 1000).  Throws
// NumericFailure if the residual sequence does not settle.
DeltaEstimate estimate_delta_q(double q, std::int64_t n_max);

// ln_q of the q-deformed multinomial coefficient:
// q_ln_factorial(n) - sum_i q_ln_factorial(n_i).
double q_ln_multinomial_coeff(double q, const CountVector& counts);

// Tsallis entropy S_q(p) = -sum_i p_i^q ln_q p_i = (1 - sum p_i^q)/(q-1),
// Shannon entropy at q = 1.  Entries p_i = 0 contribute 0.  Requires q > 0.
double tsallis_entropy(double q, const ProbabilityVector& p);

// Leading-order entropic form of the multinomial coefficient:
//   q != 2: (n^(2-q)/(2-q)) S_{2-q}(n_1/n, ..., n_k/n)
//   q  = 2: -ln n + sum_{n_i > 0} ln n_i
double approx_ln_multinomial_via_entropy(double q, const CountVector& counts);

// Second-order approximant for the two-cell (binomial) case:
//   -c_q + (1/2)(q_ln n - q_ln k - q_ln(n-k)) + (n^(2-q)/(2-q)) S_{2-q}
// Requires 1 <= k <= n-1 and q != 2.
double q_ln_binomial_coeff_approx(double q, std::int64_t n, std::int64_t k,
                                  const StirlingConstants& constants);

// Per-q cache of q_ln prefix sums with stored compensation carry, so results
// do not depend on extension granularity.  Readers share; extension is
// serialized.
class QFactorialCache {
 public:
  // prefix[k] = q_ln_factorial(q, k) for k = 0..n, copied out under lock.
  void fill_prefix(double q, std::int64_t n, std::vector<double>& out);
  double ln_factorial(double q, std::int64_t n);

  static QFactorialCache& global();

 private:
  struct Series {
    std::vector<double> prefix;  // prefix[k] = rounded running value, prefix[0] = 0
    double sum = 0.0;            // raw accumulator state after prefix.back()
    double carry = 0.0;          // Neumaier carry belonging to `sum`
  };

  Series& extend_locked(double q, std::int64_t n);

  std::map<double, Series> per_q_;
  std::shared_mutex mu_;
};

}  // namespace tsallis
