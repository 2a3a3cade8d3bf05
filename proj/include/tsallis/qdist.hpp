// SPDX-License-Identifier: Apache-2.0
//
// Normalized q-binomial and q-multinomial distributions.  Cell masses are
// b_k = exp_q(s_k + C) with s_k the unnormalized q-log mass; the constant C
// is fixed by a bracketed root solve of sum_k b_k = 1.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsallis/types.hpp"

namespace tsallis {

struct QBinomialSpec {
  double q;
  std::int64_t n;
  double r;

  QBinomialSpec(double q, std::int64_t n, double r);
};

struct SolverReport {
  int iterations = 0;
  double residual = 0.0;      // sum(b_k) - 1 at the accepted root
  double bracket_lo = 0.0;    // bracket at acceptance
  double bracket_hi = 0.0;
  std::int64_t cutoff_count = 0;  // cells with zero mass at the root (q < 1)
  double scale_factor = 1.0;  // 1 + (1-q) C, the exp_q positivity margin
  bool analytic_q1 = false;   // q = 1 shortcut (C = 0) taken
};

class QBinomialPmf {
 public:
  QBinomialPmf(QBinomialSpec spec, std::vector<double> qlog_masses, double c,
               SolverReport report);

  const QBinomialSpec& spec() const noexcept { return spec_; }
  const std::vector<double>& probabilities() const noexcept { return prob_; }
  double c_q() const noexcept { return c_; }
  const SolverReport& solver_report() const noexcept { return report_; }

  // Unnormalized q-log mass s_k.
  double qlog_mass(std::int64_t k) const { return s_.at(static_cast<std::size_t>(k)); }

  // ln b_k, computed in the log domain so deep tails (e.g. e^-800 at q = 1)
  // stay finite; -inf for a cell cut off by the q < 1 support boundary.
  double ln_probability(std::int64_t k) const;

 private:
  QBinomialSpec spec_;
  std::vector<double> s_;
  std::vector<double> prob_;
  double c_;
  SolverReport report_;
};

// Unnormalized q-log mass of cell k:
//   q_ln_multinomial_coeff(q, (k, n-k))
//   + (1/(2-q)) [ k^(2-q) q_ln(2-q, r) + (n-k)^(2-q) q_ln(2-q, 1-r) ]
// with the 0^(2-q) := 0 convention at the edges.
double ln_q_pmf_unnormalized(const QBinomialSpec& spec, std::int64_t k);

// Root C of sum_k exp_q_cutoff(s_k + C) = 1 together with diagnostics.
// Bisection with safeguarded Newton refinement; residual <= 1e-12 or
// NumericFailure.  q = 1 is analytic (C = 0) after verifying the masses
// already sum to 1 within 1e-10.
std::pair<double, SolverReport> solve_normalization(const QBinomialSpec& spec);

// Full normalized pmf over k = 0..n.
QBinomialPmf pmf(const QBinomialSpec& spec);

// P(K <= floor(n x)) for 0 < x < 1; plain truncation of n x up to a one-ulp
// nudge so grid points like n = 1000, x = 0.3 land on the intended index.
double cdf_below(const QBinomialPmf& pmf, double x);

// m seeded draws by inverse-CDF lookup; bit-deterministic across platforms
// for a fixed seed.
std::vector<std::int64_t> sample(const QBinomialPmf& pmf, std::int64_t m,
                                 std::uint64_t seed);

// q-multinomial analogue of ln_q_pmf_unnormalized for a composition
// (n_1, ..., n_k) and cell rates (r_1, ..., r_k).
double q_multinomial_ln_pmf_unnormalized(double q, const CountVector& counts,
                                         const ProbabilityVector& rates);

class QMultinomialPmf {
 public:
  QMultinomialPmf(double q, std::int64_t n, ProbabilityVector rates,
                  std::map<std::vector<std::int64_t>, double> probabilities,
                  double c, SolverReport report);

  double q() const noexcept { return q_; }
  std::int64_t n() const noexcept { return n_; }
  const ProbabilityVector& rates() const noexcept { return rates_; }
  const std::map<std::vector<std::int64_t>, double>& probabilities()
      const noexcept {
    return prob_;
  }
  double c_q() const noexcept { return c_; }
  const SolverReport& solver_report() const noexcept { return report_; }

 private:
  double q_;
  std::int64_t n_;
  ProbabilityVector rates_;
  std::map<std::vector<std::int64_t>, double> prob_;
  double c_;
  SolverReport report_;
};

// Exhaustive q-multinomial pmf over all compositions of n into
// rates.size() cells.  Refuses workloads with more than 10^6 compositions.
QMultinomialPmf q_multinomial_pmf_small(double q, std::int64_t n,
                                        const ProbabilityVector& rates);

// Line-oriented text record (versioned header, spec fields, normalization
// constant and solver summary, then "k,probability" rows).
std::string serialize_pmf(const QBinomialPmf& pmf);
QBinomialPmf parse_pmf(std::istream& in);
QBinomialPmf parse_pmf(const std::string& text);

namespace detail {

// Root solve on a caller-supplied mass vector; bracket_hint lets tests
// verify that perturbed-but-valid brackets land on the same root.
std::pair<double, SolverReport> solve_c(
    double q, std::span<const double> qlog_masses,
    std::optional<std::pair<double, double>> bracket_hint = std::nullopt);

}  // namespace detail

}  // namespace tsallis
