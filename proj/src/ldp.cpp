// SPDX-License-Identifier: Apache-2.0

#include "tsallis/ldp.hpp"

#include <cmath>
#include <limits>

#include "tsallis/accum.hpp"
#include "tsallis/qcore.hpp"
#include "tsallis/qdiv.hpp"

namespace tsallis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool classical(double q) { return std::fabs(q - 1.0) < kClassicalWindow; }

std::int64_t tail_index(const QBinomialPmf& pmf, double x) {
  if (!(x > 0.0 && x < 1.0))
    throw DomainViolation("tail_index", x, "0 < x < 1");
  const std::int64_t n = pmf.spec().n;
  std::int64_t m = static_cast<std::int64_t>(
      std::floor(static_cast<double>(n) * x + 1e-9));
  return std::min(m, n);
}

// q_ln(q, e^L) straight from the log-domain value L.
double q_ln_from_ln(double q, double ln_value) {
  if (classical(q)) return ln_value;
  return std::expm1((1.0 - q) * ln_value) / (1.0 - q);
}

}  // namespace

double rate_function(double q, double x, double r) {
  if (!(q > 0.0 && q < 2.0))
    throw DomainViolation("rate_function", q, "0 < q < 2");
  if (!(x > 0.0 && x < 1.0))
    throw DomainViolation("rate_function", x, "0 < x < 1");
  if (!(r > 0.0 && r < 1.0))
    throw DomainViolation("rate_function", r, "0 < r < 1");
  const ProbabilityVector px{x, 1.0 - x};
  const ProbabilityVector pr{r, 1.0 - r};
  return q_divergence(2.0 - q, px, pr) / (2.0 - q);
}

double empirical_rate(const QBinomialPmf& pmf, double x) {
  const std::int64_t m = tail_index(pmf, x);
  std::vector<double> ln_terms;
  ln_terms.reserve(static_cast<std::size_t>(m) + 1);
  for (std::int64_t k = 0; k <= m; ++k)
    ln_terms.push_back(pmf.ln_probability(k));
  const double ln_tail = log_sum_exp(ln_terms);
  if (ln_tail == -kInf)
    throw NumericFailure("empirical_rate",
                         "tail cutoff: all terms of P(K <= floor(nx)) are "
                         "cut off");
  const double q = pmf.spec().q;
  const double nfac = std::pow(static_cast<double>(pmf.spec().n), 2.0 - q);
  return -q_ln_from_ln(q, ln_tail) / nfac;
}

TailBounds tail_bounds(const QBinomialPmf& pmf, double x) {
  const std::int64_t m = tail_index(pmf, x);
  TailBounds b;
  const double bm = pmf.probabilities()[static_cast<std::size_t>(m)];
  b.lower = bm;
  b.upper = static_cast<double>(m + 1) * bm;
  b.monotone_ok = true;
  // Compare on the log scale: -inf cells order correctly against live ones.
  double prev = pmf.ln_probability(0);
  for (std::int64_t k = 1; k <= m; ++k) {
    const double cur = pmf.ln_probability(k);
    if (cur < prev) {
      b.monotone_ok = false;
      break;
    }
    prev = cur;
  }
  return b;
}

ThreeCaseBounds three_case_rate_bounds(const QBinomialPmf& pmf, double x) {
  const std::int64_t m = tail_index(pmf, x);
  const double q = pmf.spec().q;
  // A cut-off floor cell (q < 1 only) is fine here: lnb_m = -inf flows
  // through q_ln_from_ln to the finite cutoff value -1/(1-q).
  const double lnb_m = pmf.ln_probability(m);
  const double nfac = std::pow(static_cast<double>(pmf.spec().n), 2.0 - q);
  const double ln_a = std::log(static_cast<double>(m + 1)) + lnb_m;

  ThreeCaseBounds out;
  out.case_id = classical(q) ? 1 : (q < 1.0 ? 2 : 3);
  out.lower_rate_bound = q_ln_from_ln(q, lnb_m) / nfac;
  out.upper_rate_bound = q_ln_from_ln(q, ln_a) / nfac;
  out.discarded_term = q_ln(q, static_cast<double>(m + 1)) / nfac;
  out.inequalities_ok = true;

  if (out.case_id == 3) {
    // (a) q_ln a < ln a at a = (m+1) b_m, the step from the deformed to the
    // plain logarithm.
    const double qln_a = q_ln_from_ln(q, ln_a);
    const bool ok_a = ln_a == 0.0 ? true : qln_a < ln_a;
    // (b) ln a < a - 1 at the exp_q bracket of the limit shape,
    // a = 1 + (q-1)(n^(2-q) rate - C_q); positive because the pmf's
    // scale factor 1 + (1-q) C_q is.
    const double t =
        nfac * rate_function(q, x, pmf.spec().r);
    const double a2 = 1.0 + (q - 1.0) * (t - pmf.c_q());
    const bool ok_b = a2 == 1.0 ? true : std::log(a2) < a2 - 1.0;
    out.inequalities_ok = ok_a && ok_b;
  }
  return out;
}

std::vector<RateScanRow> ldp_scan(const std::vector<double>& qs,
                                  const std::vector<std::int64_t>& ns,
                                  double r, double x) {
  std::vector<RateScanRow> rows;
  rows.reserve(qs.size() * ns.size());
  for (double q : qs) {
    for (std::int64_t n : ns) {
      RateScanRow row;
      row.q = q;
      row.n = n;
      row.r = r;
      row.x = x;
      row.theoretical_rate = rate_function(q, x, r);
      std::optional<QBinomialPmf> dist;
      try {
        dist.emplace(pmf(QBinomialSpec(q, n, r)));
      } catch (const NumericFailure& e) {
        row.error = std::string("solver failure: ") + e.detail();
        rows.push_back(std::move(row));
        continue;
      }
      row.tail = cdf_below(*dist, x);
      const TailBounds tb = tail_bounds(*dist, x);
      row.lower_bound_value = tb.lower;
      row.upper_bound_value = tb.upper;
      row.monotone_precondition_ok = tb.monotone_ok;
      row.three_case = three_case_rate_bounds(*dist, x);
      try {
        row.empirical_rate = empirical_rate(*dist, x);
      } catch (const NumericFailure& e) {
        row.error = e.detail();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace tsallis
