// SPDX-License-Identifier: Apache-2.0

#include "tsallis/qcomb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "tsallis/accum.hpp"

namespace tsallis {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_q2(double q) { return std::fabs(q - 2.0) < kClassicalWindow; }
}  // namespace

QFactorialCache& QFactorialCache::global() {
  static QFactorialCache cache;
  return cache;
}

QFactorialCache::Series& QFactorialCache::extend_locked(double q,
                                                        std::int64_t n) {
  Series& s = per_q_[q];
  if (s.prefix.empty()) s.prefix.push_back(0.0);
  NeumaierSum acc(s.sum, s.carry);
  for (std::int64_t k = static_cast<std::int64_t>(s.prefix.size()); k <= n;
       ++k) {
    acc.add(q_ln(q, static_cast<double>(k)));
    s.prefix.push_back(acc.value());
  }
  s.sum = acc.raw_sum();
  s.carry = acc.raw_carry();
  return s;
}

void QFactorialCache::fill_prefix(double q, std::int64_t n,
                                  std::vector<double>& out) {
  if (n < 0) throw DomainViolation("QFactorialCache", static_cast<double>(n),
                                   "n >= 0");
  {
    std::shared_lock lock(mu_);
    auto it = per_q_.find(q);
    if (it != per_q_.end() &&
        static_cast<std::int64_t>(it->second.prefix.size()) > n) {
      out.assign(it->second.prefix.begin(), it->second.prefix.begin() + n + 1);
      return;
    }
  }
  std::unique_lock lock(mu_);
  Series& s = extend_locked(q, n);
  out.assign(s.prefix.begin(), s.prefix.begin() + n + 1);
}

double QFactorialCache::ln_factorial(double q, std::int64_t n) {
  if (n < 0) throw DomainViolation("QFactorialCache", static_cast<double>(n),
                                   "n >= 0");
  {
    std::shared_lock lock(mu_);
    auto it = per_q_.find(q);
    if (it != per_q_.end() &&
        static_cast<std::int64_t>(it->second.prefix.size()) > n)
      return it->second.prefix[static_cast<std::size_t>(n)];
  }
  std::unique_lock lock(mu_);
  return extend_locked(q, n).prefix[static_cast<std::size_t>(n)];
}

double q_ln_factorial(double q, std::int64_t n) {
  if (n < 0)
    throw DomainViolation("q_ln_factorial", static_cast<double>(n), "n >= 0");
  return QFactorialCache::global().ln_factorial(q, n);
}

double q_stirling_rough(double q, std::int64_t n) {
  if (n < 1)
    throw DomainViolation("q_stirling_rough", static_cast<double>(n),
                          "n >= 1");
  const double nd = static_cast<double>(n);
  if (is_q2(q)) return nd - std::log(nd);
  return (nd * q_ln(q, nd) - nd) / (2.0 - q);
}

double StirlingConstants::c_q() const {
  if (is_q2(q))
    throw DomainViolation("StirlingConstants::c_q", q, "q != 2");
  return 1.0 / (2.0 - q) - delta_q;
}

double q_stirling_precise(double q, std::int64_t n,
                          const StirlingConstants& constants) {
  if (n < 1)
    throw DomainViolation("q_stirling_precise", static_cast<double>(n),
                          "n >= 1");
  if (constants.q != q)
    throw DomainViolation("q_stirling_precise", constants.q,
                          "constants.q == q");
  const double nd = static_cast<double>(n);
  if (is_q2(q))
    return nd - 0.5 / nd - std::log(nd) - 0.5 - constants.delta_q;
  const double s = nd / (2.0 - q);
  return (s + 0.5) * q_ln(q, nd) - s + constants.c_q();
}

namespace {

// Precise-formula value with the delta term dropped, so that
// delta_q ~ base(n) - q_ln_factorial(q, n) as n grows.
double delta_free_base(double q, std::int64_t n) {
  const double nd = static_cast<double>(n);
  if (is_q2(q)) return nd - 0.5 / nd - std::log(nd) - 0.5;
  const double s = nd / (2.0 - q);
  return (s + 0.5) * q_ln(q, nd) - s + 1.0 / (2.0 - q);
}

double aitken(double a, double b, double c) {
  const double den = (c - b) - (b - a);
  if (den == 0.0) return c;
  return c - (c - b) * (c - b) / den;
}

}  // namespace

DeltaEstimate estimate_delta_q(double q, std::int64_t n_max) {
  if (n_max < 1000)
    throw DomainViolation("estimate_delta_q", static_cast<double>(n_max),
                          "n_max >= 1000");

  std::vector<std::int64_t> ns;
  for (std::int64_t m = n_max; m >= 64 && ns.size() < 10; m >>= 1)
    ns.push_back(m);
  std::reverse(ns.begin(), ns.end());

  std::vector<double> d;
  d.reserve(ns.size());
  double scale = 1.0;
  for (std::int64_t n : ns) {
    const double lf = q_ln_factorial(q, n);
    d.push_back(delta_free_base(q, n) - lf);
    scale = std::max(scale, std::fabs(lf));
  }

  // Cauchy sanity: consecutive residuals must be settling, not drifting.
  const double first_gap = std::fabs(d[1] - d[0]);
  const double last_gap = std::fabs(d[d.size() - 1] - d[d.size() - 2]);
  if (last_gap > first_gap + 64.0 * kEps * scale)
    throw NumericFailure("estimate_delta_q",
                         "residual sequence not converging");

  std::vector<std::vector<double>> levels{d};
  while (levels.back().size() >= 3) {
    const std::vector<double>& prev = levels.back();
    std::vector<double> next;
    next.reserve(prev.size() - 2);
    for (std::size_t i = 0; i + 2 < prev.size(); ++i)
      next.push_back(aitken(prev[i], prev[i + 1], prev[i + 2]));
    levels.push_back(std::move(next));
  }

  const double value = levels.back().back();
  const double prev_best = levels.size() >= 2
                               ? levels[levels.size() - 2].back()
                               : d.back();
  DeltaEstimate est;
  est.value = value;
  est.error_estimate = std::max(std::fabs(value - prev_best), kEps * scale);
  est.points = static_cast<int>(ns.size());
  return est;
}

double q_ln_multinomial_coeff(double q, const CountVector& counts) {
  QFactorialCache& cache = QFactorialCache::global();
  NeumaierSum s;
  s.add(cache.ln_factorial(q, counts.total()));
  for (std::int64_t c : counts.counts()) s.add(-cache.ln_factorial(q, c));
  return s.value();
}

double tsallis_entropy(double q, const ProbabilityVector& p) {
  if (!(q > 0.0)) throw DomainViolation("tsallis_entropy", q, "q > 0");
  NeumaierSum s;
  if (std::fabs(q - 1.0) < kClassicalWindow) {
    for (double v : p)
      if (v > 0.0) s.add(-v * std::log(v));
    return s.value();
  }
  // -p ln_q... via p * (p^(q-1) - 1)/(q-1); zero entries contribute nothing.
  for (double v : p)
    if (v > 0.0) s.add(-v * std::expm1((q - 1.0) * std::log(v)) / (q - 1.0));
  return s.value();
}

namespace {

ProbabilityVector occupancy_fractions(const CountVector& counts) {
  const double n = static_cast<double>(counts.total());
  std::vector<double> p;
  p.reserve(counts.cells());
  for (std::int64_t c : counts.counts()) p.push_back(static_cast<double>(c) / n);
  return ProbabilityVector(std::move(p));
}

}  // namespace

double approx_ln_multinomial_via_entropy(double q, const CountVector& counts) {
  const double nd = static_cast<double>(counts.total());
  if (is_q2(q)) {
    NeumaierSum s;
    s.add(-std::log(nd));
    for (std::int64_t c : counts.counts())
      if (c > 0) s.add(std::log(static_cast<double>(c)));
    return s.value();
  }
  const double entropy = tsallis_entropy(2.0 - q, occupancy_fractions(counts));
  return std::pow(nd, 2.0 - q) / (2.0 - q) * entropy;
}

double q_ln_binomial_coeff_approx(double q, std::int64_t n, std::int64_t k,
                                  const StirlingConstants& constants) {
  if (is_q2(q))
    throw DomainViolation("q_ln_binomial_coeff_approx", q, "q != 2");
  if (constants.q != q)
    throw DomainViolation("q_ln_binomial_coeff_approx", constants.q,
                          "constants.q == q");
  if (k < 1 || k > n - 1)
    throw DomainViolation("q_ln_binomial_coeff_approx", static_cast<double>(k),
                          "1 <= k <= n-1");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double md = static_cast<double>(n - k);
  const ProbabilityVector frac{kd / nd, md / nd};
  const double entropy = tsallis_entropy(2.0 - q, frac);
  return -constants.c_q() +
         0.5 * (q_ln(q, nd) - q_ln(q, kd) - q_ln(q, md)) +
         std::pow(nd, 2.0 - q) / (2.0 - q) * entropy;
}

}  // namespace tsallis
