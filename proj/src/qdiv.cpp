// SPDX-License-Identifier: Apache-2.0

#include "tsallis/qdiv.hpp"

#include <cmath>

#include "tsallis/accum.hpp"
#include "tsallis/qcore.hpp"

namespace tsallis {

namespace {

constexpr double kAlphaWindow = 1e-9;

void check_same_length(const char* who, const ProbabilityVector& p,
                       const ProbabilityVector& r) {
  if (p.size() != r.size())
    throw DomainViolation(who, static_cast<double>(p.size()),
                          "p and r have equal length");
}

// sum_{p_i > 0} p_i * (exp(g * ln(p_i/r_i)) - 1) / g  for g != 0.
// With g = q-1 this is D_q; with g = -(1+alpha)/2 it is the alpha-divergence
// kernel.  Sharing it is what keeps the alpha<->q comparison at eps level.
double power_mean_kernel(const char* who, double g, const ProbabilityVector& p,
                         const ProbabilityVector& r) {
  NeumaierSum s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) continue;
    if (!(r[i] > 0.0))
      throw DomainViolation(who, r[i], "r_i > 0 wherever p_i > 0");
    const double t = std::log(p[i]) - std::log(r[i]);
    s.add(p[i] * std::expm1(g * t) / g);
  }
  return s.value();
}

double kl_impl(const char* who, const ProbabilityVector& p,
               const ProbabilityVector& r) {
  NeumaierSum s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) continue;
    if (!(r[i] > 0.0))
      throw DomainViolation(who, r[i], "r_i > 0 wherever p_i > 0");
    s.add(p[i] * (std::log(p[i]) - std::log(r[i])));
  }
  return s.value();
}

}  // namespace

double q_divergence(double q, const ProbabilityVector& p,
                    const ProbabilityVector& r) {
  if (!(q > 0.0 && q < 2.0))
    throw DomainViolation("q_divergence", q, "0 < q < 2");
  check_same_length("q_divergence", p, r);
  if (std::fabs(q - 1.0) < kClassicalWindow)
    return kl_impl("q_divergence", p, r);
  // p_i q_ln(2-q, p_i/r_i) = p_i ((p_i/r_i)^(q-1) - 1)/(q-1).
  return power_mean_kernel("q_divergence", q - 1.0, p, r);
}

double kl_divergence(const ProbabilityVector& p, const ProbabilityVector& r) {
  check_same_length("kl_divergence", p, r);
  return kl_impl("kl_divergence", p, r);
}

double alpha_divergence(double alpha, const ProbabilityVector& p,
                        const ProbabilityVector& r) {
  check_same_length("alpha_divergence", p, r);
  if (std::fabs(alpha + 1.0) < kAlphaWindow)
    return kl_impl("alpha_divergence", p, r);
  if (std::fabs(alpha - 1.0) < kAlphaWindow)
    return kl_impl("alpha_divergence", r, p);  // roles swap at alpha = 1
  // 4/(1-alpha^2) (1 - sum p^a r^(1-a)) with a = (1-alpha)/2, rewritten so
  // the summand is the shared kernel with g = a - 1 = -(1+alpha)/2:
  //   1 - sum p (p/r)^(a-1) = -sum p ((p/r)^(a-1) - 1)   on the simplex.
  const double g = -(1.0 + alpha) / 2.0;
  if (alpha > 1.0) {
    // p^((1-alpha)/2) has a negative exponent: p must be positive wherever
    // r carries mass or the sum itself diverges.
    for (std::size_t i = 0; i < p.size(); ++i)
      if (r[i] > 0.0 && !(p[i] > 0.0))
        throw DomainViolation("alpha_divergence", p[i],
                              "p_i > 0 wherever r_i > 0 (alpha > 1)");
  }
  const double kernel = power_mean_kernel("alpha_divergence", g, p, r);
  return kernel * (-4.0 * g) / (1.0 - alpha * alpha);
}

double alpha_from_q(double q) { return 1.0 - 2.0 * q; }

double q_from_alpha(double alpha) { return (1.0 - alpha) / 2.0; }

double check_alpha_q_relation(double q, const ProbabilityVector& p,
                              const ProbabilityVector& r) {
  if (std::fabs(q) < kAlphaWindow || std::fabs(q - 1.0) < kAlphaWindow)
    throw DomainViolation("check_alpha_q_relation", q,
                          "q not within 1e-9 of 0 or 1");
  const double a = alpha_divergence(alpha_from_q(q), p, r);
  const double b = q_divergence(q, p, r) / q;
  const double den = std::max(std::fabs(a), std::fabs(b));
  if (den == 0.0) return 0.0;
  return std::fabs(a - b) / den;
}

namespace {

double correspondence_parts(const QBinomialPmf& pmf, std::int64_t k,
                            double* leading) {
  const QBinomialSpec& spec = pmf.spec();
  if (k < 1 || k > spec.n - 1)
    throw DomainViolation("divergence_correspondence_residual",
                          static_cast<double>(k), "1 <= k <= n-1");
  const double q = spec.q;
  const double s = pmf.qlog_mass(k);
  double lhs;  // q_ln(q, b_k), evaluated through the live-cell identity
  if (std::fabs(q - 1.0) < kClassicalWindow) {
    lhs = s + pmf.c_q();
  } else {
    const double t = (1.0 - q) * (s + pmf.c_q());
    if (!(t > -1.0))
      throw DomainViolation("divergence_correspondence_residual",
                            static_cast<double>(k),
                            "probabilities[k] > 0 (cell is cut off)");
    lhs = s + pmf.c_q();
  }
  const double nd = static_cast<double>(spec.n);
  const double x = static_cast<double>(k) / nd;
  const ProbabilityVector ph{x, 1.0 - x};
  const ProbabilityVector rv{spec.r, 1.0 - spec.r};
  const double d = q_divergence(2.0 - q, ph, rv);
  const double lead = std::pow(nd, 2.0 - q) / (2.0 - q) * d;
  if (leading) *leading = lead;
  return lhs - (pmf.c_q() - lead);
}

}  // namespace

double divergence_correspondence_residual(const QBinomialPmf& pmf,
                                          std::int64_t k) {
  return correspondence_parts(pmf, k, nullptr);
}

double divergence_correspondence_scaled(const QBinomialPmf& pmf,
                                        std::int64_t k) {
  double lead = 0.0;
  const double resid = correspondence_parts(pmf, k, &lead);
  if (lead == 0.0)
    throw DomainViolation("divergence_correspondence_scaled",
                          static_cast<double>(k),
                          "k/n != r (leading term nonzero)");
  return resid / lead;
}

double q_multinomial_correspondence_residual(const QMultinomialPmf& pmf,
                                             const CountVector& counts) {
  const double q = pmf.q();
  if (counts.total() != pmf.n())
    throw DomainViolation("q_multinomial_correspondence_residual",
                          static_cast<double>(counts.total()),
                          "counts sum to the pmf's n");
  const double s = q_multinomial_ln_pmf_unnormalized(q, counts, pmf.rates());
  double lhs;
  if (std::fabs(q - 1.0) < kClassicalWindow) {
    lhs = s + pmf.c_q();
  } else {
    const double t = (1.0 - q) * (s + pmf.c_q());
    if (!(t > -1.0))
      throw DomainViolation("q_multinomial_correspondence_residual", 0.0,
                            "probability > 0 (cell is cut off)");
    lhs = s + pmf.c_q();
  }
  const double nd = static_cast<double>(pmf.n());
  std::vector<double> frac;
  frac.reserve(counts.cells());
  for (std::int64_t c : counts.counts())
    frac.push_back(static_cast<double>(c) / nd);
  const double d =
      q_divergence(2.0 - q, ProbabilityVector(std::move(frac)), pmf.rates());
  const double lead = std::pow(nd, 2.0 - q) / (2.0 - q) * d;
  return lhs - (pmf.c_q() - lead);
}

}  // namespace tsallis
