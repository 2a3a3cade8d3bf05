// SPDX-License-Identifier: Apache-2.0
//
// q- and alpha-divergences between finite distributions, the involutive
// parameter maps between them, and residuals tying the normalized
// q-binomial/q-multinomial back to the divergence that governs its decay.

#pragma once

#include <cstdint>

#include "tsallis/qdist.hpp"
#include "tsallis/types.hpp"

namespace tsallis {

// D_q(p||r) = sum_{p_i > 0} p_i q_ln(2-q, p_i/r_i) for 0 < q < 2; the
// Kullback-Leibler divergence at q = 1.  Requires r_i > 0 wherever p_i > 0.
double q_divergence(double q, const ProbabilityVector& p,
                    const ProbabilityVector& r);

// KL divergence; bit-for-bit the q = 1 branch of q_divergence.
double kl_divergence(const ProbabilityVector& p, const ProbabilityVector& r);

// Amari alpha-divergence
//   D^(alpha)(p||r) = 4/(1-alpha^2) (1 - sum p^((1-alpha)/2) r^((1+alpha)/2))
// with the KL limits at alpha = -1 (forward) and alpha = +1 (reversed);
// windows of 1e-9 route to the limit branches.
double alpha_divergence(double alpha, const ProbabilityVector& p,
                        const ProbabilityVector& r);

// The involutive parameter maps alpha = 1 - 2q and q = (1 - alpha)/2.
double alpha_from_q(double q);
double q_from_alpha(double alpha);

// |alpha_divergence(1-2q) - q_divergence(q)/q| normalized by the larger of
// the two magnitudes (zero when both vanish).  Requires q not within 1e-9 of
// 0 or 1.
double check_alpha_q_relation(double q, const ProbabilityVector& p,
                              const ProbabilityVector& r);

// Residual of the pointwise correspondence for a normalized q-binomial:
//   q_ln(q, b_k) - [ -(n^(2-q)/(2-q)) D_{2-q}((k/n,1-k/n)||(r,1-r)) + C_q ].
// Requires 1 <= k <= n-1 and a live cell (cut-off cells are a domain error).
double divergence_correspondence_residual(const QBinomialPmf& pmf,
                                          std::int64_t k);

// Same residual divided by the leading term (n^(2-q)/(2-q)) D, the scale at
// which the correspondence is expected to tighten as n grows.
double divergence_correspondence_scaled(const QBinomialPmf& pmf,
                                        std::int64_t k);

// Multinomial analogue against D_{2-q}(counts/n || rates).
double q_multinomial_correspondence_residual(const QMultinomialPmf& pmf,
                                             const CountVector& counts);

}  // namespace tsallis
