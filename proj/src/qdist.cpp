// SPDX-License-Identifier: Apache-2.0

#include "tsallis/qdist.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <random>
#include <sstream>

#include "tsallis/accum.hpp"
#include "tsallis/qcomb.hpp"

namespace tsallis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool classical(double q) { return std::fabs(q - 1.0) < kClassicalWindow; }

// s_k assembled in a fixed order so the bulk pmf path and the single-cell
// entry point produce bitwise-identical masses.
double compose_mass(double q, double lf_n, std::span<const double> lf_cells,
                    std::span<const std::int64_t> counts,
                    std::span<const double> qln_rates) {
  NeumaierSum acc;
  acc.add(lf_n);
  for (double lf : lf_cells) acc.add(-lf);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0)
      acc.add(std::pow(static_cast<double>(counts[i]), 2.0 - q) *
              qln_rates[i] / (2.0 - q));
  }
  return acc.value();
}

}  // namespace

QBinomialSpec::QBinomialSpec(double q_, std::int64_t n_, double r_)
    : q(q_), n(n_), r(r_) {
  if (!(q > 0.0 && q < 2.0))
    throw DomainViolation("QBinomialSpec", q, "0 < q < 2");
  if (n < 1) throw DomainViolation("QBinomialSpec", static_cast<double>(n),
                                   "n >= 1");
  if (!(r > 0.0 && r < 1.0))
    throw DomainViolation("QBinomialSpec", r, "0 < r < 1");
}

double ln_q_pmf_unnormalized(const QBinomialSpec& spec, std::int64_t k) {
  if (k < 0 || k > spec.n)
    throw DomainViolation("ln_q_pmf_unnormalized", static_cast<double>(k),
                          "0 <= k <= n");
  QFactorialCache& cache = QFactorialCache::global();
  const double lf_n = cache.ln_factorial(spec.q, spec.n);
  const double lf_cells[2] = {cache.ln_factorial(spec.q, k),
                              cache.ln_factorial(spec.q, spec.n - k)};
  const std::int64_t counts[2] = {k, spec.n - k};
  const double qln_rates[2] = {q_ln(2.0 - spec.q, spec.r),
                               q_ln(2.0 - spec.q, 1.0 - spec.r)};
  return compose_mass(spec.q, lf_n, lf_cells, counts, qln_rates);
}

namespace detail {

std::pair<double, SolverReport> solve_c(
    double q, std::span<const double> qlog_masses,
    std::optional<std::pair<double, double>> bracket_hint) {
  SolverReport report;

  if (classical(q)) {
    NeumaierSum s;
    for (double v : qlog_masses) s.add(std::exp(v));
    const double residual = s.value() - 1.0;
    if (!(std::fabs(residual) <= 1e-10))
      throw NumericFailure("solve_normalization",
                           "q = 1 masses do not sum to 1 within 1e-10");
    report.iterations = 0;
    report.residual = residual;
    report.analytic_q1 = true;
    report.scale_factor = 1.0;
    return {0.0, report};
  }

  // f(C) = sum_k exp_q_cutoff(s_k + C) - 1: strictly increasing, and f' is
  // sum_k b_k^q over the live cells.
  struct Eval {
    double f;
    double df;
    std::int64_t cutoff;
  };
  auto eval = [&](double c) -> Eval {
    NeumaierSum fs;
    NeumaierSum ds;
    std::int64_t cut = 0;
    for (double s : qlog_masses) {
      const double t = (1.0 - q) * (s + c);
      if (t > -1.0) {
        const double b = std::exp(std::log1p(t) / (1.0 - q));
        fs.add(b);
        ds.add(std::pow(b, q));
      } else {
        if (q > 1.0)
          throw NumericFailure("solve_normalization",
                               "evaluation beyond the q > 1 divergence point");
        ++cut;
      }
    }
    return {fs.value() - 1.0, ds.value(), cut};
  };

  double max_s = -kInf;
  for (double s : qlog_masses) max_s = std::max(max_s, s);

  double lo, hi;
  if (bracket_hint) {
    lo = bracket_hint->first;
    hi = bracket_hint->second;
    if (!(eval(lo).f <= 0.0) || !(eval(hi).f >= 0.0))
      throw NumericFailure("solve_normalization", "invalid bracket hint");
  } else {
    // At C = -max_s the largest cell has mass exactly 1, so f >= 0 there;
    // for q > 1 this also keeps every cell strictly inside the domain.
    hi = -max_s;
    lo = hi - 1.0;
    double step = 1.0;
    int expand = 0;
    while (eval(lo).f > 0.0) {
      if (++expand > 80)
        throw NumericFailure("solve_normalization", "bracketing failed");
      step *= 2.0;
      lo -= step;
    }
  }

  const double tol = 1e-12;
  double c = 0.5 * (lo + hi);
  for (int iter = 1; iter <= 200; ++iter) {
    const Eval e = eval(c);
    if (std::fabs(e.f) <= tol) {
      report.iterations = iter;
      report.residual = e.f;
      report.bracket_lo = lo;
      report.bracket_hi = hi;
      report.cutoff_count = e.cutoff;
      report.scale_factor = 1.0 + (1.0 - q) * c;
      return {c, report};
    }
    if (e.f > 0.0)
      hi = c;
    else
      lo = c;
    double next = c - e.f / e.df;  // Newton, kept inside the bracket
    if (!std::isfinite(next) || !(next > lo && next < hi))
      next = 0.5 * (lo + hi);
    c = next;
  }
  throw NumericFailure("solve_normalization",
                       "iteration cap reached before residual <= 1e-12");
}

}  // namespace detail

namespace {

std::vector<double> binomial_masses(const QBinomialSpec& spec) {
  std::vector<double> prefix;
  QFactorialCache::global().fill_prefix(spec.q, spec.n, prefix);
  const double qln_rates[2] = {q_ln(2.0 - spec.q, spec.r),
                               q_ln(2.0 - spec.q, 1.0 - spec.r)};
  std::vector<double> s(static_cast<std::size_t>(spec.n) + 1);
  for (std::int64_t k = 0; k <= spec.n; ++k) {
    const double lf_cells[2] = {prefix[static_cast<std::size_t>(k)],
                                prefix[static_cast<std::size_t>(spec.n - k)]};
    const std::int64_t counts[2] = {k, spec.n - k};
    s[static_cast<std::size_t>(k)] =
        compose_mass(spec.q, prefix[static_cast<std::size_t>(spec.n)],
                     lf_cells, counts, qln_rates);
  }
  return s;
}

}  // namespace

std::pair<double, SolverReport> solve_normalization(const QBinomialSpec& spec) {
  const std::vector<double> s = binomial_masses(spec);
  return detail::solve_c(spec.q, s);
}

QBinomialPmf::QBinomialPmf(QBinomialSpec spec, std::vector<double> qlog_masses,
                           double c, SolverReport report)
    : spec_(spec), s_(std::move(qlog_masses)), c_(c), report_(report) {
  prob_.resize(s_.size());
  if (classical(spec_.q)) {
    for (std::size_t k = 0; k < s_.size(); ++k) prob_[k] = std::exp(s_[k]);
    return;
  }
  for (std::size_t k = 0; k < s_.size(); ++k) {
    const double t = (1.0 - spec_.q) * (s_[k] + c_);
    prob_[k] = t > -1.0 ? std::exp(std::log1p(t) / (1.0 - spec_.q)) : 0.0;
  }
}

double QBinomialPmf::ln_probability(std::int64_t k) const {
  const double s = s_.at(static_cast<std::size_t>(k));
  if (classical(spec_.q)) return s + c_;
  const double t = (1.0 - spec_.q) * (s + c_);
  return t > -1.0 ? std::log1p(t) / (1.0 - spec_.q) : -kInf;
}

QBinomialPmf pmf(const QBinomialSpec& spec) {
  std::vector<double> s = binomial_masses(spec);
  auto [c, report] = detail::solve_c(spec.q, s);
  return QBinomialPmf(spec, std::move(s), c, report);
}

double cdf_below(const QBinomialPmf& pmf, double x) {
  if (!(x > 0.0 && x < 1.0))
    throw DomainViolation("cdf_below", x, "0 < x < 1");
  const std::int64_t n = pmf.spec().n;
  // One-ulp nudge: grid points like n*x = 1000*0.3 sit just below the
  // intended integer in binary.
  std::int64_t m = static_cast<std::int64_t>(
      std::floor(static_cast<double>(n) * x + 1e-9));
  m = std::min(m, n);
  NeumaierSum s;
  for (std::int64_t k = 0; k <= m; ++k)
    s.add(pmf.probabilities()[static_cast<std::size_t>(k)]);
  return s.value();
}

std::vector<std::int64_t> sample(const QBinomialPmf& pmf, std::int64_t m,
                                 std::uint64_t seed) {
  if (m < 0)
    throw DomainViolation("sample", static_cast<double>(m), "m >= 0");
  const std::vector<double>& p = pmf.probabilities();
  std::vector<double> cum(p.size());
  NeumaierSum acc;
  for (std::size_t k = 0; k < p.size(); ++k) {
    acc.add(p[k]);
    cum[k] = acc.value();
  }
  std::mt19937_64 gen(seed);
  std::vector<std::int64_t> draws;
  draws.reserve(static_cast<std::size_t>(m));
  const std::int64_t n_top = pmf.spec().n;
  for (std::int64_t i = 0; i < m; ++i) {
    // 53-bit uniform in [0, 1); explicit construction keeps draws
    // bit-stable across standard library implementations.
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    const std::int64_t k = it == cum.end()
                               ? n_top
                               : static_cast<std::int64_t>(it - cum.begin());
    draws.push_back(std::min(k, n_top));
  }
  return draws;
}

double q_multinomial_ln_pmf_unnormalized(double q, const CountVector& counts,
                                         const ProbabilityVector& rates) {
  if (!(q > 0.0 && q < 2.0))
    throw DomainViolation("q_multinomial_ln_pmf_unnormalized", q, "0 < q < 2");
  if (counts.cells() != rates.size())
    throw DomainViolation("q_multinomial_ln_pmf_unnormalized",
                          static_cast<double>(counts.cells()),
                          "counts and rates have equal length");
  QFactorialCache& cache = QFactorialCache::global();
  const double lf_n = cache.ln_factorial(q, counts.total());
  std::vector<double> lf_cells(counts.cells());
  std::vector<double> qln_rates(counts.cells());
  for (std::size_t i = 0; i < counts.cells(); ++i) {
    lf_cells[i] = cache.ln_factorial(q, counts[i]);
    if (counts[i] > 0 && !(rates[i] > 0.0))
      throw DomainViolation("q_multinomial_ln_pmf_unnormalized", rates[i],
                            "r_i > 0 wherever n_i > 0");
    qln_rates[i] = counts[i] > 0 ? q_ln(2.0 - q, rates[i]) : 0.0;
  }
  return compose_mass(q, lf_n, lf_cells, counts.counts(), qln_rates);
}

QMultinomialPmf::QMultinomialPmf(
    double q, std::int64_t n, ProbabilityVector rates,
    std::map<std::vector<std::int64_t>, double> probabilities, double c,
    SolverReport report)
    : q_(q),
      n_(n),
      rates_(std::move(rates)),
      prob_(std::move(probabilities)),
      c_(c),
      report_(report) {}

namespace {

double composition_count(std::int64_t n, std::size_t cells) {
  double comb = 1.0;  // C(n + cells - 1, cells - 1)
  for (std::size_t i = 1; i < cells; ++i)
    comb *= static_cast<double>(n + static_cast<std::int64_t>(i)) /
            static_cast<double>(i);
  return comb;
}

void enumerate_compositions(std::int64_t n, std::size_t cells,
                            std::vector<std::int64_t>& scratch,
                            std::vector<std::vector<std::int64_t>>& out) {
  if (scratch.size() + 1 == cells) {
    scratch.push_back(n);
    out.push_back(scratch);
    scratch.pop_back();
    return;
  }
  for (std::int64_t v = 0; v <= n; ++v) {
    scratch.push_back(v);
    enumerate_compositions(n - v, cells, scratch, out);
    scratch.pop_back();
  }
}

}  // namespace

QMultinomialPmf q_multinomial_pmf_small(double q, std::int64_t n,
                                        const ProbabilityVector& rates) {
  if (!(q > 0.0 && q < 2.0))
    throw DomainViolation("q_multinomial_pmf_small", q, "0 < q < 2");
  if (n < 1)
    throw DomainViolation("q_multinomial_pmf_small", static_cast<double>(n),
                          "n >= 1");
  const double count = composition_count(n, rates.size());
  if (!(count <= 1e6))
    throw DomainViolation("q_multinomial_pmf_small", count,
                          "composition count <= 1e6");

  std::vector<std::vector<std::int64_t>> comps;
  comps.reserve(static_cast<std::size_t>(count));
  std::vector<std::int64_t> scratch;
  enumerate_compositions(n, rates.size(), scratch, comps);

  std::vector<double> s;
  s.reserve(comps.size());
  for (const auto& comp : comps)
    s.push_back(q_multinomial_ln_pmf_unnormalized(q, CountVector(comp), rates));

  auto [c, report] = detail::solve_c(q, s);

  std::map<std::vector<std::int64_t>, double> prob;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    double b;
    if (classical(q)) {
      b = std::exp(s[i]);
    } else {
      const double t = (1.0 - q) * (s[i] + c);
      b = t > -1.0 ? std::exp(std::log1p(t) / (1.0 - q)) : 0.0;
    }
    prob.emplace(comps[i], b);
  }
  return QMultinomialPmf(q, n, rates, std::move(prob), c, report);
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_pmf(const QBinomialPmf& pmf) {
  const QBinomialSpec& spec = pmf.spec();
  const SolverReport& rep = pmf.solver_report();
  std::ostringstream out;
  out << "# qbinomial-pmf v1\n";
  out << "# q=" << fmt17(spec.q) << " n=" << spec.n << " r=" << fmt17(spec.r)
      << " c_q=" << fmt17(pmf.c_q()) << "\n";
  out << "# solver: iterations=" << rep.iterations
      << " residual=" << fmt17(rep.residual) << " bracket_lo="
      << fmt17(rep.bracket_lo) << " bracket_hi=" << fmt17(rep.bracket_hi)
      << " cutoff_cells=" << rep.cutoff_count
      << " scale_factor=" << fmt17(rep.scale_factor)
      << " analytic_q1=" << (rep.analytic_q1 ? 1 : 0) << "\n";
  out << "k,probability\n";
  const auto& p = pmf.probabilities();
  for (std::size_t k = 0; k < p.size(); ++k)
    out << k << "," << fmt17(p[k]) << "\n";
  return out.str();
}

QBinomialPmf parse_pmf(std::istream& in) {
  std::string line;
  // Tolerate preamble comments (e.g. a CLI config echo) before the record.
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line == "# qbinomial-pmf v1") {
      header_seen = true;
      break;
    }
    if (line.empty() || line.rfind("# ", 0) == 0) continue;
    break;
  }
  if (!header_seen)
    throw DomainViolation("parse_pmf", 0.0, "header '# qbinomial-pmf v1'");

  double q = 0.0, r = 0.0, c = 0.0;
  long long n = 0;
  if (!std::getline(in, line) ||
      std::sscanf(line.c_str(), "# q=%lf n=%lld r=%lf c_q=%lf", &q, &n, &r,
                  &c) != 4)
    throw DomainViolation("parse_pmf", 0.0, "spec line");

  SolverReport rep;
  long long cutoff = 0;
  int analytic = 0;
  if (!std::getline(in, line) ||
      std::sscanf(line.c_str(),
                  "# solver: iterations=%d residual=%lf bracket_lo=%lf "
                  "bracket_hi=%lf cutoff_cells=%lld scale_factor=%lf "
                  "analytic_q1=%d",
                  &rep.iterations, &rep.residual, &rep.bracket_lo,
                  &rep.bracket_hi, &cutoff, &rep.scale_factor,
                  &analytic) != 7)
    throw DomainViolation("parse_pmf", 0.0, "solver line");
  rep.cutoff_count = cutoff;
  rep.analytic_q1 = analytic != 0;

  if (!std::getline(in, line) || line != "k,probability")
    throw DomainViolation("parse_pmf", 0.0, "column header");

  QBinomialSpec spec(q, n, r);
  std::vector<double> file_probs(static_cast<std::size_t>(n) + 1, -1.0);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') break;  // trailing section (e.g. appended samples)
    long long k = 0;
    double p = 0.0;
    if (std::sscanf(line.c_str(), "%lld,%lf", &k, &p) != 2 || k < 0 || k > n)
      throw DomainViolation("parse_pmf", static_cast<double>(k), "pmf row");
    file_probs[static_cast<std::size_t>(k)] = p;
  }
  for (double p : file_probs)
    if (p < 0.0) throw DomainViolation("parse_pmf", p, "complete k coverage");

  // Reconstruct the q-log masses from the spec and check the recorded
  // probabilities against them; the record carries derived data only.
  QBinomialPmf rebuilt(spec, binomial_masses(spec), c, rep);
  const auto& p = rebuilt.probabilities();
  NeumaierSum total;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double scale = std::max(1.0, std::fabs(p[k]));
    if (!(std::fabs(p[k] - file_probs[k]) <= 1e-12 * scale))
      throw NumericFailure("parse_pmf",
                           "recorded probabilities inconsistent with spec");
    total.add(file_probs[k]);
  }
  if (!(std::fabs(total.value() - 1.0) <= 1e-10))
    throw NumericFailure("parse_pmf", "recorded pmf does not sum to 1");
  return rebuilt;
}

QBinomialPmf parse_pmf(const std::string& text) {
  std::istringstream in(text);
  return parse_pmf(in);
}

}  // namespace tsallis
