// SPDX-License-Identifier: Apache-2.0

#include "tsallis/types.hpp"

#include <cmath>

#include "tsallis/accum.hpp"

namespace tsallis {

ProbabilityVector::ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty())
    throw DomainViolation("ProbabilityVector", 0.0, "at least one entry");
  NeumaierSum s;
  for (double v : p_) {
    if (!(v >= 0.0))
      throw DomainViolation("ProbabilityVector", v, "entries >= 0");
    s.add(v);
  }
  const double total = s.value();
  if (!(std::fabs(total - 1.0) <= 1e-12))
    throw DomainViolation("ProbabilityVector", total, "|sum - 1| <= 1e-12");
}

CountVector::CountVector(std::vector<std::int64_t> counts)
    : n_(std::move(counts)) {
  if (n_.empty()) throw DomainViolation("CountVector", 0.0, "k >= 1 cells");
  for (std::int64_t c : n_) {
    if (c < 0)
      throw DomainViolation("CountVector", static_cast<double>(c),
                            "n_i >= 0");
    total_ += c;
  }
  if (total_ < 1)
    throw DomainViolation("CountVector", static_cast<double>(total_),
                          "sum n_i >= 1");
}

}  // namespace tsallis
