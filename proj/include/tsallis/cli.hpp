// SPDX-License-Identifier: Apache-2.0
//
// Scan driver behind the qscan binary: deterministic CSV/JSON emission for
// the q-function, Stirling, pmf, divergence and rate-scan subcommands.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tsallis::cli {

struct ScanConfig {
  std::string subcommand;  // qfun | stirling | pmf | divergence | ldp
  std::vector<double> qs{0.5, 1.0, 1.5};
  std::vector<std::int64_t> ns{100};
  std::vector<double> xs{0.3};
  std::vector<double> alphas;
  double r = 0.5;
  std::optional<double> y;      // qfun: second operand for product/ratio
  std::int64_t sample_count = 0;  // pmf: optional seeded draws
  bool estimate_delta = false;    // stirling: report the extrapolation itself
  std::uint64_t seed = 0;
  std::string format = "csv";  // csv | json
  std::string out;             // empty: stdout
};

// Executes one scan, writing to os.  Exit status: 0 success, 1 validation
// failure (machine-readable error record emitted), 2 numerical failure.
int run(const ScanConfig& config, std::ostream& os);

// argv front end (flag parsing, output redirection); returns process exit
// status.
int run_cli(int argc, char** argv);

}  // namespace tsallis::cli
