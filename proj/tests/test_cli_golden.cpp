// SPDX-License-Identifier: Apache-2.0
//
// Golden-file checks for the qscan CLI: byte-identical output for one
// fixture per subcommand, determinism across repeated runs, record
// round-tripping and exit-code conventions.
//
// Usage: test_cli_golden <path-to-qscan> <golden-dir>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tsallis/accum.hpp"
#include "tsallis/qdist.hpp"

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::cout << "FAIL: " << what << "\n";
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_command(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -1;
}

struct Fixture {
  std::string name;
  std::string args;
};

const std::vector<Fixture> kFixtures{
    {"qfun.csv", "qfun --q 0.5,1,1.5 --x 0.1,0.5,1,2,10 --y 3 --format csv"},
    {"stirling.csv", "stirling --q 0.5,1,1.5 --n 100,1000,10000 --format csv"},
    {"pmf.csv", "pmf --q 1 --n 4 --r 0.5 --sample 5 --seed 42 --format csv"},
    {"divergence.csv",
     "divergence --q 0.3,0.5,1,1.5 --alpha -2,0,0.5 --x 0.3 --r 0.5 "
     "--format csv"},
    {"ldp.csv", "ldp --q 0.5,1,1.5 --n 100,1000 --r 0.5 --x 0.3 --format csv"},
    {"ldp.json", "ldp --q 1 --n 100 --r 0.5 --x 0.3 --format json"},
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: test_cli_golden <qscan> <golden-dir>\n";
    return 64;
  }
  const std::string qscan = argv[1];
  const fs::path golden_dir = argv[2];
  const fs::path tmp_dir =
      fs::temp_directory_path() /
      ("qscan_golden_" + std::to_string(::getpid()));
  fs::create_directories(tmp_dir);

  for (const Fixture& f : kFixtures) {
    const fs::path out = tmp_dir / f.name;
    const std::string cmd =
        '"' + qscan + "\" " + f.args + " --out \"" + out.string() + '"';
    const int rc = run_command(cmd);
    expect(rc == 0, f.name + ": exit code " + std::to_string(rc));
    const std::string got = read_file(out);
    const std::string want = read_file(golden_dir / f.name);
    expect(!want.empty(), f.name + ": golden file missing or empty");
    if (got != want) {
      ++g_failures;
      std::cout << "FAIL: " << f.name << ": output differs from golden ("
                << got.size() << " vs " << want.size() << " bytes)\n";
    }
  }

  // Repeated runs are byte-identical.
  {
    const fs::path a = tmp_dir / "repeat_a.csv";
    const fs::path b = tmp_dir / "repeat_b.csv";
    const std::string base = '"' + qscan + "\" " + kFixtures[4].args;
    expect(run_command(base + " --out \"" + a.string() + '"') == 0,
           "repeat run A exit code");
    expect(run_command(base + " --out \"" + b.string() + '"') == 0,
           "repeat run B exit code");
    const std::string sa = read_file(a);
    expect(!sa.empty() && sa == read_file(b),
           "repeated ldp runs not byte-identical");
  }

  // --out and shell redirection produce the same bytes.
  {
    const fs::path redirected = tmp_dir / "redirect.csv";
    const std::string cmd = '"' + qscan + "\" " + kFixtures[0].args + " > \"" +
                            redirected.string() + '"';
    expect(run_command(cmd) == 0, "redirected run exit code");
    expect(read_file(redirected) == read_file(tmp_dir / kFixtures[0].name),
           "stdout differs from --out output");
  }

  // The emitted pmf record parses back and renormalizes.
  {
    const std::string text = read_file(tmp_dir / "pmf.csv");
    try {
      const tsallis::QBinomialPmf d = tsallis::parse_pmf(text);
      expect(d.spec().n == 4, "parsed pmf has wrong n");
      tsallis::NeumaierSum total;
      for (double p : d.probabilities()) total.add(p);
      expect(std::fabs(total.value() - 1.0) <= 1e-10,
             "parsed pmf does not sum to 1");
    } catch (const std::exception& e) {
      expect(false, std::string("pmf record failed to parse: ") + e.what());
    }
  }

  // Exit codes: validation failures are 1, help is 0.
  {
    const fs::path sink = tmp_dir / "err.csv";
    const int rc = run_command('"' + qscan +
                               "\" pmf --q 3 --n 10 --r 0.5 --out \"" +
                               sink.string() + '"');
    expect(rc == 1, "out-of-domain q should exit 1, got " + std::to_string(rc));
    const std::string err = read_file(sink);
    expect(err.rfind("# error: kind=validation", 0) == 0,
           "validation error record missing");

    expect(run_command('"' + qscan + "\" pmf --no-such-flag 2> /dev/null") == 1,
           "unknown flag should exit 1");
    expect(run_command('"' + qscan + "\" --help > /dev/null") == 0,
           "--help should exit 0");
  }

  std::error_code ec;
  fs::remove_all(tmp_dir, ec);

  if (g_failures == 0) std::cout << "all golden checks passed\n";
  return g_failures;
}
