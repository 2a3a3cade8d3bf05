// SPDX-License-Identifier: Apache-2.0

#include "tsallis/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <utility>

#include "tsallis/ldp.hpp"
#include "tsallis/qcomb.hpp"
#include "tsallis/qcore.hpp"
#include "tsallis/qdist.hpp"
#include "tsallis/qdiv.hpp"

#include "CLI11.hpp"

namespace tsallis::cli {

namespace {

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Cell {
  enum class Kind { Num, Int, Bool, Str, Null } kind = Kind::Null;
  double num = 0.0;
  std::int64_t i = 0;
  bool b = false;
  std::string s;

  static Cell number(double v) {
    Cell c;
    c.kind = Kind::Num;
    c.num = v;
    return c;
  }
  static Cell integer(std::int64_t v) {
    Cell c;
    c.kind = Kind::Int;
    c.i = v;
    return c;
  }
  static Cell boolean(bool v) {
    Cell c;
    c.kind = Kind::Bool;
    c.b = v;
    return c;
  }
  static Cell text(std::string v) {
    Cell c;
    c.kind = Kind::Str;
    c.s = std::move(v);
    return c;
  }
  static Cell null() { return Cell{}; }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt17(v[i]);
  }
  return out;
}

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string csv_safe(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c == ',' || c == '\n') c = ';';
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

void write_cell_csv(std::ostream& os, const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Num:
      os << fmt17(c.num);
      break;
    case Cell::Kind::Int:
      os << c.i;
      break;
    case Cell::Kind::Bool:
      os << (c.b ? "true" : "false");
      break;
    case Cell::Kind::Str:
      os << csv_safe(c.s);
      break;
    case Cell::Kind::Null:
      os << "nan";
      break;
  }
}

void write_cell_json(std::ostream& os, const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Num:
      if (std::isfinite(c.num))
        os << fmt17(c.num);
      else
        os << "null";
      break;
    case Cell::Kind::Int:
      os << c.i;
      break;
    case Cell::Kind::Bool:
      os << (c.b ? "true" : "false");
      break;
    case Cell::Kind::Str:
      os << '"' << json_escape(c.s) << '"';
      break;
    case Cell::Kind::Null:
      os << "null";
      break;
  }
}

std::string config_line(const ConfigEcho& echo) {
  std::string line = "# config:";
  for (const auto& [k, v] : echo) {
    line += ' ';
    line += k;
    line += '=';
    line += v;
  }
  return line;
}

void write_table_csv(std::ostream& os, const ConfigEcho& echo,
                     const Table& t) {
  os << config_line(echo) << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ',';
    os << t.columns[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      write_cell_csv(os, row[i]);
    }
    os << '\n';
  }
}

void write_table_json(std::ostream& os, const ConfigEcho& echo,
                      const Table& t) {
  os << "{\n\"config\": {";
  for (std::size_t i = 0; i < echo.size(); ++i) {
    if (i) os << ", ";
    os << '"' << json_escape(echo[i].first) << "\": \""
       << json_escape(echo[i].second) << '"';
  }
  os << "},\n\"columns\": [";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ", ";
    os << '"' << json_escape(t.columns[i]) << '"';
  }
  os << "],\n\"rows\": [\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << '[';
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
      if (i) os << ", ";
      write_cell_json(os, t.rows[r][i]);
    }
    os << ']' << (r + 1 < t.rows.size() ? ",\n" : "\n");
  }
  os << "]\n}\n";
}

void emit_error(std::ostream& os, const std::string& format,
                const std::string& kind, const std::string& message) {
  if (format == "json")
    os << "{\"error\": {\"kind\": \"" << json_escape(kind)
       << "\", \"message\": \"" << json_escape(message) << "\"}}\n";
  else
    os << "# error: kind=" << kind << " message=" << csv_safe(message) << '\n';
}

Cell try_number(const std::function<double()>& f) {
  try {
    return Cell::number(f());
  } catch (const DomainViolation&) {
    return Cell::null();
  }
}

// ---- subcommand builders ----------------------------------------------

Table build_qfun(const ScanConfig& cfg) {
  Table t;
  t.columns = {"q", "x", "q_ln", "q_exp", "q_exp_cutoff"};
  if (cfg.y) {
    t.columns.push_back("q_product");
    t.columns.push_back("q_ratio");
  }
  for (double q : cfg.qs) {
    for (double x : cfg.xs) {
      std::vector<Cell> row;
      row.push_back(Cell::number(q));
      row.push_back(Cell::number(x));
      row.push_back(try_number([&] { return q_ln(q, x); }));
      row.push_back(try_number([&] { return q_exp(q, x); }));
      row.push_back(try_number([&] { return q_exp_cutoff(q, x); }));
      if (cfg.y) {
        row.push_back(try_number([&] { return q_product(q, x, *cfg.y); }));
        row.push_back(try_number([&] { return q_ratio(q, x, *cfg.y); }));
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table build_stirling_estimate(const ScanConfig& cfg) {
  Table t;
  t.columns = {"q", "n_max", "delta", "error_estimate", "points"};
  for (double q : cfg.qs) {
    for (std::int64_t n : cfg.ns) {
      const DeltaEstimate est = estimate_delta_q(q, n);
      t.rows.push_back({Cell::number(q), Cell::integer(n),
                        Cell::number(est.value),
                        Cell::number(est.error_estimate),
                        Cell::integer(est.points)});
    }
  }
  return t;
}

Table build_stirling(const ScanConfig& cfg) {
  if (cfg.estimate_delta) return build_stirling_estimate(cfg);
  Table t;
  t.columns = {"q",     "n",           "delta",         "exact",
               "rough", "precise",     "abs_err_rough", "abs_err_precise"};
  for (double q : cfg.qs) {
    const DeltaEstimate est = estimate_delta_q(q, 1000000);
    const StirlingConstants constants{q, est.value};
    for (std::int64_t n : cfg.ns) {
      const double exact = q_ln_factorial(q, n);
      const double rough = q_stirling_rough(q, n);
      const double precise = q_stirling_precise(q, n, constants);
      t.rows.push_back({Cell::number(q), Cell::integer(n),
                        Cell::number(est.value), Cell::number(exact),
                        Cell::number(rough), Cell::number(precise),
                        Cell::number(std::fabs(rough - exact)),
                        Cell::number(std::fabs(precise - exact))});
    }
  }
  return t;
}

void write_pmf_csv(std::ostream& os, const ConfigEcho& echo,
                   const QBinomialPmf& d, const ScanConfig& cfg) {
  os << config_line(echo) << '\n';
  os << serialize_pmf(d);
  if (cfg.sample_count > 0) {
    const auto draws = sample(d, cfg.sample_count, cfg.seed);
    os << "# qbinomial-sample v1 seed=" << cfg.seed
       << " count=" << cfg.sample_count << '\n';
    os << "draw_index,k\n";
    for (std::size_t i = 0; i < draws.size(); ++i)
      os << i << ',' << draws[i] << '\n';
  }
}

void write_pmf_json(std::ostream& os, const ConfigEcho& echo,
                    const QBinomialPmf& d, const ScanConfig& cfg) {
  const QBinomialSpec& spec = d.spec();
  const SolverReport& rep = d.solver_report();
  os << "{\n\"config\": {";
  for (std::size_t i = 0; i < echo.size(); ++i) {
    if (i) os << ", ";
    os << '"' << json_escape(echo[i].first) << "\": \""
       << json_escape(echo[i].second) << '"';
  }
  os << "},\n\"record\": \"qbinomial-pmf\",\n\"version\": 1,\n";
  os << "\"q\": " << fmt17(spec.q) << ",\n\"n\": " << spec.n
     << ",\n\"r\": " << fmt17(spec.r) << ",\n\"c_q\": " << fmt17(d.c_q())
     << ",\n";
  os << "\"solver\": {\"iterations\": " << rep.iterations
     << ", \"residual\": " << fmt17(rep.residual)
     << ", \"bracket_lo\": " << fmt17(rep.bracket_lo)
     << ", \"bracket_hi\": " << fmt17(rep.bracket_hi)
     << ", \"cutoff_cells\": " << rep.cutoff_count
     << ", \"scale_factor\": " << fmt17(rep.scale_factor)
     << ", \"analytic_q1\": " << (rep.analytic_q1 ? "true" : "false")
     << "},\n";
  os << "\"probabilities\": [";
  const auto& p = d.probabilities();
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) os << ", ";
    os << fmt17(p[k]);
  }
  os << "]";
  if (cfg.sample_count > 0) {
    const auto draws = sample(d, cfg.sample_count, cfg.seed);
    os << ",\n\"sample\": {\"seed\": " << cfg.seed
       << ", \"count\": " << cfg.sample_count << ", \"draws\": [";
    for (std::size_t i = 0; i < draws.size(); ++i) {
      if (i) os << ", ";
      os << draws[i];
    }
    os << "]}";
  }
  os << "\n}\n";
}

Table build_divergence(const ScanConfig& cfg) {
  const double x = cfg.xs.front();
  const ProbabilityVector p{x, 1.0 - x};
  const ProbabilityVector r{cfg.r, 1.0 - cfg.r};
  Table t;
  t.columns = {"q",
               "alpha",
               "q_divergence",
               "alpha_divergence",
               "relation_discrepancy",
               "kl_divergence"};
  auto emit = [&](double q, double alpha) {
    std::vector<Cell> row;
    row.push_back(Cell::number(q));
    row.push_back(Cell::number(alpha));
    row.push_back(try_number([&] { return q_divergence(q, p, r); }));
    row.push_back(try_number([&] { return alpha_divergence(alpha, p, r); }));
    row.push_back(
        try_number([&] { return check_alpha_q_relation(q, p, r); }));
    row.push_back(try_number([&] { return kl_divergence(p, r); }));
    t.rows.push_back(std::move(row));
  };
  for (double q : cfg.qs) emit(q, alpha_from_q(q));
  for (double alpha : cfg.alphas) emit(q_from_alpha(alpha), alpha);
  return t;
}

Table build_ldp(const ScanConfig& cfg) {
  Table t;
  t.columns = {"q",
               "n",
               "r",
               "x",
               "tail",
               "empirical_rate",
               "theoretical_rate",
               "lower_bound",
               "upper_bound",
               "monotone_ok",
               "case_id",
               "lower_rate_bound",
               "upper_rate_bound",
               "discarded_term",
               "inequalities_ok",
               "error"};
  const auto rows = ldp_scan(cfg.qs, cfg.ns, cfg.r, cfg.xs.front());
  for (const RateScanRow& r : rows) {
    std::vector<Cell> row;
    row.push_back(Cell::number(r.q));
    row.push_back(Cell::integer(r.n));
    row.push_back(Cell::number(r.r));
    row.push_back(Cell::number(r.x));
    row.push_back(Cell::number(r.tail));
    row.push_back(r.empirical_rate ? Cell::number(*r.empirical_rate)
                                   : Cell::null());
    row.push_back(Cell::number(r.theoretical_rate));
    row.push_back(Cell::number(r.lower_bound_value));
    row.push_back(Cell::number(r.upper_bound_value));
    row.push_back(Cell::boolean(r.monotone_precondition_ok));
    if (r.three_case) {
      row.push_back(Cell::integer(r.three_case->case_id));
      row.push_back(Cell::number(r.three_case->lower_rate_bound));
      row.push_back(Cell::number(r.three_case->upper_rate_bound));
      row.push_back(Cell::number(r.three_case->discarded_term));
      row.push_back(Cell::boolean(r.three_case->inequalities_ok));
    } else {
      for (int i = 0; i < 5; ++i) row.push_back(Cell::null());
    }
    row.push_back(Cell::text(r.error));
    t.rows.push_back(std::move(row));
  }
  return t;
}

ConfigEcho make_echo(const ScanConfig& cfg) {
  ConfigEcho echo;
  echo.emplace_back("subcommand", cfg.subcommand);
  echo.emplace_back("q", join_doubles(cfg.qs));
  if (cfg.subcommand == "stirling" || cfg.subcommand == "pmf" ||
      cfg.subcommand == "ldp")
    echo.emplace_back("n", join_ints(cfg.ns));
  if (cfg.subcommand == "pmf" || cfg.subcommand == "divergence" ||
      cfg.subcommand == "ldp")
    echo.emplace_back("r", fmt17(cfg.r));
  if (cfg.subcommand == "qfun" || cfg.subcommand == "divergence" ||
      cfg.subcommand == "ldp")
    echo.emplace_back("x", join_doubles(cfg.xs));
  if (cfg.y) echo.emplace_back("y", fmt17(*cfg.y));
  if (!cfg.alphas.empty()) echo.emplace_back("alpha", join_doubles(cfg.alphas));
  if (cfg.estimate_delta) echo.emplace_back("estimate_delta", "1");
  if (cfg.sample_count > 0) {
    echo.emplace_back("sample", std::to_string(cfg.sample_count));
    echo.emplace_back("seed", std::to_string(cfg.seed));
  }
  echo.emplace_back("format", cfg.format);
  return echo;
}

}  // namespace

int run(const ScanConfig& cfg, std::ostream& os) {
  const ConfigEcho echo = make_echo(cfg);
  try {
    if (cfg.subcommand == "pmf") {
      if (cfg.qs.size() != 1 || cfg.ns.size() != 1)
        throw DomainViolation("pmf", static_cast<double>(cfg.qs.size()),
                              "exactly one --q and one --n");
      const QBinomialPmf d = pmf(QBinomialSpec(cfg.qs[0], cfg.ns[0], cfg.r));
      if (cfg.format == "json")
        write_pmf_json(os, echo, d, cfg);
      else
        write_pmf_csv(os, echo, d, cfg);
      return 0;
    }

    Table t;
    if (cfg.subcommand == "qfun")
      t = build_qfun(cfg);
    else if (cfg.subcommand == "stirling")
      t = build_stirling(cfg);
    else if (cfg.subcommand == "divergence")
      t = build_divergence(cfg);
    else if (cfg.subcommand == "ldp")
      t = build_ldp(cfg);
    else
      throw DomainViolation("run", 0.0, "known subcommand");

    if (cfg.format == "json")
      write_table_json(os, echo, t);
    else
      write_table_csv(os, echo, t);
    return 0;
  } catch (const DomainViolation& e) {
    emit_error(os, cfg.format, "validation", e.what());
    return 1;
  } catch (const NumericFailure& e) {
    emit_error(os, cfg.format, "numeric", e.what());
    return 2;
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"scans over q-deformed functions, distributions and rates"};
  app.require_subcommand(1);

  ScanConfig cfg;
  const std::pair<const char*, const char*> subs[] = {
      {"qfun", "q-logarithm, q-exponential, q-product and q-ratio tables"},
      {"stirling", "q-factorial and q-Stirling approximation errors"},
      {"pmf", "q-binomial distribution, normalization and seeded samples"},
      {"divergence", "q- and alpha-divergences with the correspondence terms"},
      {"ldp", "tail probabilities, rate functions and large-deviation bounds"},
  };
  for (const auto& [name, blurb] : subs) {
    CLI::App* sub = app.add_subcommand(name, blurb);
    sub->add_option("--q", cfg.qs, "deformation parameter(s)")
        ->delimiter(',');
    sub->add_option("--n", cfg.ns, "trial count(s)")->delimiter(',');
    sub->add_option("--x", cfg.xs, "evaluation point(s)")->delimiter(',');
    sub->add_option("--alpha", cfg.alphas, "alpha parameter(s)")
        ->delimiter(',');
    sub->add_option("--r", cfg.r, "success rate");
    sub->add_option("--y", cfg.y, "second operand for q-product/q-ratio");
    sub->add_option("--sample", cfg.sample_count, "number of seeded draws");
    sub->add_option("--seed", cfg.seed, "sampler seed");
    sub->add_flag("--estimate-delta", cfg.estimate_delta,
                  "report the delta_q extrapolation");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "# error: kind=validation message=" << e.what() << '\n';
    return 1;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "# error: kind=validation message=cannot open "
                << cfg.out << '\n';
      return 1;
    }
    return run(cfg, f);
  }
  return run(cfg, std::cout);
}

}  // namespace tsallis::cli
