// qdrive: command-line front end over the qdrive C API.
//
//   qdrive fig1 | fig2 | fig3 | protocol | mc | sweep SPEC
//
// Exit status: 0 success, 2 usage, 3 series failure, 4 I/O failure,
// 5 validation failure (Monte Carlo / oracle mismatch), 6 unknown sweep
// function.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdrive/qdrive.h"

namespace {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
  kExitIo = 4,
  kExitValidation = 5,
  kExitUnknownFunction = 6,
};

struct CommonOptions {
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::uint64_t term_cap = 1'000'000;
  bool exact_floats = false;
};

int exit_code_for(qd_status s) {
  switch (s) {
    case QD_OK:
      return kExitOk;
    case QD_ERR_NUMERICAL:
      return kExitNumerical;
    case QD_ERR_IO:
      return kExitIo;
    case QD_ERR_UNKNOWN_FUNCTION:
      return kExitUnknownFunction;
    case QD_ERR_VALIDATION:
    case QD_ERR_DOMAIN:
    case QD_ERR_USAGE:
    case QD_ERR_RESOURCE:
    case QD_ERR_NULL_ARGUMENT:
      return kExitUsage;
    case QD_ERR_INTERNAL:
      break;
  }
  return kExitInternal;
}

// Thrown out of subcommand handlers to unwind with a given exit status.
struct Exit {
  int code;
};

void check(qd_status s) {
  if (s == QD_OK) return;
  std::cerr << "qdrive: " << qd_status_name(s) << ": " << qd_last_error()
            << "\n";
  throw Exit{exit_code_for(s)};
}

qd_format format_of(const std::string& name) {
  return name == "json" ? QD_FORMAT_JSON : QD_FORMAT_CSV;
}

qd_series_options series_of(const CommonOptions& o) {
  qd_series_options s;
  qd_series_options_default(&s);
  s.tolerance = o.tol;
  s.term_cap = o.term_cap;
  return s;
}

class TableHandle {
 public:
  TableHandle() = default;
  TableHandle(const TableHandle&) = delete;
  TableHandle& operator=(const TableHandle&) = delete;
  ~TableHandle() { qd_table_free(table_); }
  qd_table** out() { return &table_; }
  const qd_table* get() const { return table_; }

 private:
  qd_table* table_ = nullptr;
};

class ProgramHandle {
 public:
  ProgramHandle() = default;
  ProgramHandle(const ProgramHandle&) = delete;
  ProgramHandle& operator=(const ProgramHandle&) = delete;
  ~ProgramHandle() { qd_program_free(program_); }
  qd_program** out() { return &program_; }
  const qd_program* get() const { return program_; }

 private:
  qd_program* program_ = nullptr;
};

// Writes the table to --out (or stdout) and the summary to stderr. Returns
// the numerical exit code when cells failed.
int emit(const TableHandle& table, const CommonOptions& o,
         const std::string& default_out = "",
         qd_format default_format = QD_FORMAT_CSV, bool format_given = true) {
  const qd_format fmt = format_given ? format_of(o.format) : default_format;
  const std::string path = o.out.empty() ? default_out : o.out;
  if (!path.empty()) {
    check(qd_table_write(table.get(), path.c_str(), fmt, o.exact_floats));
  } else {
    std::size_t needed = 0;
    check(qd_table_format(table.get(), fmt, o.exact_floats, nullptr, 0,
                          &needed));
    std::string text(needed + 1, '\0');
    check(qd_table_format(table.get(), fmt, o.exact_floats, text.data(),
                          text.size(), &needed));
    text.resize(needed);
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  }
  for (std::size_t i = 0; i < qd_table_summary_count(table.get()); ++i) {
    const char* key = nullptr;
    double value = 0.0;
    check(qd_table_summary_entry(table.get(), i, &key, &value));
    std::fprintf(stderr, "%s = %.17g\n", key, value);
  }
  const std::size_t failed = qd_table_failed_cells(table.get());
  if (failed > 0) {
    std::fprintf(stderr, "qdrive: %zu cell(s) failed to converge\n", failed);
    return kExitNumerical;
  }
  return kExitOk;
}

struct AxisOptions {
  double min;
  double max;
  std::uint32_t points;
};

void add_axis(CLI::App* cmd, const std::string& prefix, AxisOptions& axis,
              const std::string& what) {
  cmd->add_option("--" + prefix + "-min", axis.min, what + " minimum")
      ->capture_default_str();
  cmd->add_option("--" + prefix + "-max", axis.max, what + " maximum")
      ->capture_default_str();
  cmd->add_option("--" + prefix + "-points", axis.points,
                  what + " point count (>= 2)")
      ->capture_default_str();
}

qd_axis to_axis(const AxisOptions& a) { return {a.min, a.max, a.points}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-driven qubit evolution: protocol laws, thermal "
               "decoherence series and Monte Carlo checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI/TOML config file; flags override it");

  CommonOptions common;
  app.add_option("--out", common.out, "Output file (default: stdout)");
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
  app.add_option("--tol", common.tol,
                 "Series tail tolerance (0: 1e-10 for Jaynes-Cummings, "
                 "1e-12 for dephasing)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--term-cap", common.term_cap, "Series term cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--exact-floats", common.exact_floats,
               "Print floats with 17 significant digits");

  int status = kExitOk;

  // fig1 -------------------------------------------------------------------
  auto* fig1 = app.add_subcommand("fig1", "Success probability against N");
  double fig1_q0 = 1.0;
  std::vector<double> fig1_qt{0.15, 0.8};
  std::uint32_t fig1_max_n = 10;
  std::uint64_t fig1_mc = 0;
  fig1->add_option("--q0", fig1_q0, "<perp|rho0|perp>")->capture_default_str();
  fig1->add_option("--qt", fig1_qt, "Decoherence diagonal elements")
      ->capture_default_str();
  fig1->add_option("--max-n", fig1_max_n, "Largest N")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fig1->add_option("--mc-trials", fig1_mc,
                   "Add Monte Carlo columns with this many trials per point");
  fig1->callback([&] {
    qd_fig1_params p;
    qd_fig1_params_default(&p);
    p.q0 = fig1_q0;
    p.qt = fig1_qt.data();
    p.qt_count = fig1_qt.size();
    p.max_rounds = fig1_max_n;
    p.mc_trials = fig1_mc;
    p.seed = common.seed;
    p.threads = common.threads;
    TableHandle t;
    check(qd_fig1(&p, t.out()));
    status = emit(t, common);
  });

  // fig2 -------------------------------------------------------------------
  auto* fig2 = app.add_subcommand(
      "fig2", "Jaynes-Cummings diagonal over (gt, w) per mean occupation");
  std::vector<double> fig2_mean_n{1.0, 100.0};
  AxisOptions fig2_gt{0.0, 10.0, 400};
  AxisOptions fig2_w{0.0, 1.0, 200};
  fig2->add_option("--mean-n", fig2_mean_n, "Mean thermal occupations")
      ->capture_default_str();
  add_axis(fig2, "gt", fig2_gt, "gt");
  add_axis(fig2, "w", fig2_w, "|<0|perp>|^2");
  fig2->callback([&] {
    qd_fig2_params p;
    qd_fig2_params_default(&p);
    p.mean_occupations = fig2_mean_n.data();
    p.count = fig2_mean_n.size();
    p.gt = to_axis(fig2_gt);
    p.w = to_axis(fig2_w);
    p.series = series_of(common);
    p.threads = common.threads;
    TableHandle t;
    check(qd_fig2(&p, t.out()));
    status = emit(t, common);
  });

  // fig3 -------------------------------------------------------------------
  auto* fig3 = app.add_subcommand(
      "fig3", "Jaynes-Cummings diagonal over (gt, mean_n) per w");
  std::vector<double> fig3_w{0.0, 0.5, 1.0};
  AxisOptions fig3_gt{0.0, 10.0, 400};
  AxisOptions fig3_n{0.0, 20.0, 201};
  fig3->add_option("--w", fig3_w, "|<0|perp>|^2 values")->capture_default_str();
  add_axis(fig3, "gt", fig3_gt, "gt");
  add_axis(fig3, "n", fig3_n, "mean occupation");
  fig3->callback([&] {
    qd_fig3_params p;
    qd_fig3_params_default(&p);
    p.w_values = fig3_w.data();
    p.count = fig3_w.size();
    p.gt = to_axis(fig3_gt);
    p.mean_n = to_axis(fig3_n);
    p.series = series_of(common);
    p.threads = common.threads;
    TableHandle t;
    check(qd_fig3(&p, t.out()));
    status = emit(t, common);
  });

  // protocol ---------------------------------------------------------------
  auto* protocol = app.add_subcommand(
      "protocol", "Compare the two protocols and the crossover threshold");
  double proto_q0 = 1.0;
  double proto_qt = 0.15;
  std::uint32_t proto_max_n = 10;
  bool proto_equal_meas = false;
  protocol->add_option("--q0", proto_q0, "<perp|rho0|perp>")
      ->capture_default_str();
  protocol->add_option("--qt", proto_qt, "<perp|rho_t|perp>")
      ->capture_default_str();
  protocol->add_option("--max-n", proto_max_n, "Largest N (>= 2)")
      ->capture_default_str();
  protocol->add_flag("--equal-measurements", proto_equal_meas,
                     "Compare at equal physical measurement counts instead "
                     "of equal N");
  protocol->callback([&] {
    TableHandle t;
    check(qd_protocol_table(proto_q0, proto_qt, proto_max_n, proto_equal_meas,
                            t.out()));
    status = emit(t, common);
    const std::size_t col = qd_table_column_count(t.get()) - 1;
    for (std::size_t r = 0; r < qd_table_row_count(t.get()); ++r) {
      double consistent = 1.0;
      check(qd_table_number(t.get(), r, col, &consistent));
      if (consistent != 1.0) {
        std::fprintf(stderr,
                     "qdrive: probability and threshold verdicts disagree\n");
        status = kExitValidation;
      }
    }
  });

  // mc ---------------------------------------------------------------------
  auto* mc = app.add_subcommand(
      "mc", "Monte Carlo estimate checked against exact enumeration");
  std::string mc_protocol = "dm";
  std::string mc_model = "none";
  double mc_q0 = 1.0;
  double mc_c = 0.5;
  std::vector<double> mc_qt{0.15};
  std::uint32_t mc_rounds = 2;
  std::uint64_t mc_trials = 100'000;
  double mc_sigmas = 5.0;
  double mc_gt = 0.0;
  double mc_w = 0.5;
  double mc_mean_n = 0.0;
  mc->add_option("--protocol", mc_protocol, "mub or dm")
      ->check(CLI::IsMember({"mub", "dm"}))
      ->capture_default_str();
  mc->add_option("--q0", mc_q0, "<perp|rho0|perp>")->capture_default_str();
  mc->add_option("--c", mc_c, "|<0|target>|^2 for mub")->capture_default_str();
  mc->add_option("--qt", mc_qt,
                 "dm failure probabilities: one value (uniform over N) or "
                 "N - 1 values")
      ->capture_default_str();
  mc->add_option("--rounds,-N", mc_rounds, "N")->capture_default_str();
  mc->add_option("--trials", mc_trials, "Trial count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mc->add_option("--sigmas", mc_sigmas, "Pass gate in standard errors")
      ->capture_default_str();
  mc->add_option("--model", mc_model,
                 "Derive qt from a decoherence model instead of --qt")
      ->check(CLI::IsMember({"none", "dephasing", "jc"}))
      ->capture_default_str();
  mc->add_option("--gt", mc_gt, "gt for --model")->capture_default_str();
  mc->add_option("--w", mc_w, "|<0|perp>|^2 for --model")
      ->capture_default_str();
  mc->add_option("--mean-n", mc_mean_n, "Mean occupation for --model")
      ->capture_default_str();
  mc->callback([&] {
    ProgramHandle program;
    if (mc_protocol == "mub") {
      check(qd_program_mub(mc_q0, mc_c, mc_rounds, program.out()));
    } else if (mc_model == "dephasing") {
      check(qd_program_from_dephasing(mc_mean_n, mc_gt, mc_w, mc_q0, mc_rounds,
                                      program.out()));
    } else if (mc_model == "jc") {
      const qd_series_options s = series_of(common);
      check(qd_program_from_jc(mc_mean_n, mc_gt, mc_w, mc_q0, mc_rounds, &s,
                               program.out()));
    } else if (mc_qt.size() == 1) {
      if (mc_rounds == 0) {
        std::cerr << "qdrive: dm needs N >= 1\n";
        throw Exit{kExitUsage};
      }
      std::vector<double> list(mc_rounds - 1, mc_qt.front());
      check(qd_program_dm(mc_q0, list.data(), list.size(), program.out()));
    } else {
      check(qd_program_dm(mc_q0, mc_qt.data(), mc_qt.size(), program.out()));
    }
    TableHandle t;
    int passed = 0;
    check(qd_mc_table(program.get(), mc_trials, common.seed, common.threads,
                      mc_sigmas, t.out(), &passed));
    status = emit(t, common);
    if (!passed) {
      std::fprintf(stderr, "qdrive: Monte Carlo estimate outside %g sigma\n",
                   mc_sigmas);
      status = kExitValidation;
    }
  });

  // sweep ------------------------------------------------------------------
  auto* sweep = app.add_subcommand(
      "sweep", "Evaluate a scalar function over a grid from a spec file");
  std::string sweep_path;
  bool list_functions = false;
  sweep->add_option("spec", sweep_path, "Sweep spec file (INI)");
  sweep->add_flag("--list", list_functions, "List sweepable functions");
  sweep->callback([&] {
    if (list_functions) {
      for (std::size_t i = 0; i < qd_sweep_function_count(); ++i) {
        std::printf("%s\n", qd_sweep_function_name(i));
      }
      return;
    }
    if (sweep_path.empty()) {
      std::cerr << "qdrive: sweep needs a spec file\n";
      throw Exit{kExitUsage};
    }
    std::FILE* f = std::fopen(sweep_path.c_str(), "rb");
    if (!f) {
      std::cerr << "qdrive: cannot read '" << sweep_path << "'\n";
      throw Exit{kExitIo};
    }
    std::string text;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
    std::fclose(f);

    qd_sweep_spec* raw = nullptr;
    check(qd_sweep_spec_parse(text.c_str(), &raw));
    std::unique_ptr<qd_sweep_spec, decltype(&qd_sweep_spec_free)> spec(
        raw, &qd_sweep_spec_free);
    const bool series_given =
        app.count("--tol") > 0 || app.count("--term-cap") > 0;
    const qd_series_options s = series_of(common);
    TableHandle t;
    check(qd_sweep_run(spec.get(), series_given ? &s : nullptr,
                       common.threads, t.out()));
    status = emit(t, common, qd_sweep_spec_out(spec.get()),
                  qd_sweep_spec_format(spec.get()), app.count("--format") > 0);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "qdrive: " << e.what() << "\n";
    return kExitInternal;
  }
  return status;
}
