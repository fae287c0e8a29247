#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qdrive/decoherence.hpp"
#include "qdrive/protocols.hpp"
#include "qdrive/table.hpp"
#include "qdrive/trajectory.hpp"

namespace qdrive {

// Linearly spaced axis including both end points.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::uint32_t points = 2;

  // Throws UsageError unless points >= 2 and min < max.
  void validate() const;
  double at(std::uint32_t i) const;
};

// Success probability against N. Columns: N, p_mub (c = 1/2, N rounds of
// the alternating pair after the first measurement), then p_dm_<qt> for
// each qt (N target measurements). With mc_trials > 0, Monte Carlo
// estimates of each curve follow as *_mc columns.
struct Fig1Params {
  double q0 = 1.0;
  std::vector<double> qt{0.15, 0.8};
  std::uint32_t max_rounds = 10;
  std::uint64_t mc_trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};
Table fig1_table(const Fig1Params& params);

// Jaynes-Cummings diagonal over (gt, w) per mean occupation. Columns:
// mean_n, gt, w, diagonal, region. Cells whose series fails are emitted as
// nan / "invalid" and counted in failed_cells(). Summary keys per
// occupation: min[mean_n=X], black_fraction[mean_n=X],
// grey_fraction[mean_n=X].
struct Fig2Params {
  std::vector<double> mean_occupations{1.0, 100.0};
  Axis gt{"gt", 0.0, 10.0, 400};
  Axis w{"w", 0.0, 1.0, 200};
  SeriesOptions series{};
  unsigned threads = 1;
};
Table fig2_table(const Fig2Params& params);

// Jaynes-Cummings diagonal over (gt, mean_n) per w. Columns: w, gt, mean_n,
// diagonal, region. Summary keys per w as for fig2.
struct Fig3Params {
  std::vector<double> w_values{0.0, 0.5, 1.0};
  Axis gt{"gt", 0.0, 10.0, 400};
  Axis mean_n{"mean_n", 0.0, 20.0, 201};
  SeriesOptions series{};
  unsigned threads = 1;
};
Table fig3_table(const Fig3Params& params);

// Protocol comparison for N = 2..max_rounds. Columns: N, mub_rounds, p_mub,
// p_dm, threshold, verdict, threshold_verdict, consistent. Summary holds
// p_first (1 - q0), two_step (the N = 2 decoherence success) and
// threshold_limit (1/2).
struct ProtocolReportParams {
  double q0 = 1.0;
  double qt = 0.15;
  std::uint32_t max_rounds = 10;
  ComparisonMode mode = ComparisonMode::EqualRounds;
};
Table protocol_table(const ProtocolReportParams& params);

// Monte Carlo estimate against exact enumeration. Columns: estimate,
// standard_error, exact, deviation_sigmas, pass, trials, seed.
struct McReport {
  Table table;
  McEstimate estimate;
  double exact = 0.0;
  bool passed = false;
};
McReport mc_report(const TrajectoryConfig& config, unsigned threads,
                   double sigmas = 5.0);

// Grid evaluation of a named scalar function.
struct SweepSpec {
  std::string function;
  std::vector<Axis> axes;
  std::map<std::string, double> fixed;
  std::string out;  // empty: caller decides
  TableFormat format = TableFormat::Csv;
  SeriesOptions series{};
};

// Scalar functions available to sweeps, with their parameter names.
struct SweepFunctionInfo {
  std::string name;
  std::vector<std::string> params;
};
const std::vector<SweepFunctionInfo>& sweep_functions();

// INI text:
//   [sweep]   function = ..., optional out, format, tol, term_cap
//   [axis:NAME]  min, max, points   (one section per axis, in order)
//   [fixed]   NAME = value
// Throws UsageError when malformed, UnknownFunctionError for unknown names.
SweepSpec parse_sweep_spec(std::string_view text);

// Columns: one per axis (first axis outermost), then value.
Table run_sweep(const SweepSpec& spec, unsigned threads = 1);

}  // namespace qdrive
