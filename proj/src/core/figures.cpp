#include "qdrive/figures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <tuple>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "qdrive/parallel.hpp"

namespace qdrive {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Series may overshoot [0, 1] by roundoff of this size.
constexpr double kSeriesSlack = 1e-10;

struct GridCell {
  double value = kNaN;
  bool failed = false;
};

GridCell eval_jc_cell(double mean_n, double gt, double w,
                      const SeriesOptions& series) {
  try {
    const JaynesCummingsModel model(1.0, ThermalEnvironment(mean_n));
    const double v = jc_diagonal(model, gt, w, series);
    if (v < -kSeriesSlack || v > 1.0 + kSeriesSlack) return {kNaN, true};
    return {std::clamp(v, 0.0, 1.0), false};
  } catch (const NumericalError&) {
    return {kNaN, true};
  }
}

struct RegionTally {
  double min = std::numeric_limits<double>::infinity();
  std::size_t black = 0;
  std::size_t grey = 0;
  std::size_t valid = 0;
};

Cell region_cell(const GridCell& c, RegionTally& tally) {
  if (c.failed) return std::string("invalid");
  const RegionClass r = classify_region(c.value);
  tally.min = std::min(tally.min, c.value);
  ++tally.valid;
  if (r == RegionClass::Black) ++tally.black;
  if (r == RegionClass::Grey) ++tally.grey;
  return std::string(to_string(r));
}

void add_tally(Table& t, const std::string& label, const RegionTally& tally) {
  const double n = tally.valid ? static_cast<double>(tally.valid) : kNaN;
  t.summary().push_back({"min[" + label + "]", tally.valid ? tally.min : kNaN});
  t.summary().push_back({"black_fraction[" + label + "]",
                         static_cast<double>(tally.black) / n});
  t.summary().push_back({"grey_fraction[" + label + "]",
                         static_cast<double>(tally.grey) / n});
}

// Evaluates the JC diagonal over outer x inner grid for each slice value.
// arg(slice, outer, inner) -> (mean_n, gt, w).
template <typename ArgMap>
Table jc_grid(std::vector<std::string> columns, const std::string& slice_name,
              const std::vector<double>& slices, const Axis& outer,
              const Axis& inner, const SeriesOptions& series, unsigned threads,
              ArgMap&& args) {
  outer.validate();
  inner.validate();
  if (slices.empty()) throw UsageError("no " + slice_name + " values given");
  const std::size_t per_slice =
      std::size_t{outer.points} * std::size_t{inner.points};
  std::vector<GridCell> cells(per_slice * slices.size());
  parallel_for(cells.size(), threads, [&](std::size_t idx) {
    const std::size_t s = idx / per_slice;
    const std::size_t rem = idx % per_slice;
    const auto i = static_cast<std::uint32_t>(rem / inner.points);
    const auto j = static_cast<std::uint32_t>(rem % inner.points);
    const auto [mean_n, gt, w] = args(slices[s], outer.at(i), inner.at(j));
    cells[idx] = eval_jc_cell(mean_n, gt, w, series);
  });

  Table table(std::move(columns));
  table.reserve(cells.size());
  for (std::size_t s = 0; s < slices.size(); ++s) {
    RegionTally tally;
    for (std::uint32_t i = 0; i < outer.points; ++i) {
      for (std::uint32_t j = 0; j < inner.points; ++j) {
        const auto& c = cells[s * per_slice + std::size_t{i} * inner.points + j];
        if (c.failed) table.add_failed_cells(1);
        table.add_row({slices[s], outer.at(i), inner.at(j), c.value,
                       region_cell(c, tally)});
      }
    }
    add_tally(table, slice_name + "=" + format_number(slices[s]), tally);
  }
  return table;
}

// --- sweep registry -------------------------------------------------------

using SweepEval =
    std::function<double(const std::vector<double>&, const SeriesOptions&)>;

struct SweepFunction {
  SweepFunctionInfo info;
  SweepEval eval;
};

std::uint32_t as_count(double v, const char* name) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 4294967295.0) {
    std::ostringstream os;
    os << name << " must be a nonnegative integer, got " << v;
    throw DomainError(os.str());
  }
  return static_cast<std::uint32_t>(v);
}

const std::vector<SweepFunction>& registry() {
  static const std::vector<SweepFunction> fns = {
      {{"mub_success", {"q0", "c", "N"}},
       [](const auto& a, const auto&) {
         return mub_success_probability({a[0], a[1], as_count(a[2], "N")});
       }},
      {{"dm_success", {"q0", "qt", "N"}},
       [](const auto& a, const auto&) {
         return dm_success_probability({a[0], a[1], as_count(a[2], "N")});
       }},
      {{"two_step_success", {"p1", "p2"}},
       [](const auto& a, const auto&) { return two_step_success(a[0], a[1]); }},
      {{"crossover_threshold", {"N"}},
       [](const auto& a, const auto&) {
         return crossover_threshold(as_count(a[0], "N"));
       }},
      {{"laguerre", {"n", "x"}},
       [](const auto& a, const auto&) {
         return laguerre(as_count(a[0], "n"), a[1]);
       }},
      {{"dephasing_factor", {"gt", "mean_n"}},
       [](const auto& a, const auto&) {
         return dephasing_factor({1.0, ThermalEnvironment(a[1])}, a[0]);
       }},
      {{"dephasing_factor_series", {"gt", "mean_n"}},
       [](const auto& a, const auto& s) {
         return dephasing_factor_series({1.0, ThermalEnvironment(a[1])}, a[0],
                                        s)
             .value;
       }},
      {{"dephasing_diagonal", {"gt", "w", "mean_n"}},
       [](const auto& a, const auto&) {
         return dephasing_diagonal({1.0, ThermalEnvironment(a[2])}, a[0], a[1]);
       }},
      {{"dephasing_limit_low", {"gt", "w"}},
       [](const auto& a, const auto&) {
         return dephasing_limits(a[1], a[0]).low_temperature;
       }},
      {{"dephasing_limit_high", {"gt", "w"}},
       [](const auto& a, const auto&) {
         return dephasing_limits(a[1], a[0]).high_temperature;
       }},
      {{"jc_diagonal", {"gt", "w", "mean_n"}},
       [](const auto& a, const auto& s) {
         return jc_diagonal({1.0, ThermalEnvironment(a[2])}, a[0], a[1], s);
       }},
  };
  return fns;
}

const SweepFunction& find_function(const std::string& name) {
  for (const auto& f : registry()) {
    if (f.info.name == name) return f;
  }
  throw UnknownFunctionError(name);
}

double parse_real(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("malformed number for " + what + ": '" + text + "'");
  }
}

std::string trimmed(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

void Axis::validate() const {
  if (points < 2) throw UsageError("axis '" + name + "' needs >= 2 points");
  if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
    throw UsageError("axis '" + name + "' needs finite min < max");
  }
}

double Axis::at(std::uint32_t i) const {
  if (i + 1 == points) return max;
  return min + (max - min) * static_cast<double>(i) /
                   static_cast<double>(points - 1);
}

Table fig1_table(const Fig1Params& p) {
  if (p.max_rounds < 1) throw UsageError("fig1 needs max N >= 1");
  if (!(p.q0 >= 0.0 && p.q0 <= 1.0)) throw UsageError("q0 outside [0, 1]");
  for (double qt : p.qt) {
    if (!(qt >= 0.0 && qt <= 1.0)) throw UsageError("qt outside [0, 1]");
  }
  std::vector<std::string> cols{"N", "p_mub"};
  for (double qt : p.qt) cols.push_back("p_dm_" + format_number(qt));
  if (p.mc_trials > 0) {
    cols.push_back("p_mub_mc");
    for (double qt : p.qt) cols.push_back("p_dm_" + format_number(qt) + "_mc");
  }
  Table table(std::move(cols));
  for (std::uint32_t n = 1; n <= p.max_rounds; ++n) {
    std::vector<Cell> row{static_cast<double>(n),
                          mub_success_probability({p.q0, 0.5, n})};
    for (double qt : p.qt) row.emplace_back(dm_success_probability({p.q0, qt, n}));
    if (p.mc_trials > 0) {
      // Series s (0 = mub, 1.. = qt columns) at round n draws from its own
      // derived seed.
      auto seed_for = [&](std::uint64_t series) {
        return derive_chunk_seed(p.seed, series * 0x10000u + n);
      };
      row.emplace_back(simulate_mc({ProtocolProgram::mub(p.q0, 0.5, n),
                                    p.mc_trials, seed_for(0)},
                                   p.threads)
                           .estimate);
      for (std::size_t k = 0; k < p.qt.size(); ++k) {
        row.emplace_back(simulate_mc({ProtocolProgram::dm_uniform(p.q0, p.qt[k], n),
                                      p.mc_trials, seed_for(k + 1)},
                                     p.threads)
                             .estimate);
      }
    }
    table.add_row(std::move(row));
  }
  return table;
}

Table fig2_table(const Fig2Params& p) {
  return jc_grid({"mean_n", "gt", "w", "diagonal", "region"}, "mean_n",
                 p.mean_occupations, p.gt, p.w, p.series, p.threads,
                 [](double mean_n, double gt, double w) {
                   return std::tuple{mean_n, gt, w};
                 });
}

Table fig3_table(const Fig3Params& p) {
  return jc_grid({"w", "gt", "mean_n", "diagonal", "region"}, "w", p.w_values,
                 p.gt, p.mean_n, p.series, p.threads,
                 [](double w, double gt, double mean_n) {
                   return std::tuple{mean_n, gt, w};
                 });
}

Table protocol_table(const ProtocolReportParams& p) {
  const auto rows = compare_protocols({p.q0, 0.5, 0}, {p.q0, p.qt, 2},
                                      p.max_rounds, p.mode);
  Table table({"N", "mub_rounds", "p_mub", "p_dm", "threshold", "verdict",
               "threshold_verdict", "consistent"});
  for (const auto& r : rows) {
    table.add_row({static_cast<double>(r.rounds),
                   static_cast<double>(r.mub_rounds), r.p_mub, r.p_dm,
                   r.threshold, std::string(to_string(r.verdict)),
                   std::string(to_string(r.threshold_verdict)),
                   r.consistent ? 1.0 : 0.0});
  }
  table.summary().push_back({"p_first", 1.0 - p.q0});
  table.summary().push_back(
      {"two_step", two_step_success(1.0 - p.q0, 1.0 - p.qt)});
  table.summary().push_back({"threshold_limit", 0.5});
  return table;
}

McReport mc_report(const TrajectoryConfig& config, unsigned threads,
                   double sigmas) {
  McReport report;
  report.exact = enumerate_outcomes(config.program);
  report.estimate = simulate_mc(config, threads);
  report.passed = within_sigmas(report.estimate, report.exact, sigmas);
  const double dev = std::abs(report.estimate.estimate - report.exact);
  const double sigma =
      binomial_standard_error(report.exact, report.estimate.trials);
  const double dev_sigmas =
      sigma > 0.0 ? dev / sigma : (dev == 0.0 ? 0.0 : kNaN);
  report.table = Table({"estimate", "standard_error", "exact",
                        "deviation_sigmas", "pass", "trials", "seed"});
  report.table.add_row({report.estimate.estimate,
                        report.estimate.standard_error, report.exact,
                        dev_sigmas, report.passed ? 1.0 : 0.0,
                        static_cast<double>(report.estimate.trials),
                        std::to_string(report.estimate.seed)});
  return report;
}

const std::vector<SweepFunctionInfo>& sweep_functions() {
  static const std::vector<SweepFunctionInfo> infos = [] {
    std::vector<SweepFunctionInfo> out;
    for (const auto& f : registry()) out.push_back(f.info);
    return out;
  }();
  return infos;
}

SweepSpec parse_sweep_spec(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError(std::string("malformed sweep spec: ") + e.message());
  }

  SweepSpec spec;
  bool have_sweep = false;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw UsageError("sweep spec key '" + section + "' outside a section");
    }
    if (section == "sweep") {
      have_sweep = true;
      for (const auto& [key, value] : body) {
        const std::string v = trimmed(value.data());
        if (key == "function") {
          spec.function = v;
        } else if (key == "out") {
          spec.out = v;
        } else if (key == "format") {
          spec.format = parse_table_format(v);
        } else if (key == "tol") {
          spec.series.tolerance = parse_real(v, "tol");
        } else if (key == "term_cap") {
          const double cap = parse_real(v, "term_cap");
          if (!(cap >= 1.0) || cap != std::floor(cap)) {
            throw UsageError("term_cap must be a positive integer");
          }
          spec.series.term_cap = static_cast<std::uint64_t>(cap);
        } else {
          throw UsageError("unknown key '" + key + "' in [sweep]");
        }
      }
    } else if (section.rfind("axis:", 0) == 0) {
      Axis axis;
      axis.name = trimmed(section.substr(5));
      bool have_min = false, have_max = false, have_points = false;
      for (const auto& [key, value] : body) {
        const std::string v = trimmed(value.data());
        if (key == "min") {
          axis.min = parse_real(v, axis.name + ".min");
          have_min = true;
        } else if (key == "max") {
          axis.max = parse_real(v, axis.name + ".max");
          have_max = true;
        } else if (key == "points") {
          const double pts = parse_real(v, axis.name + ".points");
          if (pts != std::floor(pts) || pts < 0 || pts > 1e8) {
            throw UsageError("points must be a nonnegative integer");
          }
          axis.points = static_cast<std::uint32_t>(pts);
          have_points = true;
        } else {
          throw UsageError("unknown key '" + key + "' in [" + section + "]");
        }
      }
      if (!have_min || !have_max || !have_points) {
        throw UsageError("axis '" + axis.name + "' needs min, max and points");
      }
      axis.validate();
      spec.axes.push_back(std::move(axis));
    } else if (section == "fixed") {
      for (const auto& [key, value] : body) {
        spec.fixed[key] = parse_real(trimmed(value.data()), key);
      }
    } else {
      throw UsageError("unknown section [" + section + "] in sweep spec");
    }
  }
  if (!have_sweep || spec.function.empty()) {
    throw UsageError("sweep spec needs [sweep] function = NAME");
  }
  if (spec.axes.empty()) throw UsageError("sweep spec needs at least one axis");

  const auto& fn = find_function(spec.function);
  std::set<std::string> supplied;
  for (const auto& a : spec.axes) {
    if (!supplied.insert(a.name).second) {
      throw UsageError("parameter '" + a.name + "' given twice");
    }
  }
  for (const auto& [k, v] : spec.fixed) {
    if (!supplied.insert(k).second) {
      throw UsageError("parameter '" + k + "' given twice");
    }
  }
  const std::set<std::string> wanted(fn.info.params.begin(),
                                     fn.info.params.end());
  for (const auto& name : supplied) {
    if (!wanted.count(name)) {
      throw UsageError("function " + spec.function +
                       " has no parameter '" + name + "'");
    }
  }
  for (const auto& name : wanted) {
    if (!supplied.count(name)) {
      throw UsageError("function " + spec.function + " needs parameter '" +
                       name + "'");
    }
  }
  return spec;
}

Table run_sweep(const SweepSpec& spec, unsigned threads) {
  const auto& fn = find_function(spec.function);
  for (const auto& a : spec.axes) a.validate();

  // Slot of each function parameter: axis index, or -1 for fixed.
  std::vector<int> axis_of(fn.info.params.size(), -1);
  std::vector<double> base(fn.info.params.size(), 0.0);
  for (std::size_t p = 0; p < fn.info.params.size(); ++p) {
    const auto& name = fn.info.params[p];
    bool found = false;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      if (spec.axes[a].name == name) {
        axis_of[p] = static_cast<int>(a);
        found = true;
      }
    }
    if (!found) {
      const auto it = spec.fixed.find(name);
      if (it == spec.fixed.end()) {
        throw UsageError("function " + spec.function + " needs parameter '" +
                         name + "'");
      }
      base[p] = it->second;
    }
  }

  std::size_t total = 1;
  for (const auto& a : spec.axes) total *= a.points;
  std::vector<GridCell> cells(total);
  parallel_for(total, threads, [&](std::size_t idx) {
    std::vector<std::uint32_t> coord(spec.axes.size());
    std::size_t rem = idx;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      coord[a] = static_cast<std::uint32_t>(rem % spec.axes[a].points);
      rem /= spec.axes[a].points;
    }
    std::vector<double> args = base;
    for (std::size_t p = 0; p < args.size(); ++p) {
      if (axis_of[p] >= 0) {
        const auto a = static_cast<std::size_t>(axis_of[p]);
        args[p] = spec.axes[a].at(coord[a]);
      }
    }
    try {
      cells[idx] = {fn.eval(args, spec.series), false};
    } catch (const NumericalError&) {
      cells[idx] = {kNaN, true};
    }
  });

  std::vector<std::string> cols;
  for (const auto& a : spec.axes) cols.push_back(a.name);
  cols.push_back("value");
  Table table(std::move(cols));
  table.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<Cell> row(spec.axes.size() + 1);
    std::size_t rem = idx;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      row[a] = spec.axes[a].at(
          static_cast<std::uint32_t>(rem % spec.axes[a].points));
      rem /= spec.axes[a].points;
    }
    row.back() = cells[idx].value;
    if (cells[idx].failed) table.add_failed_cells(1);
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace qdrive
