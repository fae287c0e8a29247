#include "qdrive/qdrive.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "qdrive/decoherence.hpp"
#include "qdrive/figures.hpp"
#include "qdrive/protocols.hpp"
#include "qdrive/qubit.hpp"
#include "qdrive/table.hpp"
#include "qdrive/trajectory.hpp"

struct qd_program {
  qdrive::ProtocolProgram program;
};

struct qd_table {
  qdrive::Table table;
};

struct qd_sweep_spec {
  qdrive::SweepSpec spec;
};

namespace {

thread_local std::string g_last_error;

qd_status fail(qd_status status, const char* what) {
  g_last_error = what;
  return status;
}

qd_status status_of(const qdrive::Error& e) {
  using qdrive::ErrorKind;
  if (dynamic_cast<const qdrive::UnknownFunctionError*>(&e)) {
    return QD_ERR_UNKNOWN_FUNCTION;
  }
  switch (e.kind()) {
    case ErrorKind::Validation:
      return QD_ERR_VALIDATION;
    case ErrorKind::Domain:
      return QD_ERR_DOMAIN;
    case ErrorKind::Numerical:
      return QD_ERR_NUMERICAL;
    case ErrorKind::Resource:
      return QD_ERR_RESOURCE;
    case ErrorKind::Io:
      return QD_ERR_IO;
    case ErrorKind::Usage:
      return QD_ERR_USAGE;
  }
  return QD_ERR_INTERNAL;
}

// Runs body, translating exceptions into status codes. A NumericalError's
// partial sum is written to *partial when given.
template <typename Body>
qd_status guarded(Body&& body, double* partial = nullptr) {
  try {
    body();
    return QD_OK;
  } catch (const qdrive::NumericalError& e) {
    if (partial) *partial = e.partial_sum();
    return fail(QD_ERR_NUMERICAL, e.what());
  } catch (const qdrive::Error& e) {
    return fail(status_of(e), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QD_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(QD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QD_ERR_INTERNAL, "unknown error");
  }
}

#define QD_REQUIRE(ptr)                                                \
  do {                                                                 \
    if (!(ptr)) return fail(QD_ERR_NULL_ARGUMENT, #ptr " is NULL");    \
  } while (0)

qdrive::complex to_cpp(qd_complex z) { return {z.re, z.im}; }
qd_complex to_c(qdrive::complex z) { return {z.real(), z.imag()}; }

qdrive::PureState to_cpp(const qd_pure_state& s) {
  return {to_cpp(s.amp[0]), to_cpp(s.amp[1])};
}
qd_pure_state to_c(const qdrive::PureState& s) {
  return {{to_c(s.amplitude0()), to_c(s.amplitude1())}};
}

qdrive::DensityMatrix to_cpp(const qd_density_matrix& m) {
  qdrive::DensityMatrix::Entries e{};
  for (std::size_t i = 0; i < 4; ++i) e[i] = to_cpp(m.m[i]);
  return qdrive::DensityMatrix::from_entries(e);
}
qd_density_matrix to_c(const qdrive::DensityMatrix& rho) {
  qd_density_matrix out{};
  for (std::size_t i = 0; i < 4; ++i) out.m[i] = to_c(rho.entries()[i]);
  return out;
}

qdrive::SeriesOptions to_cpp(const qd_series_options* opts) {
  qdrive::SeriesOptions s;
  if (opts) {
    s.tolerance = opts->tolerance;
    s.term_cap = opts->term_cap;
  }
  return s;
}

qdrive::Axis to_cpp(const qd_axis& a, const char* name) {
  return {name, a.min, a.max, a.points};
}

qdrive::TableFormat to_cpp(qd_format f) {
  return f == QD_FORMAT_JSON ? qdrive::TableFormat::Json
                             : qdrive::TableFormat::Csv;
}

qdrive::JaynesCummingsModel jc_model(double mean_n) {
  return {1.0, qdrive::ThermalEnvironment(mean_n)};
}
qdrive::DephasingModel dephasing_model(double mean_n) {
  return {1.0, qdrive::ThermalEnvironment(mean_n)};
}

qd_status emit_table(qdrive::Table table, qd_table** out) {
  *out = new qd_table{std::move(table)};
  return QD_OK;
}

const qdrive::Cell* cell_at(const qd_table* t, size_t row, size_t col) {
  if (!t || row >= t->table.row_count() || col >= t->table.columns().size()) {
    return nullptr;
  }
  return &t->table.rows()[row][col];
}

qd_mc_estimate to_c(const qdrive::McEstimate& mc) {
  return {mc.estimate, mc.standard_error, mc.successes, mc.trials, mc.seed};
}

constexpr double kDefaultFig1Qt[] = {0.15, 0.8};
constexpr double kDefaultFig2MeanN[] = {1.0, 100.0};
constexpr double kDefaultFig3W[] = {0.0, 0.5, 1.0};

}  // namespace

extern "C" {

const char* qd_version(void) { return "1.0.0"; }

const char* qd_status_name(qd_status status) {
  switch (status) {
    case QD_OK: return "ok";
    case QD_ERR_VALIDATION: return "validation error";
    case QD_ERR_DOMAIN: return "domain error";
    case QD_ERR_NUMERICAL: return "numerical error";
    case QD_ERR_RESOURCE: return "resource error";
    case QD_ERR_IO: return "i/o error";
    case QD_ERR_USAGE: return "usage error";
    case QD_ERR_UNKNOWN_FUNCTION: return "unknown function";
    case QD_ERR_NULL_ARGUMENT: return "null argument";
    case QD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qd_last_error(void) { return g_last_error.c_str(); }

qd_status qd_overlap(const qd_pure_state* a, const qd_pure_state* b,
                     qd_complex* out) {
  QD_REQUIRE(a);
  QD_REQUIRE(b);
  QD_REQUIRE(out);
  return guarded([&] { *out = to_c(qdrive::overlap(to_cpp(*a), to_cpp(*b))); });
}

qd_status qd_expectation(const qd_pure_state* psi, const qd_density_matrix* rho,
                         double* out) {
  QD_REQUIRE(psi);
  QD_REQUIRE(rho);
  QD_REQUIRE(out);
  return guarded(
      [&] { *out = qdrive::expectation(to_cpp(*psi), to_cpp(*rho)); });
}

qd_status qd_projector(const qd_pure_state* psi, qd_density_matrix* out) {
  QD_REQUIRE(psi);
  QD_REQUIRE(out);
  return guarded([&] { *out = to_c(qdrive::projector(to_cpp(*psi))); });
}

qd_status qd_orthogonal_complement(const qd_pure_state* psi,
                                   qd_pure_state* out) {
  QD_REQUIRE(psi);
  QD_REQUIRE(out);
  return guarded(
      [&] { *out = to_c(qdrive::orthogonal_complement(to_cpp(*psi))); });
}

qd_status qd_from_bloch(const double r[3], qd_density_matrix* out) {
  QD_REQUIRE(r);
  QD_REQUIRE(out);
  return guarded([&] { *out = to_c(qdrive::from_bloch({r[0], r[1], r[2]})); });
}

qd_status qd_to_bloch(const qd_density_matrix* rho, double r[3]) {
  QD_REQUIRE(rho);
  QD_REQUIRE(r);
  return guarded([&] {
    const auto v = qdrive::to_bloch(to_cpp(*rho));
    r[0] = v[0];
    r[1] = v[1];
    r[2] = v[2];
  });
}

qd_status qd_measure(const qd_density_matrix* rho, const qd_pure_state* first,
                     const qd_pure_state* second, double probs[2]) {
  QD_REQUIRE(rho);
  QD_REQUIRE(first);
  QD_REQUIRE(second);
  QD_REQUIRE(probs);
  return guarded([&] {
    const auto out = qdrive::measure(
        to_cpp(*rho), qdrive::OrthonormalBasis(to_cpp(*first), to_cpp(*second)));
    probs[0] = out[0].probability;
    probs[1] = out[1].probability;
  });
}

qd_status qd_mub_success(double q0, double c, uint32_t rounds, double* out) {
  QD_REQUIRE(out);
  return guarded(
      [&] { *out = qdrive::mub_success_probability({q0, c, rounds}); });
}

qd_status qd_dm_success(double q0, double qt, uint32_t rounds, double* out) {
  QD_REQUIRE(out);
  return guarded(
      [&] { *out = qdrive::dm_success_probability({q0, qt, rounds}); });
}

qd_status qd_two_step_success(double p1, double p2, double* out) {
  QD_REQUIRE(out);
  return guarded([&] { *out = qdrive::two_step_success(p1, p2); });
}

qd_status qd_crossover_threshold(uint32_t rounds, double* out) {
  QD_REQUIRE(out);
  return guarded([&] { *out = qdrive::crossover_threshold(rounds); });
}

void qd_series_options_default(qd_series_options* opts) {
  if (!opts) return;
  const qdrive::SeriesOptions d;
  opts->tolerance = d.tolerance;
  opts->term_cap = d.term_cap;
}

qd_status qd_laguerre(uint32_t n, double x, double* out) {
  QD_REQUIRE(out);
  return guarded([&] { *out = qdrive::laguerre(n, x); });
}

qd_status qd_mean_occupation(double ratio, double* out) {
  QD_REQUIRE(out);
  return guarded([&] {
    *out = qdrive::ThermalEnvironment::from_energy_ratio(ratio)
               .mean_occupation();
  });
}

qd_status qd_dephasing_factor(double mean_n, double gt, double* out) {
  QD_REQUIRE(out);
  return guarded(
      [&] { *out = qdrive::dephasing_factor(dephasing_model(mean_n), gt); });
}

qd_status qd_dephasing_factor_series(double mean_n, double gt,
                                     const qd_series_options* opts,
                                     double* out, uint64_t* terms) {
  QD_REQUIRE(out);
  return guarded(
      [&] {
        const auto r = qdrive::dephasing_factor_series(dephasing_model(mean_n),
                                                       gt, to_cpp(opts));
        *out = r.value;
        if (terms) *terms = r.terms;
      },
      out);
}

qd_status qd_dephasing_diagonal(double mean_n, double gt, double w,
                                double* out) {
  QD_REQUIRE(out);
  return guarded([&] {
    *out = qdrive::dephasing_diagonal(dephasing_model(mean_n), gt, w);
  });
}

qd_status qd_dephasing_channel(const qd_density_matrix* rho, double mean_n,
                               double gt, qd_density_matrix* out) {
  QD_REQUIRE(rho);
  QD_REQUIRE(out);
  return guarded([&] {
    *out = to_c(
        qdrive::dephasing_channel(to_cpp(*rho), dephasing_model(mean_n), gt));
  });
}

qd_status qd_dephasing_limits(double w, double gt, double* low_t,
                              double* high_t) {
  QD_REQUIRE(low_t);
  QD_REQUIRE(high_t);
  return guarded([&] {
    const auto l = qdrive::dephasing_limits(w, gt);
    *low_t = l.low_temperature;
    *high_t = l.high_temperature;
  });
}

qd_status qd_jc_diagonal(double mean_n, double gt, double w,
                         const qd_series_options* opts, double* out) {
  QD_REQUIRE(out);
  return guarded(
      [&] { *out = qdrive::jc_diagonal(jc_model(mean_n), gt, w, to_cpp(opts)); },
      out);
}

qd_status qd_classify_region(double value, qd_region* out) {
  QD_REQUIRE(out);
  return guarded([&] {
    switch (qdrive::classify_region(value)) {
      case qdrive::RegionClass::White:
        *out = QD_REGION_WHITE;
        break;
      case qdrive::RegionClass::Grey:
        *out = QD_REGION_GREY;
        break;
      case qdrive::RegionClass::Black:
        *out = QD_REGION_BLACK;
        break;
    }
  });
}

const char* qd_region_name(qd_region region) {
  switch (region) {
    case QD_REGION_WHITE: return "white";
    case QD_REGION_GREY: return "grey";
    case QD_REGION_BLACK: return "black";
  }
  return "?";
}

qd_status qd_program_mub(double q0, double c, uint32_t rounds,
                         qd_program** out) {
  QD_REQUIRE(out);
  return guarded([&] {
    *out = new qd_program{qdrive::ProtocolProgram::mub(q0, c, rounds)};
  });
}

qd_status qd_program_dm(double q0, const double* qt, size_t count,
                        qd_program** out) {
  QD_REQUIRE(out);
  if (count > 0) QD_REQUIRE(qt);
  return guarded([&] {
    std::vector<double> list(qt, qt + count);
    *out = new qd_program{qdrive::ProtocolProgram::dm(q0, std::move(list))};
  });
}

qd_status qd_program_from_dephasing(double mean_n, double gt, double w,
                                    double q0, uint32_t rounds,
                                    qd_program** out) {
  QD_REQUIRE(out);
  return guarded([&] {
    *out = new qd_program{qdrive::dm_program_from_model(
        dephasing_model(mean_n), gt, w, q0, rounds)};
  });
}

qd_status qd_program_from_jc(double mean_n, double gt, double w, double q0,
                             uint32_t rounds, const qd_series_options* opts,
                             qd_program** out) {
  QD_REQUIRE(out);
  return guarded([&] {
    *out = new qd_program{qdrive::dm_program_from_model(
        jc_model(mean_n), gt, w, q0, rounds, to_cpp(opts))};
  });
}

void qd_program_free(qd_program* program) { delete program; }

qd_status qd_program_enumerate(const qd_program* program, double* out) {
  QD_REQUIRE(program);
  QD_REQUIRE(out);
  return guarded([&] { *out = qdrive::enumerate_outcomes(program->program); });
}

qd_status qd_program_simulate(const qd_program* program, uint64_t trials,
                              uint64_t seed, unsigned threads,
                              qd_mc_estimate* out) {
  QD_REQUIRE(program);
  QD_REQUIRE(out);
  return guarded([&] {
    *out = to_c(
        qdrive::simulate_mc({program->program, trials, seed}, threads));
  });
}

qd_status qd_mc_dephasing_density(const qd_density_matrix* rho0,
                                  const qd_pure_state* target, double mean_n,
                                  double gt, uint32_t rounds, uint64_t trials,
                                  uint64_t seed, unsigned threads,
                                  qd_mc_estimate* out) {
  QD_REQUIRE(rho0);
  QD_REQUIRE(target);
  QD_REQUIRE(out);
  return guarded([&] {
    *out = to_c(qdrive::simulate_mc_dephasing_density(
        to_cpp(*rho0), to_cpp(*target), dephasing_model(mean_n), gt, rounds,
        trials, seed, threads));
  });
}

void qd_fig1_params_default(qd_fig1_params* p) {
  if (!p) return;
  const qdrive::Fig1Params d;
  *p = {d.q0, kDefaultFig1Qt, 2, d.max_rounds, d.mc_trials, d.seed, d.threads};
}

void qd_fig2_params_default(qd_fig2_params* p) {
  if (!p) return;
  const qdrive::Fig2Params d;
  p->mean_occupations = kDefaultFig2MeanN;
  p->count = 2;
  p->gt = {d.gt.min, d.gt.max, d.gt.points};
  p->w = {d.w.min, d.w.max, d.w.points};
  qd_series_options_default(&p->series);
  p->threads = d.threads;
}

void qd_fig3_params_default(qd_fig3_params* p) {
  if (!p) return;
  const qdrive::Fig3Params d;
  p->w_values = kDefaultFig3W;
  p->count = 3;
  p->gt = {d.gt.min, d.gt.max, d.gt.points};
  p->mean_n = {d.mean_n.min, d.mean_n.max, d.mean_n.points};
  qd_series_options_default(&p->series);
  p->threads = d.threads;
}

qd_status qd_fig1(const qd_fig1_params* p, qd_table** out) {
  QD_REQUIRE(p);
  QD_REQUIRE(out);
  if (p->qt_count > 0) QD_REQUIRE(p->qt);
  return guarded([&] {
    qdrive::Fig1Params params;
    params.q0 = p->q0;
    params.qt.assign(p->qt, p->qt + p->qt_count);
    params.max_rounds = p->max_rounds;
    params.mc_trials = p->mc_trials;
    params.seed = p->seed;
    params.threads = p->threads;
    emit_table(qdrive::fig1_table(params), out);
  });
}

qd_status qd_fig2(const qd_fig2_params* p, qd_table** out) {
  QD_REQUIRE(p);
  QD_REQUIRE(out);
  if (p->count > 0) QD_REQUIRE(p->mean_occupations);
  return guarded([&] {
    qdrive::Fig2Params params;
    params.mean_occupations.assign(p->mean_occupations,
                                   p->mean_occupations + p->count);
    params.gt = to_cpp(p->gt, "gt");
    params.w = to_cpp(p->w, "w");
    params.series = to_cpp(&p->series);
    params.threads = p->threads;
    emit_table(qdrive::fig2_table(params), out);
  });
}

qd_status qd_fig3(const qd_fig3_params* p, qd_table** out) {
  QD_REQUIRE(p);
  QD_REQUIRE(out);
  if (p->count > 0) QD_REQUIRE(p->w_values);
  return guarded([&] {
    qdrive::Fig3Params params;
    params.w_values.assign(p->w_values, p->w_values + p->count);
    params.gt = to_cpp(p->gt, "gt");
    params.mean_n = to_cpp(p->mean_n, "mean_n");
    params.series = to_cpp(&p->series);
    params.threads = p->threads;
    emit_table(qdrive::fig3_table(params), out);
  });
}

qd_status qd_protocol_table(double q0, double qt, uint32_t max_rounds,
                            int equal_measurements, qd_table** out) {
  QD_REQUIRE(out);
  return guarded([&] {
    qdrive::ProtocolReportParams params;
    params.q0 = q0;
    params.qt = qt;
    params.max_rounds = max_rounds;
    params.mode = equal_measurements
                      ? qdrive::ComparisonMode::EqualMeasurements
                      : qdrive::ComparisonMode::EqualRounds;
    emit_table(qdrive::protocol_table(params), out);
  });
}

qd_status qd_mc_table(const qd_program* program, uint64_t trials,
                      uint64_t seed, unsigned threads, double sigmas,
                      qd_table** out, int* passed) {
  QD_REQUIRE(program);
  QD_REQUIRE(out);
  QD_REQUIRE(passed);
  return guarded([&] {
    auto report =
        qdrive::mc_report({program->program, trials, seed}, threads, sigmas);
    *passed = report.passed ? 1 : 0;
    emit_table(std::move(report.table), out);
  });
}

qd_status qd_sweep_spec_parse(const char* text, qd_sweep_spec** out) {
  QD_REQUIRE(text);
  QD_REQUIRE(out);
  return guarded(
      [&] { *out = new qd_sweep_spec{qdrive::parse_sweep_spec(text)}; });
}

void qd_sweep_spec_free(qd_sweep_spec* spec) { delete spec; }

const char* qd_sweep_spec_out(const qd_sweep_spec* spec) {
  return spec ? spec->spec.out.c_str() : "";
}

qd_format qd_sweep_spec_format(const qd_sweep_spec* spec) {
  return spec && spec->spec.format == qdrive::TableFormat::Json
             ? QD_FORMAT_JSON
             : QD_FORMAT_CSV;
}

qd_status qd_sweep_run(const qd_sweep_spec* spec, const qd_series_options* opts,
                       unsigned threads, qd_table** out) {
  QD_REQUIRE(spec);
  QD_REQUIRE(out);
  return guarded([&] {
    qdrive::SweepSpec s = spec->spec;
    if (opts) s.series = to_cpp(opts);
    emit_table(qdrive::run_sweep(s, threads), out);
  });
}

size_t qd_sweep_function_count(void) {
  return qdrive::sweep_functions().size();
}

const char* qd_sweep_function_name(size_t index) {
  const auto& fns = qdrive::sweep_functions();
  return index < fns.size() ? fns[index].name.c_str() : nullptr;
}

qd_status qd_table_parse_csv(const char* text, qd_table** out) {
  QD_REQUIRE(text);
  QD_REQUIRE(out);
  return guarded([&] { emit_table(qdrive::parse_csv(text), out); });
}

void qd_table_free(qd_table* table) { delete table; }

size_t qd_table_column_count(const qd_table* table) {
  return table ? table->table.columns().size() : 0;
}

const char* qd_table_column_name(const qd_table* table, size_t col) {
  if (!table || col >= table->table.columns().size()) return nullptr;
  return table->table.columns()[col].c_str();
}

size_t qd_table_row_count(const qd_table* table) {
  return table ? table->table.row_count() : 0;
}

int qd_table_cell_is_number(const qd_table* table, size_t row, size_t col) {
  const auto* cell = cell_at(table, row, col);
  return cell && std::holds_alternative<double>(*cell) ? 1 : 0;
}

qd_status qd_table_number(const qd_table* table, size_t row, size_t col,
                          double* out) {
  QD_REQUIRE(table);
  QD_REQUIRE(out);
  const auto* cell = cell_at(table, row, col);
  if (!cell) return fail(QD_ERR_DOMAIN, "cell index out of range");
  const auto* d = std::get_if<double>(cell);
  if (!d) return fail(QD_ERR_DOMAIN, "cell is not numeric");
  *out = *d;
  return QD_OK;
}

const char* qd_table_text(const qd_table* table, size_t row, size_t col) {
  const auto* cell = cell_at(table, row, col);
  if (!cell) return nullptr;
  const auto* s = std::get_if<std::string>(cell);
  return s ? s->c_str() : nullptr;
}

size_t qd_table_failed_cells(const qd_table* table) {
  return table ? table->table.failed_cells() : 0;
}

size_t qd_table_summary_count(const qd_table* table) {
  return table ? table->table.summary().size() : 0;
}

qd_status qd_table_summary_entry(const qd_table* table, size_t index,
                                 const char** key, double* value) {
  QD_REQUIRE(table);
  QD_REQUIRE(key);
  QD_REQUIRE(value);
  const auto& summary = table->table.summary();
  if (index >= summary.size()) {
    return fail(QD_ERR_DOMAIN, "summary index out of range");
  }
  *key = summary[index].key.c_str();
  *value = summary[index].value;
  return QD_OK;
}

qd_status qd_table_format(const qd_table* table, qd_format format,
                          int exact_floats, char* buffer, size_t capacity,
                          size_t* needed) {
  QD_REQUIRE(table);
  QD_REQUIRE(needed);
  if (capacity > 0) QD_REQUIRE(buffer);
  return guarded([&] {
    const std::string text = qdrive::format_table(
        table->table, to_cpp(format), exact_floats != 0);
    *needed = text.size();
    if (capacity > 0) {
      const size_t n = std::min(capacity - 1, text.size());
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
    }
  });
}

qd_status qd_table_write(const qd_table* table, const char* path,
                         qd_format format, int exact_floats) {
  QD_REQUIRE(table);
  QD_REQUIRE(path);
  return guarded([&] {
    qdrive::write_text_file(path, qdrive::format_table(table->table,
                                                       to_cpp(format),
                                                       exact_floats != 0));
  });
}

}  // extern "C"
