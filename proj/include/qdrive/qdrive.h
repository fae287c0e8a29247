/* C interface to the qdrive measurement-driven qubit toolkit.
 *
 * Every function returns a qd_status. On failure a description is available
 * from qd_last_error() on the calling thread until the next call that fails.
 * Objects behind opaque handles are owned by the caller once returned and
 * must be released with the matching *_free function. */
#ifndef QDRIVE_QDRIVE_H
#define QDRIVE_QDRIVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QDRIVE_BUILDING)
#    define QD_API __declspec(dllexport)
#  else
#    define QD_API __declspec(dllimport)
#  endif
#else
#  define QD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qd_status {
  QD_OK = 0,
  QD_ERR_VALIDATION = 1,       /* malformed state, matrix or probability */
  QD_ERR_DOMAIN = 2,           /* argument outside the operation's domain */
  QD_ERR_NUMERICAL = 3,        /* series hit its term cap */
  QD_ERR_RESOURCE = 4,         /* enumeration guard exceeded */
  QD_ERR_IO = 5,
  QD_ERR_USAGE = 6,            /* malformed sweep spec or parameters */
  QD_ERR_UNKNOWN_FUNCTION = 7, /* sweep names a function that does not exist */
  QD_ERR_NULL_ARGUMENT = 8,
  QD_ERR_INTERNAL = 9
} qd_status;

QD_API const char* qd_version(void);
QD_API const char* qd_status_name(qd_status status);
QD_API const char* qd_last_error(void);

/* ---- qubit algebra ------------------------------------------------------ */

typedef struct qd_complex {
  double re;
  double im;
} qd_complex;

/* amp[0] |0> + amp[1] |1>; must be normalized within 1e-12. */
typedef struct qd_pure_state {
  qd_complex amp[2];
} qd_pure_state;

/* Row-major 2x2 entries. */
typedef struct qd_density_matrix {
  qd_complex m[4];
} qd_density_matrix;

QD_API qd_status qd_overlap(const qd_pure_state* a, const qd_pure_state* b,
                            qd_complex* out);
QD_API qd_status qd_expectation(const qd_pure_state* psi,
                                const qd_density_matrix* rho, double* out);
QD_API qd_status qd_projector(const qd_pure_state* psi, qd_density_matrix* out);
QD_API qd_status qd_orthogonal_complement(const qd_pure_state* psi,
                                          qd_pure_state* out);
QD_API qd_status qd_from_bloch(const double r[3], qd_density_matrix* out);
QD_API qd_status qd_to_bloch(const qd_density_matrix* rho, double r[3]);
/* Outcome probabilities of measuring rho in {first, second}. */
QD_API qd_status qd_measure(const qd_density_matrix* rho,
                            const qd_pure_state* first,
                            const qd_pure_state* second, double probs[2]);

/* ---- success-probability laws ------------------------------------------- */

QD_API qd_status qd_mub_success(double q0, double c, uint32_t rounds,
                                double* out);
QD_API qd_status qd_dm_success(double q0, double qt, uint32_t rounds,
                               double* out);
QD_API qd_status qd_two_step_success(double p1, double p2, double* out);
QD_API qd_status qd_crossover_threshold(uint32_t rounds, double* out);

/* ---- decoherence models (time enters only through gt) ------------------- */

typedef struct qd_series_options {
  double tolerance;  /* 0 selects the series default */
  uint64_t term_cap;
} qd_series_options;

typedef enum qd_region {
  QD_REGION_WHITE = 0,
  QD_REGION_GREY = 1,
  QD_REGION_BLACK = 2
} qd_region;

QD_API void qd_series_options_default(qd_series_options* opts);
QD_API qd_status qd_laguerre(uint32_t n, double x, double* out);
QD_API qd_status qd_mean_occupation(double hbar_omega_over_kt, double* out);
QD_API qd_status qd_dephasing_factor(double mean_n, double gt, double* out);
/* On QD_ERR_NUMERICAL *out holds the partial sum. terms may be NULL. */
QD_API qd_status qd_dephasing_factor_series(double mean_n, double gt,
                                            const qd_series_options* opts,
                                            double* out, uint64_t* terms);
QD_API qd_status qd_dephasing_diagonal(double mean_n, double gt, double w,
                                       double* out);
QD_API qd_status qd_dephasing_channel(const qd_density_matrix* rho,
                                      double mean_n, double gt,
                                      qd_density_matrix* out);
QD_API qd_status qd_dephasing_limits(double w, double gt, double* low_t,
                                     double* high_t);
/* opts may be NULL. On QD_ERR_NUMERICAL *out holds the partial sum. */
QD_API qd_status qd_jc_diagonal(double mean_n, double gt, double w,
                                const qd_series_options* opts, double* out);
QD_API qd_status qd_classify_region(double value, qd_region* out);
QD_API const char* qd_region_name(qd_region region);

/* ---- protocol programs and trajectory engines --------------------------- */

typedef struct qd_program qd_program;

typedef struct qd_mc_estimate {
  double estimate;
  double standard_error;
  uint64_t successes;
  uint64_t trials;
  uint64_t seed;
} qd_mc_estimate;

QD_API qd_status qd_program_mub(double q0, double c, uint32_t rounds,
                                qd_program** out);
/* qt holds count = N - 1 per-interval failure probabilities. */
QD_API qd_status qd_program_dm(double q0, const double* qt, size_t count,
                               qd_program** out);
QD_API qd_status qd_program_from_dephasing(double mean_n, double gt, double w,
                                           double q0, uint32_t rounds,
                                           qd_program** out);
QD_API qd_status qd_program_from_jc(double mean_n, double gt, double w,
                                    double q0, uint32_t rounds,
                                    const qd_series_options* opts,
                                    qd_program** out);
QD_API void qd_program_free(qd_program* program);

QD_API qd_status qd_program_enumerate(const qd_program* program, double* out);
QD_API qd_status qd_program_simulate(const qd_program* program,
                                     uint64_t trials, uint64_t seed,
                                     unsigned threads, qd_mc_estimate* out);
/* Density-matrix-level Monte Carlo through the dephasing channel. */
QD_API qd_status qd_mc_dephasing_density(const qd_density_matrix* rho0,
                                         const qd_pure_state* target,
                                         double mean_n, double gt,
                                         uint32_t rounds, uint64_t trials,
                                         uint64_t seed, unsigned threads,
                                         qd_mc_estimate* out);

/* ---- tables -------------------------------------------------------------- */

typedef struct qd_table qd_table;

typedef enum qd_format { QD_FORMAT_CSV = 0, QD_FORMAT_JSON = 1 } qd_format;

typedef struct qd_axis {
  double min;
  double max;
  uint32_t points;
} qd_axis;

typedef struct qd_fig1_params {
  double q0;
  const double* qt;
  size_t qt_count;
  uint32_t max_rounds;
  uint64_t mc_trials; /* 0 disables the Monte Carlo columns */
  uint64_t seed;
  unsigned threads;
} qd_fig1_params;

typedef struct qd_fig2_params {
  const double* mean_occupations;
  size_t count;
  qd_axis gt;
  qd_axis w;
  qd_series_options series;
  unsigned threads;
} qd_fig2_params;

typedef struct qd_fig3_params {
  const double* w_values;
  size_t count;
  qd_axis gt;
  qd_axis mean_n;
  qd_series_options series;
  unsigned threads;
} qd_fig3_params;

/* Defaults point at static arrays owned by the library. */
QD_API void qd_fig1_params_default(qd_fig1_params* p);
QD_API void qd_fig2_params_default(qd_fig2_params* p);
QD_API void qd_fig3_params_default(qd_fig3_params* p);

QD_API qd_status qd_fig1(const qd_fig1_params* p, qd_table** out);
/* A table is returned even when some cells fail; check
 * qd_table_failed_cells. */
QD_API qd_status qd_fig2(const qd_fig2_params* p, qd_table** out);
QD_API qd_status qd_fig3(const qd_fig3_params* p, qd_table** out);
QD_API qd_status qd_protocol_table(double q0, double qt, uint32_t max_rounds,
                                   int equal_measurements, qd_table** out);
/* *passed is 1 when the estimate lies within `sigmas` standard errors of
 * the enumerated probability. */
QD_API qd_status qd_mc_table(const qd_program* program, uint64_t trials,
                             uint64_t seed, unsigned threads, double sigmas,
                             qd_table** out, int* passed);

typedef struct qd_sweep_spec qd_sweep_spec;
QD_API qd_status qd_sweep_spec_parse(const char* text, qd_sweep_spec** out);
QD_API void qd_sweep_spec_free(qd_sweep_spec* spec);
/* Empty string when the spec names no output path. */
QD_API const char* qd_sweep_spec_out(const qd_sweep_spec* spec);
QD_API qd_format qd_sweep_spec_format(const qd_sweep_spec* spec);
/* opts overrides the spec's series settings when non-NULL. */
QD_API qd_status qd_sweep_run(const qd_sweep_spec* spec,
                              const qd_series_options* opts, unsigned threads,
                              qd_table** out);
QD_API size_t qd_sweep_function_count(void);
QD_API const char* qd_sweep_function_name(size_t index);

QD_API qd_status qd_table_parse_csv(const char* text, qd_table** out);
QD_API void qd_table_free(qd_table* table);
QD_API size_t qd_table_column_count(const qd_table* table);
QD_API const char* qd_table_column_name(const qd_table* table, size_t col);
QD_API size_t qd_table_row_count(const qd_table* table);
QD_API int qd_table_cell_is_number(const qd_table* table, size_t row,
                                   size_t col);
QD_API qd_status qd_table_number(const qd_table* table, size_t row, size_t col,
                                 double* out);
/* NULL for numeric or out-of-range cells. */
QD_API const char* qd_table_text(const qd_table* table, size_t row,
                                 size_t col);
QD_API size_t qd_table_failed_cells(const qd_table* table);
QD_API size_t qd_table_summary_count(const qd_table* table);
QD_API qd_status qd_table_summary_entry(const qd_table* table, size_t index,
                                        const char** key, double* value);
/* snprintf-style: writes at most capacity bytes including the terminator
 * and stores the full length (without terminator) in *needed. buffer may
 * be NULL when capacity is 0. */
QD_API qd_status qd_table_format(const qd_table* table, qd_format format,
                                 int exact_floats, char* buffer,
                                 size_t capacity, size_t* needed);
QD_API qd_status qd_table_write(const qd_table* table, const char* path,
                                qd_format format, int exact_floats);

#ifdef __cplusplus
}
#endif

#endif /* QDRIVE_QDRIVE_H */
