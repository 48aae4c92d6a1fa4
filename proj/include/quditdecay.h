/*
 * quditdecay C API
 *
 * Entanglement (negativity) decay of generalized N-qudit GHZ states under
 * independent per-qudit depolarizing or phase-damping noise: analytic
 * per-bipartition negativities, critical channel strengths, asymptotes, an
 * exact dense-matrix oracle, and batched sweep/verification tables.
 *
 * All functions returning qd_status are thread-safe; handles are immutable
 * after creation and may be shared across threads. On failure the returned
 * status identifies the error class and qd_last_error() carries a
 * per-thread diagnostic message.
 */

#ifndef QUDITDECAY_H
#define QUDITDECAY_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qd_status {
  QD_OK = 0,
  QD_ERR_INVALID_ARGUMENT = 1,
  QD_ERR_CAPACITY = 2,
  QD_ERR_PRODUCT_STATE = 3,
  QD_ERR_UNSUPPORTED = 4,
  QD_ERR_INTERNAL = 5
} qd_status;

typedef enum qd_channel {
  QD_CHANNEL_DEPOLARIZING = 0,
  QD_CHANNEL_PHASE_DAMPING = 1,
  QD_CHANNEL_BOTH = 2 /* verification requests only */
} qd_channel;

typedef enum qd_method {
  QD_METHOD_CLOSED_FORM = 0,
  QD_METHOD_BISECTION = 1
} qd_method;

typedef enum qd_quantity {
  QD_QUANTITY_P_BALANCED = 0,
  QD_QUANTITY_P_LEAST_BALANCED = 1,
  QD_QUANTITY_P_EPSILON = 2,
  QD_QUANTITY_NEGATIVITY_CURVE = 3
} qd_quantity;

/* Opaque GHZ state handle: dimension d, qudit count N, d amplitudes. */
typedef struct qd_state qd_state;

/* Opaque result table: named columns, rows of numeric or text cells. */
typedef struct qd_table qd_table;

const char* qd_version(void);
const char* qd_status_name(qd_status status);

/* Message for the most recent failure on the calling thread. */
const char* qd_last_error(void);

long long qd_default_dense_cap(void);

/* ---- states ---------------------------------------------------------- */

/* Amplitudes re[k] + i*im[k], k = 0..d-1; im may be NULL for real input.
 * The vector is normalized; it must not be all zero. */
qd_status qd_state_create(int d, int num_qudits, const double* re,
                          const double* im, qd_state** out);

/* alpha_k = 1/sqrt(d) for all k. */
qd_status qd_state_create_equal(int d, int num_qudits, qd_state** out);

void qd_state_destroy(qd_state* state);

int qd_state_d(const qd_state* state);
int qd_state_qudits(const qd_state* state);

/* 1 when at most one amplitude is nonzero (no entanglement anywhere). */
int qd_state_is_product(const qd_state* state);

/* Number of levels with a nonzero amplitude. */
int qd_state_nonzero_levels(const qd_state* state);

/* Number of level pairs i<j: d(d-1)/2. */
long long qd_state_pair_count(const qd_state* state);

/* ---- analytic negativity and critical strengths ---------------------- */

/* Negativity of the (N-n)|n bipartition. pair_contributions, when non-NULL,
 * receives the d(d-1)/2 per-pair contributions in lexicographic (i<j)
 * order. */
qd_status qd_negativity(const qd_state* state, qd_channel channel, double p,
                        int n, double* value, double* pair_contributions);

/* Vanishing point of the most balanced split, closed form (N even,
 * depolarizing). pair_values (optional) receives per-pair critical
 * strengths, NAN for pairs with a zero amplitude. */
qd_status qd_critical_balanced(const qd_state* state, double* value,
                               qd_method* method, int* multiplicity_warning,
                               double* pair_values);

/* Vanishing point of the (N-n)|n split; bisection for depolarizing,
 * exactly 1 for phase damping. */
qd_status qd_critical_partition(const qd_state* state, qd_channel channel,
                                int n, double* value, qd_method* method,
                                int* multiplicity_warning,
                                double* pair_values);

/* Strength at which the pair eigenvalue reaches a fraction epsilon of its
 * p=0 magnitude; closed form 1 - epsilon^(1/N) for phase damping. */
qd_status qd_epsilon_threshold(const qd_state* state, qd_channel channel,
                               int n, double epsilon, double* value,
                               qd_method* method, int* multiplicity_warning,
                               double* pair_values);

/* 2d/(2d+1+sqrt(5)); NAN for d < 2. */
double qd_asymptote_balanced(int d);

/* -ln(epsilon)/N; NAN outside the domain. */
double qd_epsilon_scaling_estimate(int num_qudits, double epsilon);

/* ---- dense oracle ----------------------------------------------------- */

/* Exact negativity via full density-matrix evolution, partial transpose of
 * `sites` (NULL -> sites 0..n-1) and eigendecomposition. dense_cap <= 0
 * selects the default cap. */
qd_status qd_oracle_negativity(const qd_state* state, qd_channel channel,
                               double p, const int* sites, int n,
                               long long dense_cap, double* value);

/* Smallest p with zero exact negativity for the (N-n)|n split. */
qd_status qd_oracle_critical_p(const qd_state* state, qd_channel channel,
                               int n, long long dense_cap, double* value);

/* ---- tables ----------------------------------------------------------- */

void qd_table_destroy(qd_table* table);
size_t qd_table_rows(const qd_table* table);
size_t qd_table_cols(const qd_table* table);
const char* qd_table_column_name(const qd_table* table, size_t col);
/* 1 = numeric cell, 0 = text or empty */
int qd_table_cell_is_number(const qd_table* table, size_t row, size_t col);
double qd_table_cell_number(const qd_table* table, size_t row, size_t col);
/* Text content; "" for numeric/empty cells. */
const char* qd_table_cell_text(const qd_table* table, size_t row, size_t col);
const char* qd_table_provenance(const qd_table* table);

/* ---- sweeps ------------------------------------------------------------ */

typedef struct qd_sweep_request {
  const int* d_values;
  size_t num_d;
  const int* N_values;
  size_t num_N;
  qd_channel channel;
  qd_quantity quantity;
  double epsilon;        /* QD_QUANTITY_P_EPSILON */
  const double* p_grid;  /* QD_QUANTITY_NEGATIVITY_CURVE */
  size_t num_p;
  int curve_n; /* 0 -> floor(N/2) */
  /* Explicit amplitudes (optional; requires num_d == 1). NULL -> equal. */
  const double* alphas_re;
  const double* alphas_im;
  size_t num_alphas;
} qd_sweep_request;

/* Columns for the critical-strength quantities: d, N, value, method,
 * warning; the negativity curve adds p and n. Per-point failures appear in
 * the warning column. */
qd_status qd_sweep_run(const qd_sweep_request* request, qd_table** out);

typedef struct qd_verify_options {
  const int* d_values; /* NULL -> {2, 3} */
  size_t num_d;
  const int* N_values; /* NULL -> {2, 3, 4} */
  size_t num_N;
  qd_channel channel;    /* QD_CHANNEL_BOTH for the default suite */
  const double* p_grid;  /* NULL -> {0, 0.1, ..., 1} */
  size_t num_p;
  const int* n_values; /* NULL -> all 1..N-1 */
  size_t num_n;
  int random_vectors;          /* < 0 -> 20 */
  unsigned long long seed;     /* 0 -> default */
  long long dense_cap;         /* <= 0 -> default */
} qd_verify_options;

/* Analytic-vs-oracle certification over a grid of instances. One row per
 * (d, N, channel, amplitude vector) with the max deviation and pass/fail;
 * all_pass is 1 iff every row passes its tolerance. options may be NULL for
 * the default suite. */
qd_status qd_verify_run(const qd_verify_options* options, qd_table** report,
                        int* all_pass);

/* Exact values against their asymptotes on a (d, N) grid, equal
 * amplitudes. */
qd_status qd_asymptote_report(const int* d_values, size_t num_d,
                              const int* N_values, size_t num_N,
                              double epsilon, qd_table** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QUDITDECAY_H */
