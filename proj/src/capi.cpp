#include "quditdecay.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "quditdecay/analytic.hpp"
#include "quditdecay/errors.hpp"
#include "quditdecay/ghz.hpp"
#include "quditdecay/oracle.hpp"
#include "quditdecay/sweep.hpp"
#include "quditdecay/version.hpp"

struct qd_state {
  qd::GhzState state;
};

struct qd_table {
  qd::SweepTable table;
};

namespace {

thread_local std::string g_last_error;

qd_status map_code(qd::ErrorCode code) {
  switch (code) {
    case qd::ErrorCode::InvalidArgument:
      return QD_ERR_INVALID_ARGUMENT;
    case qd::ErrorCode::Capacity:
      return QD_ERR_CAPACITY;
    case qd::ErrorCode::ProductState:
      return QD_ERR_PRODUCT_STATE;
    case qd::ErrorCode::Unsupported:
      return QD_ERR_UNSUPPORTED;
    case qd::ErrorCode::Internal:
      return QD_ERR_INTERNAL;
  }
  return QD_ERR_INTERNAL;
}

template <class F>
qd_status wrap(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return QD_OK;
  } catch (const qd::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QD_ERR_INTERNAL;
  }
}

qd_status fail(qd_status status, const char* msg) {
  g_last_error = msg;
  return status;
}

qd::ChannelKind to_kind(qd_channel channel) {
  switch (channel) {
    case QD_CHANNEL_DEPOLARIZING:
      return qd::ChannelKind::Depolarizing;
    case QD_CHANNEL_PHASE_DAMPING:
      return qd::ChannelKind::PhaseDamping;
    default:
      qd::throw_invalid("invalid channel kind for this operation");
  }
}

long long effective_cap(long long cap) {
  return cap <= 0 ? qd::kDefaultDenseCap : cap;
}

// Per-pair critical values, NAN for excluded pairs, lexicographic order.
void fill_pair_values(const qd::GhzState& state,
                      const qd::CriticalProbability& crit, double* out) {
  std::vector<double> class_values;
  class_values.reserve(crit.pair_values.size());
  for (const auto& pv : crit.pair_values) class_values.push_back(pv.value);
  const auto expanded = qd::expand_pair_values(
      state, class_values, std::numeric_limits<double>::quiet_NaN());
  std::copy(expanded.begin(), expanded.end(), out);
}

void store_critical(const qd_state* state, const qd::CriticalProbability& crit,
                    double* value, qd_method* method,
                    int* multiplicity_warning, double* pair_values) {
  if (!crit.value) {
    qd::throw_product_state(
        "product state: no level pair with nonzero amplitudes");
  }
  if (value) *value = *crit.value;
  if (method) {
    *method = crit.method == qd::SolveMethod::ClosedForm
                  ? QD_METHOD_CLOSED_FORM
                  : QD_METHOD_BISECTION;
  }
  if (multiplicity_warning) *multiplicity_warning = crit.multiplicity_warning;
  if (pair_values) fill_pair_values(state->state, crit, pair_values);
}

}  // namespace

extern "C" {

const char* qd_version(void) { return qd::kVersion; }

const char* qd_status_name(qd_status status) {
  switch (status) {
    case QD_OK:
      return "ok";
    case QD_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case QD_ERR_CAPACITY:
      return "capacity exceeded";
    case QD_ERR_PRODUCT_STATE:
      return "product state";
    case QD_ERR_UNSUPPORTED:
      return "unsupported";
    case QD_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* qd_last_error(void) { return g_last_error.c_str(); }

long long qd_default_dense_cap(void) { return qd::kDefaultDenseCap; }

qd_status qd_state_create(int d, int num_qudits, const double* re,
                          const double* im, qd_state** out) {
  if (!out) return fail(QD_ERR_INVALID_ARGUMENT, "null output pointer");
  if (!re) return fail(QD_ERR_INVALID_ARGUMENT, "null amplitude array");
  *out = nullptr;
  return wrap([&] {
    std::vector<qd::Cx> alphas(d > 0 ? d : 0);
    for (int k = 0; k < d; ++k) {
      alphas[k] = qd::Cx{re[k], im ? im[k] : 0.0};
    }
    *out = new qd_state{qd::GhzState(d, num_qudits, std::move(alphas))};
  });
}

qd_status qd_state_create_equal(int d, int num_qudits, qd_state** out) {
  if (!out) return fail(QD_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  return wrap([&] {
    *out = new qd_state{qd::GhzState::equal(d, num_qudits)};
  });
}

void qd_state_destroy(qd_state* state) { delete state; }

int qd_state_d(const qd_state* state) { return state ? state->state.d() : 0; }

int qd_state_qudits(const qd_state* state) {
  return state ? state->state.qudits() : 0;
}

int qd_state_is_product(const qd_state* state) {
  return state && state->state.is_product() ? 1 : 0;
}

int qd_state_nonzero_levels(const qd_state* state) {
  return state ? state->state.nonzero_levels() : 0;
}

long long qd_state_pair_count(const qd_state* state) {
  if (!state) return 0;
  const long long d = state->state.d();
  return d * (d - 1) / 2;
}

qd_status qd_negativity(const qd_state* state, qd_channel channel, double p,
                        int n, double* value, double* pair_contributions) {
  if (!state || !value) {
    return fail(QD_ERR_INVALID_ARGUMENT, "null state or output pointer");
  }
  return wrap([&] {
    const auto report = qd::negativity(state->state, to_kind(channel), p, n);
    *value = report.value(n);
    if (pair_contributions) {
      std::vector<double> class_values;
      class_values.reserve(report.contributions.size());
      for (const auto& c : report.contributions) {
        class_values.push_back(c.per_n[n - 1]);
      }
      const auto expanded =
          qd::expand_pair_values(state->state, class_values, 0.0);
      std::copy(expanded.begin(), expanded.end(), pair_contributions);
    }
  });
}

qd_status qd_critical_balanced(const qd_state* state, double* value,
                               qd_method* method, int* multiplicity_warning,
                               double* pair_values) {
  if (!state) return fail(QD_ERR_INVALID_ARGUMENT, "null state");
  return wrap([&] {
    const auto crit = qd::critical_p_balanced_closed_form(state->state);
    store_critical(state, crit, value, method, multiplicity_warning,
                   pair_values);
  });
}

qd_status qd_critical_partition(const qd_state* state, qd_channel channel,
                                int n, double* value, qd_method* method,
                                int* multiplicity_warning,
                                double* pair_values) {
  if (!state) return fail(QD_ERR_INVALID_ARGUMENT, "null state");
  return wrap([&] {
    const auto crit =
        qd::critical_p_partition(state->state, to_kind(channel), n);
    store_critical(state, crit, value, method, multiplicity_warning,
                   pair_values);
  });
}

qd_status qd_epsilon_threshold(const qd_state* state, qd_channel channel,
                               int n, double epsilon, double* value,
                               qd_method* method, int* multiplicity_warning,
                               double* pair_values) {
  if (!state) return fail(QD_ERR_INVALID_ARGUMENT, "null state");
  return wrap([&] {
    const auto crit =
        qd::epsilon_threshold(state->state, to_kind(channel), n, epsilon);
    store_critical(state, crit, value, method, multiplicity_warning,
                   pair_values);
  });
}

double qd_asymptote_balanced(int d) {
  if (d < 2) return std::nan("");
  return qd::asymptote_balanced(d);
}

double qd_epsilon_scaling_estimate(int num_qudits, double epsilon) {
  if (num_qudits < 2 || !(epsilon > 0.0 && epsilon <= 1.0)) {
    return std::nan("");
  }
  return qd::epsilon_scaling_estimate(num_qudits, epsilon);
}

qd_status qd_oracle_negativity(const qd_state* state, qd_channel channel,
                               double p, const int* sites, int n,
                               long long dense_cap, double* value) {
  if (!state || !value) {
    return fail(QD_ERR_INVALID_ARGUMENT, "null state or output pointer");
  }
  return wrap([&] {
    const qd::ChannelModel ch(to_kind(channel), p, state->state.d());
    const qd::Bipartition part =
        sites ? qd::Bipartition(std::vector<int>(sites, sites + n))
              : qd::Bipartition(n);
    *value = qd::oracle_negativity(state->state, ch, part,
                                   effective_cap(dense_cap));
  });
}

qd_status qd_oracle_critical_p(const qd_state* state, qd_channel channel,
                               int n, long long dense_cap, double* value) {
  if (!state || !value) {
    return fail(QD_ERR_INVALID_ARGUMENT, "null state or output pointer");
  }
  return wrap([&] {
    *value = qd::oracle_critical_p(state->state, to_kind(channel), n,
                                   effective_cap(dense_cap));
  });
}

void qd_table_destroy(qd_table* table) { delete table; }

size_t qd_table_rows(const qd_table* table) {
  return table ? table->table.rows.size() : 0;
}

size_t qd_table_cols(const qd_table* table) {
  return table ? table->table.columns.size() : 0;
}

const char* qd_table_column_name(const qd_table* table, size_t col) {
  if (!table || col >= table->table.columns.size()) return "";
  return table->table.columns[col].c_str();
}

int qd_table_cell_is_number(const qd_table* table, size_t row, size_t col) {
  if (!table || row >= table->table.rows.size() ||
      col >= table->table.rows[row].size()) {
    return 0;
  }
  return table->table.rows[row][col].type == qd::Cell::Type::Number;
}

double qd_table_cell_number(const qd_table* table, size_t row, size_t col) {
  if (!qd_table_cell_is_number(table, row, col)) return std::nan("");
  return table->table.rows[row][col].num;
}

const char* qd_table_cell_text(const qd_table* table, size_t row, size_t col) {
  if (!table || row >= table->table.rows.size() ||
      col >= table->table.rows[row].size()) {
    return "";
  }
  return table->table.rows[row][col].text.c_str();
}

const char* qd_table_provenance(const qd_table* table) {
  return table ? table->table.provenance.c_str() : "";
}

qd_status qd_sweep_run(const qd_sweep_request* request, qd_table** out) {
  if (!request || !out) {
    return fail(QD_ERR_INVALID_ARGUMENT, "null request or output pointer");
  }
  *out = nullptr;
  return wrap([&] {
    qd::SweepRequest req;
    req.d_values.assign(request->d_values, request->d_values + request->num_d);
    req.N_values.assign(request->N_values, request->N_values + request->num_N);
    req.kind = to_kind(request->channel);
    req.epsilon = request->epsilon;
    req.curve_n = request->curve_n;
    if (request->p_grid) {
      req.p_grid.assign(request->p_grid, request->p_grid + request->num_p);
    }
    switch (request->quantity) {
      case QD_QUANTITY_P_BALANCED:
        req.quantity = qd::Quantity::PBalanced;
        break;
      case QD_QUANTITY_P_LEAST_BALANCED:
        req.quantity = qd::Quantity::PLeastBalanced;
        break;
      case QD_QUANTITY_P_EPSILON:
        req.quantity = qd::Quantity::PEpsilon;
        break;
      case QD_QUANTITY_NEGATIVITY_CURVE:
        req.quantity = qd::Quantity::NegativityCurve;
        break;
      default:
        qd::throw_invalid("invalid sweep quantity");
    }
    if (request->alphas_re) {
      if (request->num_d != 1) {
        qd::throw_invalid(
            "explicit amplitudes require a single d value in the sweep");
      }
      const int d = req.d_values[0];
      if (request->num_alphas != static_cast<size_t>(d)) {
        qd::throw_invalid("expected " + std::to_string(d) + " amplitudes");
      }
      std::vector<qd::Cx> alphas(d);
      for (int k = 0; k < d; ++k) {
        alphas[k] = qd::Cx{request->alphas_re[k],
                           request->alphas_im ? request->alphas_im[k] : 0.0};
      }
      req.policy = qd::AmplitudePolicy::Explicit;
      req.explicit_alphas[d] = std::move(alphas);
    }
    *out = new qd_table{qd::run_sweep(req)};
  });
}

qd_status qd_verify_run(const qd_verify_options* options, qd_table** report,
                        int* all_pass) {
  if (!report) return fail(QD_ERR_INVALID_ARGUMENT, "null output pointer");
  *report = nullptr;
  return wrap([&] {
    qd::VerifyRequest req;
    if (options) {
      if (options->d_values) {
        req.d_values.assign(options->d_values,
                            options->d_values + options->num_d);
      }
      if (options->N_values) {
        req.N_values.assign(options->N_values,
                            options->N_values + options->num_N);
      }
      if (options->channel == QD_CHANNEL_DEPOLARIZING) {
        req.kinds = {qd::ChannelKind::Depolarizing};
      } else if (options->channel == QD_CHANNEL_PHASE_DAMPING) {
        req.kinds = {qd::ChannelKind::PhaseDamping};
      }
      if (options->p_grid) {
        req.p_grid.assign(options->p_grid, options->p_grid + options->num_p);
      }
      if (options->n_values) {
        req.n_values.assign(options->n_values,
                            options->n_values + options->num_n);
      }
      if (options->random_vectors >= 0) {
        req.random_vectors = options->random_vectors;
      }
      if (options->seed != 0) req.seed = options->seed;
      if (options->dense_cap > 0) req.dense_cap = options->dense_cap;
    }
    const qd::VerifyReport result = qd::verify(req);
    if (all_pass) *all_pass = result.all_pass ? 1 : 0;
    *report = new qd_table{result.table};
  });
}

qd_status qd_asymptote_report(const int* d_values, size_t num_d,
                              const int* N_values, size_t num_N,
                              double epsilon, qd_table** out) {
  if (!d_values || !N_values || !out) {
    return fail(QD_ERR_INVALID_ARGUMENT, "null input or output pointer");
  }
  *out = nullptr;
  return wrap([&] {
    *out = new qd_table{qd::asymptote_report(
        std::vector<int>(d_values, d_values + num_d),
        std::vector<int>(N_values, N_values + num_N), epsilon)};
  });
}

}  // extern "C"
