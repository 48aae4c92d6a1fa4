#include "quditdecay/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "quditdecay/detail/rng.hpp"
#include "quditdecay/errors.hpp"
#include "quditdecay/version.hpp"

namespace qd {

namespace {

std::string provenance_string() {
  std::ostringstream os;
  os << "quditdecay " << kVersion << "; scan_step=" << kRootScanStep
     << " bisect_tol=" << kRootBisectTol
     << " oracle_bisect_tol=" << kOracleBisectTol
     << " oracle_zero_threshold=" << kOracleZeroThreshold
     << " verify_tol=" << kVerifyTol << " (" << kVerifyTolLargeDim
     << " above dim " << kVerifyLargeDim << ")";
  return os.str();
}

const char* kind_name(ChannelKind kind) {
  return kind == ChannelKind::Depolarizing ? "depolarizing" : "phase-damping";
}

const char* method_name(SolveMethod m) {
  return m == SolveMethod::ClosedForm ? "closed-form" : "bisection";
}

std::string warning_text(const CriticalProbability& c) {
  return c.multiplicity_warning
             ? "multiple sign changes in the bracket scan"
             : "";
}

// grid order contract: ascending, duplicates collapsed
std::vector<int> sorted_unique(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

GhzState state_for(const SweepRequest& req, int d, int N) {
  if (req.policy == AmplitudePolicy::Explicit) {
    auto it = req.explicit_alphas.find(d);
    if (it == req.explicit_alphas.end()) {
      throw_invalid("no explicit amplitudes supplied for d = " +
                    std::to_string(d));
    }
    return GhzState(d, N, it->second);
  }
  return GhzState::equal(d, N);
}

void require_even(int N, const char* what) {
  if (N % 2 != 0) {
    throw_unsupported(std::string(what) + " needs even N, got N = " +
                      std::to_string(N));
  }
}

std::vector<double> default_p_grid() {
  std::vector<double> grid(11);
  for (int k = 0; k <= 10; ++k) grid[k] = k / 10.0;
  return grid;
}

}  // namespace

SweepTable run_sweep(const SweepRequest& req) {
  if (req.d_values.empty() || req.N_values.empty()) {
    throw_invalid("sweep needs nonempty d and N value lists");
  }
  const bool curve = req.quantity == Quantity::NegativityCurve;
  if (req.quantity == Quantity::PEpsilon &&
      !(req.epsilon > 0.0 && req.epsilon < 1.0)) {
    throw_invalid("epsilon must lie in (0,1), got " +
                  std::to_string(req.epsilon));
  }
  if (curve && req.p_grid.empty()) {
    throw_invalid("a negativity curve sweep needs a p grid");
  }
  for (double p : req.p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw_invalid("p grid values must lie in [0,1], got " +
                    std::to_string(p));
    }
  }

  SweepTable table;
  table.provenance = provenance_string();
  if (curve) {
    table.columns = {"d", "N", "p", "n", "value", "method", "warning"};
  } else {
    table.columns = {"d", "N", "value", "method", "warning"};
  }

  for (int d : sorted_unique(req.d_values)) {
    for (int N : sorted_unique(req.N_values)) {
      auto emit_error = [&](const std::string& msg) {
        std::vector<Cell> row{Cell::number(d), Cell::number(N)};
        if (curve) {
          row.push_back(Cell::empty());
          row.push_back(Cell::empty());
        }
        row.push_back(Cell::empty());
        row.push_back(Cell::empty());
        row.push_back(Cell::textv(msg));
        table.rows.push_back(std::move(row));
      };

      try {
        const GhzState state = state_for(req, d, N);
        if (curve) {
          const int n = req.curve_n == 0 ? N / 2 : req.curve_n;
          for (double p : req.p_grid) {
            const auto report = negativity(state, req.kind, p, n);
            table.rows.push_back({Cell::number(d), Cell::number(N),
                                  Cell::number(p), Cell::number(n),
                                  Cell::number(report.value(n)),
                                  Cell::textv("closed-form"),
                                  Cell::textv("")});
          }
          continue;
        }

        CriticalProbability crit;
        switch (req.quantity) {
          case Quantity::PBalanced:
            require_even(N, "the balanced vanishing point");
            crit = critical_p_balanced_closed_form(state);
            break;
          case Quantity::PLeastBalanced:
            crit = critical_p_partition(state, req.kind, 1);
            break;
          case Quantity::PEpsilon:
            require_even(N, "the balanced epsilon threshold");
            crit = epsilon_threshold(state, req.kind, N / 2, req.epsilon);
            break;
          case Quantity::NegativityCurve:
            break;  // handled above
        }
        if (!crit.value) {
          emit_error("product state: no contributing pair");
          continue;
        }
        table.rows.push_back({Cell::number(d), Cell::number(N),
                              Cell::number(*crit.value),
                              Cell::textv(method_name(crit.method)),
                              Cell::textv(warning_text(crit))});
      } catch (const Error& e) {
        emit_error(e.what());
      }
    }
  }
  return table;
}

VerifyReport verify(const VerifyRequest& req) {
  VerifyReport report;
  report.table.provenance = provenance_string();
  report.table.columns = {"d",   "N",       "channel", "vector", "max_dev",
                          "tol", "seconds", "status",  "note"};

  const std::vector<double> p_grid =
      req.p_grid.empty() ? default_p_grid() : req.p_grid;

  for (int d : req.d_values) {
    for (int N : req.N_values) {
      std::vector<std::pair<std::string, GhzState>> instances;
      instances.emplace_back("equal", GhzState::equal(d, N));
      for (int k = 1; k <= req.random_vectors; ++k) {
        detail::SplitMix64 rng(detail::mix_seed(
            req.seed, static_cast<std::uint64_t>(d),
            static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(k)));
        instances.emplace_back("rand" + std::to_string(k),
                               GhzState(d, N, detail::random_alphas(rng, d)));
      }

      std::vector<int> n_values = req.n_values;
      if (n_values.empty()) {
        for (int n = 1; n <= N - 1; ++n) n_values.push_back(n);
      }

      for (ChannelKind kind : req.kinds) {
        for (const auto& [label, state] : instances) {
          std::vector<Cell> row{Cell::number(d), Cell::number(N),
                                Cell::textv(kind_name(kind)),
                                Cell::textv(label)};
          const long long dim = dense_dim(d, N, req.dense_cap);
          if (dim > req.dense_cap) {
            row.insert(row.end(),
                       {Cell::empty(), Cell::empty(), Cell::empty(),
                        Cell::textv("skipped"),
                        Cell::textv("dense dimension d^N exceeds cap " +
                                    std::to_string(req.dense_cap))});
            report.table.rows.push_back(std::move(row));
            continue;
          }
          const double tol =
              dim > kVerifyLargeDim ? kVerifyTolLargeDim : kVerifyTol;

          const auto start = std::chrono::steady_clock::now();
          double max_dev = 0.0;
          for (double p : p_grid) {
            const ChannelModel ch(kind, p, d);
            const DensityMatrix rho = evolve(state, ch, req.dense_cap);
            const auto analytic = negativity(state, kind, p, 1);
            for (int n : n_values) {
              const auto pt = partial_transpose(rho, Bipartition(n).sites(N));
              const double exact = negativity_exact(pt);
              max_dev = std::max(max_dev,
                                 std::abs(exact - analytic.value(n)));
            }
          }
          const std::chrono::duration<double> elapsed =
              std::chrono::steady_clock::now() - start;

          const bool pass = max_dev <= tol;
          report.all_pass = report.all_pass && pass;
          report.max_deviation = std::max(report.max_deviation, max_dev);
          row.insert(row.end(),
                     {Cell::number(max_dev), Cell::number(tol),
                      Cell::number(elapsed.count()),
                      Cell::textv(pass ? "pass" : "fail"), Cell::textv("")});
          report.table.rows.push_back(std::move(row));
        }
      }
    }
  }
  return report;
}

SweepTable asymptote_report(const std::vector<int>& d_values,
                            const std::vector<int>& N_values, double epsilon) {
  if (d_values.empty() || N_values.empty()) {
    throw_invalid("asymptote report needs nonempty d and N value lists");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw_invalid("epsilon must lie in (0,1), got " + std::to_string(epsilon));
  }

  SweepTable table;
  table.provenance = provenance_string();
  table.columns = {"d",
                   "N",
                   "p_balanced",
                   "balanced_limit",
                   "balanced_abs_dev",
                   "p_epsilon",
                   "scaling_estimate",
                   "scaling_rel_dev",
                   "epsilon_d_limit",
                   "epsilon_d_abs_dev",
                   "warning"};

  for (int d : sorted_unique(d_values)) {
    for (int N : sorted_unique(N_values)) {
      try {
        require_even(N, "the asymptote report");
        const GhzState state = GhzState::equal(d, N);
        const auto balanced = critical_p_balanced_closed_form(state);
        const auto eps_thresh =
            epsilon_threshold(state, ChannelKind::Depolarizing, N / 2,
                              epsilon);
        const double limit_n = asymptote_balanced(d);
        const double estimate = epsilon_scaling_estimate(N, epsilon);
        const double limit_d = 1.0 - std::pow(epsilon, 1.0 / N);
        const double p_bal = balanced.value.value();
        const double p_eps = eps_thresh.value.value();
        table.rows.push_back(
            {Cell::number(d), Cell::number(N), Cell::number(p_bal),
             Cell::number(limit_n), Cell::number(std::abs(p_bal - limit_n)),
             Cell::number(p_eps), Cell::number(estimate),
             Cell::number(std::abs(p_eps - estimate) / estimate),
             Cell::number(limit_d), Cell::number(std::abs(p_eps - limit_d)),
             Cell::textv("")});
      } catch (const Error& e) {
        table.rows.push_back({Cell::number(d), Cell::number(N), Cell::empty(),
                              Cell::empty(), Cell::empty(), Cell::empty(),
                              Cell::empty(), Cell::empty(), Cell::empty(),
                              Cell::empty(), Cell::textv(e.what())});
      }
    }
  }
  return table;
}

}  // namespace qd
