#include "quditdecay/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "quditdecay/errors.hpp"
#include "quditdecay/detail/rootfind.hpp"

namespace qd {

namespace {

void check_pair(const GhzState& state, int i, int j) {
  if (i < 0 || j < 0 || i >= state.d() || j >= state.d() || i >= j) {
    throw_invalid("level pair (" + std::to_string(i) + "," +
                  std::to_string(j) + ") must satisfy 0 <= i < j < d = " +
                  std::to_string(state.d()));
  }
}

void check_partition(const GhzState& state, int n) {
  if (n < 1 || n > state.qudits() - 1) {
    throw_invalid("partition size n = " + std::to_string(n) +
                  " must lie in [1, N-1] with N = " +
                  std::to_string(state.qudits()));
  }
}

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw_invalid("channel strength p must lie in [0,1], got " +
                  std::to_string(p));
  }
}

double lambda_from_magnitudes(double mi, double mj, int d, int qudits,
                              double p, int n) {
  const double a = p / d;
  const double b = 1.0 - (d - 1) * p / d;
  // Weight fed in from the other d-2 levels (all N sites scrambled). Zero
  // for d = 2 and for states supported on the pair alone; without it the
  // block spectrum is only approximate for d >= 3.
  const double residual =
      std::max(0.0, 1.0 - mi * mi - mj * mj) * std::pow(a, qudits);
  return mi * mi * std::pow(a, n) * std::pow(b, qudits - n) +
         mj * mj * std::pow(a, qudits - n) * std::pow(b, n) + residual;
}

// smaller eigenvalue of the 2x2 block, from amplitude magnitudes
double mu_from_magnitudes(ChannelKind kind, double mi, double mj, int d,
                          int qudits, double p, int n) {
  const double off = mi * mj * std::pow(1.0 - p, qudits);
  if (kind == ChannelKind::PhaseDamping) {
    return -off;
  }
  const double ln = lambda_from_magnitudes(mi, mj, d, qudits, p, n);
  const double lNn = lambda_from_magnitudes(mi, mj, d, qudits, p, qudits - n);
  const double xi = 0.5 * (ln + lNn);
  const double half_gap = 0.5 * (ln - lNn);
  // xi^2 - eta rewritten as a sum of squares; nonnegative by construction
  return xi - std::sqrt(half_gap * half_gap + off * off);
}

double eta_from_magnitudes(double mi, double mj, int d, int qudits, double p,
                           int n) {
  const double off = mi * mj * std::pow(1.0 - p, qudits);
  const double ln = lambda_from_magnitudes(mi, mj, d, qudits, p, n);
  const double lNn = lambda_from_magnitudes(mi, mj, d, qudits, p, qudits - n);
  return ln * lNn - off * off;
}

// vanishing point of the most balanced split for one pair
double balanced_root_closed_form(double mi, double mj, int d, int qudits) {
  const double t = std::pow(mi * mj, 2.0 / qudits);
  const double s = std::pow(mi * mi + mj * mj, 1.0 / qudits);
  return 2.0 * t * d /
         (2.0 * t * d + s * (s + std::sqrt(4.0 * t + s * s)));
}

struct ClassValues {
  std::vector<double> values;  // aligned with pair_classes(state)
  std::vector<bool> warnings;
};

// one evaluation per class; classes are already unique magnitude pairs
template <class F>
ClassValues per_class(const GhzState& state,
                      const std::vector<PairClass>& classes, F&& eval) {
  ClassValues out;
  out.values.reserve(classes.size());
  out.warnings.reserve(classes.size());
  for (const PairClass& c : classes) {
    const auto [value, warning] =
        eval(state.magnitude(c.i), state.magnitude(c.j));
    out.values.push_back(value);
    out.warnings.push_back(warning);
  }
  return out;
}

CriticalProbability assemble(CriticalKind kind, SolveMethod method, int n,
                             double epsilon,
                             const std::vector<PairClass>& classes,
                             const ClassValues& vals) {
  CriticalProbability out;
  out.kind = kind;
  out.method = method;
  out.n = n;
  out.epsilon = epsilon;
  if (classes.empty()) {
    return out;  // product state: no contributing pair, value stays empty
  }
  double best = 0.0;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    best = std::max(best, vals.values[k]);
    out.multiplicity_warning = out.multiplicity_warning || vals.warnings[k];
    out.pair_values.push_back({classes[k].i, classes[k].j, classes[k].count,
                               vals.values[k], vals.warnings[k]});
  }
  out.value = best;
  return out;
}

}  // namespace

double lambda_n(const GhzState& state, double p, int i, int j, int n) {
  check_pair(state, i, j);
  check_partition(state, n);
  check_p(p);
  return lambda_from_magnitudes(state.magnitude(i), state.magnitude(j),
                                state.d(), state.qudits(), p, n);
}

PairBlock pair_block(const GhzState& state, const ChannelModel& ch, int i,
                     int j, int n) {
  check_pair(state, i, j);
  check_partition(state, n);
  if (ch.d != state.d()) {
    throw_invalid("channel dimension " + std::to_string(ch.d) +
                  " does not match state dimension " +
                  std::to_string(state.d()));
  }
  const double mi = state.magnitude(i);
  const double mj = state.magnitude(j);
  const int N = state.qudits();

  PairBlock b;
  b.i = i;
  b.j = j;
  b.n = n;
  b.p = ch.p;
  b.kind = ch.kind;
  if (ch.kind == ChannelKind::Depolarizing) {
    b.lambda_n = lambda_from_magnitudes(mi, mj, ch.d, N, ch.p, n);
    b.lambda_Nn = lambda_from_magnitudes(mi, mj, ch.d, N, ch.p, N - n);
  }
  const double off = mi * mj * std::pow(1.0 - ch.p, N);
  b.xi = 0.5 * (b.lambda_n + b.lambda_Nn);
  b.eta = b.lambda_n * b.lambda_Nn - off * off;
  const double half_gap = 0.5 * (b.lambda_n - b.lambda_Nn);
  b.mu = b.xi - std::sqrt(half_gap * half_gap + off * off);
  return b;
}

std::vector<PairClass> pair_classes(const GhzState& state) {
  // group nonzero levels by exact magnitude
  std::map<double, std::vector<int>> groups;
  for (int i = 0; i < state.d(); ++i) {
    if (!state.level_is_zero(i)) groups[state.magnitude(i)].push_back(i);
  }
  std::vector<PairClass> classes;
  for (auto a = groups.begin(); a != groups.end(); ++a) {
    const auto& la = a->second;
    if (la.size() >= 2) {
      classes.push_back(
          {la[0], la[1], la.size() * (la.size() - 1) / 2});
    }
    for (auto b = std::next(a); b != groups.end(); ++b) {
      const auto& lb = b->second;
      classes.push_back({std::min(la[0], lb[0]), std::max(la[0], lb[0]),
                         la.size() * lb.size()});
    }
  }
  std::sort(classes.begin(), classes.end(),
            [](const PairClass& x, const PairClass& y) {
              return std::pair{x.i, x.j} < std::pair{y.i, y.j};
            });
  return classes;
}

std::vector<int> pair_class_map(const GhzState& state,
                                const std::vector<PairClass>& classes) {
  const int d = state.d();
  // minmax over materialized values; the reference-pair form would dangle
  auto key_of = [&](int i, int j) {
    const double mi = state.magnitude(i);
    const double mj = state.magnitude(j);
    return std::pair<double, double>{std::min(mi, mj), std::max(mi, mj)};
  };
  std::map<std::pair<double, double>, int> by_key;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    by_key[key_of(classes[k].i, classes[k].j)] = static_cast<int>(k);
  }
  std::vector<int> map;
  map.reserve(static_cast<std::size_t>(d) * (d - 1) / 2);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (state.level_is_zero(i) || state.level_is_zero(j)) {
        map.push_back(-1);
        continue;
      }
      map.push_back(by_key.at(key_of(i, j)));
    }
  }
  return map;
}

double NegativityReport::value(int n) const {
  if (n < 1 || n > static_cast<int>(per_n.size())) {
    throw_invalid("negativity report holds n in [1," +
                  std::to_string(per_n.size()) + "], got " +
                  std::to_string(n));
  }
  return per_n[n - 1];
}

NegativityReport negativity(const GhzState& state, ChannelKind kind, double p,
                            int n) {
  check_partition(state, n);
  check_p(p);
  const int N = state.qudits();
  const auto classes = pair_classes(state);

  NegativityReport report;
  report.kind = kind;
  report.p = p;
  report.requested_n = n;
  report.per_n.assign(N - 1, 0.0);
  report.contributions.reserve(classes.size());

  for (const PairClass& c : classes) {
    NegativityReport::Contribution contrib{c.i, c.j, c.count, {}};
    contrib.per_n.resize(N - 1);
    const double mi = state.magnitude(c.i);
    const double mj = state.magnitude(c.j);
    for (int k = 1; k <= N - 1; ++k) {
      const double mu =
          mu_from_magnitudes(kind, mi, mj, state.d(), N, p, k);
      contrib.per_n[k - 1] = std::max(-mu, 0.0);
    }
    report.contributions.push_back(std::move(contrib));
  }
  // accumulate in class order for reproducible floating point
  for (int k = 0; k < N - 1; ++k) {
    double total = 0.0;
    for (const auto& contrib : report.contributions) {
      total += static_cast<double>(contrib.count) * contrib.per_n[k];
    }
    report.per_n[k] = total;
  }
  return report;
}

CriticalProbability critical_p_balanced_closed_form(const GhzState& state) {
  const int N = state.qudits();
  if (N % 2 != 0) {
    throw_unsupported(
        "the balanced closed form needs even N (got N = " +
        std::to_string(N) + "); use critical_p_partition(n = N/2) instead");
  }
  const auto classes = pair_classes(state);
  const auto vals = per_class(
      state, classes, [&](double mi, double mj) -> std::pair<double, bool> {
        return {balanced_root_closed_form(mi, mj, state.d(), N), false};
      });
  return assemble(CriticalKind::VanishBalanced,
                  SolveMethod::ClosedForm, N / 2, 0.0, classes, vals);
}

CriticalProbability critical_p_partition(const GhzState& state,
                                         ChannelKind kind, int n) {
  check_partition(state, n);
  const int N = state.qudits();
  const auto classes = pair_classes(state);

  if (kind == ChannelKind::PhaseDamping) {
    // negativity (1-p)^N sum |a_i a_j| vanishes only at p = 1
    ClassValues vals;
    vals.values.assign(classes.size(), 1.0);
    vals.warnings.assign(classes.size(), false);
    return assemble(CriticalKind::VanishPartition,
                    SolveMethod::ClosedForm, n, 0.0, classes, vals);
  }

  const auto vals = per_class(
      state, classes, [&](double mi, double mj) -> std::pair<double, bool> {
        auto eta = [&](double p) {
          return eta_from_magnitudes(mi, mj, state.d(), N, p, n);
        };
        const auto scan = detail::scan_bisect(eta, 0.0, 1.0, kRootScanStep,
                                              kRootBisectTol, kRootMaxIter);
        // eta(0) < 0 and eta(1) > 0 for contributing pairs, so a root exists
        return {scan.root.value_or(1.0), scan.sign_changes > 1};
      });
  return assemble(CriticalKind::VanishPartition, SolveMethod::Bisection,
                  n, 0.0, classes, vals);
}

CriticalProbability epsilon_threshold(const GhzState& state, ChannelKind kind,
                                      int n, double epsilon) {
  check_partition(state, n);
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw_invalid("epsilon must lie in (0,1), got " + std::to_string(epsilon));
  }
  const int N = state.qudits();
  const auto classes = pair_classes(state);

  if (kind == ChannelKind::PhaseDamping) {
    // (1 - p)^N = epsilon, independent of the pair and of n
    const double p = 1.0 - std::pow(epsilon, 1.0 / N);
    ClassValues vals;
    vals.values.assign(classes.size(), p);
    vals.warnings.assign(classes.size(), false);
    return assemble(CriticalKind::EpsilonThreshold,
                    SolveMethod::ClosedForm, n, epsilon, classes, vals);
  }

  const auto vals = per_class(
      state, classes, [&](double mi, double mj) -> std::pair<double, bool> {
        // mu_n(p) = epsilon * mu_n(0), normalized by |a_i a_j| so that
        // g(0) = epsilon - 1 < 0 regardless of the amplitude scale
        auto g = [&](double p) {
          return mu_from_magnitudes(kind, mi, mj, state.d(), N, p, n) /
                     (mi * mj) +
                 epsilon;
        };
        const auto scan = detail::scan_bisect(g, 0.0, 1.0, kRootScanStep,
                                              kRootBisectTol, kRootMaxIter);
        return {scan.root.value_or(1.0), scan.sign_changes > 1};
      });
  return assemble(CriticalKind::EpsilonThreshold,
                  SolveMethod::Bisection, n, epsilon, classes, vals);
}

double asymptote_balanced(int d) {
  if (d < 2) {
    throw_invalid("asymptote_balanced needs d >= 2, got " + std::to_string(d));
  }
  return 2.0 * d / (2.0 * d + 1.0 + std::sqrt(5.0));
}

double epsilon_scaling_estimate(int qudits, double epsilon) {
  if (qudits < 2) {
    throw_invalid("epsilon_scaling_estimate needs N >= 2, got " +
                  std::to_string(qudits));
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw_invalid("epsilon must lie in (0,1], got " + std::to_string(epsilon));
  }
  return -std::log(epsilon) / qudits;
}

std::vector<double> expand_pair_values(const GhzState& state,
                                       const std::vector<double>& class_values,
                                       double excluded) {
  const auto classes = pair_classes(state);
  if (class_values.size() != classes.size()) {
    throw_invalid("class value count " + std::to_string(class_values.size()) +
                  " does not match the state's " +
                  std::to_string(classes.size()) + " pair classes");
  }
  const auto map = pair_class_map(state, classes);
  std::vector<double> out(map.size(), excluded);
  for (std::size_t k = 0; k < map.size(); ++k) {
    if (map[k] >= 0) out[k] = class_values[map[k]];
  }
  return out;
}

}  // namespace qd
