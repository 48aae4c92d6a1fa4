#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "quditdecay/channels.hpp"
#include "quditdecay/ghz.hpp"

namespace qd {

// Root finding parameters shared by every critical-probability solver:
// bracket scan step on [0,1], bisection tolerance on p, iteration cap.
inline constexpr double kRootScanStep = 1e-3;
inline constexpr double kRootBisectTol = 1e-12;
inline constexpr int kRootMaxIter = 200;

// Exact diagonal weight of the depolarized state at the basis state with
// N-n digits i and n digits j (any arrangement):
//   lambda_n = |a_i|^2 (p/d)^n (1-(d-1)p/d)^(N-n)
//            + |a_j|^2 (p/d)^(N-n) (1-(d-1)p/d)^n
//            + (1 - |a_i|^2 - |a_j|^2) (p/d)^N
// The last term is the weight scrambled in from the other d-2 levels; it
// vanishes for d = 2 and for states supported on the pair alone.
double lambda_n(const GhzState& state, double p, int i, int j, int n);

// The 2x2 partial-transpose block for one level pair. For depolarizing
// noise the block is [[lambda_n, a_i a_j* (1-p)^N], [c.c., lambda_{N-n}]]
// and mu is its smaller eigenvalue,
//   mu = xi - sqrt(xi^2 - eta),
//   xi = (lambda_n + lambda_{N-n})/2,
//   eta = lambda_n lambda_{N-n} - |a_i a_j|^2 (1-p)^(2N).
// These are the only eigenvalues of the partially transposed state that
// can go negative, so the block spectrum determines the negativity
// exactly (certified against the dense oracle). For phase damping the
// lambda fields hold 0 and mu reduces to nu = -|a_i a_j| (1-p)^N.
struct PairBlock {
  int i = 0;
  int j = 0;
  int n = 0;
  double p = 0.0;
  ChannelKind kind = ChannelKind::Depolarizing;
  double lambda_n = 0.0;
  double lambda_Nn = 0.0;
  double xi = 0.0;
  double eta = 0.0;
  double mu = 0.0;
};

PairBlock pair_block(const GhzState& state, const ChannelModel& ch, int i,
                     int j, int n);

// Level pairs (i<j) grouped by the unordered pair of amplitude magnitudes.
// Every pair in a class has the same block spectrum, so per-pair work is
// done once per class; `count` is the number of pairs the class covers.
// Classes exclude pairs with a zero amplitude (they never go negative) and
// are ordered by their lexicographically smallest representative.
struct PairClass {
  int i = 0;  // representative pair, i < j
  int j = 0;
  std::size_t count = 0;
};

std::vector<PairClass> pair_classes(const GhzState& state);

// class index per lexicographic pair (i<j), -1 for excluded pairs.
// O(d^2); intended for per-pair reporting at small d.
std::vector<int> pair_class_map(const GhzState& state,
                                const std::vector<PairClass>& classes);

// Negativity of the (N-n)|n bipartition for every n, plus per-pair-class
// contributions max{-mu, 0}. N_n = sum over classes of count * contribution,
// accumulated in class order.
struct NegativityReport {
  ChannelKind kind = ChannelKind::Depolarizing;
  double p = 0.0;
  int requested_n = 0;
  std::vector<double> per_n;  // per_n[k] = N_{k+1}, k = 0..N-2

  struct Contribution {
    int i = 0;
    int j = 0;
    std::size_t count = 0;
    std::vector<double> per_n;
  };
  std::vector<Contribution> contributions;

  double value(int n) const;
};

NegativityReport negativity(const GhzState& state, ChannelKind kind, double p,
                            int n);

enum class CriticalKind { VanishBalanced, VanishPartition, EpsilonThreshold };
enum class SolveMethod { ClosedForm, Bisection };

// A critical channel strength: the max over contributing pair classes of a
// per-pair value. `value` is empty exactly when the state is a product
// state (no contributing pair).
struct CriticalProbability {
  CriticalKind kind = CriticalKind::VanishBalanced;
  std::optional<double> value;
  SolveMethod method = SolveMethod::ClosedForm;
  bool multiplicity_warning = false;
  int n = 0;            // partition size the value refers to
  double epsilon = 0.0; // for EpsilonThreshold

  struct PairValue {
    int i = 0;
    int j = 0;
    std::size_t count = 0;
    double value = 0.0;
    bool multiplicity_warning = false;
  };
  std::vector<PairValue> pair_values;  // aligned with pair_classes(state)
};

// Closed-form vanishing point of the most balanced split (N even,
// depolarizing):
//   p = 2td / (2td + s(s + sqrt(4t + s^2))),
//   t = |a_i a_j|^(2/N), s = (|a_i|^2 + |a_j|^2)^(1/N).
// Derived from the pair block without the cross-level weight, so it is
// exact for d = 2 (and two-level states) and an upper bound otherwise;
// critical_p_partition(n = N/2) gives the exact value for any d.
CriticalProbability critical_p_balanced_closed_form(const GhzState& state);

// Smallest positive root of eta_n(p) = 0 per pair (depolarizing), located
// by a kRootScanStep bracket scan plus bisection; flags a multiplicity
// warning when the scan sees more than one sign change. Phase damping has
// no vanishing point below 1, so the value is exactly 1.
CriticalProbability critical_p_partition(const GhzState& state,
                                         ChannelKind kind, int n);

// Strength at which the pair's negative eigenvalue has shrunk to a fraction
// epsilon of its p=0 magnitude: mu_n(p) = epsilon * mu_n(0). At n = N/2 this
// is the balanced threshold equation; phase damping gives the closed form
// p = 1 - epsilon^(1/N) for every pair and every n.
CriticalProbability epsilon_threshold(const GhzState& state, ChannelKind kind,
                                      int n, double epsilon);

// Large-N limit of the balanced vanishing point: 2d/(2d+1+sqrt(5)).
double asymptote_balanced(int d);

// Large-N scaling estimate of the epsilon threshold: -ln(epsilon)/N.
double epsilon_scaling_estimate(int qudits, double epsilon);

// Expand per-class values to every pair (i<j) in lexicographic order;
// excluded pairs get `excluded`. values must be aligned with
// pair_classes(state).
std::vector<double> expand_pair_values(const GhzState& state,
                                       const std::vector<double>& class_values,
                                       double excluded);

}  // namespace qd
