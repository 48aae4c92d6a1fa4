#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quditdecay/analytic.hpp"
#include "quditdecay/oracle.hpp"

namespace qd {

// analytic-vs-oracle acceptance tolerances
inline constexpr double kVerifyTol = 1e-10;
inline constexpr double kVerifyTolLargeDim = 1e-9;
inline constexpr long long kVerifyLargeDim = 512;

enum class Quantity { PBalanced, PLeastBalanced, PEpsilon, NegativityCurve };
enum class AmplitudePolicy { Equal, Explicit };

struct SweepRequest {
  std::vector<int> d_values;
  std::vector<int> N_values;
  ChannelKind kind = ChannelKind::Depolarizing;
  Quantity quantity = Quantity::PBalanced;
  double epsilon = 0.01;
  AmplitudePolicy policy = AmplitudePolicy::Equal;
  std::map<int, std::vector<Cx>> explicit_alphas;  // keyed by d
  std::vector<double> p_grid;                      // NegativityCurve only
  int curve_n = 0;                                 // 0 -> floor(N/2)
};

struct Cell {
  enum class Type { Number, Text, Empty };
  Type type = Type::Empty;
  double num = 0.0;
  std::string text;

  static Cell number(double v) { return {Type::Number, v, {}}; }
  static Cell textv(std::string s) { return {Type::Text, 0.0, std::move(s)}; }
  static Cell empty() { return {}; }
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::string provenance;  // artifact version + solver tolerances
};

// Evaluate the requested quantity over the (d, N[, p]) grid in lexicographic
// order. Per-point failures become row warnings, not sweep failures.
SweepTable run_sweep(const SweepRequest& req);

struct VerifyRequest {
  std::vector<int> d_values{2, 3};
  std::vector<int> N_values{2, 3, 4};
  std::vector<ChannelKind> kinds{ChannelKind::Depolarizing,
                                 ChannelKind::PhaseDamping};
  std::vector<double> p_grid;      // empty -> {0, 0.1, ..., 1}
  std::vector<int> n_values;       // empty -> all 1..N-1
  int random_vectors = 20;         // per (d, N), plus the equal-amplitude one
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  long long dense_cap = kDefaultDenseCap;
};

// One row per (d, N, channel, amplitude vector): max |analytic - oracle|
// over the p grid and partition sizes, pass/fail against the tolerance, and
// wall time. Instances over the cap are reported as skipped rows.
struct VerifyReport {
  SweepTable table;
  bool all_pass = true;
  double max_deviation = 0.0;
};

VerifyReport verify(const VerifyRequest& req);

// Exact balanced vanishing point and epsilon threshold (equal amplitudes)
// against their large-N / large-d asymptotes, with deviations.
SweepTable asymptote_report(const std::vector<int>& d_values,
                            const std::vector<int>& N_values, double epsilon);

}  // namespace qd
