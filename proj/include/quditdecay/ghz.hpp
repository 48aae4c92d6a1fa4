#pragma once

#include <optional>
#include <vector>

#include "quditdecay/linalg.hpp"

namespace qd {

// Default cap on the dense dimension d^N handled by the exact
// (full-density-matrix) code paths. Overridable per call.
inline constexpr long long kDefaultDenseCap = 4096;

// Amplitudes below this magnitude (after normalization) are treated as
// exactly zero when deciding which level pairs can contribute negativity.
inline constexpr double kZeroAmplitudeTol = 1e-15;

// Generalized N-qudit GHZ state  sum_i alpha_i |i>^(x N).
// The constructor validates and normalizes; instances are immutable.
class GhzState {
 public:
  GhzState(int d, int qudits, std::vector<Cx> alphas);

  // alpha_i = 1/sqrt(d) for every level
  static GhzState equal(int d, int qudits);

  int d() const noexcept { return d_; }
  int qudits() const noexcept { return qudits_; }
  const std::vector<Cx>& alphas() const noexcept { return alphas_; }

  double magnitude(int level) const;
  bool level_is_zero(int level) const;
  int nonzero_levels() const noexcept { return nonzero_levels_; }
  bool is_product() const noexcept { return nonzero_levels_ <= 1; }

  // multiplicative factor applied to the raw amplitudes at construction
  double applied_rescale() const noexcept { return rescale_; }

 private:
  int d_;
  int qudits_;
  std::vector<Cx> alphas_;
  std::vector<bool> zero_;
  int nonzero_levels_;
  double rescale_;
};

// An (N-n)|n split. Either just a size n (sites 0..n-1 by convention) or an
// explicit site subset.
class Bipartition {
 public:
  explicit Bipartition(int n);
  explicit Bipartition(std::vector<int> sites);

  int n() const noexcept { return n_; }

  // Resolved, sorted site list; validates 1 <= n <= qudits-1 and that
  // explicit sites are distinct indices in [0, qudits).
  std::vector<int> sites(int qudits) const;

 private:
  int n_;
  std::optional<std::vector<int>> sites_;
};

// d^N with overflow care; values that would exceed `cap` report as cap+1.
long long dense_dim(int d, int qudits, long long cap = kDefaultDenseCap);

// Dense rank-one density matrix |Psi><Psi| of dimension d^N. Site 0 is the
// most significant digit of the base-d row/column index.
CMat ghz_density_matrix(const GhzState& state,
                        long long cap = kDefaultDenseCap);

}  // namespace qd
