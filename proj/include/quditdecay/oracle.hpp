#pragma once

#include <vector>

#include "quditdecay/channels.hpp"
#include "quditdecay/ghz.hpp"

namespace qd {

// Bisection tolerance on p and negativity zero threshold for the
// brute-force critical point search.
inline constexpr double kOracleBisectTol = 1e-8;
inline constexpr double kOracleZeroThreshold = 1e-11;

// Dense d^N x d^N state with site metadata.
struct DensityMatrix {
  int d = 0;
  int qudits = 0;
  CMat mat;

  long long dim() const { return static_cast<long long>(mat.rows()); }
};

// Same shape after transposing the tensor factors of `transposed_sites`.
struct PTMatrix {
  int d = 0;
  int qudits = 0;
  std::vector<int> transposed_sites;
  CMat mat;

  long long dim() const { return static_cast<long long>(mat.rows()); }
};

// |Psi><Psi| pushed through N independent copies of the single-site channel
// (closed form per site; site order does not matter).
DensityMatrix evolve(const GhzState& state, const ChannelModel& ch,
                     long long cap = kDefaultDenseCap);

// One single-site application; evolve() folds this over all sites.
DensityMatrix apply_site_channel(const DensityMatrix& rho,
                                 const ChannelModel& ch, int site);

// Transpose the given tensor factors: entries move between index positions
// by swapping the subset digits of the row and column multi-indices.
// Applying twice restores the input bit-exactly. Accepts any nonempty
// subset up to all N sites (the full set is a plain transpose).
PTMatrix partial_transpose(const DensityMatrix& rho,
                           const std::vector<int>& sites);

// Sum of |eigenvalue| over eigenvalues below -tau, where
// tau = 1e-12 * dim * max|entry| absorbs eigensolver noise.
double negativity_exact(const PTMatrix& rho_pt);

// evolve -> partial_transpose -> negativity_exact
double oracle_negativity(const GhzState& state, const ChannelModel& ch,
                         const Bipartition& part,
                         long long cap = kDefaultDenseCap);

// Smallest p at which the exact negativity of the (N-n)|n split reaches
// zero, by bisection on [0,1]. Phase damping reports 1.
double oracle_critical_p(const GhzState& state, ChannelKind kind, int n,
                         long long cap = kDefaultDenseCap);

}  // namespace qd
