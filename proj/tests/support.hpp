#pragma once

#include <vector>

#include "quditdecay/detail/rng.hpp"
#include "quditdecay/ghz.hpp"
#include "quditdecay/linalg.hpp"

namespace testutil {

inline double max_diff(const qd::CMat& a, const qd::CMat& b) {
  return qd::max_abs(a - b);
}

inline qd::CMat random_hermitian_trace_one(qd::detail::SplitMix64& rng,
                                           int d) {
  qd::CMat g(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      g(r, c) = qd::Cx{rng.gaussian(), rng.gaussian()};
    }
  }
  qd::CMat h = 0.5 * (g + g.adjoint());
  h += ((1.0 - h.trace()) / static_cast<double>(d)) *
       qd::CMat::Identity(d, d);
  return h;
}

inline qd::GhzState random_state(qd::detail::SplitMix64& rng, int d, int N) {
  return qd::GhzState(d, N, qd::detail::random_alphas(rng, d));
}

// row/column index of the basis state with the given site digits
inline long long basis_index(const std::vector<int>& digits, int d) {
  long long idx = 0;
  for (int digit : digits) idx = idx * d + digit;
  return idx;
}

}  // namespace testutil
