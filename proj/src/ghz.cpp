#include "quditdecay/ghz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quditdecay/errors.hpp"

namespace qd {

GhzState::GhzState(int d, int qudits, std::vector<Cx> alphas)
    : d_(d), qudits_(qudits), alphas_(std::move(alphas)) {
  if (d_ < 2) {
    throw_invalid("GHZ state needs d >= 2, got " + std::to_string(d_));
  }
  if (qudits_ < 2) {
    throw_invalid("GHZ state needs at least 2 qudits, got " +
                  std::to_string(qudits_));
  }
  if (static_cast<int>(alphas_.size()) != d_) {
    throw_invalid("expected " + std::to_string(d_) + " amplitudes, got " +
                  std::to_string(alphas_.size()));
  }
  double norm2 = 0.0;
  for (const Cx& a : alphas_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw_invalid("amplitudes must be finite");
    }
    norm2 += std::norm(a);
  }
  if (norm2 <= 0.0) {
    throw_invalid("amplitude vector must not be zero");
  }
  rescale_ = 1.0 / std::sqrt(norm2);
  for (Cx& a : alphas_) a *= rescale_;

  zero_.resize(alphas_.size());
  nonzero_levels_ = 0;
  for (int i = 0; i < d_; ++i) {
    zero_[i] = std::abs(alphas_[i]) < kZeroAmplitudeTol;
    if (!zero_[i]) ++nonzero_levels_;
  }
}

GhzState GhzState::equal(int d, int qudits) {
  if (d < 2) {
    throw_invalid("GHZ state needs d >= 2, got " + std::to_string(d));
  }
  std::vector<Cx> alphas(d, Cx{1.0, 0.0});
  return GhzState(d, qudits, std::move(alphas));
}

double GhzState::magnitude(int level) const {
  if (level < 0 || level >= d_) {
    throw_invalid("level index " + std::to_string(level) +
                  " out of range for d = " + std::to_string(d_));
  }
  return std::abs(alphas_[level]);
}

bool GhzState::level_is_zero(int level) const {
  if (level < 0 || level >= d_) {
    throw_invalid("level index " + std::to_string(level) +
                  " out of range for d = " + std::to_string(d_));
  }
  return zero_[level];
}

Bipartition::Bipartition(int n) : n_(n) {
  if (n_ < 1) {
    throw_invalid("bipartition size must be at least 1, got " +
                  std::to_string(n_));
  }
}

Bipartition::Bipartition(std::vector<int> sites)
    : n_(static_cast<int>(sites.size())), sites_(std::move(sites)) {
  if (n_ < 1) {
    throw_invalid("bipartition subset must not be empty");
  }
}

std::vector<int> Bipartition::sites(int qudits) const {
  if (n_ > qudits - 1) {
    throw_invalid("bipartition size " + std::to_string(n_) +
                  " must leave both sides nonempty for N = " +
                  std::to_string(qudits));
  }
  std::vector<int> out;
  if (sites_) {
    out = *sites_;
    std::sort(out.begin(), out.end());
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (out[k] < 0 || out[k] >= qudits) {
        throw_invalid("bipartition site " + std::to_string(out[k]) +
                      " out of range for N = " + std::to_string(qudits));
      }
      if (k > 0 && out[k] == out[k - 1]) {
        throw_invalid("bipartition sites must be distinct");
      }
    }
  } else {
    out.resize(n_);
    for (int k = 0; k < n_; ++k) out[k] = k;
  }
  return out;
}

long long dense_dim(int d, int qudits, long long cap) {
  long long dim = 1;
  for (int k = 0; k < qudits; ++k) {
    if (dim > cap / d) return cap + 1;  // would overflow the cap anyway
    dim *= d;
  }
  return dim;
}

CMat ghz_density_matrix(const GhzState& state, long long cap) {
  const int d = state.d();
  const int N = state.qudits();
  const long long dim = dense_dim(d, N, cap);
  if (dim > cap) {
    throw_capacity("dense dimension d^N = " + std::to_string(d) + "^" +
                   std::to_string(N) + " exceeds the cap of " +
                   std::to_string(cap));
  }
  // |i...i| has base-d digits all equal to i: index i * (d^N - 1)/(d - 1)
  const long long rep_unit = (dim - 1) / (d - 1);
  CMat rho = CMat::Zero(dim, dim);
  const auto& alphas = state.alphas();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      rho(i * rep_unit, j * rep_unit) = alphas[i] * std::conj(alphas[j]);
    }
  }
  return rho;
}

}  // namespace qd
