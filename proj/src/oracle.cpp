#include "quditdecay/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "quditdecay/errors.hpp"

namespace qd {

namespace {

// strides[s] = d^(N-1-s); site 0 is the most significant digit
std::vector<long long> site_strides(int d, int N) {
  std::vector<long long> strides(N);
  long long s = 1;
  for (int k = N - 1; k >= 0; --k) {
    strides[k] = s;
    s *= d;
  }
  return strides;
}

// in place: rho -> (1-p) rho + (p/d) (tr_site rho) (x) 1_site
void depolarize_site(CMat& rho, int d, long long stride, double p) {
  const long long dim = rho.rows();
  const long long block = stride * d;
  CMat out = (1.0 - p) * rho;
  const double w = p / d;
  for (long long ahi = 0; ahi < dim; ahi += block) {
    for (long long alo = 0; alo < stride; ++alo) {
      const long long a0 = ahi + alo;
      for (long long bhi = 0; bhi < dim; bhi += block) {
        for (long long blo = 0; blo < stride; ++blo) {
          const long long b0 = bhi + blo;
          Cx sum = 0.0;
          for (int k = 0; k < d; ++k) {
            sum += rho(a0 + k * stride, b0 + k * stride);
          }
          sum *= w;
          for (int m = 0; m < d; ++m) {
            out(a0 + m * stride, b0 + m * stride) += sum;
          }
        }
      }
    }
  }
  rho = std::move(out);
}

// in place: entries off-diagonal in the site digit shrink by (1-p)
void phase_damp_site(CMat& rho, int d, long long stride, double p) {
  const long long dim = rho.rows();
  const double keep = 1.0 - p;
  for (long long a = 0; a < dim; ++a) {
    const long long da = (a / stride) % d;
    for (long long b = 0; b < dim; ++b) {
      if ((b / stride) % d != da) rho(a, b) *= keep;
    }
  }
}

double negativity_of_hermitian(const CMat& mat) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(mat,
                                             Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::Internal, "eigendecomposition failed");
  }
  const double tau =
      1e-12 * static_cast<double>(mat.rows()) * max_abs(mat);
  double total = 0.0;
  const auto& evs = solver.eigenvalues();
  for (Eigen::Index k = 0; k < evs.size(); ++k) {
    if (evs[k] < -tau) total += -evs[k];
  }
  return total;
}

}  // namespace

DensityMatrix evolve(const GhzState& state, const ChannelModel& ch,
                     long long cap) {
  if (ch.d != state.d()) {
    throw_invalid("channel dimension " + std::to_string(ch.d) +
                  " does not match state dimension " +
                  std::to_string(state.d()));
  }
  const int d = state.d();
  const int N = state.qudits();
  CMat rho = ghz_density_matrix(state, cap);
  const auto strides = site_strides(d, N);
  for (int site = 0; site < N; ++site) {
    if (ch.kind == ChannelKind::Depolarizing) {
      depolarize_site(rho, d, strides[site], ch.p);
    } else {
      phase_damp_site(rho, d, strides[site], ch.p);
    }
  }
  return {d, N, std::move(rho)};
}

DensityMatrix apply_site_channel(const DensityMatrix& rho,
                                 const ChannelModel& ch, int site) {
  if (ch.d != rho.d) {
    throw_invalid("channel dimension " + std::to_string(ch.d) +
                  " does not match state dimension " + std::to_string(rho.d));
  }
  if (site < 0 || site >= rho.qudits) {
    throw_invalid("site " + std::to_string(site) +
                  " out of range for N = " + std::to_string(rho.qudits));
  }
  DensityMatrix out{rho.d, rho.qudits, rho.mat};
  const auto strides = site_strides(rho.d, rho.qudits);
  if (ch.kind == ChannelKind::Depolarizing) {
    depolarize_site(out.mat, rho.d, strides[site], ch.p);
  } else {
    phase_damp_site(out.mat, rho.d, strides[site], ch.p);
  }
  return out;
}

PTMatrix partial_transpose(const DensityMatrix& rho,
                           const std::vector<int>& sites) {
  const int d = rho.d;
  const int N = rho.qudits;
  if (sites.empty()) {
    throw_invalid("partial transpose needs a nonempty site subset");
  }
  std::vector<bool> seen(N, false);
  for (int s : sites) {
    if (s < 0 || s >= N) {
      throw_invalid("partial transpose site " + std::to_string(s) +
                    " out of range for N = " + std::to_string(N));
    }
    if (seen[s]) {
      throw_invalid("partial transpose sites must be distinct");
    }
    seen[s] = true;
  }

  const auto strides = site_strides(d, N);
  const long long dim = rho.dim();
  CMat out(dim, dim);
  for (long long r = 0; r < dim; ++r) {
    for (long long c = 0; c < dim; ++c) {
      long long rr = r;
      long long cc = c;
      for (int s : sites) {
        const long long stride = strides[s];
        const long long rd = (r / stride) % d;
        const long long cd = (c / stride) % d;
        rr += (cd - rd) * stride;
        cc += (rd - cd) * stride;
      }
      out(rr, cc) = rho.mat(r, c);
    }
  }
  PTMatrix pt;
  pt.d = d;
  pt.qudits = N;
  pt.transposed_sites = sites;
  std::sort(pt.transposed_sites.begin(), pt.transposed_sites.end());
  pt.mat = std::move(out);
  return pt;
}

double negativity_exact(const PTMatrix& rho_pt) {
  if (!is_hermitian(rho_pt.mat)) {
    throw_invalid("negativity_exact expects a Hermitian matrix");
  }
  return negativity_of_hermitian(rho_pt.mat);
}

double oracle_negativity(const GhzState& state, const ChannelModel& ch,
                         const Bipartition& part, long long cap) {
  const auto sites = part.sites(state.qudits());
  const DensityMatrix rho = evolve(state, ch, cap);
  return negativity_exact(partial_transpose(rho, sites));
}

double oracle_critical_p(const GhzState& state, ChannelKind kind, int n,
                         long long cap) {
  if (n < 1 || n > state.qudits() - 1) {
    throw_invalid("partition size n = " + std::to_string(n) +
                  " must lie in [1, N-1]");
  }
  if (kind == ChannelKind::PhaseDamping) {
    return 1.0;
  }
  const Bipartition part(n);
  auto entangled = [&](double p) {
    return oracle_negativity(state, ChannelModel(kind, p, state.d()), part,
                             cap) > kOracleZeroThreshold;
  };
  if (!entangled(0.0)) {
    return 0.0;
  }
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kOracleBisectTol) {
    const double mid = 0.5 * (lo + hi);
    if (entangled(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qd
