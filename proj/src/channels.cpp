#include "quditdecay/channels.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "quditdecay/errors.hpp"

namespace qd {

namespace {

constexpr int kChoiDimCap = 16;
constexpr double kTraceTol = 1e-10;

void check_dimension(int d) {
  if (d < 2) {
    throw_invalid("qudit dimension must be at least 2, got " +
                  std::to_string(d));
  }
}

void check_square(const CMat& a, int d, const char* what) {
  if (a.rows() != d || a.cols() != d) {
    throw_invalid(std::string(what) + ": expected a " + std::to_string(d) +
                  "x" + std::to_string(d) + " matrix, got " +
                  std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

}  // namespace

ChannelModel::ChannelModel(ChannelKind kind, double p, int d)
    : kind(kind), p(p), d(d) {
  check_dimension(d);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw_invalid("channel strength p must lie in [0,1], got " +
                  std::to_string(p));
  }
}

Cx omega(int d) {
  check_dimension(d);
  const double angle = 2.0 * std::numbers::pi / d;
  return Cx{std::cos(angle), std::sin(angle)};
}

CMat shift_matrix(int d) {
  check_dimension(d);
  CMat x = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    x((i + 1) % d, i) = 1.0;
  }
  return x;
}

CMat clock_matrix(int d) {
  check_dimension(d);
  const Cx w = omega(d);
  CMat z = CMat::Zero(d, d);
  Cx wi = 1.0;
  for (int i = 0; i < d; ++i) {
    z(i, i) = wi;
    wi *= w;
  }
  return z;
}

CMat apply_channel_linear(const ChannelModel& ch, const CMat& a) {
  check_square(a, ch.d, "apply_channel");
  switch (ch.kind) {
    case ChannelKind::Depolarizing: {
      CMat out = (1.0 - ch.p) * a;
      const Cx scale = ch.p / static_cast<double>(ch.d) * a.trace();
      out += scale * CMat::Identity(ch.d, ch.d);
      return out;
    }
    case ChannelKind::PhaseDamping: {
      CMat out = (1.0 - ch.p) * a;
      out.diagonal() += ch.p * a.diagonal();
      return out;
    }
  }
  throw_invalid("unknown channel kind");
}

CMat apply_channel(const ChannelModel& ch, const CMat& rho) {
  check_square(rho, ch.d, "apply_channel");
  if (std::abs(rho.trace() - Cx{1.0, 0.0}) > kTraceTol) {
    throw_invalid("apply_channel: input must have unit trace");
  }
  if (!is_hermitian(rho)) {
    throw_invalid("apply_channel: input must be Hermitian");
  }
  return apply_channel_linear(ch, rho);
}

CMat apply_channel_twirl(const ChannelModel& ch, const CMat& a) {
  check_square(a, ch.d, "apply_channel_twirl");
  const int d = ch.d;

  // powers Z^0..Z^{d-1}; X powers only needed for the depolarizing sum
  std::vector<CMat> zp(d);
  zp[0] = CMat::Identity(d, d);
  const CMat z = clock_matrix(d);
  for (int i = 1; i < d; ++i) zp[i] = zp[i - 1] * z;

  if (ch.kind == ChannelKind::PhaseDamping) {
    CMat sum = CMat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      sum += zp[i] * a * zp[i].adjoint();
    }
    return (1.0 - ch.p) * a + (ch.p / d) * sum;
  }

  std::vector<CMat> xp(d);
  xp[0] = CMat::Identity(d, d);
  const CMat x = shift_matrix(d);
  for (int i = 1; i < d; ++i) xp[i] = xp[i - 1] * x;

  CMat sum = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      sum += xp[i] * zp[j] * a * zp[j].adjoint() * xp[i].adjoint();
    }
  }
  return (1.0 - ch.p) * a + (ch.p / (static_cast<double>(d) * d)) * sum;
}

CMat choi_matrix(const ChannelModel& ch) {
  const int d = ch.d;
  if (d > kChoiDimCap) {
    throw_capacity("choi_matrix supports d <= " + std::to_string(kChoiDimCap) +
                   ", got d = " + std::to_string(d));
  }
  CMat choi = CMat::Zero(d * d, d * d);
  CMat unit = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      unit(i, j) = 1.0;
      const CMat block = apply_channel_linear(ch, unit);
      unit(i, j) = 0.0;
      for (int u = 0; u < d; ++u) {
        for (int v = 0; v < d; ++v) {
          choi(u * d + i, v * d + j) = block(u, v);
        }
      }
    }
  }
  return choi;
}

}  // namespace qd
