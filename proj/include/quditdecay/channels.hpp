#pragma once

#include "quditdecay/linalg.hpp"

namespace qd {

enum class ChannelKind { Depolarizing, PhaseDamping };

// Single-qudit channel: kind, strength p in [0,1], local dimension d >= 2.
struct ChannelModel {
  ChannelKind kind;
  double p;
  int d;

  ChannelModel(ChannelKind kind, double p, int d);
};

// Primitive d-th root of unity exp(2*pi*i/d).
Cx omega(int d);

// Generalized Pauli shift: X|i> = |i+1 mod d>.
CMat shift_matrix(int d);

// Generalized Pauli clock: Z|i> = omega^i |i>.
CMat clock_matrix(int d);

// Closed-form channel action on a density matrix. Validates that the input
// is Hermitian with unit trace and preserves both properties.
//   depolarizing:  (1-p) rho + (p/d) tr(rho) I
//   phase damping: (1-p) rho + p diag(rho)
CMat apply_channel(const ChannelModel& ch, const CMat& rho);

// Same closed forms extended linearly to arbitrary operators (no density
// matrix validation). This is the map used to assemble Choi matrices.
CMat apply_channel_linear(const ChannelModel& ch, const CMat& a);

// Explicit operator-sum (twirl) form:
//   depolarizing:  (1-p) A + (p/d^2) sum_{ij} X^i Z^j A Z^-j X^-i
//   phase damping: (1-p) A + (p/d)   sum_i  Z^i A Z^-i
// Exists as a self-test oracle for the closed forms; O(d^5) cost.
CMat apply_channel_twirl(const ChannelModel& ch, const CMat& a);

// Choi matrix (E (x) id)(|Phi><Phi|) with |Phi> = sum_i |ii> unnormalized;
// d^2 x d^2, Hermitian, PSD iff the map is completely positive. d <= 16.
CMat choi_matrix(const ChannelModel& ch);

}  // namespace qd
