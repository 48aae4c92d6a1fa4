#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qd {

using Cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline double max_abs(const CMat& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

// max |A - A^dagger| over entries
inline double hermiticity_defect(const CMat& a) {
  return max_abs(a - a.adjoint());
}

// Hermitian within scale_tol * dim * max|A|
inline bool is_hermitian(const CMat& a, double scale_tol = 1e-12) {
  return hermiticity_defect(a) <=
         scale_tol * static_cast<double>(a.rows()) * max_abs(a);
}

}  // namespace qd
