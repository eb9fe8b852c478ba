#pragma once

// Matrix functions on symmetric (positive-definite) matrices through a
// symmetric eigendecomposition.

#include <Eigen/Dense>

namespace radial::spd {

using Matrix = Eigen::MatrixXd;

Matrix symmetrize(const Matrix& a);
Matrix sqrtm(const Matrix& x);
Matrix inv_sqrtm(const Matrix& x);
Matrix expm_sym(const Matrix& s);
/// Eigenvalues are clamped below at 1e-14; DomainError if an eigenvalue is
/// below -1e-10 times the largest one.
Matrix logm(const Matrix& x);

}  // namespace radial::spd
