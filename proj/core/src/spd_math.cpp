#include "spd_math.hpp"

#include <algorithm>
#include <cmath>

#include "radial/errors.hpp"

namespace radial::spd {
namespace {

constexpr double kEigenFloor = 1e-14;
constexpr double kClampTolerance = 1e-10;

template <typename Fn>
Matrix apply_spectral(const Matrix& a, Fn&& fn) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(a));
  if (eig.info() != Eigen::Success) {
    throw DomainError("symmetric eigendecomposition failed");
  }
  Eigen::VectorXd values = eig.eigenvalues().unaryExpr(fn);
  return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::VectorXd clamped_spectrum(const Eigen::VectorXd& values) {
  const double top = std::max(values.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < -kClampTolerance * std::max(top, 1.0)) {
      throw DomainError("matrix is not positive definite");
    }
  }
  return values.cwiseMax(kEigenFloor);
}

template <typename Fn>
Matrix apply_positive(const Matrix& a, Fn&& fn) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(a));
  if (eig.info() != Eigen::Success) {
    throw DomainError("symmetric eigendecomposition failed");
  }
  Eigen::VectorXd values = clamped_spectrum(eig.eigenvalues()).unaryExpr(fn);
  return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

Matrix sqrtm(const Matrix& x) {
  return apply_positive(x, [](double v) { return std::sqrt(v); });
}

Matrix inv_sqrtm(const Matrix& x) {
  return apply_positive(x, [](double v) { return 1.0 / std::sqrt(v); });
}

Matrix expm_sym(const Matrix& s) {
  return apply_spectral(s, [](double v) { return std::exp(v); });
}

Matrix logm(const Matrix& x) {
  return apply_positive(x, [](double v) { return std::log(v); });
}

}  // namespace radial::spd
