#include "ppdepth/density.hpp"

#include <cmath>
#include <stdexcept>

namespace ppdepth {

namespace {

// softmax(Psi^T v), shared by the kernel derivatives.
Eigen::VectorXd column_weights(const IlrVector& v, const ContrastMatrix& psi) {
  Eigen::VectorXd scores = psi.psi().transpose() * v.v;
  Eigen::VectorXd weights = (scores.array() - scores.maxCoeff()).exp();
  weights /= weights.sum();
  return weights;
}

}  // namespace

double log_kernel(const IlrVector& v, const ContrastMatrix& psi) {
  if (v.k() != psi.k()) {
    throw std::invalid_argument("ILR vector size does not match contrast");
  }
  const Eigen::VectorXd scores = psi.psi().transpose() * v.v;
  const double peak = scores.maxCoeff();
  const double lse = peak + std::log((scores.array() - peak).exp().sum());
  return -(psi.k() + 1.0) * lse;
}

double log_norm_const(int k, const ContrastMatrix& psi) {
  if (k < 1 || k != psi.k()) {
    throw std::invalid_argument("k must match the contrast matrix");
  }
  Eigen::MatrixXd diffs(k, k);
  diffs.row(0) = (psi.psi().col(0) - psi.psi().col(k)).transpose();
  for (int j = 1; j < k; ++j) {
    diffs.row(j) = (psi.psi().col(j) - psi.psi().col(0)).transpose();
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(diffs);
  double log_abs_det = 0.0;
  for (int i = 0; i < k; ++i) {
    const double pivot = std::abs(lu.matrixLU()(i, i));
    if (pivot == 0.0) {
      throw std::logic_error("singular column-difference matrix");
    }
    log_abs_det += std::log(pivot);
  }
  return std::lgamma(k + 1.0) + log_abs_det;
}

Eigen::VectorXd grad_log_density(const IlrVector& v,
                                 const ContrastMatrix& psi) {
  if (v.k() != psi.k()) {
    throw std::invalid_argument("ILR vector size does not match contrast");
  }
  return -(psi.k() + 1.0) * (psi.psi() * column_weights(v, psi));
}

Eigen::MatrixXd hessian_log_density(const IlrVector& v,
                                    const ContrastMatrix& psi) {
  if (v.k() != psi.k()) {
    throw std::invalid_argument("ILR vector size does not match contrast");
  }
  const Eigen::VectorXd w = column_weights(v, psi);
  const Eigen::VectorXd mean = psi.psi() * w;
  const Eigen::MatrixXd second_moment =
      psi.psi() * w.asDiagonal() * psi.psi().transpose();
  return -(psi.k() + 1.0) * (second_moment - mean * mean.transpose());
}

double normal_approx_log_density(const IlrVector& v) {
  constexpr double kLog2Pi = 1.8378770664093454836;
  return -0.5 * v.k() * kLog2Pi - 0.5 * v.v.squaredNorm();
}

IlrDensity::IlrDensity(int k)
    : psi_(build_contrast_matrix(k)),
      log_norm_const_(ppdepth::log_norm_const(k, psi_)) {}

}  // namespace ppdepth
