#pragma once

#include <Eigen/Dense>

#include "ppdepth/geometry.hpp"

// Closed-form density of the ILR-transformed inter-event times of a
// homogeneous Poisson process conditioned on its cardinality:
//
//   f(v) = c / (sum_p exp(v^T Psi_{:,p}))^{k+1}
//
// together with its log-gradient, log-Hessian and the standard-normal
// approximation around the mode at the origin. Everything is exposed in log
// space; the raw density underflows far from the origin for moderate k.

namespace ppdepth {

// -(k+1) * log sum_p exp(v^T Psi_{:,p}), evaluated with the usual
// max-subtraction stabilization.
double log_kernel(const IlrVector& v, const ContrastMatrix& psi);

// Log of the normalizing constant c = k! * |det D|, where D stacks the
// column differences (Psi_{:,1}-Psi_{:,k+1})^T and (Psi_{:,j}-Psi_{:,1})^T
// for j = 2..k. Exact for any valid contrast matrix.
double log_norm_const(int k, const ContrastMatrix& psi);

// Gradient of log f: -(k+1) * Psi * softmax(Psi^T v). Zero at the origin.
Eigen::VectorXd grad_log_density(const IlrVector& v, const ContrastMatrix& psi);

// Hessian of log f: -(k+1) * (Psi diag(w) Psi^T - (Psi w)(Psi w)^T) with
// w = softmax(Psi^T v). Symmetric negative definite; equals -I at the origin.
Eigen::MatrixXd hessian_log_density(const IlrVector& v,
                                    const ContrastMatrix& psi);

// Log-density of N(0, I_k): -(k/2) log(2 pi) - |v|^2 / 2.
double normal_approx_log_density(const IlrVector& v);

// Bundles a contrast matrix with the cached normalizing constant.
class IlrDensity {
 public:
  explicit IlrDensity(int k);

  int k() const { return psi_.k(); }
  const ContrastMatrix& psi() const { return psi_; }
  double log_norm_const() const { return log_norm_const_; }
  double log_density(const IlrVector& v) const {
    return log_norm_const_ + log_kernel(v, psi_);
  }

 private:
  ContrastMatrix psi_;
  double log_norm_const_;
};

}  // namespace ppdepth
