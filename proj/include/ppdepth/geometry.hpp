#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

// Simplex geometry for temporal point processes: the inter-event-time
// representation of a realization, the isometric log-ratio (ILR) transform
// between the open simplex and R^k, and the permutation-induced orthogonal
// maps that describe the symmetry of the transformed space.

namespace ppdepth {

// Raised when the ILR transform is requested for an inter-event vector with a
// zero gap. Depth computations catch this and assign depth 0.
class BoundaryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A bounded observation window [t1, t2], t1 < t2, both finite.
class TimeDomain {
 public:
  TimeDomain(double t1, double t2);

  double t1() const { return t1_; }
  double t2() const { return t2_; }
  double width() const { return t2_ - t1_; }

  bool operator==(const TimeDomain&) const = default;

 private:
  double t1_;
  double t2_;
};

// An ordered list of event times s_1 <= ... <= s_k inside a time domain.
// The realization is "on the boundary" when any equality holds in
// t1 <= s_1 <= ... <= s_k <= t2, i.e. two events coincide or an event sits
// on a domain endpoint. k = 0 is a legal (interior) realization.
class PointProcess {
 public:
  PointProcess(TimeDomain domain, std::vector<double> events);

  const TimeDomain& domain() const { return domain_; }
  const std::vector<double>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool on_boundary() const { return on_boundary_; }

 private:
  TimeDomain domain_;
  std::vector<double> events_;
  bool on_boundary_;
};

// The k+1 gaps between consecutive events (domain endpoints included).
// Nonnegative, summing to the domain width; a point on the closed simplex.
class InterEventTimes {
 public:
  InterEventTimes(double total, std::vector<double> gaps);

  double total() const { return total_; }
  const std::vector<double>& gaps() const { return gaps_; }
  std::size_t size() const { return gaps_.size(); }
  // True when every gap is strictly positive (open-simplex interior, the
  // domain of the ILR transform).
  bool interior() const { return interior_; }

 private:
  double total_;
  std::vector<double> gaps_;
  bool interior_;
};

// A k x (k+1) matrix Psi with Psi Psi^T = I_k and
// Psi^T Psi = I_{k+1} - 11^T/(k+1). Its columns are the vertices of a
// regular simplex centered at the origin with edge length sqrt(2).
// The constructor verifies both identities, so any valid basis can be
// injected; build_contrast_matrix() supplies the canonical Helmert one.
class ContrastMatrix {
 public:
  explicit ContrastMatrix(Eigen::MatrixXd psi);

  int k() const { return static_cast<int>(psi_.rows()); }
  const Eigen::MatrixXd& psi() const { return psi_; }

 private:
  Eigen::MatrixXd psi_;
};

// Image of an inter-event vector under the ILR transform; a free vector
// in R^k.
struct IlrVector {
  Eigen::VectorXd v;

  int k() const { return static_cast<int>(v.size()); }
};

// Helmert-style contrast matrix: row i (1-based) equals 1/sqrt(i(i+1)) in
// columns 1..i, -i/sqrt(i(i+1)) in column i+1, and 0 afterwards.
ContrastMatrix build_contrast_matrix(int k);

// Gaps (s_1 - t1, s_2 - s_1, ..., t2 - s_k); sums to the domain width.
InterEventTimes to_iet(const PointProcess& p);

// Inverse of to_iet: cumulative gap sums shifted by t1. The gap total must
// match the domain width within 1e-9 relative.
PointProcess from_iet(const InterEventTimes& u, const TimeDomain& d);

// v = Psi * (log u_i - mean log u). Throws BoundaryError if any gap is zero.
IlrVector ilr(const InterEventTimes& u, const ContrastMatrix& psi);

// u = total * softmax(v^T Psi); always lands in the open simplex.
InterEventTimes ilr_inverse(const IlrVector& v, const ContrastMatrix& psi,
                            double total);

// The orthogonal matrix A_r = Psi Psi_r^T induced by a permutation r of the
// k+1 columns; satisfies A_r^T Psi_{:,i} = Psi_{:,r(i)}. `perm` is 0-based.
Eigen::MatrixXd permutation_orthogonal(const ContrastMatrix& psi,
                                       const std::vector<int>& perm);

}  // namespace ppdepth
