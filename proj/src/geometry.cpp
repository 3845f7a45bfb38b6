#include "ppdepth/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ppdepth {

namespace {

constexpr double kIdentityTol = 1e-10;

}  // namespace

TimeDomain::TimeDomain(double t1, double t2) : t1_(t1), t2_(t2) {
  if (!std::isfinite(t1) || !std::isfinite(t2)) {
    throw std::invalid_argument("time domain endpoints must be finite");
  }
  if (!(t1 < t2)) {
    throw std::invalid_argument("time domain requires t1 < t2");
  }
}

PointProcess::PointProcess(TimeDomain domain, std::vector<double> events)
    : domain_(domain), events_(std::move(events)), on_boundary_(false) {
  double prev = domain_.t1();
  for (double s : events_) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("event times must be finite");
    }
    if (!(s >= prev)) {
      throw std::invalid_argument(
          "event times must be sorted and within the time domain");
    }
    if (s == prev) on_boundary_ = true;
    prev = s;
  }
  if (!(prev <= domain_.t2())) {
    throw std::invalid_argument(
        "event times must be sorted and within the time domain");
  }
  if (!events_.empty() && events_.back() == domain_.t2()) on_boundary_ = true;
}

InterEventTimes::InterEventTimes(double total, std::vector<double> gaps)
    : total_(total), gaps_(std::move(gaps)), interior_(true) {
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument("inter-event total must be positive");
  }
  if (gaps_.empty()) {
    throw std::invalid_argument("inter-event vector must be nonempty");
  }
  double sum = 0.0;
  for (double g : gaps_) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("inter-event gaps must be nonnegative");
    }
    if (g == 0.0) interior_ = false;
    sum += g;
  }
  if (std::abs(sum - total_) > 1e-9 * total_) {
    throw std::invalid_argument("inter-event gaps must sum to the total");
  }
}

ContrastMatrix::ContrastMatrix(Eigen::MatrixXd psi) : psi_(std::move(psi)) {
  const auto k = psi_.rows();
  if (k < 1 || psi_.cols() != k + 1) {
    throw std::invalid_argument("contrast matrix must be k x (k+1), k >= 1");
  }
  const Eigen::MatrixXd gram_rows = psi_ * psi_.transpose();
  if ((gram_rows - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() >
      kIdentityTol) {
    throw std::invalid_argument("contrast matrix violates Psi Psi^T = I");
  }
  const double n = static_cast<double>(k + 1);
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(k + 1, k + 1) -
      Eigen::MatrixXd::Constant(k + 1, k + 1, 1.0 / n);
  if ((psi_.transpose() * psi_ - centering).cwiseAbs().maxCoeff() >
      kIdentityTol) {
    throw std::invalid_argument(
        "contrast matrix violates Psi^T Psi = I - 11^T/(k+1)");
  }
}

ContrastMatrix build_contrast_matrix(int k) {
  if (k < 1) {
    throw std::invalid_argument("contrast matrix requires k >= 1");
  }
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(k, k + 1);
  for (int i = 1; i <= k; ++i) {
    const double scale =
        1.0 / std::sqrt(static_cast<double>(i) * (i + 1.0));
    for (int j = 0; j < i; ++j) psi(i - 1, j) = scale;
    psi(i - 1, i) = -static_cast<double>(i) * scale;
  }
  return ContrastMatrix(std::move(psi));
}

InterEventTimes to_iet(const PointProcess& p) {
  std::vector<double> gaps;
  gaps.reserve(p.size() + 1);
  double prev = p.domain().t1();
  for (double s : p.events()) {
    gaps.push_back(s - prev);
    prev = s;
  }
  gaps.push_back(p.domain().t2() - prev);
  return InterEventTimes(p.domain().width(), std::move(gaps));
}

PointProcess from_iet(const InterEventTimes& u, const TimeDomain& d) {
  if (std::abs(u.total() - d.width()) > 1e-9 * d.width()) {
    throw std::invalid_argument(
        "inter-event total does not match the time domain width");
  }
  std::vector<double> events;
  events.reserve(u.size() - 1);
  double cursor = d.t1();
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    cursor += u.gaps()[i];
    // Prefix-sum rounding may overshoot the domain by an ulp.
    events.push_back(std::clamp(cursor, d.t1(), d.t2()));
  }
  return PointProcess(d, std::move(events));
}

IlrVector ilr(const InterEventTimes& u, const ContrastMatrix& psi) {
  if (static_cast<std::size_t>(psi.k()) + 1 != u.size()) {
    throw std::invalid_argument("contrast matrix size does not match gaps");
  }
  if (!u.interior()) {
    throw BoundaryError("ILR transform undefined on the simplex boundary");
  }
  Eigen::VectorXd logs(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    logs[static_cast<Eigen::Index>(i)] = std::log(u.gaps()[i]);
  }
  logs.array() -= logs.mean();
  return IlrVector{psi.psi() * logs};
}

InterEventTimes ilr_inverse(const IlrVector& v, const ContrastMatrix& psi,
                            double total) {
  if (v.k() != psi.k()) {
    throw std::invalid_argument("ILR vector size does not match contrast");
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("total must be positive");
  }
  Eigen::VectorXd scores = psi.psi().transpose() * v.v;
  const double peak = scores.maxCoeff();
  Eigen::VectorXd weights = (scores.array() - peak).exp();
  weights /= weights.sum();
  std::vector<double> gaps(weights.data(), weights.data() + weights.size());
  for (double& g : gaps) g *= total;
  return InterEventTimes(total, std::move(gaps));
}

Eigen::MatrixXd permutation_orthogonal(const ContrastMatrix& psi,
                                       const std::vector<int>& perm) {
  const int n = psi.k() + 1;
  if (perm.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("permutation has wrong length");
  }
  std::vector<bool> seen(n, false);
  for (int idx : perm) {
    if (idx < 0 || idx >= n || seen[idx]) {
      throw std::invalid_argument("not a permutation of 0..k");
    }
    seen[idx] = true;
  }
  Eigen::MatrixXd permuted(psi.k(), n);
  for (int i = 0; i < n; ++i) permuted.col(i) = psi.psi().col(perm[i]);
  return psi.psi() * permuted.transpose();
}

}  // namespace ppdepth
