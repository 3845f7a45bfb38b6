#pragma once

// Shared oracles for the test suites: finite differences, Kolmogorov-Smirnov
// machinery, quantiles and random simplex points. These deliberately avoid
// the code paths under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "ppdepth/rng.hpp"

namespace testsupport {

inline Eigen::VectorXd finite_difference_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd grad(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd hi = x, lo = x;
    hi[i] += h;
    lo[i] -= h;
    grad[i] = (f(hi) - f(lo)) / (2.0 * h);
  }
  return grad;
}

inline Eigen::MatrixXd finite_difference_hessian(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd hess(n, n);
  const double f0 = f(x);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      if (i == j) {
        Eigen::VectorXd hi = x, lo = x;
        hi[i] += h;
        lo[i] -= h;
        hess(i, i) = (f(hi) - 2.0 * f0 + f(lo)) / (h * h);
      } else {
        Eigen::VectorXd pp = x, pm = x, mp = x, mm = x;
        pp[i] += h;
        pp[j] += h;
        pm[i] += h;
        pm[j] -= h;
        mp[i] -= h;
        mp[j] += h;
        mm[i] -= h;
        mm[j] -= h;
        hess(i, j) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
        hess(j, i) = hess(i, j);
      }
    }
  }
  return hess;
}

// P(D > d) for the Kolmogorov statistic, by the standard asymptotic series
// with Stephens' small-sample correction.
inline double ks_p_value(double d, std::size_t n) {
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term =
        2.0 * std::pow(-1.0, j - 1) * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

// One-sample KS test of `samples` against a continuous CDF.
inline double ks_test(std::vector<double> samples,
                      const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double u = cdf(samples[i]);
    d = std::max(d, std::max((i + 1.0) / n - u, u - i / n));
  }
  return ks_p_value(d, samples.size());
}

// Two-sample KS test (ties allowed; both ECDFs step together).
inline double ks_test_two_sample(std::vector<double> a,
                                 std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / a.size() -
                             static_cast<double>(ib) / b.size()));
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n_eff = na * nb / (na + nb);
  return ks_p_value(d, static_cast<std::size_t>(n_eff));
}

// Lower empirical quantile (the order statistic at ceil(q n)).
inline double quantile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const auto idx = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(values.size())));
  return values[std::min(idx == 0 ? 0 : idx - 1, values.size() - 1)];
}

// Uniform point on the open simplex with the given component sum, via
// normalized exponentials.
inline std::vector<double> random_simplex(std::size_t parts, double total,
                                          ppdepth::SeededRng& rng) {
  std::vector<double> gaps(parts);
  double sum = 0.0;
  for (double& g : gaps) {
    g = rng.exponential(1.0);
    sum += g;
  }
  for (double& g : gaps) g *= total / sum;
  return gaps;
}

inline std::vector<int> random_permutation(int n, ppdepth::SeededRng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform01() * (i + 1));
    std::swap(perm[i], perm[std::min(j, i)]);
  }
  return perm;
}

}  // namespace testsupport
