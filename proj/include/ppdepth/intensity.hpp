#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ppdepth/depth.hpp"
#include "ppdepth/geometry.hpp"

// Intensity models and estimators: the histogram estimator for inhomogeneous
// Poisson processes, the factorized lambda1(t) * lambda2(t - s*(t)) estimator
// for Markov interval processes, exact piecewise integration of both, and the
// empirical harness measuring how fast the estimated cumulative intensity
// converges to the truth.

namespace ppdepth {

// Piecewise-constant rate over M equal bins of a time domain. Values are
// strictly positive after estimation (zero bins are floored) so that the
// cumulative intensity is strictly increasing.
class PiecewiseConstantIntensity {
 public:
  PiecewiseConstantIntensity(TimeDomain domain, std::vector<double> values);

  const TimeDomain& domain() const { return domain_; }
  int bins() const { return static_cast<int>(values_.size()); }
  double bin_width() const { return domain_.width() / bins(); }
  const std::vector<double>& values() const { return values_; }

  // Rate at t; bins are left-closed right-open with the final bin closed,
  // and t outside the domain clamps to the nearest bin.
  double operator()(double t) const;

 private:
  TimeDomain domain_;
  std::vector<double> values_;
};

// Exact piecewise-linear antiderivative of a piecewise-constant rate, with
// Lambda(t1) = 0. Strictly increasing whenever every rate value is positive.
class CumulativeIntensity {
 public:
  explicit CumulativeIntensity(PiecewiseConstantIntensity rate);

  const TimeDomain& domain() const { return rate_.domain(); }
  double total() const { return knots_.back(); }
  double operator()(double t) const;

  // Piecewise-linear inverse on [0, total]; clamps outside.
  double inverse(double y) const;

 private:
  PiecewiseConstantIntensity rate_;
  std::vector<double> knots_;  // Lambda at bin edges, knots_[0] = 0
};

// Factorized conditional intensity lambda1(t) * lambda2(t - s*(t)):
// lambda1 lives on the observation domain, lambda2 on gap space [0, L] with
// L the largest observed inter-event time. Gaps beyond L evaluate to the
// last lambda2 bin (carried forward).
struct ImiIntensity {
  PiecewiseConstantIntensity lambda1;
  PiecewiseConstantIntensity lambda2;

  double conditional(double t, double gap) const;
};

// Histogram intensity estimate over a shared domain:
// lambda(t) = M / (n (t2-t1)) * total events in the bin containing t.
// Zero bins are floored at 1e-8 times the mean bin rate.
PiecewiseConstantIntensity histogram_estimate(
    const std::vector<PointProcess>& sample, int bins);

CumulativeIntensity cumulative(PiecewiseConstantIntensity rate);

// Factorized estimate: a gap-density histogram over [0, L] turned into the
// hazard lambda2 = p / (1 - integral p), then lambda1 recovered at the time
// bins from per-bin event probabilities divided by the mean hazard that the
// sample exposes there. Implements the two-pass binning scheme with the
// hazard capped once the survival drops below 1e-8.
ImiIntensity imi_estimate(const std::vector<PointProcess>& sample, int bins_t,
                          int bins_gap);

// Lambda of the factorized model along one realization: values at
// t1 = s_0, s_1, ..., s_k, s_{k+1} = t2, integrating the product exactly
// over the piece intersections (the gap clock resets at each event).
std::vector<double> imi_cumulative(const ImiIntensity& model,
                                   const PointProcess& p);

// Normalized histogram of the observed cardinalities.
CardinalityDistribution empirical_cardinality(
    const std::vector<PointProcess>& sample);

struct ConvergenceRow {
  std::size_t n = 0;
  int bins = 0;
  double sup_error = 0.0;
};

// For each n: simulate n realizations at the given rate, histogram-estimate
// with bin_rule(n) bins, and record sup_x |estimated - true| cumulative
// intensity over an evenly spaced grid. Each n uses an independent substream
// of the seed.
std::vector<ConvergenceRow> convergence_experiment(
    const std::function<double(double)>& rate, double rate_bound,
    const TimeDomain& domain, const std::vector<std::size_t>& n_grid,
    const std::function<int(std::size_t)>& bin_rule, std::uint64_t seed,
    int grid_points = 10000);

}  // namespace ppdepth
