#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppdepth/geometry.hpp"

// Center-outward depth for point-process realizations. The overall depth of
// a realization is w(k)^r * D_c, where w is the normalized one-dimensional
// depth of the cardinality k and D_c is a conditional depth of the event
// placement given k. Three conditional depths are provided: the ILR depth of
// a homogeneous Poisson process, its Gaussian-approximation simplification,
// and the time-rescaled extension to arbitrary conditional intensities.

namespace ppdepth {

// Raised when a cumulative intensity handed to the time-rescaled depth is
// observed to be non-increasing at the evaluated points.
class InvalidIntensityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Distribution of the event count, either analytic Poisson or an empirical
// histogram over an observed sample of counts.
class CardinalityDistribution {
 public:
  static CardinalityDistribution poisson(double mean);
  static CardinalityDistribution empirical(
      const std::vector<std::size_t>& counts);

  double prob_leq(std::size_t k) const;
  double prob_geq(std::size_t k) const;

  // D1(k) = min{P(|S| <= k), P(|S| >= k)}.
  double depth(std::size_t k) const;

  // w(k) = D1(k) / max_j D1(j). For the analytic form the maximum is
  // searched over j in [0, mean + 10 sqrt(mean)]; the tail beyond stays
  // below the mode's value.
  double weight(std::size_t k) const;

 private:
  CardinalityDistribution() = default;

  bool analytic_ = false;
  double mean_ = 0.0;
  std::vector<double> pmf_;   // empirical form
  std::vector<double> cdf_;   // empirical form, cdf_[k] = P(|S| <= k)
  double max_depth_ = 0.0;
};

// Per-realization record of the depth decomposition and final rank.
struct DepthReport {
  std::string id;
  std::size_t k = 0;
  double d1 = 0.0;
  double w = 0.0;
  double d_cond = 0.0;
  double d_overall = 0.0;
  std::size_t rank = 0;
};

// Cardinality term of the overall depth: (D1(k), w(k)).
std::pair<double, double> cardinality_depth(
    std::size_t k, const CardinalityDistribution& dist);

// ILR depth of an HPP realization,
//   1 / (1 - log((k+1)^{k+1} / (t2-t1)^{k+1} * prod gaps)),
// computed in log space. 0 on the boundary, 1 exactly at the evenly spaced
// center, and 1 for the empty realization (its single gap is the center of
// the one-point simplex).
double ilr_depth_hpp(const PointProcess& p);

// Same depth evaluated from ILR coordinates,
//   1 / (1 - log((k+1)^{k+1} / (sum_p exp(v^T Psi_{:,p}))^{k+1})).
// Agrees with ilr_depth_hpp through the ILR change of variables.
double ilr_depth_from_ilr(const IlrVector& v, const ContrastMatrix& psi);

// Gaussian-approximation variant: 1 / (1 + |ilr(u)|^2 / 2), evaluated as
// 1 / (1 + sum_i log(gap_i / geometric mean)^2 / 2). 0 on the boundary.
double simplified_ilr_depth(const PointProcess& p);

// Depth from already-rescaled knots: `rescaled` holds Lambda evaluated at
// t1 = s_0, s_1, ..., s_k, s_{k+1} = t2. Entries must be nondecreasing with
// a strictly positive total; a zero gap yields depth 0 (boundary limit) and
// a decreasing pair raises InvalidIntensityError.
double depth_from_rescaled_times(const std::vector<double>& rescaled);

// Time-rescaled ILR depth for a general conditional intensity: maps events
// through the cumulative intensity and applies the HPP depth to the result.
// `cumulative` must be increasing on the domain; any offset at t1 is
// subtracted internally.
double time_rescaled_depth(const PointProcess& p,
                           const std::function<double(double)>& cumulative);

using ConditionalDepthFn = std::function<double(const PointProcess&)>;

// Overall depth w(k)^r * conditional(p); rank is left to rank_reports.
DepthReport overall_depth(const PointProcess& p,
                          const CardinalityDistribution& dist,
                          const ConditionalDepthFn& conditional, double r,
                          std::string id = {});

// Sorts descending by overall depth, breaking ties by input order, and
// assigns ranks 1..n.
std::vector<DepthReport> rank_reports(std::vector<DepthReport> reports);

}  // namespace ppdepth
