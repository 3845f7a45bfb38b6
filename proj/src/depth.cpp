#include "ppdepth/depth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppdepth/density.hpp"

namespace ppdepth {

namespace {

double poisson_log_pmf(double mean, std::size_t k) {
  const double kd = static_cast<double>(k);
  return -mean + kd * std::log(mean) - std::lgamma(kd + 1.0);
}

// log((k+1)^{k+1} * prod(gap_i / total)) = sum_i log(gap_i (k+1) / total);
// <= 0 by AM-GM, clamped against a positive rounding residue so the depth
// never exceeds 1. The factored form keeps exact-center gaps at exactly 0.
double log_center_ratio(const std::vector<double>& gaps, double total) {
  const double n = static_cast<double>(gaps.size());
  double value = 0.0;
  for (double g : gaps) value += std::log(g * n / total);
  return std::min(value, 0.0);
}

}  // namespace

CardinalityDistribution CardinalityDistribution::poisson(double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson mean must be positive and finite");
  }
  CardinalityDistribution dist;
  dist.analytic_ = true;
  dist.mean_ = mean;
  const auto limit =
      static_cast<std::size_t>(std::ceil(mean + 10.0 * std::sqrt(mean)));
  double best = 0.0;
  for (std::size_t j = 0; j <= limit; ++j) {
    best = std::max(best, dist.depth(j));
  }
  dist.max_depth_ = best;
  return dist;
}

CardinalityDistribution CardinalityDistribution::empirical(
    const std::vector<std::size_t>& counts) {
  if (counts.empty()) {
    throw std::invalid_argument("empirical cardinality sample is empty");
  }
  CardinalityDistribution dist;
  const std::size_t top = *std::max_element(counts.begin(), counts.end());
  dist.pmf_.assign(top + 1, 0.0);
  for (std::size_t c : counts) dist.pmf_[c] += 1.0;
  for (double& p : dist.pmf_) p /= static_cast<double>(counts.size());
  dist.cdf_.resize(dist.pmf_.size());
  std::partial_sum(dist.pmf_.begin(), dist.pmf_.end(), dist.cdf_.begin());
  double best = 0.0;
  for (std::size_t j = 0; j < dist.pmf_.size(); ++j) {
    best = std::max(best, dist.depth(j));
  }
  dist.max_depth_ = best;
  return dist;
}

double CardinalityDistribution::prob_leq(std::size_t k) const {
  if (analytic_) {
    double sum = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
      sum += std::exp(poisson_log_pmf(mean_, j));
    }
    return std::min(sum, 1.0);
  }
  if (k >= cdf_.size()) return 1.0;
  return cdf_[k];
}

double CardinalityDistribution::prob_geq(std::size_t k) const {
  if (k == 0) return 1.0;
  if (analytic_) return std::max(1.0 - prob_leq(k - 1), 0.0);
  if (k >= cdf_.size()) return 0.0;
  return std::max(1.0 - cdf_[k - 1], 0.0);
}

double CardinalityDistribution::depth(std::size_t k) const {
  return std::min(prob_leq(k), prob_geq(k));
}

double CardinalityDistribution::weight(std::size_t k) const {
  return depth(k) / max_depth_;
}

std::pair<double, double> cardinality_depth(
    std::size_t k, const CardinalityDistribution& dist) {
  return {dist.depth(k), dist.weight(k)};
}

double ilr_depth_hpp(const PointProcess& p) {
  if (p.on_boundary()) return 0.0;
  return 1.0 /
         (1.0 - log_center_ratio(to_iet(p).gaps(), p.domain().width()));
}

double ilr_depth_from_ilr(const IlrVector& v, const ContrastMatrix& psi) {
  const double n = psi.k() + 1.0;
  const double log_ratio = std::min(n * std::log(n) + log_kernel(v, psi), 0.0);
  return 1.0 / (1.0 - log_ratio);
}

double simplified_ilr_depth(const PointProcess& p) {
  if (p.on_boundary()) return 0.0;
  const InterEventTimes u = to_iet(p);
  std::vector<double> logs(u.size());
  std::transform(u.gaps().begin(), u.gaps().end(), logs.begin(),
                 [](double g) { return std::log(g); });
  const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) /
                      static_cast<double>(logs.size());
  double sum_sq = 0.0;
  for (double lg : logs) sum_sq += (lg - mean) * (lg - mean);
  return 1.0 / (1.0 + 0.5 * sum_sq);
}

double depth_from_rescaled_times(const std::vector<double>& rescaled) {
  if (rescaled.size() < 2) {
    throw std::invalid_argument("need Lambda at both domain endpoints");
  }
  const double total = rescaled.back() - rescaled.front();
  if (!(total > 0.0)) {
    throw InvalidIntensityError("cumulative intensity has no mass");
  }
  // Tolerate an ulp-scale wrinkle from piecewise evaluation; anything worse
  // is a genuinely decreasing Lambda.
  const double slack = 1e-12 * total;
  std::vector<double> gaps;
  gaps.reserve(rescaled.size() - 1);
  for (std::size_t i = 1; i < rescaled.size(); ++i) {
    double gap = rescaled[i] - rescaled[i - 1];
    if (gap < -slack) {
      throw InvalidIntensityError("cumulative intensity is not increasing");
    }
    if (gap <= 0.0) return 0.0;
    gaps.push_back(gap);
  }
  return 1.0 / (1.0 - log_center_ratio(gaps, total));
}

double time_rescaled_depth(const PointProcess& p,
                           const std::function<double(double)>& cumulative) {
  if (p.on_boundary()) return 0.0;
  std::vector<double> rescaled;
  rescaled.reserve(p.size() + 2);
  const double offset = cumulative(p.domain().t1());
  rescaled.push_back(0.0);
  for (double s : p.events()) rescaled.push_back(cumulative(s) - offset);
  rescaled.push_back(cumulative(p.domain().t2()) - offset);
  return depth_from_rescaled_times(rescaled);
}

DepthReport overall_depth(const PointProcess& p,
                          const CardinalityDistribution& dist,
                          const ConditionalDepthFn& conditional, double r,
                          std::string id) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("weight exponent r must be positive");
  }
  DepthReport report;
  report.id = std::move(id);
  report.k = p.size();
  std::tie(report.d1, report.w) = cardinality_depth(report.k, dist);
  report.d_cond = conditional(p);
  report.d_overall = std::pow(report.w, r) * report.d_cond;
  return report;
}

std::vector<DepthReport> rank_reports(std::vector<DepthReport> reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const DepthReport& a, const DepthReport& b) {
                     return a.d_overall > b.d_overall;
                   });
  for (std::size_t i = 0; i < reports.size(); ++i) reports[i].rank = i + 1;
  return reports;
}

}  // namespace ppdepth
