#include "ppdepth/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppdepth/simulation.hpp"

namespace ppdepth {

namespace {

constexpr double kFloorScale = 1e-8;
constexpr double kSurvivalCutoff = 1e-8;

// Bin index for the even partition of [t1, t2] into `bins` cells:
// left-closed right-open, final bin closed, out-of-range clamped.
int bin_index(double t, double t1, double width, int bins) {
  const int raw = static_cast<int>(std::floor((t - t1) / width));
  return std::clamp(raw, 0, bins - 1);
}

// Floor zero bins at a small fraction of the mean rate so the cumulative
// intensity stays strictly increasing. An all-zero estimate (no events) has
// no scale of its own; fall back to unit mass over the span.
void floor_zero_bins(std::vector<double>& values, double span) {
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  const double eps = kFloorScale * (mean > 0.0 ? mean : 1.0 / span);
  for (double& v : values) {
    if (v == 0.0) v = eps;
  }
}

void require_shared_domain(const std::vector<PointProcess>& sample) {
  if (sample.empty()) {
    throw std::invalid_argument("estimation sample is empty");
  }
  for (const PointProcess& p : sample) {
    if (!(p.domain() == sample.front().domain())) {
      throw std::invalid_argument(
          "all realizations must share one time domain");
    }
  }
}

}  // namespace

PiecewiseConstantIntensity::PiecewiseConstantIntensity(
    TimeDomain domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("intensity needs at least one bin");
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("intensity values must be >= 0 and finite");
    }
  }
}

double PiecewiseConstantIntensity::operator()(double t) const {
  return values_[bin_index(t, domain_.t1(), bin_width(), bins())];
}

CumulativeIntensity::CumulativeIntensity(PiecewiseConstantIntensity rate)
    : rate_(std::move(rate)) {
  const double width = rate_.bin_width();
  knots_.resize(rate_.values().size() + 1);
  knots_[0] = 0.0;
  for (std::size_t j = 0; j < rate_.values().size(); ++j) {
    knots_[j + 1] = knots_[j] + rate_.values()[j] * width;
  }
}

double CumulativeIntensity::operator()(double t) const {
  const double t1 = rate_.domain().t1();
  if (t <= t1) return 0.0;
  if (t >= rate_.domain().t2()) return knots_.back();
  const double width = rate_.bin_width();
  int idx = bin_index(t, t1, width, rate_.bins());
  // floor() can land one cell off at an exact edge; fix up so that
  // edge_idx <= t - t1 < edge_{idx+1} and edges evaluate to their knot.
  const double offset = t - t1;
  if (offset < idx * width) --idx;
  if (offset >= (idx + 1) * width && idx + 1 < rate_.bins()) ++idx;
  return knots_[idx] + rate_.values()[idx] * (offset - idx * width);
}

double CumulativeIntensity::inverse(double y) const {
  if (y <= 0.0) return rate_.domain().t1();
  if (y >= knots_.back()) return rate_.domain().t2();
  const auto upper = std::upper_bound(knots_.begin(), knots_.end(), y);
  const auto idx = static_cast<std::size_t>(upper - knots_.begin()) - 1;
  const double width = rate_.bin_width();
  const double t = rate_.domain().t1() + idx * width +
                   (y - knots_[idx]) / rate_.values()[idx];
  return std::min(t, rate_.domain().t2());
}

double ImiIntensity::conditional(double t, double gap) const {
  // lambda2 carries its last bin forward beyond the largest observed gap.
  const double clamped = std::min(std::max(gap, 0.0), lambda2.domain().t2());
  return lambda1(t) * lambda2(clamped);
}

PiecewiseConstantIntensity histogram_estimate(
    const std::vector<PointProcess>& sample, int bins) {
  require_shared_domain(sample);
  if (bins < 1) {
    throw std::invalid_argument("bin count must be >= 1");
  }
  const TimeDomain domain = sample.front().domain();
  const double width = domain.width() / bins;
  std::vector<double> counts(bins, 0.0);
  for (const PointProcess& p : sample) {
    for (double s : p.events()) {
      counts[bin_index(s, domain.t1(), width, bins)] += 1.0;
    }
  }
  const double scale = bins / (static_cast<double>(sample.size()) *
                               domain.width());
  for (double& c : counts) c *= scale;
  floor_zero_bins(counts, domain.width());
  return PiecewiseConstantIntensity(domain, std::move(counts));
}

CumulativeIntensity cumulative(PiecewiseConstantIntensity rate) {
  return CumulativeIntensity(std::move(rate));
}

ImiIntensity imi_estimate(const std::vector<PointProcess>& sample, int bins_t,
                          int bins_gap) {
  require_shared_domain(sample);
  if (bins_t < 1 || bins_gap < 1) {
    throw std::invalid_argument("bin counts must be >= 1");
  }
  const TimeDomain domain = sample.front().domain();
  const std::size_t n = sample.size();

  // Gaps from the domain start and between consecutive events; the censored
  // stretch after the last event carries no gap observation.
  std::size_t total_events = 0;
  double longest_gap = 0.0;
  for (const PointProcess& p : sample) {
    total_events += p.size();
    double prev = domain.t1();
    for (double s : p.events()) {
      longest_gap = std::max(longest_gap, s - prev);
      prev = s;
    }
  }
  if (total_events == 0) {
    throw std::invalid_argument("cannot fit a gap model without events");
  }
  if (!(longest_gap > 0.0)) {
    throw std::invalid_argument("all observed gaps are zero");
  }

  // Gap density p(tau) over [0, L], then the hazard
  // lambda2 = p / survival with the survival taken at each bin's left edge
  // (exact for the piecewise-linear integral of p).
  const double dt = longest_gap / bins_gap;
  std::vector<double> gap_density(bins_gap, 0.0);
  for (const PointProcess& p : sample) {
    double prev = domain.t1();
    for (double s : p.events()) {
      gap_density[bin_index(s - prev, 0.0, dt, bins_gap)] += 1.0;
      prev = s;
    }
  }
  for (double& d : gap_density) {
    d /= dt * static_cast<double>(total_events);
  }
  std::vector<double> hazard(bins_gap, 0.0);
  double survival = 1.0;
  double last_hazard = 0.0;
  for (int i = 0; i < bins_gap; ++i) {
    if (survival < kSurvivalCutoff) {
      hazard[i] = last_hazard;
    } else {
      hazard[i] = gap_density[i] / survival;
      if (hazard[i] > 0.0) last_hazard = hazard[i];
    }
    survival -= gap_density[i] * dt;
  }
  floor_zero_bins(hazard, longest_gap);
  PiecewiseConstantIntensity lambda2(TimeDomain(0.0, longest_gap),
                                     std::move(hazard));

  // lambda1 at bin centers t_k: the per-realization event probability p_k
  // divided by the average hazard the sample exposes at t_k, each
  // realization contributing the hazard at its own elapsed gap t_k - s*(t_k)
  // (the observation start when no event precedes t_k):
  //   lambda1(t_k) = p_k * n / (dt * sum_j lambda2(tau_k^j)).
  const double bin_width = domain.width() / bins_t;
  std::vector<double> event_prob(bins_t, 0.0);
  for (const PointProcess& p : sample) {
    for (double s : p.events()) {
      event_prob[bin_index(s, domain.t1(), bin_width, bins_t)] += 1.0;
    }
  }
  for (double& p : event_prob) p /= static_cast<double>(n);
  std::vector<double> lambda1_values(bins_t, 0.0);
  for (int b = 0; b < bins_t; ++b) {
    const double center = domain.t1() + (b + 0.5) * bin_width;
    double hazard_sum = 0.0;
    for (const PointProcess& p : sample) {
      const auto it = std::lower_bound(p.events().begin(), p.events().end(),
                                       center);
      const double last_event =
          it == p.events().begin() ? domain.t1() : *(it - 1);
      const double gap =
          std::min(center - last_event, lambda2.domain().t2());
      hazard_sum += lambda2(gap);
    }
    lambda1_values[b] = event_prob[b] * static_cast<double>(n) /
                        (bin_width * hazard_sum);
  }
  floor_zero_bins(lambda1_values, domain.width());
  return ImiIntensity{
      PiecewiseConstantIntensity(domain, std::move(lambda1_values)),
      std::move(lambda2)};
}

std::vector<double> imi_cumulative(const ImiIntensity& model,
                                   const PointProcess& p) {
  const TimeDomain& domain = p.domain();
  if (!(model.lambda1.domain() == domain)) {
    throw std::invalid_argument("realization outside the model domain");
  }
  std::vector<double> knots;
  knots.reserve(p.size() + 2);
  knots.push_back(domain.t1());
  knots.insert(knots.end(), p.events().begin(), p.events().end());
  knots.push_back(domain.t2());

  const double w1 = model.lambda1.bin_width();
  const double w2 = model.lambda2.bin_width();
  const double gap_cap = model.lambda2.domain().t2();

  std::vector<double> result;
  result.reserve(knots.size());
  result.push_back(0.0);
  double integral = 0.0;
  std::vector<double> cuts;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double a = knots[i - 1];  // gap clock resets here
    const double b = knots[i];
    cuts.clear();
    cuts.push_back(a);
    // lambda1 bin edges inside (a, b).
    const double t1 = domain.t1();
    for (int j = static_cast<int>(std::ceil((a - t1) / w1));
         t1 + j * w1 < b; ++j) {
      const double edge = t1 + j * w1;
      if (edge > a) cuts.push_back(edge);
    }
    // lambda2 bin edges, offset by the segment start; beyond the cap the
    // hazard is constant, so no further cuts are needed.
    for (int j = 1; j <= model.lambda2.bins() && a + j * w2 < b; ++j) {
      cuts.push_back(a + j * w2);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 1; c < cuts.size(); ++c) {
      const double lo = cuts[c - 1];
      const double hi = cuts[c];
      if (!(hi > lo)) continue;
      const double mid = 0.5 * (lo + hi);
      const double gap = std::min(mid - a, gap_cap);
      integral += model.lambda1(mid) * model.lambda2(gap) * (hi - lo);
    }
    result.push_back(integral);
  }
  return result;
}

CardinalityDistribution empirical_cardinality(
    const std::vector<PointProcess>& sample) {
  if (sample.empty()) {
    throw std::invalid_argument("estimation sample is empty");
  }
  std::vector<std::size_t> counts;
  counts.reserve(sample.size());
  for (const PointProcess& p : sample) counts.push_back(p.size());
  return CardinalityDistribution::empirical(counts);
}

std::vector<ConvergenceRow> convergence_experiment(
    const std::function<double(double)>& rate, double rate_bound,
    const TimeDomain& domain, const std::vector<std::size_t>& n_grid,
    const std::function<int(std::size_t)>& bin_rule, std::uint64_t seed,
    int grid_points) {
  if (grid_points < 2) {
    throw std::invalid_argument("need at least two grid points");
  }
  // Reference cumulative intensity on the evaluation grid via per-interval
  // Simpson sums; the intervals are far finer than any feature of the rate.
  std::vector<double> grid(grid_points);
  std::vector<double> truth(grid_points);
  const double step = domain.width() / (grid_points - 1);
  grid[0] = domain.t1();
  truth[0] = 0.0;
  for (int g = 1; g < grid_points; ++g) {
    grid[g] = domain.t1() + g * step;
    const double mid = grid[g] - 0.5 * step;
    truth[g] = truth[g - 1] +
               step / 6.0 * (rate(grid[g - 1]) + 4.0 * rate(mid) + rate(grid[g]));
  }

  std::vector<ConvergenceRow> table;
  table.reserve(n_grid.size());
  for (std::size_t run = 0; run < n_grid.size(); ++run) {
    const std::size_t n = n_grid[run];
    SeededRng rng(seed, run);
    std::vector<PointProcess> sample;
    sample.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      sample.push_back(simulate_ipp(rate, rate_bound, domain, rng));
    }
    const int bins = bin_rule(n);
    const CumulativeIntensity estimate =
        cumulative(histogram_estimate(sample, bins));
    double sup = 0.0;
    for (int g = 0; g < grid_points; ++g) {
      sup = std::max(sup, std::abs(estimate(grid[g]) - truth[g]));
    }
    table.push_back({n, bins, sup});
  }
  return table;
}

}  // namespace ppdepth
