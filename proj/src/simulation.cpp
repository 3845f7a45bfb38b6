#include "ppdepth/simulation.hpp"

#include <algorithm>
#include <cmath>

namespace ppdepth {

namespace {

// Tolerated relative overshoot before a bound violation is reported, so that
// bounds computed as exact suprema survive rounding.
constexpr double kBoundSlack = 1.0 + 1e-12;

void check_rate(double value, double bound, const char* what) {
  if (!std::isfinite(value) || value < 0.0) {
    throw NumericContractViolation(std::string(what) +
                                   " intensity must be finite and >= 0");
  }
  if (value > bound * kBoundSlack) {
    throw NumericContractViolation(std::string(what) +
                                   " intensity exceeds the supplied bound");
  }
}

}  // namespace

PointProcess simulate_hpp(double rate, const TimeDomain& d, SeededRng& rng) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("HPP rate must be positive");
  }
  const std::uint64_t n = rng.poisson(rate * d.width());
  return simulate_hpp_conditional(static_cast<std::size_t>(n), d, rng);
}

PointProcess simulate_hpp_conditional(std::size_t k, const TimeDomain& d,
                                      SeededRng& rng) {
  std::vector<double> events(k);
  for (double& s : events) s = rng.uniform(d.t1(), d.t2());
  std::sort(events.begin(), events.end());
  return PointProcess(d, std::move(events));
}

PointProcess simulate_ipp(const IntensityFn& rate, double rate_bound,
                          const TimeDomain& d, SeededRng& rng) {
  if (!(rate_bound > 0.0)) {
    throw std::invalid_argument("thinning bound must be positive");
  }
  const PointProcess candidates = simulate_hpp(rate_bound, d, rng);
  std::vector<double> events;
  events.reserve(candidates.size());
  for (double t : candidates.events()) {
    const double value = rate(t);
    check_rate(value, rate_bound, "point");
    if (rng.uniform01() < value / rate_bound) events.push_back(t);
  }
  return PointProcess(d, std::move(events));
}

PointProcess simulate_ipp_conditional(std::size_t k, const IntensityFn& rate,
                                      double rate_bound, const TimeDomain& d,
                                      SeededRng& rng) {
  for (;;) {
    PointProcess p = simulate_ipp(rate, rate_bound, d, rng);
    if (p.size() == k) return p;
  }
}

PointProcess simulate_imi(const IntensityFn& rate_t,
                          const IntensityFn& rate_gap, double bound,
                          const TimeDomain& d, SeededRng& rng) {
  if (!(bound > 0.0)) {
    throw std::invalid_argument("thinning bound must be positive");
  }
  std::vector<double> events;
  double t = d.t1();
  double last_event = d.t1();
  for (;;) {
    t += rng.exponential(bound);
    if (t > d.t2()) break;
    const double value = rate_t(t) * rate_gap(t - last_event);
    check_rate(value, bound, "conditional");
    if (rng.uniform01() * bound < value) {
      events.push_back(t);
      last_event = t;
    }
  }
  return PointProcess(d, std::move(events));
}

}  // namespace ppdepth
