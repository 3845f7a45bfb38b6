#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "ppdepth/geometry.hpp"
#include "ppdepth/rng.hpp"

// Seeded samplers for the process families used throughout: homogeneous
// Poisson, inhomogeneous Poisson via Lewis-Shedler thinning, and Markov
// interval processes via Ogata-style thinning of the conditional intensity.

namespace ppdepth {

// Raised when a supplied dominating bound is observed to be violated at a
// candidate point, or a cumulative intensity fails to be increasing. The
// samplers fail loudly rather than silently biasing the output.
class NumericContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using IntensityFn = std::function<double(double)>;

// N ~ Poisson(rate * width) events placed uniformly in the domain.
PointProcess simulate_hpp(double rate, const TimeDomain& d, SeededRng& rng);

// Exactly k events as sorted uniform draws; conditioned on cardinality the
// inter-event times are uniform on the simplex.
PointProcess simulate_hpp_conditional(std::size_t k, const TimeDomain& d,
                                      SeededRng& rng);

// Lewis-Shedler thinning: candidates from an HPP at rate_bound, kept with
// probability rate(t)/rate_bound. rate must stay within [0, rate_bound].
PointProcess simulate_ipp(const IntensityFn& rate, double rate_bound,
                          const TimeDomain& d, SeededRng& rng);

// Inhomogeneous Poisson conditioned on cardinality k: repeated thinning
// until a realization with exactly k events appears.
PointProcess simulate_ipp_conditional(std::size_t k, const IntensityFn& rate,
                                      double rate_bound, const TimeDomain& d,
                                      SeededRng& rng);

// Ogata-style thinning against the conditional intensity
// rate_t(t) * rate_gap(t - s*(t)), where s*(t) is the last event before t
// (the domain start if there is none). The product must stay within
// [0, bound] at every reachable (t, gap).
PointProcess simulate_imi(const IntensityFn& rate_t,
                          const IntensityFn& rate_gap, double bound,
                          const TimeDomain& d, SeededRng& rng);

}  // namespace ppdepth
