#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "freeorder/events.hpp"
#include "freeorder/permutation.hpp"
#include "freeorder/rat.hpp"

namespace freeorder {

// Smallest admissible support size ceil(2 ln(q) / (delta^2 p0)), floored at 2
// (a single-permutation support makes the frequency guarantee degenerate).
int required_support(int q, double delta, double p0);

// omega(ell, s, gamma) = (1 - delta p)^(ell-s+1) / (1-delta)^((1-delta) p ell),
// the step weight of the pessimistic estimator. Comparison-only role, so it
// is evaluated in extended precision floating point.
long double omega_weight(int ell, int s, double delta, double p_gamma);

struct DerandomizerConfig {
  Rat delta;    // in (0,1); exact so coverage checks stay exact
  int ell = 0;  // support size; 0 = use required_support
};

// Running state of the estimator: the weight of event gamma is
// (1-delta)^satisfied[gamma], tracked as the integer exponent.
struct EstimatorState {
  int s = 0;
  std::vector<long long> satisfied;
};

struct ConstructionStep {
  int s = 0;    // permutations already final
  int r = 0;    // positions fixed in the current one (0 = none yet)
  int tau = 0;  // chosen value (0 for the r = 0 marker rows)
  double phi = 0.0;
};

struct Construction {
  PermutationMultiset support;
  std::vector<ConstructionStep> log;   // estimator trace
  std::vector<long long> satisfied;    // per event, count over the support
  std::vector<Rat> measures;           // exact event measures
  double initial_phi = 0.0;            // estimator before anything is fixed
};

// The pessimistic estimator at the given state and partial permutation.
long double estimator_value(const std::vector<PositiveEvent>& events, const Bucketing& b,
                            const Rat& delta, int ell, const EstimatorState& st,
                            const SemiRandomPermutation& prefix);

// Method of conditional expectations: fixes the support permutation by
// permutation and position by position, minimizing the estimator over the
// candidate values (ties to the smallest). First entry is the identity.
// Guarantees, verified after the fact: every event's frequency in the support
// is at least (1-delta) times its lower bound.
// Throws when the initial estimator is >= 1 (support too small / bad bounds)
// or when an event's exact measure falls below its stated lower bound.
Construction construct_distribution(const std::vector<PositiveEvent>& events,
                                    const Bucketing& b, const DerandomizerConfig& cfg);

struct CoverageRow {
  int event_id = 0;
  long long count = 0;
  Rat required;  // (1-delta) * p_gamma * ell
  bool ok = false;
};

// Exact per-event frequency check of a support against the guarantee.
std::vector<CoverageRow> verify_coverage(const PermutationMultiset& support,
                                         const std::vector<PositiveEvent>& events,
                                         const Bucketing& b, const Rat& delta);

// Construction log as JSON lines: {"s":..,"r":..,"tau":..,"phi":..}
void write_construction_log(std::ostream& os, const Construction& c);

}  // namespace freeorder
