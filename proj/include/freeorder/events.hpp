#pragma once

#include <vector>

#include "freeorder/permutation.hpp"
#include "freeorder/rat.hpp"

namespace freeorder {

// Partition of positions {1..n} into t >= 2 consecutive buckets. bounds holds
// the right endpoints tau_1 < ... < tau_t = n.
struct Bucketing {
  int n = 0;
  std::vector<int> bounds;

  Bucketing() = default;  // empty placeholder; real instances use the ctor below
  Bucketing(int n_, std::vector<int> bounds_);

  int t() const { return static_cast<int>(bounds.size()); }
  int lo(int j) const { return j == 1 ? 1 : bounds[j - 2] + 1; }
  int hi(int j) const { return bounds[j - 1]; }
  int size(int j) const { return hi(j) - lo(j) + 1; }
  int bucket_of(int pos) const;
};

// The event "the ordered tuple sigma appears in that relative order, with
// sigma_i landing in bucket f(i)". f must be non-decreasing; sigma entries
// pairwise distinct. k = 0 is the always-true event.
struct AtomicEvent {
  std::vector<int> sigma;
  std::vector<int> f;

  int k() const { return static_cast<int>(sigma.size()); }
};

// Disjoint union of atomic events. lower_bound is a caller-supplied lower
// bound on the measure (exact measure by default in this project).
struct PositiveEvent {
  int id = 0;
  std::vector<AtomicEvent> atoms;
  Rat lower_bound;
};

void validate_atomic(const AtomicEvent& a, const Bucketing& b);

// Debug dump for test fixtures: sigma and f as JSON lists.
std::string atomic_to_json(const AtomicEvent& a);
std::string positive_to_json(const PositiveEvent& p);

// Direct membership test of the definition.
bool atomic_holds(const AtomicEvent& a, const Bucketing& b, const Permutation& pi);

// Exact probability of the atomic event under a uniformly random order.
// A mapping that overfills a bucket yields probability 0, not an error.
Rat atomic_prob(const AtomicEvent& a, const Bucketing& b);

// Exact probability of the atomic event given that the first r positions are
// fixed and the remaining n-r positions are a uniformly random arrangement of
// the unused elements. r = 0 reduces to atomic_prob.
Rat conditional_atomic_prob(const AtomicEvent& a, const SemiRandomPermutation& sp,
                            const Bucketing& b);

bool positive_holds(const PositiveEvent& p, const Bucketing& b, const Permutation& pi);

// Sum of the atoms' probabilities. Atoms over one shared element set are
// pairwise disjoint exactly when their (sigma, f) descriptions differ; a
// duplicated description is rejected.
Rat positive_prob(const PositiveEvent& p, const Bucketing& b);

// Exhaustive disjointness check at small n (n <= 10): no permutation may
// satisfy two atoms.
bool atoms_pairwise_disjoint_exhaustive(const PositiveEvent& p, const Bucketing& b);

// ---- 1-secretary family -----------------------------------------------

// Two buckets {1..floor(ell/e)-1}, {floor(ell/e)..ell}.
Bucketing onesec_bucketing(int ell);

// Positive event "the wait-and-pick run tracking the k values at positions
// sigma(1..k) picks the top one": union over i = 2..k of the arrangements
// with sigma(i) first (in bucket 1), sigma(1) in bucket 2, and sigma(2..i-1)
// after sigma(1). Every atom implies success for the checkpoint at the
// bucket boundary.
PositiveEvent decompose_1sec_positive(const std::vector<int>& sigma, const Bucketing& b);

// All ordered k-tuples over [ell]; ids are assigned in enumeration order.
std::vector<PositiveEvent> onesec_full_family(int ell, int k, const Bucketing& b);

// ---- k-secretary family -----------------------------------------------

// One table of schedule constants shared by the event decomposition and the
// runtime multiple-threshold algorithm, so the two agree exactly on every
// rounded quantity.
struct KsecSchedule {
  int ell = 0;
  int k = 0;
  double delta = 0.0;            // sqrt(ln k / k)
  int windows = 0;               // J = ceil(log2(1/delta))
  std::vector<int> ell_j;        // J+1 entries; ell_j[0] = floor(delta*ell), capped at ell
  std::vector<double> eps_j;     // J entries, sqrt(3*delta / 2^j)
  std::vector<double> k_j;       // J entries, k*ell_j[j]/ell
  std::vector<int> rank_j;       // statistic rank per window, clamped to [1, ell_j[j]]
  std::vector<int> h_thr;        // ceil((1-eps_j)*k_j), floored at 0 (0 = vacuous)
  std::vector<int> l_top;        // floor((1-2 eps_j)*k), floored at 0 (0 = vacuous)
  std::vector<int> l_thr;        // floor((1-eps_j)*k_j)
  std::vector<int> bracket_hi;   // usable bracket tops, index b+1 for bracket b in {-1,..,J-2}
  int i_max = 0;                 // largest usable rank i

  static KsecSchedule make(int ell, int k);
  // bracket index in {-1, 0, ..., windows-2} for rank i in 1..i_max
  int bracket_of(int i) const;
  // Same window structure with every position boundary multiplied by factor;
  // ranks and thresholds are scale-invariant. Used to run the algorithm at
  // dimension ell*factor in exact agreement with a lifted support.
  KsecSchedule scaled(int factor) const;
};

// Buckets {1..ell_0}, {ell_0+1..ell_1}, ..., last ending at ell.
Bucketing ksec_bucketing(const KsecSchedule& s);

// Positive event "rank-i tracked item is picked while no window threshold
// goes bad", for the tracked positions s_hat (ordered by rank).
PositiveEvent decompose_ksec_positive(const std::vector<int>& s_hat, int i,
                                      const KsecSchedule& s, const Bucketing& b);

}  // namespace freeorder
