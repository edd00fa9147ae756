#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "freeorder/exact.hpp"
#include "freeorder/permutation.hpp"
#include "freeorder/rat.hpp"
#include "freeorder/secretary.hpp"

namespace freeorder {

struct SemitoneSequence {
  std::vector<int> elements;  // x_1..x_s, distinct elements of [n]
};

// Definitional check: in every permutation, each element's position is the
// running minimum or maximum of the positions of the prefix so far.
bool is_semitone(const std::vector<int>& elements, const std::vector<Permutation>& against);

// Backtracking search for a sequence of length max(1, floor(log2(n)/(l+1)))
// semitone w.r.t. every given permutation; candidates are tried
// extreme-positions-first. The result always passes is_semitone.
SemitoneSequence find_semitone(const std::vector<Permutation>& perms, int n);

// Hard value assignment: the semitone elements carry distinct powers of
// beta = k/(1-eps) drawn by the recursive interval-halving rule; everything
// else carries (1-eps)/k.
struct HardAssignment {
  ValueAssignment values;             // double view for running algorithms
  std::vector<int> sequence;          // the semitone elements used
  std::vector<BigRat> exact_values;   // exact value of each sequence element
  BigRat filler;                      // (1-eps)/k
  std::vector<int> branch;            // per step from x_s down to x_2: 0 lower, 1 upper
  double eps = 0.0;
  int k = 0;
};

// At the step with t elements left the current element gets the middle of the
// value interval; recursion continues on the lower half with probability 1/t
// and on the upper half otherwise. Deterministic given the seed.
HardAssignment hard_assignment_sample(const SemitoneSequence& seq, int n, int k,
                                      const Rat& eps, std::uint64_t seed);

struct WpAdversaryResult {
  ValueAssignment values;
  bool checkpoint_branch = false;  // true: m >= k construction, false: m < k
  std::vector<int> blocked;        // m >= k: the high-value set K
  int special = 0;                 // m < k: the element valued 1
};

// Value assignment on which every wait-and-pick run with checkpoint m (any
// statistic) over the given permutations achieves ratio < 1 - eps. The
// guarantee is verified by simulation before returning.
WpAdversaryResult wp_adversary(const std::vector<Permutation>& perms, int m, int k,
                               double eps);

struct PickEstimate {
  double p_hat = 0.0;
  double half_width = 0.0;  // 3 sigma
  long long hits = 0;
  long long trials = 0;
};

// Monte-Carlo frequency of the algorithm's selected set containing the
// maximum-value element; per-trial seeds derive from the master seed.
PickEstimate estimate_max_pick_prob(
    const PermutationMultiset& orders,
    const std::function<RunResult(const ValueAssignment&, const Permutation&)>& algorithm,
    const std::function<ValueAssignment(std::uint64_t)>& assignment_gen, long long trials,
    std::uint64_t seed);

}  // namespace freeorder
