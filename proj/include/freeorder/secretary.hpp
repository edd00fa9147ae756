#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "freeorder/events.hpp"
#include "freeorder/permutation.hpp"

namespace freeorder {

// Adversarial values by position 1..n. Rank queries break ties by smaller
// position index.
struct ValueAssignment {
  int n = 0;
  std::vector<double> values;  // values[p-1] = v(p)

  double at(int p) const { return values[p - 1]; }
  // position of the r-th largest value (1-based rank)
  int index_of_rank(int r) const;
};

struct RunResult {
  std::vector<int> selected;  // adversarial positions, in arrival order
  double total = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
  bool success = false;  // selected set contains the maximum-value position
};

// Sum of the k largest values.
double top_k_sum(const ValueAssignment& va, int k);

// Observe arrivals 1..m, set the threshold to the tau-th largest observed
// value, then accept every later arrival with value >= threshold until k are
// taken; the final arrivals are force-accepted when exactly enough slots
// remain. Arrival slot p carries the value at adversarial position pi(p).
RunResult wait_and_pick(const ValueAssignment& va, const Permutation& pi, int m, int tau,
                        int k);

// wait_and_pick with m = floor(n/e), tau = 1, k = 1.
RunResult classic_secretary(const ValueAssignment& va, const Permutation& pi);

// Multiple-threshold selection: ignore the first floor(delta*l) arrivals,
// then per window (ell_j, ell_{j+1}] accept values at or above the window's
// statistic threshold until the budget is gone. No end-of-sequence fill.
RunResult multi_threshold_ksec(const ValueAssignment& va, const Permutation& pi, int k);
RunResult multi_threshold_ksec(const ValueAssignment& va, const Permutation& pi,
                               const KsecSchedule& sched);

// VALUES v1 file format: header `VALUES 1 n=<n>`, then `<position> <value>`
// lines. Integer values round-trip exactly.
void write_values(std::ostream& os, const ValueAssignment& va);
ValueAssignment read_values(std::istream& is);
void save_values(const std::string& path, const ValueAssignment& va);
ValueAssignment load_values(const std::string& path);

}  // namespace freeorder
