#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "freeorder/derandomizer.hpp"
#include "freeorder/dimred.hpp"
#include "freeorder/events.hpp"
#include "freeorder/permutation.hpp"
#include "freeorder/secretary.hpp"

namespace freeorder {

// Thread budget: explicit request, else FREEORDER_THREADS, else hardware.
int effective_threads(int requested);

// Chunked parallel loop; fn(i) must be independent per index. Results that
// need deterministic aggregation are written to per-index slots by fn and
// reduced sequentially by the caller.
template <class F>
void parallel_for(long long count, int threads, F&& fn) {
  threads = effective_threads(threads);
  if (threads <= 1 || count < 2 * threads) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  long long chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    long long lo = t * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (long long i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

enum class Problem { onesec, ksec };

struct PipelineSpec {
  Problem problem = Problem::onesec;
  int n = 0;
  int k = 0;
  int ell_dim = 0;  // 0 = default: ceil(log2 n) for onesec, k^8 for ksec
  Rat delta = Rat(1, 8);
  std::uint64_t seed = 1;
  long long trials = 1000;
};

struct BuildArtifacts {
  int n_adjusted = 0;  // q * floor(n/q)
  int q = 0, d = 0;
  ReductionFamily family;
  Bucketing bucketing_low;
  std::vector<PositiveEvent> events;
  Construction construction;
  PermutationMultiset lifted;
  double entropy_low = 0.0;
  double entropy_lifted = 0.0;
  double entropy_bound = 0.0;  // log2 |L_low| + log2 q
  bool lift_ratio_ok = false;  // q^2 < n/q

  // Runtime parameters aligned with the scaled bucket boundaries; blocks have
  // size exactly n_adjusted/q, so low-dimension position p maps to lifted
  // positions ((p-1)(n/q), p(n/q)].
  int checkpoint_lifted = 0;         // onesec: |B1| * n/q
  KsecSchedule schedule_lifted;      // ksec: the low schedule scaled by n/q
};

// construct -> lift: decomposes the problem's positive-event family at the
// reduced dimension q (the canonical top-k tuples seen through each reduction
// map), derandomizes it, and lifts the support to dimension n.
BuildArtifacts build_pipeline(const PipelineSpec& spec);

struct EvalReport {
  std::string schema = "EVAL-1";
  long long trials = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double half_width = 0.0;  // 3 sigma
  double entropy_bits = 0.0;
  std::map<std::string, double> bounds;
  double runtime_sec = 0.0;  // informational; excluded from the canonical JSON

  std::string to_json() const;  // all floats printed with 17 significant digits
};

// Runs trials of metric(va, pi) with pi ~ orders and va from the generator,
// per-trial seeds split from the master seed. Trials run in parallel but the
// reduction is in trial order, so the report is byte-identical for any
// thread count.
EvalReport evaluate(const PermutationMultiset& orders,
                    const std::function<double(const ValueAssignment&, const Permutation&)>& metric,
                    const std::function<ValueAssignment(std::uint64_t)>& assignment_gen,
                    long long trials, std::uint64_t seed, int threads = 0);

// Same contract, but each trial draws a fresh uniformly random order instead
// of sampling a finite support. The baseline arm of comparative runs.
EvalReport evaluate_uniform(int n,
                            const std::function<double(const ValueAssignment&, const Permutation&)>& metric,
                            const std::function<ValueAssignment(std::uint64_t)>& assignment_gen,
                            long long trials, std::uint64_t seed, int threads = 0);

// Canonical normalized adversary: v(i) = n - i + 1.
ValueAssignment descending_values(int n);

}  // namespace freeorder
