#include "freeorder/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "freeorder/rng.hpp"

namespace freeorder {

int effective_threads(int requested) {
  unsigned hw = std::thread::hardware_concurrency();
  int threads = requested > 0 ? requested : (hw > 0 ? static_cast<int>(hw) : 1);
  if (const char* env = std::getenv("FREEORDER_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  return threads;
}

namespace {

// The tuples the lifted evaluation actually exercises: the image of the
// canonical top-k positions (1..k) under each reduction map, 1-shifted,
// injective images only, deduplicated.
std::vector<std::vector<int>> canonical_tuples(const ReductionFamily& fam, int k) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  for (int f = 0; f < fam.q; ++f) {
    std::vector<int> tup(k);
    std::set<int> distinct;
    for (int i = 1; i <= k; ++i) {
      tup[i - 1] = fam.apply(f, i) + 1;
      distinct.insert(tup[i - 1]);
    }
    if (static_cast<int>(distinct.size()) != k) continue;
    if (seen.insert(tup).second) out.push_back(tup);
  }
  return out;
}

}  // namespace

BuildArtifacts build_pipeline(const PipelineSpec& spec) {
  if (spec.n < 4) throw std::invalid_argument("build_pipeline: n too small");
  if (spec.k < 1) throw std::invalid_argument("build_pipeline: k must be positive");
  long long ell_dim = spec.ell_dim;
  if (ell_dim == 0) {
    if (spec.problem == Problem::onesec) {
      ell_dim = static_cast<long long>(std::ceil(std::log2(static_cast<double>(spec.n))));
    } else {
      ell_dim = 1;
      for (int i = 0; i < 8; ++i) ell_dim *= spec.k;
    }
  }
  if (ell_dim <= spec.k)
    throw std::invalid_argument("build_pipeline: ell_dim must exceed k");
  if (ell_dim > 100000) throw std::invalid_argument("build_pipeline: ell_dim too large");

  BuildArtifacts art;
  auto [q, d] = choose_parameters(spec.n, static_cast<int>(ell_dim));
  art.q = q;
  art.d = d;
  art.n_adjusted = q * (spec.n / q);
  if (art.n_adjusted < q)
    throw std::invalid_argument("build_pipeline: n must be at least q");
  art.family = build_family(art.n_adjusted, q, d);

  auto tuples = canonical_tuples(art.family, spec.k);
  if (tuples.empty())
    throw std::runtime_error("build_pipeline: every reduction map collides on the top-k");

  const int block = art.n_adjusted / q;
  int next_id = 0;
  if (spec.problem == Problem::onesec) {
    art.bucketing_low = onesec_bucketing(q);
    art.checkpoint_lifted = art.bucketing_low.size(1) * block;
    for (const auto& tup : tuples) {
      PositiveEvent p = decompose_1sec_positive(tup, art.bucketing_low);
      p.id = next_id++;
      art.events.push_back(std::move(p));
    }
  } else {
    KsecSchedule sched = KsecSchedule::make(q, spec.k);
    art.bucketing_low = ksec_bucketing(sched);
    art.schedule_lifted = sched.scaled(block);
    for (const auto& tup : tuples) {
      for (int i = 1; i <= sched.i_max; ++i) {
        PositiveEvent p = decompose_ksec_positive(tup, i, sched, art.bucketing_low);
        p.id = next_id++;
        art.events.push_back(std::move(p));
      }
    }
  }

  DerandomizerConfig cfg;
  cfg.delta = spec.delta;
  cfg.ell = 0;
  art.construction = construct_distribution(art.events, art.bucketing_low, cfg);

  art.lifted = lift_multiset(art.construction.support, art.family, art.n_adjusted,
                             &art.lift_ratio_ok);
  art.entropy_low = entropy_bits(art.construction.support);
  art.entropy_lifted = entropy_bits(art.lifted);
  art.entropy_bound = std::log2(static_cast<double>(art.construction.support.entries.size())) +
                      std::log2(static_cast<double>(q));
  return art;
}

EvalReport evaluate(const PermutationMultiset& orders,
                    const std::function<double(const ValueAssignment&, const Permutation&)>& metric,
                    const std::function<ValueAssignment(std::uint64_t)>& assignment_gen,
                    long long trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("evaluate: trials must be positive");
  auto t0 = std::chrono::steady_clock::now();

  std::vector<double> results(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](long long i) {
    std::uint64_t si = static_cast<std::uint64_t>(i);
    Permutation pi = sample(orders, derive_seed(seed, 2 * si));
    ValueAssignment va = assignment_gen(derive_seed(seed, 2 * si + 1));
    results[static_cast<std::size_t>(i)] = metric(va, pi);
  });

  EvalReport rep;
  rep.trials = trials;
  rep.seed = seed;
  double sum = 0.0;
  bool bernoulli = true;
  for (double v : results) {
    sum += v;
    if (v != 0.0 && v != 1.0) bernoulli = false;
  }
  rep.mean = sum / static_cast<double>(trials);
  if (bernoulli) {
    rep.half_width = 3.0 * std::sqrt(rep.mean * (1.0 - rep.mean) / static_cast<double>(trials));
  } else {
    double ss = 0.0;
    for (double v : results) ss += (v - rep.mean) * (v - rep.mean);
    double var = trials > 1 ? ss / static_cast<double>(trials - 1) : 0.0;
    rep.half_width = 3.0 * std::sqrt(var / static_cast<double>(trials));
  }
  rep.entropy_bits = entropy_bits(orders);
  rep.runtime_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

EvalReport evaluate_uniform(int n,
                            const std::function<double(const ValueAssignment&, const Permutation&)>& metric,
                            const std::function<ValueAssignment(std::uint64_t)>& assignment_gen,
                            long long trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("evaluate_uniform: trials must be positive");
  auto t0 = std::chrono::steady_clock::now();
  std::vector<double> results(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](long long i) {
    std::uint64_t si = static_cast<std::uint64_t>(i);
    Permutation pi = sequential_draw(n, derive_seed(seed, 2 * si));
    ValueAssignment va = assignment_gen(derive_seed(seed, 2 * si + 1));
    results[static_cast<std::size_t>(i)] = metric(va, pi);
  });
  EvalReport rep;
  rep.trials = trials;
  rep.seed = seed;
  double sum = 0.0;
  for (double v : results) sum += v;
  rep.mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (double v : results) ss += (v - rep.mean) * (v - rep.mean);
  double var = trials > 1 ? ss / static_cast<double>(trials - 1) : 0.0;
  rep.half_width = 3.0 * std::sqrt(var / static_cast<double>(trials));
  rep.entropy_bits = 0.0;  // not a finite-support distribution
  rep.runtime_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace {
std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string EvalReport::to_json() const {
  std::string s = "{\"schema\":\"" + schema + "\"";
  s += ",\"trials\":" + std::to_string(trials);
  s += ",\"seed\":" + std::to_string(seed);
  s += ",\"mean\":" + num17(mean);
  s += ",\"half_width\":" + num17(half_width);
  s += ",\"entropy_bits\":" + num17(entropy_bits);
  s += ",\"bounds\":{";
  bool first = true;
  for (const auto& [k, v] : bounds) {
    if (!first) s += ",";
    first = false;
    s += "\"" + k + "\":" + num17(v);
  }
  s += "}}";
  return s;
}

ValueAssignment descending_values(int n) {
  ValueAssignment va;
  va.n = n;
  va.values.resize(n);
  for (int i = 1; i <= n; ++i) va.values[i - 1] = static_cast<double>(n - i + 1);
  return va;
}

}  // namespace freeorder
