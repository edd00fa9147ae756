#include "freeorder/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "freeorder/rng.hpp"

namespace freeorder {

bool is_semitone(const std::vector<int>& elements, const std::vector<Permutation>& against) {
  for (const auto& pi : against) {
    int lo = 0, hi = 0;  // running position extremes, 0 = empty
    for (int x : elements) {
      int pos = pi.pos_of(x);
      if (lo == 0) {
        lo = hi = pos;
        continue;
      }
      if (pos < lo)
        lo = pos;
      else if (pos > hi)
        hi = pos;
      else
        return false;
    }
  }
  return true;
}

SemitoneSequence find_semitone(const std::vector<Permutation>& perms, int n) {
  if (perms.empty()) throw std::invalid_argument("find_semitone: need at least one permutation");
  if (n < 2) throw std::invalid_argument("find_semitone: n >= 2 required");
  for (const auto& pi : perms) {
    if (pi.n() != n) throw std::invalid_argument("find_semitone: dimension mismatch");
  }
  const int ell = static_cast<int>(perms.size());
  const int target =
      std::max(1, static_cast<int>(std::floor(std::log2(static_cast<double>(n)) / (ell + 1))));

  // Candidates with extreme positions extend prefixes most often.
  std::vector<int> cand(n);
  for (int i = 0; i < n; ++i) cand[i] = i + 1;
  std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) {
    long long sa = 0, sb = 0;
    for (const auto& pi : perms) {
      sa += std::min(pi.pos_of(a) - 1, n - pi.pos_of(a));
      sb += std::min(pi.pos_of(b) - 1, n - pi.pos_of(b));
    }
    return sa < sb;
  });

  std::vector<int> seq;
  std::vector<bool> used(n + 1, false);
  // per permutation running extremes of the chosen prefix
  std::vector<std::pair<int, int>> extent(perms.size(), {0, 0});

  auto extends = [&](int x) {
    for (std::size_t i = 0; i < perms.size(); ++i) {
      int pos = perms[i].pos_of(x);
      auto [lo, hi] = extent[i];
      if (lo != 0 && pos > lo && pos < hi) return false;
      if (lo != 0 && (pos == lo || pos == hi)) return false;
    }
    return true;
  };

  std::function<bool()> dfs = [&]() -> bool {
    if (static_cast<int>(seq.size()) == target) return true;
    for (int x : cand) {
      if (used[x] || !extends(x)) continue;
      auto saved = extent;
      used[x] = true;
      seq.push_back(x);
      for (std::size_t i = 0; i < perms.size(); ++i) {
        int pos = perms[i].pos_of(x);
        if (extent[i].first == 0)
          extent[i] = {pos, pos};
        else
          extent[i] = {std::min(extent[i].first, pos), std::max(extent[i].second, pos)};
      }
      if (dfs()) return true;
      seq.pop_back();
      used[x] = false;
      extent = saved;
    }
    return false;
  };

  if (!dfs()) throw std::runtime_error("find_semitone: no sequence of the guaranteed length");
  SemitoneSequence out{seq};
  if (!is_semitone(out.elements, perms))
    throw std::logic_error("find_semitone: verifier rejected the found sequence");
  return out;
}

HardAssignment hard_assignment_sample(const SemitoneSequence& seq, int n, int k,
                                      const Rat& eps, std::uint64_t seed) {
  const int s = static_cast<int>(seq.elements.size());
  if (s < 1) throw std::invalid_argument("hard_assignment_sample: empty sequence");
  if (s > 30) throw std::invalid_argument("hard_assignment_sample: sequence too long");
  if (k < 1) throw std::invalid_argument("hard_assignment_sample: k >= 1 required");
  if (!(eps > Rat(0) && eps < Rat(1)))
    throw std::invalid_argument("hard_assignment_sample: eps must be in (0,1)");
  for (int x : seq.elements) {
    if (x < 1 || x > n) throw std::invalid_argument("hard_assignment_sample: element out of [n]");
  }

  const BigRat beta = BigRat(k) / (BigRat(1) - BigRat(eps.num, eps.den));
  const BigRat filler = (BigRat(1) - BigRat(eps.num, eps.den)) / BigRat(k);

  HardAssignment h;
  h.sequence = seq.elements;
  h.exact_values.assign(s, BigRat(0));
  h.filler = filler;
  h.eps = eps.to_double();
  h.k = k;

  SplitMix64 rng(seed);
  // value-grid interval of exponents [lo, lo + 2^t - 1)
  long long lo = 0;
  for (int t = s; t >= 1; --t) {
    long long half = (1ll << (t - 1)) - 1;
    long long mid = lo + half;
    // beta^mid
    BigRat v(1);
    BigRat base = beta;
    long long e = mid;
    while (e) {
      if (e & 1) v *= base;
      base *= base;
      e >>= 1;
    }
    h.exact_values[t - 1] = v;
    if (t == 1) break;
    if (rng.bounded(static_cast<std::uint64_t>(t)) == 0) {
      h.branch.push_back(0);  // lower half: x_t larger than the rest
    } else {
      h.branch.push_back(1);
      lo = mid + 1;
    }
  }

  h.values.n = n;
  h.values.values.assign(n, filler.to_double());
  for (int t = 1; t <= s; ++t) {
    double dv = h.exact_values[t - 1].to_double();
    if (!std::isfinite(dv))
      throw std::invalid_argument("hard_assignment_sample: values exceed double range");
    h.values.values[seq.elements[t - 1] - 1] = dv;
  }
  return h;
}

namespace {

void verify_wp(const std::vector<Permutation>& perms, const ValueAssignment& va, int m, int k,
               double eps) {
  for (const auto& pi : perms) {
    for (int tau = 1; tau <= m; ++tau) {
      RunResult r = wait_and_pick(va, pi, m, tau, k);
      if (!(r.ratio < 1.0 - eps))
        throw std::runtime_error("wp_adversary: constructed assignment failed verification");
    }
  }
}

}  // namespace

WpAdversaryResult wp_adversary(const std::vector<Permutation>& perms, int m, int k,
                               double eps) {
  if (perms.empty()) throw std::invalid_argument("wp_adversary: need permutations");
  const int n = perms[0].n();
  for (const auto& pi : perms) {
    if (pi.n() != n) throw std::invalid_argument("wp_adversary: dimension mismatch");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("wp_adversary: eps in (0,1)");
  if (m < 1 || m > n - 1) throw std::invalid_argument("wp_adversary: checkpoint out of range");
  if (k < 1 || k > n) throw std::invalid_argument("wp_adversary: k out of range");
  const long long ell = static_cast<long long>(perms.size());

  WpAdversaryResult out;
  out.values.n = n;

  if (m >= k) {
    // Per permutation, push strictly more than eps*k of its pre-checkpoint
    // elements into the high-value set K; the run can then never collect more
    // than (1-eps) of the mass.
    const long long c = static_cast<long long>(std::floor(eps * k)) + 1;
    if (ell * c > k)
      throw std::invalid_argument("wp_adversary: support too large for eps (needs l < 1/eps)");
    out.checkpoint_branch = true;
    std::vector<bool> in_k(n + 1, false);
    for (const auto& pi : perms) {
      long long taken = 0;
      for (int p = 1; p <= m && taken < c; ++p) {
        int e = pi.at(p);
        if (!in_k[e]) {
          in_k[e] = true;
          out.blocked.push_back(e);
          ++taken;
        }
      }
      if (taken < c) throw std::logic_error("wp_adversary: prefix exhausted early");
    }
    for (int e = 1; e <= n && static_cast<int>(out.blocked.size()) < k; ++e) {
      if (!in_k[e]) {
        in_k[e] = true;
        out.blocked.push_back(e);
      }
    }
    out.values.values.assign(n, 0.0);
    for (int e : out.blocked) out.values.values[e - 1] = 1.0;
  } else {
    // m < k: an element unseen in every permutation's first m+k positions
    // forces the run to fill its budget with fillers.
    if (ell * (m + k) >= n)
      throw std::invalid_argument("wp_adversary: n too small for the m < k construction");
    std::vector<bool> seen(n + 1, false);
    for (const auto& pi : perms) {
      for (int p = 1; p <= m + k; ++p) seen[pi.at(p)] = true;
    }
    out.special = 0;
    for (int e = 1; e <= n; ++e) {
      if (!seen[e]) {
        out.special = e;
        break;
      }
    }
    if (out.special == 0) throw std::logic_error("wp_adversary: counting argument failed");
    out.values.values.assign(n, (1.0 - eps) / k);
    out.values.values[out.special - 1] = 1.0;
  }

  verify_wp(perms, out.values, m, k, eps);
  return out;
}

PickEstimate estimate_max_pick_prob(
    const PermutationMultiset& orders,
    const std::function<RunResult(const ValueAssignment&, const Permutation&)>& algorithm,
    const std::function<ValueAssignment(std::uint64_t)>& assignment_gen, long long trials,
    std::uint64_t seed) {
  if (trials <= 0) throw std::invalid_argument("estimate_max_pick_prob: trials must be positive");
  PickEstimate est;
  est.trials = trials;
  for (long long t = 0; t < trials; ++t) {
    Permutation pi = sample(orders, derive_seed(seed, 2 * static_cast<std::uint64_t>(t)));
    ValueAssignment va = assignment_gen(derive_seed(seed, 2 * static_cast<std::uint64_t>(t) + 1));
    if (algorithm(va, pi).success) ++est.hits;
  }
  est.p_hat = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.half_width = 3.0 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  return est;
}

}  // namespace freeorder
