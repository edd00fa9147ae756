#include "freeorder/events.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace freeorder {

Bucketing::Bucketing(int n_, std::vector<int> bounds_) : n(n_), bounds(std::move(bounds_)) {
  if (n < 2 || bounds.size() < 2) throw std::invalid_argument("Bucketing: need t >= 2, n >= 2");
  int prev = 0;
  for (int b : bounds) {
    if (b <= prev) throw std::invalid_argument("Bucketing: bounds must strictly increase");
    prev = b;
  }
  if (bounds.back() != n) throw std::invalid_argument("Bucketing: last bound must equal n");
}

int Bucketing::bucket_of(int pos) const {
  if (pos < 1 || pos > n) throw std::invalid_argument("Bucketing: position out of range");
  auto it = std::lower_bound(bounds.begin(), bounds.end(), pos);
  return static_cast<int>(it - bounds.begin()) + 1;
}

void validate_atomic(const AtomicEvent& a, const Bucketing& b) {
  const int k = a.k();
  if (static_cast<int>(a.f.size()) != k)
    throw std::invalid_argument("AtomicEvent: sigma and f sizes differ");
  int prev = 1;
  for (int i = 0; i < k; ++i) {
    if (a.sigma[i] < 1 || a.sigma[i] > b.n)
      throw std::invalid_argument("AtomicEvent: sigma value out of range");
    for (int j = 0; j < i; ++j) {
      if (a.sigma[j] == a.sigma[i])
        throw std::invalid_argument("AtomicEvent: sigma values must be distinct");
    }
    if (a.f[i] < prev || a.f[i] > b.t())
      throw std::invalid_argument("AtomicEvent: f must be non-decreasing into [t]");
    prev = a.f[i];
  }
}

namespace {
std::string int_list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}
}  // namespace

std::string atomic_to_json(const AtomicEvent& a) {
  return "{\"sigma\":" + int_list(a.sigma) + ",\"f\":" + int_list(a.f) + "}";
}

std::string positive_to_json(const PositiveEvent& p) {
  std::string s = "{\"id\":" + std::to_string(p.id) + ",\"lower_bound\":\"" +
                  p.lower_bound.to_string() + "\",\"atoms\":[";
  for (std::size_t i = 0; i < p.atoms.size(); ++i) {
    if (i) s += ",";
    s += atomic_to_json(p.atoms[i]);
  }
  return s + "]}";
}

bool atomic_holds(const AtomicEvent& a, const Bucketing& b, const Permutation& pi) {
  if (pi.n() != b.n) throw std::invalid_argument("atomic_holds: dimension mismatch");
  validate_atomic(a, b);
  int prev_pos = 0;
  for (int i = 0; i < a.k(); ++i) {
    int pos = pi.pos_of(a.sigma[i]);
    if (b.bucket_of(pos) != a.f[i]) return false;
    if (pos <= prev_pos) return false;
    prev_pos = pos;
  }
  return true;
}

namespace {

// Probability that, for each bucket j = start..t in turn, the count[j] items
// assigned to it all land there, when `free_total` positions are still
// unassigned and every position of buckets start..t is free. Each bucket also
// contributes 1/count[j]! for the single admissible internal arrangement.
Rat bucket_tail_prob(const Bucketing& b, const std::vector<int>& count, int start,
                     int free_total) {
  Rat prob(1);
  int placed = 0;
  for (int j = start; j <= b.t(); ++j) {
    const int c = count[j - 1];
    long long fact = 1;
    for (int i = 1; i <= c; ++i) {
      long long numer = b.size(j) - (i - 1);
      if (numer <= 0) return Rat(0);
      long long denom = free_total - placed - (i - 1);
      if (denom <= 0) throw std::logic_error("bucket_tail_prob: no free positions left");
      prob *= Rat(numer, denom);
      fact *= i;
    }
    prob *= Rat(1, fact);
    placed += c;
  }
  return prob;
}

std::vector<int> bucket_counts(const AtomicEvent& a, const Bucketing& b) {
  std::vector<int> count(b.t(), 0);
  for (int i = 0; i < a.k(); ++i) ++count[a.f[i] - 1];
  return count;
}

}  // namespace

Rat atomic_prob(const AtomicEvent& a, const Bucketing& b) {
  validate_atomic(a, b);
  return bucket_tail_prob(b, bucket_counts(a, b), 1, b.n);
}

Rat conditional_atomic_prob(const AtomicEvent& a, const SemiRandomPermutation& sp,
                            const Bucketing& b) {
  if (sp.n() != b.n) throw std::invalid_argument("conditional_atomic_prob: dimension mismatch");
  validate_atomic(a, b);
  const int r = sp.r();
  if (r == 0) return atomic_prob(a, b);
  const int k = a.k();

  // Every fixed tuple item must sit in its assigned bucket, and the fixed
  // items must appear in tuple order.
  int last_fixed_pos = 0;
  for (int i = 0; i < k; ++i) {
    int pos = sp.fixed_pos_of(a.sigma[i]);
    if (pos == 0) continue;
    if (b.bucket_of(pos) != a.f[i]) return Rat(0);
    if (pos <= last_fixed_pos) return Rat(0);
    last_fixed_pos = pos;
  }

  const int j = b.bucket_of(r);
  const int bj_hi = b.hi(j);
  // Buckets before j (and j itself when r closes it) are fully fixed: every
  // item mapped there must already be placed.
  const int fully_fixed = (r == bj_hi) ? j : j - 1;
  for (int i = 0; i < k; ++i) {
    if (a.f[i] <= fully_fixed && !sp.is_fixed(a.sigma[i])) return Rat(0);
  }

  std::vector<int> count = bucket_counts(a, b);

  if (r == bj_hi) {
    // Everything from bucket j+1 on is fully random.
    return bucket_tail_prob(b, count, j + 1, b.n - r);
  }

  // Bucket j is partially fixed: positions lo(j)..r are set, r+1..hi(j) free.
  int unplaced_j = 0;
  int max_placed_idx = -1, min_unplaced_idx = k;
  for (int i = 0; i < k; ++i) {
    if (a.f[i] != j) continue;
    if (sp.is_fixed(a.sigma[i])) {
      max_placed_idx = i;  // indices scanned in ascending order
    } else {
      ++unplaced_j;
      if (i < min_unplaced_idx) min_unplaced_idx = i;
    }
  }
  if (unplaced_j > bj_hi - r) return Rat(0);
  // Unplaced items of bucket j will land after every placed one, so their
  // tuple indices must all be larger.
  if (max_placed_idx > min_unplaced_idx) return Rat(0);

  Rat prob(1);
  long long fact = 1;
  for (int i = 1; i <= unplaced_j; ++i) {
    long long numer = bj_hi - r - (i - 1);
    long long denom = b.n - r - (i - 1);
    prob *= Rat(numer, denom);
    fact *= i;
  }
  prob *= Rat(1, fact);
  return prob * bucket_tail_prob(b, count, j + 1, b.n - r - unplaced_j);
}

bool positive_holds(const PositiveEvent& p, const Bucketing& b, const Permutation& pi) {
  for (const auto& a : p.atoms) {
    if (atomic_holds(a, b, pi)) return true;
  }
  return false;
}

Rat positive_prob(const PositiveEvent& p, const Bucketing& b) {
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  Rat sum(0);
  for (const auto& a : p.atoms) {
    if (!seen.insert({a.sigma, a.f}).second)
      throw std::runtime_error("positive_prob: duplicated atom, atoms not disjoint");
    sum += atomic_prob(a, b);
  }
  return sum;
}

bool atoms_pairwise_disjoint_exhaustive(const PositiveEvent& p, const Bucketing& b) {
  if (b.n > 10) throw std::invalid_argument("exhaustive disjointness check limited to n <= 10");
  std::vector<int> order(b.n);
  for (int i = 0; i < b.n; ++i) order[i] = i + 1;
  do {
    Permutation pi(order);
    int hits = 0;
    for (const auto& a : p.atoms) {
      if (atomic_holds(a, b, pi) && ++hits > 1) return false;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return true;
}

// ---- 1-secretary family -----------------------------------------------

Bucketing onesec_bucketing(int ell) {
  int cut = static_cast<int>(std::floor(ell / std::exp(1.0)));
  if (cut < 2) throw std::invalid_argument("onesec_bucketing: ell too small");
  return Bucketing(ell, {cut - 1, ell});
}

PositiveEvent decompose_1sec_positive(const std::vector<int>& sigma, const Bucketing& b) {
  const int k = static_cast<int>(sigma.size());
  if (k < 2) throw std::invalid_argument("decompose_1sec_positive: k >= 2 required");
  if (b.t() != 2) throw std::invalid_argument("decompose_1sec_positive: two buckets required");
  {
    std::set<int> s(sigma.begin(), sigma.end());
    if (static_cast<int>(s.size()) != k)
      throw std::invalid_argument("decompose_1sec_positive: sigma not distinct");
  }

  PositiveEvent p;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;  // idx[pos] = rank-1 of tuple slot pos

  // Arrangements with sigma(i) first, sigma(1) before sigma(2..i-1); the
  // remaining ranks interleave freely. Walk all arrangements once and filter.
  std::sort(idx.begin(), idx.end());
  do {
    const int first_rank = idx[0] + 1;
    if (first_rank < 2) continue;  // sigma(1) can never open the tuple
    const int i = first_rank;
    int pos_of_rank1 = -1;
    for (int pos = 0; pos < k; ++pos) {
      if (idx[pos] == 0) pos_of_rank1 = pos;
    }
    bool mid_after_top = true;
    for (int pos = 1; pos < k && mid_after_top; ++pos) {
      int rank = idx[pos] + 1;
      if (rank >= 2 && rank <= i - 1 && pos < pos_of_rank1) mid_after_top = false;
    }
    if (!mid_after_top) continue;

    std::vector<int> tuple(k);
    for (int pos = 0; pos < k; ++pos) tuple[pos] = sigma[idx[pos]];
    // cut c = number of leading tuple slots in bucket 1
    int cmax = std::min({pos_of_rank1, b.size(1), k});
    for (int c = 1; c <= cmax; ++c) {
      if (k - c > b.size(2)) continue;
      std::vector<int> f(k, 2);
      for (int pos = 0; pos < c; ++pos) f[pos] = 1;
      p.atoms.push_back({tuple, f});
    }
  } while (std::next_permutation(idx.begin(), idx.end()));

  p.lower_bound = positive_prob(p, b);
  return p;
}

std::vector<PositiveEvent> onesec_full_family(int ell, int k, const Bucketing& b) {
  std::vector<PositiveEvent> family;
  std::vector<int> sigma;
  std::vector<bool> used(ell + 1, false);
  int next_id = 0;
  // depth-first enumeration of ordered k-tuples in lexicographic order
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(sigma.size()) == k) {
      PositiveEvent p = decompose_1sec_positive(sigma, b);
      p.id = next_id++;
      family.push_back(std::move(p));
      return;
    }
    for (int v = 1; v <= ell; ++v) {
      if (used[v]) continue;
      used[v] = true;
      sigma.push_back(v);
      self(self);
      sigma.pop_back();
      used[v] = false;
    }
  };
  rec(rec);
  return family;
}

// ---- k-secretary family -----------------------------------------------

KsecSchedule KsecSchedule::make(int ell, int k) {
  if (k < 2) throw std::invalid_argument("KsecSchedule: k >= 2 required");
  if (ell < 2) throw std::invalid_argument("KsecSchedule: ell >= 2 required");
  KsecSchedule s;
  s.ell = ell;
  s.k = k;
  s.delta = std::sqrt(std::log(static_cast<double>(k)) / k);
  if (s.delta >= 1.0) throw std::invalid_argument("KsecSchedule: k below schedule minimum");
  s.windows = static_cast<int>(std::ceil(std::log2(1.0 / s.delta)));
  if (s.windows < 1) s.windows = 1;

  s.ell_j.resize(s.windows + 1);
  for (int j = 0; j <= s.windows; ++j) {
    double v = std::ldexp(s.delta, j) * ell;  // 2^j * delta * ell
    s.ell_j[j] = std::min(ell, static_cast<int>(std::floor(v)));
  }
  s.ell_j[s.windows] = ell;  // the last window always closes the sequence
  if (s.ell_j[0] < 1)
    throw std::invalid_argument("KsecSchedule: ell too small for the schedule");

  for (int j = 0; j < s.windows; ++j) {
    s.eps_j.push_back(std::sqrt(3.0 * s.delta / std::ldexp(1.0, j)));
    s.k_j.push_back(static_cast<double>(k) * s.ell_j[j] / ell);
    double raw = (1.0 - s.eps_j[j]) * s.k_j[j];
    int rank = static_cast<int>(std::ceil(raw));
    s.rank_j.push_back(std::clamp(rank, 1, s.ell_j[j]));
    s.h_thr.push_back(std::max(0, static_cast<int>(std::ceil(raw))));
    s.l_top.push_back(std::max(0, static_cast<int>(std::floor((1.0 - 2.0 * s.eps_j[j]) * k))));
    s.l_thr.push_back(static_cast<int>(std::floor(raw)));
  }

  // Bracket tops for the pick events: bracket b in {-1,...,windows-2} requires
  // arrival after ell_{b+1}, i.e. bucket > b+2. The first bracket always
  // admits rank 1.
  const int cap = std::max(1, static_cast<int>(std::floor((1.0 - s.delta) * k)));
  int prev = 0;
  for (int bkt = -1; bkt <= s.windows - 2; ++bkt) {
    double top_raw = (1.0 - 2.0 * s.eps_j[bkt + 1]) * k;
    int top = static_cast<int>(std::floor(top_raw));
    if (bkt == -1) top = std::max(top, 1);
    top = std::clamp(top, prev, cap);
    s.bracket_hi.push_back(top);
    prev = top;
  }
  s.i_max = s.bracket_hi.empty() ? 0 : s.bracket_hi.back();
  return s;
}

KsecSchedule KsecSchedule::scaled(int factor) const {
  if (factor < 1) throw std::invalid_argument("KsecSchedule: scale factor must be positive");
  KsecSchedule s = *this;
  s.ell = ell * factor;
  for (int& v : s.ell_j) v *= factor;
  return s;
}

int KsecSchedule::bracket_of(int i) const {
  if (i < 1 || i > i_max) throw std::invalid_argument("KsecSchedule: rank out of range");
  for (int bkt = -1; bkt <= windows - 2; ++bkt) {
    if (i <= bracket_hi[bkt + 1]) return bkt;
  }
  throw std::logic_error("KsecSchedule: bracket not found");
}

Bucketing ksec_bucketing(const KsecSchedule& s) {
  std::vector<int> bounds;
  bounds.push_back(s.ell_j[0]);
  for (int j = 1; j <= s.windows; ++j) {
    if (s.ell_j[j] > bounds.back()) bounds.push_back(s.ell_j[j]);
  }
  if (bounds.back() != s.ell) bounds.push_back(s.ell);
  if (bounds.size() < 2) throw std::invalid_argument("ksec_bucketing: degenerate schedule");
  return Bucketing(s.ell, bounds);
}

PositiveEvent decompose_ksec_positive(const std::vector<int>& s_hat, int i,
                                      const KsecSchedule& s, const Bucketing& b) {
  const int k = s.k;
  if (static_cast<int>(s_hat.size()) != k)
    throw std::invalid_argument("decompose_ksec_positive: tuple size must equal k");
  if (b.n != s.ell)
    throw std::invalid_argument("decompose_ksec_positive: bucketing does not match schedule");
  if (i < 1 || i > s.i_max)
    throw std::invalid_argument("decompose_ksec_positive: rank outside usable range");
  {
    std::set<int> seen(s_hat.begin(), s_hat.end());
    if (static_cast<int>(seen.size()) != k)
      throw std::invalid_argument("decompose_ksec_positive: tuple not distinct");
  }
  const int t = b.t();
  const int bracket = s.bracket_of(i);

  // The schedule buckets may have been merged when consecutive ell_j collide;
  // map "first j+1 schedule buckets" to a position boundary, then to a bucket
  // index in b.
  auto prefix_bucket = [&](int jwin) {
    // number of buckets of b covering positions 1..ell_j[jwin]
    int boundary = s.ell_j[jwin];
    return b.bucket_of(boundary);
  };

  PositiveEvent p;
  std::vector<int> idx(k);
  for (int u = 0; u < k; ++u) idx[u] = u;

  std::sort(idx.begin(), idx.end());
  do {
    // enumerate non-decreasing f over tuple positions as bucket cut points
    std::vector<int> beta(k);  // beta[rank-1] = bucket of that rank's item
    std::vector<int> f(k, 1);
    auto emit = [&]() {
      for (int pos = 0; pos < k; ++pos) beta[idx[pos]] = f[pos];
      // capacity
      std::vector<int> cnt(t + 1, 0);
      for (int pos = 0; pos < k; ++pos) ++cnt[f[pos]];
      for (int j = 1; j <= t; ++j) {
        if (cnt[j] > b.size(j)) return;
      }
      // threshold-health conditions per window
      for (int j = 0; j < s.windows; ++j) {
        int pb = prefix_bucket(j);
        int all_in = 0, top_in = 0;
        for (int u = 0; u < k; ++u) {
          if (beta[u] <= pb) {
            ++all_in;
            if (u + 1 <= s.l_top[j]) ++top_in;
          }
        }
        if (s.h_thr[j] > 0 && all_in < s.h_thr[j]) return;
        if (s.l_top[j] > 0 && top_in > s.l_thr[j]) return;
      }
      // pick condition: rank i arrives after ell_{bracket+1}
      if (beta[i - 1] <= prefix_bucket(bracket + 1)) return;
      std::vector<int> tuple(k);
      for (int pos = 0; pos < k; ++pos) tuple[pos] = s_hat[idx[pos]];
      p.atoms.push_back({tuple, f});
    };
    // iterate all non-decreasing f vectors
    while (true) {
      emit();
      int pos = k - 1;
      while (pos >= 0 && f[pos] == t) --pos;
      if (pos < 0) break;
      int v = f[pos] + 1;
      for (int q = pos; q < k; ++q) f[q] = v;
    }
  } while (std::next_permutation(idx.begin(), idx.end()));

  if (p.atoms.empty())
    throw std::invalid_argument("decompose_ksec_positive: event is empty for these parameters");
  p.lower_bound = positive_prob(p, b);
  return p;
}

}  // namespace freeorder
