#include <cmath>
#include <set>

#include "doctest.h"
#include "freeorder/adversary.hpp"
#include "freeorder/analysis.hpp"
#include "freeorder/rng.hpp"

using namespace freeorder;

TEST_CASE("semitone verifier") {
  Permutation id4 = Permutation::identity(4);
  Permutation rev4({4, 3, 2, 1});
  CHECK(is_semitone({1, 2, 3, 4}, {id4}));
  CHECK(is_semitone({2, 3, 4}, {id4, rev4}));
  CHECK_FALSE(is_semitone({1, 3, 2}, {id4}));  // 2 lands inside {1,3}
}

TEST_CASE("find_semitone reaches the guaranteed length and verifies") {
  SplitMix64 rng(2024);
  for (int ell = 1; ell <= 3; ++ell) {
    const int n = 64;
    std::vector<Permutation> perms;
    for (int i = 0; i < ell; ++i) perms.push_back(sequential_draw(n, rng.next()));
    SemitoneSequence seq = find_semitone(perms, n);
    int target = static_cast<int>(std::floor(std::log2(static_cast<double>(n)) / (ell + 1)));
    CHECK(static_cast<int>(seq.elements.size()) >= std::max(1, target));
    CHECK(is_semitone(seq.elements, perms));
  }
  CHECK(find_semitone({Permutation::identity(4)}, 4).elements.size() >= 1);
}

TEST_CASE("hard assignment: single element sequence") {
  SemitoneSequence seq{{5}};
  HardAssignment h = hard_assignment_sample(seq, 8, 2, Rat(1, 2), 7);
  CHECK(h.exact_values[0] == BigRat(1));  // beta^0
  double filler = h.filler.to_double();
  CHECK(filler == doctest::Approx(0.25));
  for (int p = 1; p <= 8; ++p) {
    if (p == 5)
      CHECK(h.values.at(p) == doctest::Approx(1.0));
    else
      CHECK(h.values.at(p) == doctest::Approx(filler));
  }
}

TEST_CASE("hard assignment: geometric dominance and branch disjointness") {
  SemitoneSequence seq{{2, 5, 9, 11}};
  const int n = 16, k = 3;
  const Rat eps(1, 4);
  HardAssignment a = hard_assignment_sample(seq, n, k, eps, 1);
  HardAssignment b = hard_assignment_sample(seq, n, k, eps, 5);

  // max >= beta * second within each draw
  for (const auto& h : {a, b}) {
    std::vector<BigRat> vals = h.exact_values;
    std::sort(vals.begin(), vals.end(), [](const BigRat& x, const BigRat& y) { return y < x; });
    BigRat beta = BigRat(k) / (BigRat(1) - BigRat(1, 4));
    CHECK(vals[0] >= beta * vals[1]);
    CHECK(vals[3] > h.filler);
  }

  // find the first differing branch; values assigned after it are disjoint
  REQUIRE(a.branch.size() == b.branch.size());
  std::size_t div = a.branch.size();
  for (std::size_t i = 0; i < a.branch.size(); ++i) {
    if (a.branch[i] != b.branch[i]) {
      div = i;
      break;
    }
  }
  REQUIRE(div < a.branch.size());  // seeds 1 and 5 do diverge
  // branch index i decides values for x_{s-1-i} downward
  const int s = static_cast<int>(seq.elements.size());
  std::set<std::string> seen;
  for (int t = 0; t < s - 1 - static_cast<int>(div); ++t) {
    seen.insert(a.exact_values[t].to_string());
  }
  for (int t = 0; t < s - 1 - static_cast<int>(div); ++t) {
    CHECK(seen.find(b.exact_values[t].to_string()) == seen.end());
  }
  // pre-divergence values coincide
  for (int t = s - 1; t > s - 1 - static_cast<int>(div); --t) {
    CHECK(a.exact_values[t] == b.exact_values[t]);
  }
}

TEST_CASE("hard assignment is deterministic in the seed") {
  SemitoneSequence seq{{1, 4, 6}};
  HardAssignment a = hard_assignment_sample(seq, 8, 1, Rat(1, 2), 99);
  HardAssignment b = hard_assignment_sample(seq, 8, 1, Rat(1, 2), 99);
  CHECK(a.values.values == b.values.values);
  CHECK(a.branch == b.branch);
  CHECK_THROWS_AS(hard_assignment_sample(SemitoneSequence{{}}, 8, 1, Rat(1, 2), 0),
                  std::invalid_argument);
}

TEST_CASE("wp_adversary, checkpoint branch (m >= k)") {
  const int n = 64, k = 10, m = 20;
  const double eps = 0.4;
  std::vector<Permutation> perms = {sequential_draw(n, 3), sequential_draw(n, 4)};
  WpAdversaryResult adv = wp_adversary(perms, m, k, eps);
  CHECK(adv.checkpoint_branch);
  CHECK(static_cast<int>(adv.blocked.size()) == k);
  // every permutation hides strictly more than eps*k of K before the checkpoint
  for (const auto& pi : perms) {
    int hidden = 0;
    for (int e : adv.blocked) {
      if (pi.pos_of(e) <= m) ++hidden;
    }
    CHECK(hidden > static_cast<int>(eps * k));
  }
  for (const auto& pi : perms) {
    for (int tau = 1; tau <= m; ++tau) {
      CHECK(wait_and_pick(adv.values, pi, m, tau, k).ratio < 1.0 - eps);
    }
  }
  // support too large for this eps
  std::vector<Permutation> three = {sequential_draw(n, 3), sequential_draw(n, 4),
                                    sequential_draw(n, 5)};
  CHECK_THROWS_AS(wp_adversary(three, m, k, eps), std::invalid_argument);
}

TEST_CASE("wp_adversary, early checkpoint branch (m < k)") {
  const int n = 32, k = 8, m = 3;
  const double eps = 0.3;
  std::vector<Permutation> perms = {sequential_draw(n, 11)};
  WpAdversaryResult adv = wp_adversary(perms, m, k, eps);
  CHECK_FALSE(adv.checkpoint_branch);
  CHECK(adv.special >= 1);
  for (const auto& pi : perms) CHECK(pi.pos_of(adv.special) > m + k);
  for (const auto& pi : perms) {
    for (int tau = 1; tau <= m; ++tau) {
      CHECK(wait_and_pick(adv.values, pi, m, tau, k).ratio < 1.0 - eps);
    }
  }
  // n too small: the counting argument must refuse
  std::vector<Permutation> small = {sequential_draw(10, 1)};
  CHECK_THROWS_AS(wp_adversary(small, 3, 8, eps), std::invalid_argument);
}

TEST_CASE("estimate_max_pick_prob reproduces the classic probability") {
  const int n = 10;
  const long long trials = 20000;
  // uniform order distribution materialized as draws inside the generator
  PermutationMultiset orders{n, {}};
  for (int i = 0; i < 720; ++i) orders.entries.push_back(sequential_draw(n, 50000 + i));
  ValueAssignment fixed;
  fixed.n = n;
  fixed.values.resize(n);
  for (int i = 0; i < n; ++i) fixed.values[i] = static_cast<double>(n - i);
  PickEstimate est = estimate_max_pick_prob(
      orders, [](const ValueAssignment& va, const Permutation& pi) {
        return classic_secretary(va, pi);
      },
      [&](std::uint64_t) { return fixed; }, trials, 321);
  double f = f_exact(n, 3).to_double();
  CHECK(std::abs(est.p_hat - f) <= est.half_width + 0.02);
  CHECK_THROWS_AS(estimate_max_pick_prob(
                      orders,
                      [](const ValueAssignment& va, const Permutation& pi) {
                        return classic_secretary(va, pi);
                      },
                      [&](std::uint64_t) { return fixed; }, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("hard distribution caps the pick probability near k/s") {
  // small-scale version of the lower-bound demonstration
  const int n = 64, ell = 2, k = 1;
  SplitMix64 rng(31337);
  std::vector<Permutation> perms;
  for (int i = 0; i < ell; ++i) perms.push_back(sequential_draw(n, rng.next()));
  SemitoneSequence seq = find_semitone(perms, n);
  const int s = static_cast<int>(seq.elements.size());
  REQUIRE(s >= 2);
  PermutationMultiset support{n, perms};
  const long long trials = 20000;
  double best = 0.0;
  for (int m : {1, n / 4, static_cast<int>(n / std::exp(1.0)), n / 2}) {
    PickEstimate est = estimate_max_pick_prob(
        support,
        [&](const ValueAssignment& va, const Permutation& pi) {
          return wait_and_pick(va, pi, m, 1, k);
        },
        [&](std::uint64_t sd) { return hard_assignment_sample(seq, n, k, Rat(1, 2), sd).values; },
        trials, 97);
    best = std::max(best, est.p_hat);
  }
  CHECK(best <= static_cast<double>(k) / s + 0.05);
}
