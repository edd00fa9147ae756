#include <set>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "freeorder/dimred.hpp"
#include "freeorder/rng.hpp"

using namespace freeorder;

TEST_CASE("field sanity: adding a constant permutes GF(q)") {
  for (int q = 2; q <= 101; ++q) {
    if (!is_prime(q)) continue;
    for (int j = 0; j < q; ++j) {
      std::set<int> vals;
      for (int i = 0; i < q; ++i) vals.insert((j + i) % q);
      CHECK(static_cast<int>(vals.size()) == q);
    }
  }
}

TEST_CASE("explicit family at q = 2, d = 1, n = 4") {
  ReductionFamily fam = build_family(4, 2, 1);
  std::vector<int> h0, h1;
  for (int i = 1; i <= 4; ++i) {
    h0.push_back(fam.apply(0, i));
    h1.push_back(fam.apply(1, i));
  }
  CHECK(h0 == std::vector<int>{0, 1, 0, 1});
  CHECK(h1 == std::vector<int>{0, 1, 1, 0});
  FamilyReport rep = verify_family(fam);
  CHECK(rep.max_collisions == 1);  // the bound d is attained
  CHECK(rep.preimage_min == 2);
  CHECK(rep.preimage_max == 2);
  CHECK(rep.ok);
}

TEST_CASE("preimages balanced at q = 3, n = 9 and q = 11, n = 100") {
  FamilyReport r9 = verify_family(build_family(9, 3, 1));
  CHECK(r9.preimage_min == 3);
  CHECK(r9.preimage_max == 3);
  CHECK(r9.ok);

  FamilyReport r100 = verify_family(build_family(100, 11, 1));
  CHECK(r100.max_collisions <= 1);
  CHECK(r100.preimage_min == 9);
  CHECK(r100.preimage_max == 10);
  CHECK(r100.ok);
}

TEST_CASE("build_family rejects bad parameters") {
  CHECK_THROWS_AS(build_family(4, 4, 1), std::invalid_argument);   // q not prime
  CHECK_THROWS_AS(build_family(100, 5, 1), std::invalid_argument); // 5^2 < 100
  CHECK_THROWS_AS(build_family(4, 2, 2), std::invalid_argument);   // d >= q
}

TEST_CASE("verify_family flags a mutated family") {
  ReductionFamily fam = build_family(9, 3, 1);
  fam.values[0][0] = (fam.values[0][0] + 1) % 3;
  CHECK_FALSE(verify_family(fam).ok);
}

TEST_CASE("choose_parameters") {
  CHECK(choose_parameters(100, 11) == std::pair<int, int>{11, 1});
  CHECK(choose_parameters(1000000, 61) == std::pair<int, int>{61, 3});
  CHECK_THROWS_AS(choose_parameters(5, 2), std::invalid_argument);
}

TEST_CASE("lift of a singleton identity") {
  ReductionFamily fam = build_family(4, 2, 1);
  PermutationMultiset low{2, {Permutation::identity(2)}};
  bool ratio_ok = true;
  PermutationMultiset lifted = lift_multiset(low, fam, 4, &ratio_ok);
  CHECK_FALSE(ratio_ok);  // 2^2 >= 4/2
  REQUIRE(lifted.entries.size() == 2);
  CHECK(lifted.entries[0] == Permutation({1, 3, 2, 4}));
  CHECK(lifted.entries[1] == Permutation({1, 4, 2, 3}));
  CHECK(entropy_bits(lifted) <= entropy_bits(low) + std::log2(2.0) + 1e-12);
}

TEST_CASE("lift size and entropy bound on a random multiset") {
  ReductionFamily fam = build_family(100, 11, 1);
  PermutationMultiset low{11, {}};
  for (int s = 0; s < 5; ++s) low.entries.push_back(sequential_draw(11, s));
  PermutationMultiset lifted = lift_multiset(low, fam, 100);
  CHECK(lifted.entries.size() == low.entries.size() * 11);
  CHECK(entropy_bits(lifted) <= entropy_bits(low) + std::log2(11.0) + 1e-12);
}

TEST_CASE("bucket membership is preserved under lifting with exact block sizes") {
  // n divisible by q: every block has size exactly n/q, so position
  // boundaries scale exactly: pos_sigma(i) <= c*(n/q) iff pos_pi(h(i)) <= c.
  const int q = 11, n = 121;
  ReductionFamily fam = build_family(n, q, 1);
  SplitMix64 rng(17);
  for (int it = 0; it < 20; ++it) {
    Permutation pi = sequential_draw(q, rng.next());
    int f = static_cast<int>(rng.bounded(q));
    Permutation sigma = compose_block(pi, fam.block_map(f), n);
    for (int i = 1; i <= n; ++i) {
      int r = pi.pos_of(fam.apply(f, i) + 1);
      for (int c = 1; c < q; ++c) {
        CHECK((sigma.pos_of(i) <= c * (n / q)) == (r <= c));
      }
    }
  }
}

TEST_CASE("RSFAM round trip") {
  ReductionFamily fam = build_family(100, 11, 1);
  std::stringstream ss;
  write_family(ss, fam);
  ReductionFamily back = read_family(ss);
  CHECK(back.n == fam.n);
  CHECK(back.q == fam.q);
  CHECK(back.d == fam.d);
  CHECK(back.values == fam.values);
}
