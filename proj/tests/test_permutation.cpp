#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "freeorder/permutation.hpp"
#include "freeorder/rng.hpp"
#include "oracles.hpp"

using namespace freeorder;

TEST_CASE("Permutation validates bijection") {
  CHECK_THROWS_AS(Permutation({1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({1, 2, 4}), std::invalid_argument);
  Permutation p({2, 3, 1});
  CHECK(p.at(1) == 2);
  CHECK(p.pos_of(2) == 1);
  CHECK(p.pos_of(1) == 3);
  for (int v = 1; v <= 3; ++v) CHECK(p.at(p.pos_of(v)) == v);
}

TEST_CASE("entropy of finite-support distributions") {
  Permutation a({1, 2, 3}), b({2, 1, 3}), c({3, 1, 2}), d({1, 3, 2});
  CHECK(entropy_bits({3, {a}}) == doctest::Approx(0.0));
  CHECK(entropy_bits({3, {a, b, c, d}}) == doctest::Approx(2.0));
  CHECK(entropy_bits({3, {a, a, b, c}}) == doctest::Approx(1.5));
  CHECK_THROWS_AS(entropy_bits({3, {}}), std::invalid_argument);
}

TEST_CASE("entropy equals log2(count) exactly when entries are distinct") {
  std::vector<Permutation> entries;
  oracle::for_each_permutation(4, [&](const std::vector<int>& o) {
    entries.emplace_back(o);
  });
  entries.erase(entries.begin() + 16, entries.end());
  CHECK(entropy_bits({4, entries}) == doctest::Approx(4.0));
}

TEST_CASE("sample is seeded and uniform over entries") {
  Permutation a({1, 2, 3}), b({2, 1, 3}), c({3, 1, 2}), d({1, 3, 2});
  PermutationMultiset single{3, {a}};
  for (std::uint64_t s : {0ull, 1ull, 77ull}) CHECK(sample(single, s) == a);

  PermutationMultiset four{3, {a, b, c, d}};
  std::map<std::vector<int>, int> freq;
  const int trials = 100000;
  for (int s = 0; s < trials; ++s) ++freq[sample(four, s).order()];
  CHECK(freq.size() == 4);
  // each frequency within 3 sigma of trials/4
  double sigma = std::sqrt(trials * 0.25 * 0.75);
  for (const auto& [_, f] : freq) CHECK(std::abs(f - trials / 4.0) <= 3 * sigma);

  CHECK(sample(four, 1234567) == sample(four, 1234567));
  CHECK_THROWS_AS(sample({3, {}}, 0), std::invalid_argument);
}

TEST_CASE("sequential draw realizes the index process") {
  CHECK(sequential_draw(1, 42) == Permutation({1}));
  CHECK_THROWS_AS(sequential_draw(0, 0), std::invalid_argument);

  // n = 3: the 3 * 2 * 1 index vectors hit each permutation exactly once
  std::set<std::vector<int>> seen;
  for (int x1 = 1; x1 <= 3; ++x1) {
    for (int x2 = 1; x2 <= 2; ++x2) {
      CHECK(seen.insert(from_index_vector(3, {x1, x2, 1}).order()).second);
    }
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("sequential draw frequencies at n = 5" * doctest::timeout(60)) {
  std::map<std::vector<int>, int> freq;
  const int trials = 1000000;
  for (int s = 0; s < trials; ++s) ++freq[sequential_draw(5, s).order()];
  CHECK(freq.size() == 120);
  double p = 1.0 / 120.0;
  double sigma = std::sqrt(trials * p * (1 - p));
  for (const auto& [_, f] : freq) CHECK(std::abs(f - trials * p) <= 3 * sigma);
}

TEST_CASE("block composition") {
  Permutation id2 = Permutation::identity(2);
  SUBCASE("identity g keeps pi") {
    Permutation pi({3, 1, 2});
    std::vector<int> g = {1, 2, 3};
    CHECK(compose_block(pi, g, 3) == pi);
  }
  SUBCASE("two blocks, reversed") {
    Permutation pi({2, 1});
    CHECK(compose_block(pi, {1, 2, 1, 2}, 4) == Permutation({2, 4, 1, 3}));
  }
  SUBCASE("bad block id") {
    CHECK_THROWS_AS(compose_block(id2, {1, 3, 1, 2}, 4), std::invalid_argument);
  }
  SUBCASE("defining inequality holds on random instances") {
    SplitMix64 rng(5);
    for (int it = 0; it < 50; ++it) {
      int l = 2 + static_cast<int>(rng.bounded(4));
      int n = l + static_cast<int>(rng.bounded(8));
      Permutation pi = sequential_draw(l, rng.next());
      std::vector<int> g(n);
      for (int i = 0; i < n; ++i) g[i] = 1 + static_cast<int>(rng.bounded(l));
      // pin the first l entries so every block is nonempty in the instance
      for (int i = 0; i < l; ++i) g[i] = i + 1;
      Permutation sigma = compose_block(pi, g, n);
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          if (i == j) continue;
          if (pi.pos_of(g[i - 1]) < pi.pos_of(g[j - 1])) {
            CHECK(sigma.pos_of(i) < sigma.pos_of(j));
          }
        }
      }
    }
  }
}

TEST_CASE("PERMSET round trip and rejection") {
  PermutationMultiset ms{3, {Permutation({2, 1, 3}), Permutation({1, 2, 3}),
                             Permutation({2, 1, 3})}};
  std::stringstream ss;
  write_permset(ss, ms);
  PermutationMultiset back = read_permset(ss);
  CHECK(back.n == 3);
  REQUIRE(back.entries.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back.entries[i] == ms.entries[i]);

  std::stringstream bad("PERMSET 1 n=3 count=1\n1 1 2\n");
  CHECK_THROWS_AS(read_permset(bad), std::runtime_error);
}
