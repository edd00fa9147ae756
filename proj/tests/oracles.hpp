#pragma once

// Brute-force oracles for the test suite. Everything here enumerates; nothing
// reuses the library's formula paths it is checking.

#include <algorithm>
#include <functional>
#include <vector>

#include "freeorder/permutation.hpp"

namespace oracle {

inline void for_each_permutation(int n,
                                 const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  do {
    fn(order);
  } while (std::next_permutation(order.begin(), order.end()));
}

inline long long count_permutations(int n,
                                    const std::function<bool(const freeorder::Permutation&)>& pred) {
  long long count = 0;
  for_each_permutation(n, [&](const std::vector<int>& order) {
    if (pred(freeorder::Permutation(order))) ++count;
  });
  return count;
}

// All full permutations extending the given prefix (arrangements of the
// unused elements over the remaining positions).
inline void for_each_completion(int n, const std::vector<int>& prefix,
                                const std::function<void(const freeorder::Permutation&)>& fn) {
  std::vector<bool> used(n + 1, false);
  for (int v : prefix) used[v] = true;
  std::vector<int> rest;
  for (int v = 1; v <= n; ++v) {
    if (!used[v]) rest.push_back(v);
  }
  std::sort(rest.begin(), rest.end());
  do {
    std::vector<int> order = prefix;
    order.insert(order.end(), rest.begin(), rest.end());
    fn(freeorder::Permutation(order));
  } while (std::next_permutation(rest.begin(), rest.end()));
}

inline long long count_completions(int n, const std::vector<int>& prefix,
                                   const std::function<bool(const freeorder::Permutation&)>& pred) {
  long long count = 0;
  for_each_completion(n, prefix, [&](const freeorder::Permutation& pi) {
    if (pred(pi)) ++count;
  });
  return count;
}

inline long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace oracle
