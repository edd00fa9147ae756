#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "freeorder/permutation.hpp"

namespace freeorder {

// Family of q maps h : {1..n} -> {0..q-1} built from degree-<=d polynomials
// with zero free term over GF(q), q prime. Guarantees: any two domain points
// collide under at most d of the maps, and every preimage has size
// floor(n/q) or floor(n/q)+1.
struct ReductionFamily {
  int n = 0;
  int q = 0;
  int d = 0;
  // values[i-1][qp] = h_qp(i) for qp in 0..q-1
  std::vector<std::vector<int>> values;

  int apply(int func, int i) const { return values[i - 1][func]; }
  // h shifted to 1-based block ids, ready for compose_block.
  std::vector<int> block_map(int func) const;
};

bool is_prime(long long q);

ReductionFamily build_family(int n, int q, int d);

struct FamilyReport {
  int max_collisions = 0;
  int preimage_min = 0;
  int preimage_max = 0;
  bool ok = false;  // invariants hold
};

// Exhaustive O(n^2 q) collision count and O(n q) preimage histogram.
FamilyReport verify_family(const ReductionFamily& fam);

// Smallest prime q >= ell_target and the smallest d with q^{d+1} >= n;
// errors when that d violates d < q or d <= floor(sqrt(q)).
std::pair<int, int> choose_parameters(long long n, int ell_target);

// {pi ∘ (h+1) : pi in low, h in fam}; |result| = |low| * q. When
// lemma_ratio_ok is given it is set to (q^2 < n/q), the condition under which
// the lifting keeps event probabilities.
PermutationMultiset lift_multiset(const PermutationMultiset& low, const ReductionFamily& fam,
                                  int n, bool* lemma_ratio_ok = nullptr);

// RSFAM 1 file format: header `RSFAM 1 n=<n> q=<q> d=<d>`, then n CSV rows of
// q values in 0..q-1.
void write_family(std::ostream& os, const ReductionFamily& fam);
ReductionFamily read_family(std::istream& is);
void save_family(const std::string& path, const ReductionFamily& fam);
ReductionFamily load_family(const std::string& path);

}  // namespace freeorder
