#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace freeorder {

// A permutation of {1..n}. Positions and values are 1-based throughout the
// project; order()[p-1] holds pi(p). Immutable after construction.
class Permutation {
 public:
  explicit Permutation(std::vector<int> order);
  static Permutation identity(int n);

  int n() const { return static_cast<int>(order_.size()); }
  // pi(p): the element at position p.
  int at(int p) const { return order_[p - 1]; }
  // pi^{-1}(v): the position holding element v.
  int pos_of(int v) const { return inv_[v - 1]; }
  const std::vector<int>& order() const { return order_; }

  bool operator==(const Permutation& o) const { return order_ == o.order_; }
  bool operator<(const Permutation& o) const { return order_ < o.order_; }

 private:
  std::vector<int> order_;
  std::vector<int> inv_;
};

// A permutation whose first r positions are fixed; the rest are understood as
// a uniformly random arrangement of the unused elements.
class SemiRandomPermutation {
 public:
  SemiRandomPermutation(int n, std::vector<int> prefix);

  int n() const { return n_; }
  int r() const { return static_cast<int>(prefix_.size()); }
  const std::vector<int>& prefix() const { return prefix_; }
  int at(int p) const { return prefix_[p - 1]; }  // p in 1..r
  // 0 when v is not among the fixed prefix, else its 1-based position.
  int fixed_pos_of(int v) const { return fixed_pos_[v - 1]; }
  bool is_fixed(int v) const { return fixed_pos_[v - 1] != 0; }

  // r == n: the object is a full permutation.
  Permutation to_permutation() const;

 private:
  int n_;
  std::vector<int> prefix_;
  std::vector<int> fixed_pos_;
};

// Finite-support distribution: uniform over entries, duplicates raise mass.
struct PermutationMultiset {
  int n = 0;
  std::vector<Permutation> entries;

  std::size_t count() const { return entries.size(); }
};

// Shannon entropy in bits of the uniform-over-entries distribution.
// Throws on an empty multiset.
double entropy_bits(const PermutationMultiset& ms);

// Uniform draw from the entries by a seeded deterministic generator.
Permutation sample(const PermutationMultiset& ms, std::uint64_t seed);

// Draws pi(1) uniformly from {1..n}, then pi(2) as the X-th smallest of the
// remaining elements, and so on; the induced distribution is uniform.
Permutation sequential_draw(int n, std::uint64_t seed);

// The same index-variable process with the indices given explicitly:
// indices[i-1] in {1..n-i+1} selects the indices[i-1]-th smallest remaining
// element as pi(i). Exposed so tests can enumerate the process exhaustively.
Permutation from_index_vector(int n, const std::vector<int>& indices);

// Block composition pi ∘ g: lists the blocks g^{-1}(pi(1)), g^{-1}(pi(2)), ...
// in that order, elements ascending inside each block. g must be total on
// {1..n} with values in {1..l}, where l = pi.n().
Permutation compose_block(const Permutation& pi, const std::vector<int>& g, int n);

// PERMSET v1 file format:
//   PERMSET 1 n=<n> count=<c>
//   <c lines of n space-separated 1-based values>
// The reader rejects non-bijective lines.
void write_permset(std::ostream& os, const PermutationMultiset& ms);
PermutationMultiset read_permset(std::istream& is);
void save_permset(const std::string& path, const PermutationMultiset& ms);
PermutationMultiset load_permset(const std::string& path);

}  // namespace freeorder
