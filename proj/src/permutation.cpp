#include "freeorder/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "freeorder/rng.hpp"

namespace freeorder {

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  const int n = static_cast<int>(order_.size());
  if (n == 0) throw std::invalid_argument("Permutation: empty order");
  inv_.assign(n, 0);
  for (int p = 1; p <= n; ++p) {
    int v = order_[p - 1];
    if (v < 1 || v > n) throw std::invalid_argument("Permutation: value out of range");
    if (inv_[v - 1] != 0) throw std::invalid_argument("Permutation: not a bijection");
    inv_[v - 1] = p;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> o(n);
  for (int i = 0; i < n; ++i) o[i] = i + 1;
  return Permutation(std::move(o));
}

SemiRandomPermutation::SemiRandomPermutation(int n, std::vector<int> prefix)
    : n_(n), prefix_(std::move(prefix)) {
  if (n_ < 1) throw std::invalid_argument("SemiRandomPermutation: n must be positive");
  if (static_cast<int>(prefix_.size()) > n_)
    throw std::invalid_argument("SemiRandomPermutation: prefix longer than n");
  fixed_pos_.assign(n_, 0);
  for (int p = 1; p <= r(); ++p) {
    int v = prefix_[p - 1];
    if (v < 1 || v > n_)
      throw std::invalid_argument("SemiRandomPermutation: prefix value out of range");
    if (fixed_pos_[v - 1] != 0)
      throw std::invalid_argument("SemiRandomPermutation: duplicate prefix value");
    fixed_pos_[v - 1] = p;
  }
}

Permutation SemiRandomPermutation::to_permutation() const {
  if (r() != n_)
    throw std::logic_error("SemiRandomPermutation: not fully fixed");
  return Permutation(prefix_);
}

double entropy_bits(const PermutationMultiset& ms) {
  if (ms.entries.empty()) throw std::invalid_argument("entropy_bits: empty distribution");
  std::map<std::vector<int>, std::size_t> mult;
  for (const auto& p : ms.entries) ++mult[p.order()];
  const double total = static_cast<double>(ms.entries.size());
  double h = 0.0;
  for (const auto& [_, c] : mult) {
    double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

Permutation sample(const PermutationMultiset& ms, std::uint64_t seed) {
  if (ms.entries.empty()) throw std::invalid_argument("sample: empty distribution");
  SplitMix64 g(seed);
  return ms.entries[g.bounded(ms.entries.size())];
}

Permutation from_index_vector(int n, const std::vector<int>& indices) {
  if (n < 1) throw std::invalid_argument("from_index_vector: n must be positive");
  if (static_cast<int>(indices.size()) != n)
    throw std::invalid_argument("from_index_vector: need n indices");
  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i + 1;
  std::vector<int> order;
  order.reserve(n);
  for (int i = 0; i < n; ++i) {
    int x = indices[i];
    if (x < 1 || x > static_cast<int>(remaining.size()))
      throw std::invalid_argument("from_index_vector: index out of range");
    order.push_back(remaining[x - 1]);
    remaining.erase(remaining.begin() + (x - 1));
  }
  return Permutation(std::move(order));
}

Permutation sequential_draw(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sequential_draw: n must be positive");
  SplitMix64 g(seed);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i)
    idx[i] = 1 + static_cast<int>(g.bounded(static_cast<std::uint64_t>(n - i)));
  return from_index_vector(n, idx);
}

Permutation compose_block(const Permutation& pi, const std::vector<int>& g, int n) {
  const int l = pi.n();
  if (static_cast<int>(g.size()) != n)
    throw std::invalid_argument("compose_block: g must be total on {1..n}");
  std::vector<std::vector<int>> blocks(l);
  for (int i = 1; i <= n; ++i) {
    int b = g[i - 1];
    if (b < 1 || b > l) throw std::invalid_argument("compose_block: g value outside 1..l");
    blocks[b - 1].push_back(i);  // ascending by construction
  }
  std::vector<int> order;
  order.reserve(n);
  for (int p = 1; p <= l; ++p) {
    for (int e : blocks[pi.at(p) - 1]) order.push_back(e);
  }
  return Permutation(std::move(order));
}

void write_permset(std::ostream& os, const PermutationMultiset& ms) {
  os << "PERMSET 1 n=" << ms.n << " count=" << ms.entries.size() << "\n";
  for (const auto& p : ms.entries) {
    for (int i = 1; i <= ms.n; ++i) {
      if (i > 1) os << ' ';
      os << p.at(i);
    }
    os << "\n";
  }
}

PermutationMultiset read_permset(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("PERMSET: missing header");
  int n = -1;
  long long count = -1;
  {
    std::istringstream hs(header);
    std::string magic, one, kn, kc;
    hs >> magic >> one >> kn >> kc;
    if (magic != "PERMSET" || one != "1" || kn.rfind("n=", 0) != 0 ||
        kc.rfind("count=", 0) != 0)
      throw std::runtime_error("PERMSET: bad header");
    n = std::stoi(kn.substr(2));
    count = std::stoll(kc.substr(6));
  }
  if (n < 1 || count < 0) throw std::runtime_error("PERMSET: bad header values");
  PermutationMultiset ms;
  ms.n = n;
  ms.entries.reserve(static_cast<std::size_t>(count));
  for (long long c = 0; c < count; ++c) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
      if (!(is >> order[i])) throw std::runtime_error("PERMSET: truncated body");
    }
    try {
      ms.entries.emplace_back(std::move(order));
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("PERMSET: line " + std::to_string(c + 1) +
                               " is not a permutation");
    }
  }
  return ms;
}

void save_permset(const std::string& path, const PermutationMultiset& ms) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_permset(f, ms);
}

PermutationMultiset load_permset(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_permset(f);
}

}  // namespace freeorder
