#include "freeorder/dimred.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace freeorder {

bool is_prime(long long q) {
  if (q < 2) return false;
  for (long long p = 2; p * p <= q; ++p) {
    if (q % p == 0) return false;
  }
  return true;
}

std::vector<int> ReductionFamily::block_map(int func) const {
  std::vector<int> g(n);
  for (int i = 1; i <= n; ++i) g[i - 1] = values[i - 1][func] + 1;
  return g;
}

namespace {

// q^(d+1) >= n without overflow (n, q < 2^31).
bool power_covers(long long q, int d, long long n) {
  long long v = 1;
  for (int i = 0; i < d + 1 && v < n; ++i) v *= q;
  return v >= n;
}

}  // namespace

ReductionFamily build_family(int n, int q, int d) {
  if (!is_prime(q)) throw std::invalid_argument("build_family: q not prime");
  if (d < 1 || d >= q) throw std::invalid_argument("build_family: need 1 <= d < q");
  if (!power_covers(q, d, n)) throw std::invalid_argument("build_family: q^(d+1) < n");
  if (n < 1) throw std::invalid_argument("build_family: n must be positive");

  ReductionFamily fam;
  fam.n = n;
  fam.q = q;
  fam.d = d;
  fam.values.assign(n, std::vector<int>(q, 0));

  // Polynomials with zero free term, coefficients (a_1..a_d) in lexicographic
  // order with a_1 most significant. Block j of q consecutive rows shares
  // polynomial g_{j+1}; row qj+i evaluates g_{j+1}(x) + (i-1).
  std::vector<int> coeff(d, 0);  // coeff[0] = a_1
  long long block = -1;
  for (int row = 1; row <= n; ++row) {
    long long j = (row - 1) / q;
    int offset = (row - 1) % q;
    if (j != block) {
      block = j;
      long long rem = j;
      for (int c = d - 1; c >= 0; --c) {
        coeff[c] = static_cast<int>(rem % q);
        rem /= q;
      }
      if (rem != 0) throw std::logic_error("build_family: polynomial index overflow");
    }
    for (int x = 0; x < q; ++x) {
      // Horner for a_1 x + a_2 x^2 + ... + a_d x^d = x(a_1 + x(a_2 + ...))
      long long acc = 0;
      for (int c = d - 1; c >= 0; --c) acc = (acc * x + coeff[c]) % q;
      acc = (acc * x) % q;
      fam.values[row - 1][x] = static_cast<int>((acc + offset) % q);
    }
  }
  return fam;
}

FamilyReport verify_family(const ReductionFamily& fam) {
  FamilyReport rep;
  const int n = fam.n, q = fam.q;
  rep.max_collisions = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      int c = 0;
      for (int f = 0; f < q; ++f) {
        if (fam.values[i - 1][f] == fam.values[j - 1][f]) ++c;
      }
      rep.max_collisions = std::max(rep.max_collisions, c);
    }
  }
  rep.preimage_min = n;
  rep.preimage_max = 0;
  for (int f = 0; f < q; ++f) {
    std::vector<int> hist(q, 0);
    for (int i = 1; i <= n; ++i) ++hist[fam.values[i - 1][f]];
    for (int v = 0; v < q; ++v) {
      rep.preimage_min = std::min(rep.preimage_min, hist[v]);
      rep.preimage_max = std::max(rep.preimage_max, hist[v]);
    }
  }
  const int base = n / q;
  rep.ok = rep.max_collisions <= fam.d && rep.preimage_min >= base &&
           rep.preimage_max <= base + 1;
  return rep;
}

std::pair<int, int> choose_parameters(long long n, int ell_target) {
  if (ell_target < 2) throw std::invalid_argument("choose_parameters: ell_target >= 2 required");
  if (n < 2) throw std::invalid_argument("choose_parameters: n >= 2 required");
  int q = ell_target;
  while (!is_prime(q)) ++q;
  int d = 1;
  while (d < 64 && !power_covers(q, d, n)) ++d;
  int d_cap = std::min(q - 1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(q)))));
  if (d > d_cap)
    throw std::invalid_argument(
        "choose_parameters: n too large for d <= sqrt(q) at this q; raise ell_target");
  return {q, d};
}

PermutationMultiset lift_multiset(const PermutationMultiset& low, const ReductionFamily& fam,
                                  int n, bool* lemma_ratio_ok) {
  if (low.n != fam.q)
    throw std::invalid_argument("lift_multiset: multiset dimension must equal q");
  if (fam.n != n) throw std::invalid_argument("lift_multiset: family built for different n");
  if (lemma_ratio_ok) {
    long long q = fam.q;
    *lemma_ratio_ok = q * q * q < static_cast<long long>(n);  // q^2 < n/q
  }
  PermutationMultiset out;
  out.n = n;
  out.entries.reserve(low.entries.size() * fam.q);
  for (const auto& pi : low.entries) {
    for (int f = 0; f < fam.q; ++f) {
      out.entries.push_back(compose_block(pi, fam.block_map(f), n));
    }
  }
  return out;
}

void write_family(std::ostream& os, const ReductionFamily& fam) {
  os << "RSFAM 1 n=" << fam.n << " q=" << fam.q << " d=" << fam.d << "\n";
  for (int i = 1; i <= fam.n; ++i) {
    for (int f = 0; f < fam.q; ++f) {
      if (f) os << ',';
      os << fam.values[i - 1][f];
    }
    os << "\n";
  }
}

ReductionFamily read_family(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("RSFAM: missing header");
  ReductionFamily fam;
  {
    std::istringstream hs(header);
    std::string magic, one, kn, kq, kd;
    hs >> magic >> one >> kn >> kq >> kd;
    if (magic != "RSFAM" || one != "1" || kn.rfind("n=", 0) != 0 || kq.rfind("q=", 0) != 0 ||
        kd.rfind("d=", 0) != 0)
      throw std::runtime_error("RSFAM: bad header");
    fam.n = std::stoi(kn.substr(2));
    fam.q = std::stoi(kq.substr(2));
    fam.d = std::stoi(kd.substr(2));
  }
  if (fam.n < 1 || fam.q < 2) throw std::runtime_error("RSFAM: bad header values");
  fam.values.assign(fam.n, std::vector<int>(fam.q, 0));
  std::string line;
  for (int i = 0; i < fam.n; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("RSFAM: truncated body");
    std::istringstream ls(line);
    std::string cell;
    for (int f = 0; f < fam.q; ++f) {
      if (!std::getline(ls, cell, ',')) throw std::runtime_error("RSFAM: short row");
      int v = std::stoi(cell);
      if (v < 0 || v >= fam.q) throw std::runtime_error("RSFAM: value out of range");
      fam.values[i][f] = v;
    }
  }
  return fam;
}

void save_family(const std::string& path, const ReductionFamily& fam) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_family(f, fam);
}

ReductionFamily load_family(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_family(f);
}

}  // namespace freeorder
