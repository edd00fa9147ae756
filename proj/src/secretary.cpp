#include "freeorder/secretary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace freeorder {

int ValueAssignment::index_of_rank(int r) const {
  if (r < 1 || r > n) throw std::invalid_argument("index_of_rank: rank out of range");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i + 1;
  std::nth_element(idx.begin(), idx.begin() + (r - 1), idx.end(), [&](int a, int b) {
    if (values[a - 1] != values[b - 1]) return values[a - 1] > values[b - 1];
    return a < b;
  });
  return idx[r - 1];
}

double top_k_sum(const ValueAssignment& va, int k) {
  if (k < 0 || k > va.n) throw std::invalid_argument("top_k_sum: k out of range");
  std::vector<double> v = va.values;
  std::partial_sort(v.begin(), v.begin() + k, v.end(), std::greater<>());
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += v[i];
  return s;
}

namespace {

void finish(const ValueAssignment& va, int k, RunResult& r) {
  r.total = 0.0;
  for (int p : r.selected) r.total += va.at(p);
  r.opt = top_k_sum(va, k);
  r.ratio = r.opt > 0 ? r.total / r.opt : 1.0;
  int best = va.index_of_rank(1);
  r.success = std::find(r.selected.begin(), r.selected.end(), best) != r.selected.end();
}

// tau-th largest value among arrivals 1..m
double prefix_statistic(const ValueAssignment& va, const Permutation& pi, int m, int tau) {
  std::vector<double> seen(m);
  for (int p = 1; p <= m; ++p) seen[p - 1] = va.at(pi.at(p));
  std::nth_element(seen.begin(), seen.begin() + (tau - 1), seen.end(), std::greater<>());
  return seen[tau - 1];
}

}  // namespace

RunResult wait_and_pick(const ValueAssignment& va, const Permutation& pi, int m, int tau,
                        int k) {
  const int n = va.n;
  if (pi.n() != n) throw std::invalid_argument("wait_and_pick: dimension mismatch");
  if (m < 1 || m > n - 1) throw std::invalid_argument("wait_and_pick: checkpoint out of range");
  if (tau < 1 || tau > m) throw std::invalid_argument("wait_and_pick: statistic out of range");
  if (k < 1 || k > n) throw std::invalid_argument("wait_and_pick: budget out of range");

  const double threshold = prefix_statistic(va, pi, m, tau);
  RunResult r;
  for (int p = m + 1; p <= n; ++p) {
    int taken = static_cast<int>(r.selected.size());
    if (taken == k) break;
    bool forced = (n - p + 1) <= (k - taken);
    if (forced || va.at(pi.at(p)) >= threshold) r.selected.push_back(pi.at(p));
  }
  finish(va, k, r);
  return r;
}

RunResult classic_secretary(const ValueAssignment& va, const Permutation& pi) {
  const int n = va.n;
  if (n < 3) throw std::invalid_argument("classic_secretary: n >= 3 required");
  int m = static_cast<int>(std::floor(n / std::exp(1.0)));
  return wait_and_pick(va, pi, m, 1, 1);
}

RunResult multi_threshold_ksec(const ValueAssignment& va, const Permutation& pi, int k) {
  return multi_threshold_ksec(va, pi, KsecSchedule::make(va.n, k));
}

RunResult multi_threshold_ksec(const ValueAssignment& va, const Permutation& pi,
                               const KsecSchedule& sched) {
  const int n = va.n;
  if (pi.n() != n || sched.ell != n)
    throw std::invalid_argument("multi_threshold_ksec: dimension mismatch");
  const int k = sched.k;

  RunResult r;
  std::vector<double> arrived(n);
  for (int p = 1; p <= n; ++p) arrived[p - 1] = va.at(pi.at(p));

  for (int j = 0; j < sched.windows; ++j) {
    int w_lo = sched.ell_j[j], w_hi = sched.ell_j[j + 1];
    if (w_lo >= w_hi) continue;
    // statistic over the first ell_j arrivals
    std::vector<double> seen(arrived.begin(), arrived.begin() + w_lo);
    int rank = sched.rank_j[j];
    std::nth_element(seen.begin(), seen.begin() + (rank - 1), seen.end(), std::greater<>());
    double threshold = seen[rank - 1];
    for (int p = w_lo + 1; p <= w_hi; ++p) {
      if (static_cast<int>(r.selected.size()) == k) break;
      if (arrived[p - 1] >= threshold) r.selected.push_back(pi.at(p));
    }
  }
  finish(va, k, r);
  return r;
}

void write_values(std::ostream& os, const ValueAssignment& va) {
  os << "VALUES 1 n=" << va.n << "\n";
  os.precision(17);
  for (int p = 1; p <= va.n; ++p) os << p << ' ' << va.at(p) << "\n";
}

ValueAssignment read_values(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("VALUES: missing header");
  int n = -1;
  {
    std::istringstream hs(header);
    std::string magic, one, kn;
    hs >> magic >> one >> kn;
    if (magic != "VALUES" || one != "1" || kn.rfind("n=", 0) != 0)
      throw std::runtime_error("VALUES: bad header");
    n = std::stoi(kn.substr(2));
  }
  if (n < 1) throw std::runtime_error("VALUES: bad n");
  ValueAssignment va;
  va.n = n;
  va.values.assign(n, -1.0);
  std::vector<bool> seen(n, false);
  int pos;
  double val;
  while (is >> pos >> val) {
    if (pos < 1 || pos > n) throw std::runtime_error("VALUES: position out of range");
    if (seen[pos - 1]) throw std::runtime_error("VALUES: duplicate position");
    if (val < 0) throw std::runtime_error("VALUES: negative value");
    seen[pos - 1] = true;
    va.values[pos - 1] = val;
  }
  for (int p = 1; p <= n; ++p) {
    if (!seen[p - 1]) throw std::runtime_error("VALUES: missing position " + std::to_string(p));
  }
  return va;
}

void save_values(const std::string& path, const ValueAssignment& va) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_values(f, va);
}

ValueAssignment load_values(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_values(f);
}

}  // namespace freeorder
