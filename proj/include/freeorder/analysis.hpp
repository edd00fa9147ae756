#pragma once

#include <map>
#include <string>
#include <utility>

#include "freeorder/exact.hpp"

namespace freeorder {

// H_k = 1 + 1/2 + ... + 1/k as an exact rational (H_0 = 0).
BigRat harmonic(int k);

// f(k, m) = (m/k) (H_{k-1} - H_{m-1}): exact success probability of the
// checkpoint-m wait-and-pick under a fully uniform order.
BigRat f_exact(int k, int m);

// argmax_m f(k, m), smallest m on ties. k >= 3.
int f_argmax(int k);

// First-order expansion of the optimal success probability: 1/e + c0/n with
// c0 = 1/2 - 1/(2e).
double opt_n_approx(int n);

// Chernoff tails for negatively associated indicator sums with mean mu:
// upper tail exp(-eta^2 mu / 3), lower tail exp(-eta^2 mu / 2).
std::pair<double, double> chernoff_na_bounds(double mu, double eta);

// Headline bound formulas (natural log throughout).
double ratio_bound_ksec(int k);         // 1 - 4 sqrt(ln k / k)
double success_bound_1sec(int n);       // 1/e - 3 (ln ln n)^2 / (e sqrt(ln n))
double positive_lb_1sec(int ell, int k);  // 1/e + 1/ell - (1/(e k)) (1 - 1/e)^k

struct BoundReport {
  std::string name;
  double value = 0.0;
  std::map<std::string, double> inputs;

  std::string to_json() const;
};

}  // namespace freeorder
