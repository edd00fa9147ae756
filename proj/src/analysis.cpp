#include "freeorder/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace freeorder {

BigRat harmonic(int k) {
  if (k < 0) throw std::invalid_argument("harmonic: k must be nonnegative");
  BigRat h(0);
  for (int i = 1; i <= k; ++i) h += BigRat(1, i);
  return h;
}

BigRat f_exact(int k, int m) {
  if (m < 1) throw std::invalid_argument("f_exact: m must be at least 1");
  if (m > k) throw std::invalid_argument("f_exact: m must be at most k");
  return BigRat(m, k) * (harmonic(k - 1) - harmonic(m - 1));
}

int f_argmax(int k) {
  if (k < 3) throw std::invalid_argument("f_argmax: k >= 3 required");
  // f(k, m+1) - f(k, m) = (H_{k-1} - H_m - 1)/k, so f increases while
  // H_m < H_{k-1} - 1 and decreases after; the maximum sits right past the
  // last increasing step (smallest m on an exact tie).
  BigRat target = harmonic(k - 1) - BigRat(1);
  BigRat h(0);
  int m0 = 0;
  for (int m = 1; m < k; ++m) {
    h += BigRat(1, m);  // h = H_m
    if (h < target)
      m0 = m;
    else
      break;
  }
  return m0 + 1;
}

double opt_n_approx(int n) {
  if (n < 3) throw std::invalid_argument("opt_n_approx: n >= 3 required");
  const double e = std::exp(1.0);
  const double c0 = 0.5 - 1.0 / (2.0 * e);
  return 1.0 / e + c0 / n;
}

std::pair<double, double> chernoff_na_bounds(double mu, double eta) {
  if (mu <= 0) throw std::invalid_argument("chernoff_na_bounds: mu must be positive");
  if (eta <= 0) throw std::invalid_argument("chernoff_na_bounds: eta must be positive");
  double upper = std::exp(-eta * eta * mu / 3.0);
  double lower = std::exp(-eta * eta * mu / 2.0);
  return {upper, lower};
}

double ratio_bound_ksec(int k) {
  if (k < 2) throw std::invalid_argument("ratio_bound_ksec: k >= 2 required");
  return 1.0 - 4.0 * std::sqrt(std::log(static_cast<double>(k)) / k);
}

double success_bound_1sec(int n) {
  if (n < 16) throw std::invalid_argument("success_bound_1sec: n >= 16 required");
  const double e = std::exp(1.0);
  double ll = std::log(std::log(static_cast<double>(n)));
  return 1.0 / e - 3.0 * ll * ll / (e * std::sqrt(std::log(static_cast<double>(n))));
}

double positive_lb_1sec(int ell, int k) {
  if (!(ell > k && k >= 2)) throw std::invalid_argument("positive_lb_1sec: need ell > k >= 2");
  const double e = std::exp(1.0);
  return 1.0 / e + 1.0 / ell - (1.0 / (e * k)) * std::pow(1.0 - 1.0 / e, k);
}

std::string BoundReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["value"] = value;
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [key, v] : inputs) in[key] = v;
  j["inputs"] = in;
  return j.dump();
}

}  // namespace freeorder
