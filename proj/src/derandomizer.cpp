#include "freeorder/derandomizer.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace freeorder {

int required_support(int q, double delta, double p0) {
  if (q < 2) throw std::invalid_argument("required_support: q >= 2 required");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("required_support: delta must be in (0,1)");
  if (!(p0 > 0.0 && p0 < 1.0))
    throw std::invalid_argument("required_support: p0 must be in (0,1)");
  double raw = 2.0 * std::log(static_cast<double>(q)) / (delta * delta * p0);
  long long ell = static_cast<long long>(std::ceil(raw));
  return static_cast<int>(std::max(2ll, ell));
}

long double omega_weight(int ell, int s, double delta, double p_gamma) {
  if (s < 0 || s > ell) throw std::invalid_argument("omega_weight: s out of range");
  long double num = std::pow(1.0L - static_cast<long double>(delta) * p_gamma,
                             static_cast<long double>(ell - s + 1));
  long double den = std::pow(1.0L - static_cast<long double>(delta),
                             (1.0L - static_cast<long double>(delta)) * p_gamma * ell);
  return num / den;
}

namespace {

struct StepWeights {
  std::vector<long double> w;      // omega * (1-delta)^satisfied, per event
  long double scale = 1.0L;        // max weight, for a normalized argmin
};

StepWeights step_weights(const std::vector<PositiveEvent>& events, int ell, int s,
                         double delta, const std::vector<long long>& satisfied) {
  StepWeights sw;
  sw.w.resize(events.size());
  long double log1md = std::log(1.0L - static_cast<long double>(delta));
  long double max_log = -1e30L;
  std::vector<long double> logs(events.size());
  for (std::size_t g = 0; g < events.size(); ++g) {
    long double lw = std::log(omega_weight(ell, s, delta, events[g].lower_bound.to_double())) +
                     satisfied[g] * log1md;
    logs[g] = lw;
    max_log = std::max(max_log, lw);
  }
  for (std::size_t g = 0; g < events.size(); ++g) sw.w[g] = std::exp(logs[g] - max_log);
  sw.scale = std::exp(max_log);
  return sw;
}

long double conditional_event_prob(const PositiveEvent& ev, const Bucketing& b,
                                   const SemiRandomPermutation& sp) {
  Rat sum(0);
  for (const auto& a : ev.atoms) sum += conditional_atomic_prob(a, sp, b);
  return sum.to_long_double();
}

}  // namespace

long double estimator_value(const std::vector<PositiveEvent>& events, const Bucketing& b,
                            const Rat& delta, int ell, const EstimatorState& st,
                            const SemiRandomPermutation& prefix) {
  const double d = delta.to_double();
  long double phi = 0.0L;
  for (std::size_t g = 0; g < events.size(); ++g) {
    long double w = omega_weight(ell, st.s, d, events[g].lower_bound.to_double()) *
                    std::pow(1.0L - static_cast<long double>(d),
                             static_cast<long double>(st.satisfied[g]));
    phi += w * (1.0L - d * conditional_event_prob(events[g], b, prefix));
  }
  return phi;
}

Construction construct_distribution(const std::vector<PositiveEvent>& events,
                                    const Bucketing& b, const DerandomizerConfig& cfg) {
  if (events.empty()) throw std::invalid_argument("construct_distribution: no events");
  const int n = b.n;
  const int q = static_cast<int>(events.size());
  const double delta = cfg.delta.to_double();
  if (!(cfg.delta > Rat(0) && cfg.delta < Rat(1)))
    throw std::invalid_argument("construct_distribution: delta must be in (0,1)");

  Construction out;
  out.measures.reserve(events.size());
  double p0 = 1.0;
  for (const auto& ev : events) {
    if (!(ev.lower_bound > Rat(0)))
      throw std::invalid_argument("construct_distribution: event lower bound must be positive");
    Rat mu = positive_prob(ev, b);
    if (mu < ev.lower_bound)
      throw std::invalid_argument(
          "construct_distribution: event measure below its stated lower bound");
    out.measures.push_back(mu);
    p0 = std::min(p0, ev.lower_bound.to_double());
  }
  const int ell = cfg.ell > 0 ? cfg.ell : required_support(std::max(q, 2), delta, p0);
  if (ell < 2) throw std::invalid_argument("construct_distribution: ell must be at least 2");

  // Estimator before anything is fixed; >= 1 means the support cannot carry
  // the guarantee.
  {
    long double phi0 = 0.0L;
    for (std::size_t g = 0; g < events.size(); ++g) {
      phi0 += omega_weight(ell, 0, delta, events[g].lower_bound.to_double()) *
              (1.0L - delta * out.measures[g].to_long_double());
    }
    out.initial_phi = static_cast<double>(phi0);
    out.log.push_back({0, 0, 0, out.initial_phi});
    if (!(phi0 < 1.0L))
      throw std::runtime_error("construct_distribution: initial estimator >= 1");
  }

  out.support.n = n;
  out.support.entries.push_back(Permutation::identity(n));
  out.satisfied.assign(events.size(), 0);
  for (std::size_t g = 0; g < events.size(); ++g) {
    if (positive_holds(events[g], b, out.support.entries[0])) out.satisfied[g] = 1;
  }

  std::vector<long double> mu_ld(events.size());
  for (std::size_t g = 0; g < events.size(); ++g) mu_ld[g] = out.measures[g].to_long_double();

  for (int s = 1; s < ell; ++s) {
    StepWeights sw = step_weights(events, ell, s, delta, out.satisfied);

    // Phi over the empty prefix for this step (log marker; conditional
    // expectations there are the plain measures).
    {
      long double phi = 0.0L;
      for (std::size_t g = 0; g < events.size(); ++g)
        phi += sw.scale * sw.w[g] * (1.0L - delta * mu_ld[g]);
      out.log.push_back({s, 0, 0, static_cast<double>(phi)});
    }

    std::vector<int> prefix;
    prefix.reserve(n);
    std::vector<bool> used(n + 1, false);
    std::vector<long double> cond(events.size());

    for (int r = 1; r <= n; ++r) {
      int best_tau = 0;
      long double best_score = 0.0L;
      std::vector<long double> best_cond;
      for (int tau = 1; tau <= n; ++tau) {
        if (used[tau]) continue;
        prefix.push_back(tau);
        SemiRandomPermutation sp(n, prefix);
        long double score = 0.0L;
        for (std::size_t g = 0; g < events.size(); ++g) {
          cond[g] = conditional_event_prob(events[g], b, sp);
          score += sw.w[g] * (1.0L - delta * cond[g]);
        }
        prefix.pop_back();
        if (best_tau == 0 || score < best_score) {
          best_tau = tau;
          best_score = score;
          best_cond = cond;
        }
      }
      prefix.push_back(best_tau);
      used[best_tau] = true;
      out.log.push_back({s, r, best_tau, static_cast<double>(best_score * sw.scale)});
    }

    Permutation pi(prefix);
    for (std::size_t g = 0; g < events.size(); ++g) {
      if (positive_holds(events[g], b, pi)) ++out.satisfied[g];
    }
    out.support.entries.push_back(std::move(pi));
  }
  return out;
}

std::vector<CoverageRow> verify_coverage(const PermutationMultiset& support,
                                         const std::vector<PositiveEvent>& events,
                                         const Bucketing& b, const Rat& delta) {
  std::vector<CoverageRow> rows;
  const Rat ell(static_cast<long long>(support.entries.size()));
  for (const auto& ev : events) {
    CoverageRow row;
    row.event_id = ev.id;
    for (const auto& pi : support.entries) {
      if (positive_holds(ev, b, pi)) ++row.count;
    }
    row.required = (Rat(1) - delta) * ev.lower_bound * ell;
    row.ok = Rat(row.count) >= row.required;
    rows.push_back(row);
  }
  return rows;
}

void write_construction_log(std::ostream& os, const Construction& c) {
  os.precision(17);
  for (const auto& step : c.log) {
    os << "{\"s\":" << step.s << ",\"r\":" << step.r << ",\"tau\":" << step.tau
       << ",\"phi\":" << step.phi << "}\n";
  }
}

}  // namespace freeorder
