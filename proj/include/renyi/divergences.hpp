#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "renyi/distribution.hpp"
#include "renyi/numeric.hpp"

// Exact divergence primitives for finite distributions, all in nats.
// Conventions: 0*log(0/q) = 0 and 0^0 = 1; absolute-continuity failures
// yield +inf rather than errors. Sums run left-to-right with compensation.

namespace renyi {

namespace detail {

inline void check_sizes(const Distribution& p, const Distribution& q) {
  require(p.size() == q.size(), "divergence: alphabet sizes differ");
}

// log sum_x P(x)^a Q(x)^(1-a) for finite a > 0, a != 1.
// Returns +inf when a > 1 and P is not absolutely continuous wrt Q;
// returns -inf when the supports are disjoint (possible only for a < 1).
inline double log_power_sum(std::span<const double> p, std::span<const double> q, double a) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;  // 0^a = 0 for a > 0
    if (q[x] == 0.0) {
      if (a > 1.0) return num::kInf;  // q^(1-a) blows up
      continue;                       // a < 1: p^a * 0^(1-a) = 0
    }
    terms.push_back(a * std::log(p[x]) + (1.0 - a) * std::log(q[x]));
  }
  return num::log_sum_exp(terms);
}

// sum_x P(x) log(P(x)/Q(x)), +inf on an absolute-continuity failure.
inline double relative_entropy_terms(std::span<const double> p, std::span<const double> q) {
  num::CompensatedSum s;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    if (q[x] == 0.0) return num::kInf;
    s.add(p[x] * (std::log(p[x]) - std::log(q[x])));
  }
  return std::max(0.0, s.value());
}

// log max_x P(x)/Q(x) over support(P) u support(Q); +inf when P !<< Q.
inline double max_log_ratio(std::span<const double> p, std::span<const double> q) {
  double best = 0.0;  // sum P = sum Q forces max ratio >= 1
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0 && q[x] == 0.0) return num::kInf;
    if (p[x] > 0.0 && q[x] > 0.0) {
      best = std::max(best, std::log(p[x]) - std::log(q[x]));
    }
  }
  return best;
}

inline double renyi_from_spans(std::span<const double> p, std::span<const double> q,
                               DivergenceOrder order) {
  if (order.is_zero()) {
    // -log Q(supp P)
    num::CompensatedSum mass;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (p[x] > 0.0) mass.add(q[x]);
    }
    return std::max(0.0, -std::log(mass.value()));
  }
  if (order.is_one()) return relative_entropy_terms(p, q);
  if (order.is_infinite()) return max_log_ratio(p, q);
  const double a = order.value();
  return std::max(0.0, log_power_sum(p, q, a) / (a - 1.0));
}

}  // namespace detail

// Total variation distance sum_x |P(x)-Q(x)|, in [0,2].
inline double total_variation(const Distribution& p, const Distribution& q) {
  detail::check_sizes(p, q);
  num::CompensatedSum s;
  for (std::size_t x = 0; x < p.size(); ++x) {
    s.add(std::abs(p[x] - q[x]));
  }
  return s.value();
}

// D(P||Q) = sum_x P(x) log(P(x)/Q(x)); +inf when P !<< Q.
inline double relative_entropy(const Distribution& p, const Distribution& q) {
  detail::check_sizes(p, q);
  return detail::relative_entropy_terms(p.probs(), q.probs());
}

// Renyi divergence D_a(P||Q) for a >= 0, including the orders 0, 1, inf.
inline double renyi_divergence(const Distribution& p, const Distribution& q,
                               DivergenceOrder order) {
  detail::check_sizes(p, q);
  return detail::renyi_from_spans(p.probs(), q.probs(), order);
}

// Hellinger divergence H_a(P||Q) = (sum_x P^a Q^(1-a) - 1)/(a-1) for finite
// a > 0, a != 1. Related to the Renyi divergence by
// D_a = log(1 + (a-1) H_a)/(a-1).
inline double hellinger_divergence(const Distribution& p, const Distribution& q, double alpha) {
  detail::check_sizes(p, q);
  require(std::isfinite(alpha) && alpha > 0.0 && alpha != 1.0,
          "hellinger_divergence: alpha must be finite, positive, != 1");
  const double lps = detail::log_power_sum(p.probs(), q.probs(), alpha);
  return std::max(0.0, std::expm1(lps) / (alpha - 1.0));
}

// Binary relative entropy d(p||q) between Bernoulli(p) and Bernoulli(q).
inline double binary_relative_entropy(double p, double q) {
  require(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0,
          "binary_relative_entropy: arguments must be in [0,1]");
  const std::array<double, 2> pv{p, 1.0 - p};
  const std::array<double, 2> qv{q, 1.0 - q};
  return detail::relative_entropy_terms(pv, qv);
}

// Binary Renyi divergence d_a(p||q) = log(p^a q^(1-a) + (1-p)^a (1-q)^(1-a))/(a-1).
// Orders within 1e-9 of 1 take the relative-entropy extension. Agrees exactly
// with renyi_divergence on ((p,1-p),(q,1-q)) because both run the same kernel.
inline double binary_renyi(double p, double q, double alpha) {
  require(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0, "binary_renyi: p, q must be in [0,1]");
  require(std::isfinite(alpha) && alpha > 0.0, "binary_renyi: alpha must be finite and > 0");
  const std::array<double, 2> pv{p, 1.0 - p};
  const std::array<double, 2> qv{q, 1.0 - q};
  return detail::renyi_from_spans(pv, qv, alpha);
}

// Tilted (geometric-mixture) measure Q_a(x) = P1(x)^a P2(x)^(1-a) / normalizer.
// Defined for mutually absolutely continuous P1, P2 and finite a > 0; Q_a is
// the unique equality case of the Shayevitz/van Erven inequality.
inline Distribution tilted_measure(const Distribution& p1, const Distribution& p2, double alpha) {
  detail::check_sizes(p1, p2);
  require(std::isfinite(alpha) && alpha > 0.0, "tilted_measure: alpha must be finite and > 0");
  require(p1.same_support(p2), "tilted_measure: supports differ");
  const std::size_t n = p1.size();
  std::vector<double> logw(n, -num::kInf);
  double m = -num::kInf;
  for (std::size_t x = 0; x < n; ++x) {
    if (p1[x] > 0.0) {
      logw[x] = alpha * std::log(p1[x]) + (1.0 - alpha) * std::log(p2[x]);
      m = std::max(m, logw[x]);
    }
  }
  std::vector<double> w(n, 0.0);
  num::CompensatedSum total;
  for (std::size_t x = 0; x < n; ++x) {
    if (logw[x] != -num::kInf) {
      w[x] = std::exp(logw[x] - m);
      total.add(w[x]);
    }
  }
  const double z = total.value();
  for (double& v : w) v /= z;
  return Distribution(std::move(w));
}

// Chernoff information C(P1,P2) = max_{a in [0,1]} (1-a) D_a(P1||P2)
//                               = max_a -log sum_x P1^a P2^(1-a).
// The inner objective is concave in a; golden section to 1e-10.
inline double chernoff_information(const Distribution& p1, const Distribution& p2) {
  detail::check_sizes(p1, p2);
  require(p1.same_support(p2), "chernoff_information: supports differ");
  auto objective = [&](double a) {
    if (a <= 0.0 || a >= 1.0) return 0.0;  // sum collapses to 1 at both ends
    return -detail::log_power_sum(p1.probs(), p2.probs(), a);
  };
  const num::Extremum e = num::golden_max(objective, 0.0, 1.0, 1e-10);
  return std::max(0.0, e.value);
}

// Two-point reduction of App-I type: bin 0 collects the states where
// P1(x) >= P2(x), bin 1 the rest. Preserves |P1-P2| exactly and cannot
// increase D_a (data processing).
inline std::pair<Distribution, Distribution> two_point_reduction(const Distribution& p1,
                                                                 const Distribution& p2) {
  detail::check_sizes(p1, p2);
  num::CompensatedSum a0;
  num::CompensatedSum a1;
  num::CompensatedSum b0;
  num::CompensatedSum b1;
  for (std::size_t x = 0; x < p1.size(); ++x) {
    if (p1[x] >= p2[x]) {
      a0.add(p1[x]);
      b0.add(p2[x]);
    } else {
      a1.add(p1[x]);
      b1.add(p2[x]);
    }
  }
  return {Distribution({a0.value(), a1.value()}), Distribution({b0.value(), b1.value()})};
}

}  // namespace renyi
