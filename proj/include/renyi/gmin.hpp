#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "renyi/divergences.hpp"
#include "renyi/numeric.hpp"

// g_alpha(eps) = min D_alpha(P1||P2) subject to |P1-P2| >= eps. The minimum
// is attained on a binary alphabet, so everything reduces to one-dimensional
// searches over Bernoulli pairs with |p-q| = eps/2.

namespace renyi {

struct GMinQuery {
  double alpha;  // order, finite > 0
  double eps;    // total variation constraint, in [0,2)
};

enum class GMinMethod { closed_form, root, scan, oracle };

inline const char* to_string(GMinMethod m) {
  switch (m) {
    case GMinMethod::closed_form: return "closed-form";
    case GMinMethod::root: return "root";
    case GMinMethod::scan: return "scan";
    case GMinMethod::oracle: return "oracle";
  }
  return "?";
}

// Minimum value in nats plus the achieving Bernoulli parameters.
struct GMinResult {
  double value;
  double p_star;
  double q_star;
  GMinMethod method;
};

namespace detail {

inline void check_gmin_query(const GMinQuery& q) {
  require(std::isfinite(q.alpha) && q.alpha > 0.0, "gmin: alpha must be finite and > 0");
  require(q.eps >= 0.0 && q.eps < 2.0, "gmin: eps must be in [0,2)");
}

}  // namespace detail

// The dual-variable curve
//   f(q) = [(1 - e'/(1-q))^(a-1) - (1 + e'/q)^(a-1)]
//          / [(1 + e'/q)^a - (1 - e'/(1-q))^a]
// for a in (0,1), e' in (0,1), q in (0, 1-e'). Strictly increasing from 0
// to +inf, so f(q) = (1-a)/a has a unique root.
inline double f_curve(double alpha, double eps_prime, double q) {
  require(alpha > 0.0 && alpha < 1.0, "f_curve: alpha must be in (0,1)");
  require(eps_prime > 0.0 && eps_prime < 1.0, "f_curve: eps_prime must be in (0,1)");
  require(q > 0.0 && q < 1.0 - eps_prime, "f_curve: q must be in (0, 1-eps_prime)");
  const double low = 1.0 - eps_prime / (1.0 - q);   // in (0,1)
  const double high = 1.0 + eps_prime / q;          // in (1,inf)
  const double num = std::pow(low, alpha - 1.0) - std::pow(high, alpha - 1.0);
  const double den = std::pow(high, alpha) - std::pow(low, alpha);
  return num / den;
}

// Unique q in (0, 1-eps_prime) with f_curve(q) = (1-alpha)/alpha, by
// bisection; terminates at interval width < 1e-13.
inline double solve_f_root(double alpha, double eps_prime) {
  require(alpha > 0.0 && alpha < 1.0, "solve_f_root: alpha must be in (0,1)");
  require(eps_prime > 0.0 && eps_prime < 1.0, "solve_f_root: eps_prime must be in (0,1)");
  const double target = (1.0 - alpha) / alpha;
  const double lo = 1e-15;
  const double hi = (1.0 - eps_prime) - 1e-15;
  if (hi <= lo) return 0.5 * (1.0 - eps_prime);
  return num::bisect_increasing([&](double q) { return f_curve(alpha, eps_prime, q); }, lo, hi,
                                target, 1e-13);
}

// Closed form g_{1/2}(eps) = -log(1 - eps^2/4).
inline double g_closed_form_half(double eps) {
  require(eps >= 0.0 && eps < 2.0, "g_closed_form_half: eps must be in [0,2)");
  return -std::log1p(-0.25 * eps * eps);
}

// Closed form g_2(eps): log(1+eps^2) on [0,1], -log(1-eps/2) on (1,2).
inline double g_closed_form_two(double eps) {
  require(eps >= 0.0 && eps < 2.0, "g_closed_form_two: eps must be in [0,2)");
  if (eps <= 1.0) return std::log1p(eps * eps);
  return -std::log1p(-0.5 * eps);
}

// Minimum of D_alpha under |P1-P2| >= eps. Dispatch:
//   eps = 0          -> 0 at p = q
//   alpha in (0,1)   -> dual root (f_curve) and p = q + eps/2
//   alpha ~ 1        -> golden section on the binary relative entropy
//   alpha > 1        -> 4096-point scan plus golden refinement
// The equality face |p-q| = eps/2 suffices: both constraint forms coincide.
inline GMinResult g_alpha(const GMinQuery& query) {
  detail::check_gmin_query(query);
  if (query.eps == 0.0) return {0.0, 0.5, 0.5, GMinMethod::closed_form};
  const double ep = 0.5 * query.eps;
  const double alpha = query.alpha;
  const bool near_one = std::abs(alpha - 1.0) <= 1e-9;

  if (alpha < 1.0 && !near_one) {
    const double q = solve_f_root(alpha, ep);
    const double p = std::min(1.0, q + ep);
    return {binary_renyi(p, q, alpha), p, q, GMinMethod::root};
  }

  auto objective = [&](double q) { return binary_renyi(std::min(1.0, q + ep), q, alpha); };
  const double hi = 1.0 - ep;

  if (near_one) {
    const num::Extremum e = num::golden_min(objective, 0.0, hi, 1e-12);
    return {e.value, std::min(1.0, e.x + ep), e.x, GMinMethod::scan};
  }

  // alpha > 1: binary sufficiency holds but unimodality is not proven, so
  // locate the basin on a dense grid first.
  constexpr int kScanPoints = 4096;
  int best_i = 0;
  double best_v = num::kInf;
  for (int i = 0; i < kScanPoints; ++i) {
    const double q = hi * static_cast<double>(i) / (kScanPoints - 1);
    const double v = objective(q);
    if (v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double lo_q = hi * static_cast<double>(std::max(0, best_i - 1)) / (kScanPoints - 1);
  const double hi_q = hi * static_cast<double>(std::min(kScanPoints - 1, best_i + 1)) / (kScanPoints - 1);
  num::Extremum e = num::golden_min(objective, lo_q, hi_q, 1e-12);
  return {e.value, std::min(1.0, e.x + ep), e.x, GMinMethod::scan};
}

// Brute-force verification of g_alpha: uniform grid of grid_n points over
// q in [0, 1-eps/2] with p = q + eps/2.
inline GMinResult g_alpha_oracle(const GMinQuery& query, int grid_n) {
  detail::check_gmin_query(query);
  require(grid_n >= 100, "g_alpha_oracle: grid_n must be >= 100");
  if (query.eps == 0.0) return {0.0, 0.0, 0.0, GMinMethod::oracle};
  const double ep = 0.5 * query.eps;
  const double hi = 1.0 - ep;
  double best_v = num::kInf;
  double best_q = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double q = hi * static_cast<double>(i) / (grid_n - 1);
    const double v = binary_renyi(std::min(1.0, q + ep), q, query.alpha);
    if (v < best_v) {
      best_v = v;
      best_q = q;
    }
  }
  return {best_v, std::min(1.0, best_q + ep), best_q, GMinMethod::oracle};
}

// Argument convention for the Pinsker-type quartic lower bound: the quartic
// polynomial can be read with its argument as the full total variation or as
// half of it. Only the half reading is dominated by g_alpha on the tested
// grids; both stay available for comparison.
enum class GilardoniConvention { full_tv, half_tv };

// (alpha/2) e^2 + (alpha/9)(1 + 5 alpha - 5 alpha^2) e^4, with e the chosen
// reading of eps. Valid for alpha in (0,1).
inline double gilardoni_bound(double alpha, double eps, GilardoniConvention conv) {
  require(alpha > 0.0 && alpha < 1.0, "gilardoni_bound: alpha must be in (0,1)");
  require(eps >= 0.0 && eps < 2.0, "gilardoni_bound: eps must be in [0,2)");
  const double e = (conv == GilardoniConvention::half_tv) ? 0.5 * eps : eps;
  const double e2 = e * e;
  return 0.5 * alpha * e2 + (1.0 / 9.0) * alpha * (1.0 + 5.0 * alpha - 5.0 * alpha * alpha) * e2 * e2;
}

// First (quadratic) term alone; the weaker comparison curve.
inline double gilardoni_bound_weak(double alpha, double eps, GilardoniConvention conv) {
  require(alpha > 0.0 && alpha < 1.0, "gilardoni_bound_weak: alpha must be in (0,1)");
  require(eps >= 0.0 && eps < 2.0, "gilardoni_bound_weak: eps must be in [0,2)");
  const double e = (conv == GilardoniConvention::half_tv) ? 0.5 * eps : eps;
  return 0.5 * alpha * e * e;
}

// Logarithmic lower bound on g_alpha for alpha in (0,1):
//   c1(a) log(1/(1 - eps/2)) + c2(a),  c1 = min{1, a/(1-a)}, c2 = -log2/(1-a).
// Diverges as eps -> 2, which re-proves that g_alpha does too.
inline double g_lower_bound(double alpha, double eps) {
  require(alpha > 0.0 && alpha < 1.0, "g_lower_bound: alpha must be in (0,1)");
  require(eps >= 0.0 && eps < 2.0, "g_lower_bound: eps must be in [0,2)");
  const double c1 = std::min(1.0, alpha / (1.0 - alpha));
  const double c2 = -std::log(2.0) / (1.0 - alpha);
  return -c1 * std::log1p(-0.5 * eps) + c2;
}

}  // namespace renyi
