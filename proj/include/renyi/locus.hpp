#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "renyi/divergences.hpp"
#include "renyi/gmin.hpp"
#include "renyi/numeric.hpp"

// The exact locus of (D(Q||P1), D(Q||P2)) under |P1-P2| >= eps is the set of
// points on or above the upper envelope of the line family
//   y + t x = g_{a}(eps),  t = a/(1-a),  a in (0,1),
// in coordinates x = D(Q||P1), y = D(Q||P2). Every point of the region is
// attained by a binary triple (P1,P2,Q); boundary witnesses come from the
// g_alpha minimizer plus the tilted measure.

namespace renyi {

// One member of the line family: y = intercept + slope * x.
struct BoundaryLine {
  double alpha;
  double slope;      // -alpha/(1-alpha) < 0
  double intercept;  // g_alpha(eps) > 0
};

// Binary triple achieving a locus point. tv is the separation the witness
// actually meets (eps for boundary points, the enlarged value for interior
// points). alpha_clamped marks axis-limit witnesses computed at clamped
// orders; degenerate_tangency marks a non-unique envelope maximizer.
struct WitnessTriple {
  Distribution p1_star;
  Distribution p2_star;
  Distribution q_star;
  double alpha;
  double tv;
  std::array<double, 2> point;  // (D(Q||P1), D(Q||P2))
  bool alpha_clamped = false;
  bool degenerate_tangency = false;
};

namespace detail {

inline void check_locus_eps(double eps) {
  require(eps > 0.0 && eps < 2.0, "locus: eps must be in (0,2)");
}

// Tangency parameters are searched as t = alpha/(1-alpha) on a log grid;
// extreme x pushes the maximizer toward t -> 0 or t -> inf, which a linear
// alpha grid cannot resolve.
constexpr double kLogTMin = -13.815510557964274;  // log(1e-6)
constexpr double kLogTMax = 13.815510557964274;   // log(1e6)

struct Tangency {
  double sup;    // sup_a [g_a(eps) - t x], not clamped at 0
  double alpha;  // maximizing order (smallest in case of near-ties)
  bool degenerate;
};

inline double line_sup_value(double eps, double x, double logt) {
  const double t = std::exp(logt);
  const double a = t / (1.0 + t);
  return g_alpha({a, eps}).value - t * x;
}

// Scan + golden refinement of the envelope maximization at abscissa x.
inline Tangency envelope_tangency(double eps, double x, int n_scan) {
  if (x == 0.0) {
    // sup_a g_a(eps) is the a->1 limit by order monotonicity.
    return {g_alpha({1.0, eps}).value, 1.0, false};
  }
  int best_i = 0;
  double best_v = -num::kInf;
  std::vector<double> vals(static_cast<std::size_t>(n_scan));
  for (int i = 0; i < n_scan; ++i) {
    const double logt =
        kLogTMin + (kLogTMax - kLogTMin) * static_cast<double>(i) / (n_scan - 1);
    vals[static_cast<std::size_t>(i)] = line_sup_value(eps, x, logt);
    if (vals[static_cast<std::size_t>(i)] > best_v) {
      best_v = vals[static_cast<std::size_t>(i)];
      best_i = i;
    }
  }
  bool degenerate = false;
  for (int i = 0; i < n_scan; ++i) {
    if (std::abs(i - best_i) > 2 && vals[static_cast<std::size_t>(i)] >= best_v - 1e-9) {
      degenerate = true;
      break;
    }
  }
  const double step = (kLogTMax - kLogTMin) / (n_scan - 1);
  const double lo = kLogTMin + step * std::max(0, best_i - 1);
  const double hi = kLogTMin + step * std::min(n_scan - 1, best_i + 1);
  const num::Extremum e =
      num::golden_max([&](double logt) { return line_sup_value(eps, x, logt); }, lo, hi, 1e-10);
  const double t = std::exp(e.x);
  return {e.value, t / (1.0 + t), degenerate};
}

}  // namespace detail

// Line of the family for a given order.
inline BoundaryLine boundary_line(double eps, double alpha) {
  detail::check_locus_eps(eps);
  require(alpha > 0.0 && alpha < 1.0, "boundary_line: alpha must be in (0,1)");
  return {alpha, -alpha / (1.0 - alpha), g_alpha({alpha, eps}).value};
}

// Height of the region boundary above abscissa x (0 once the region has
// reached the x-axis): max(0, sup_a [g_a(eps) - (a/(1-a)) x]).
inline double envelope_y(double eps, double x) {
  detail::check_locus_eps(eps);
  require(x >= 0.0, "envelope_y: x must be >= 0");
  return std::max(0.0, detail::envelope_tangency(eps, x, 512).sup);
}

// Membership test: (x,y) belongs to the locus iff every line constraint
// y + t x >= g_a(eps) holds, up to tol, over a 1024-point refined grid.
inline bool contains(double eps, double x, double y, double tol) {
  detail::check_locus_eps(eps);
  require(x >= 0.0 && y >= 0.0, "contains: coordinates must be >= 0");
  require(tol > 0.0, "contains: tol must be > 0");
  return detail::envelope_tangency(eps, x, 1024).sup - y <= tol;
}

// Boundary witness for the tangent line of a given slope s < 0:
// a = -s/(1-s), (p*,q*) from g_alpha, Q* the tilted measure, and the point
// is read back through the relative entropies.
inline WitnessTriple witness_triple(double eps, double slope) {
  detail::check_locus_eps(eps);
  require(slope < 0.0, "witness_triple: slope must be negative");
  double alpha = -slope / (1.0 - slope);
  bool clamped = false;
  if (alpha < 1e-6) {
    alpha = 1e-6;
    clamped = true;
  } else if (alpha > 1.0 - 1e-6) {
    alpha = 1.0 - 1e-6;
    clamped = true;
  }
  const GMinResult g = g_alpha({alpha, eps});
  Distribution p1 = Distribution::binary(g.p_star);
  Distribution p2 = Distribution::binary(g.q_star);
  Distribution q = tilted_measure(p1, p2, alpha);
  const double x = relative_entropy(q, p1);
  const double y = relative_entropy(q, p2);
  WitnessTriple w{std::move(p1), std::move(p2), std::move(q), alpha, eps, {x, y}};
  w.alpha_clamped = clamped;
  return w;
}

// Tangency points swept over a log-spaced negative slope grid, ordered with
// x increasing and y decreasing; the sequence is convex and symmetric under
// swapping the coordinates.
inline std::vector<WitnessTriple> boundary_polyline(double eps, int n_points) {
  detail::check_locus_eps(eps);
  require(n_points >= 2, "boundary_polyline: need at least 2 points");
  constexpr double kLogSlopeMax = 9.2103403719761827;  // log(1e4)
  std::vector<WitnessTriple> out;
  out.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    // steep tangents first, so x increases along the sweep
    const double u =
        kLogSlopeMax - 2.0 * kLogSlopeMax * static_cast<double>(i) / (n_points - 1);
    out.push_back(witness_triple(eps, -std::exp(u)));
  }
  return out;
}

// Witness for an arbitrary point of the region. Interior points sit on the
// boundary of the shrunken locus with separation eps_bar > eps; bisection on
// that separation (interval width 1e-10) finds it, then the tangency witness
// applies verbatim.
inline WitnessTriple witness_for_point(double eps, double x, double y) {
  detail::check_locus_eps(eps);
  require(x >= 0.0 && y >= 0.0, "witness_for_point: coordinates must be >= 0");
  if (!contains(eps, x, y, 1e-9)) {
    throw std::invalid_argument("witness_for_point: point lies outside the region");
  }
  auto boundary_gap = [&](double e) {
    // >= 0 once the e-boundary has risen above (x,y); increasing in e
    return detail::envelope_tangency(e, x, 512).sup - y;
  };
  double eps_bar = eps;
  if (boundary_gap(eps) < -1e-10) {
    double lo = eps;
    double hi = 2.0 - 1e-9;
    if (boundary_gap(hi) < 0.0) {
      throw std::runtime_error("witness_for_point: point too deep in the region");
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-10; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (boundary_gap(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    eps_bar = 0.5 * (lo + hi);
  }
  if (std::abs(boundary_gap(eps_bar)) > 1e-7) {
    throw std::runtime_error("witness_for_point: envelope bisection failed to converge");
  }
  detail::Tangency tan = detail::envelope_tangency(eps_bar, x, 1024);
  double alpha = tan.alpha;
  bool clamped = false;
  if (x == 0.0 || alpha > 1.0 - 1e-6) {
    alpha = 1.0 - 1e-6;
    clamped = true;
  } else if (y <= 0.0 || alpha < 1e-6) {
    alpha = 1e-6;
    clamped = true;
  }
  WitnessTriple w = witness_triple(eps_bar, -alpha / (1.0 - alpha));
  w.tv = eps_bar;
  w.alpha_clamped = w.alpha_clamped || clamped;
  w.degenerate_tangency = tan.degenerate;
  return w;
}

// Minimum Chernoff information under |P1-P2| >= eps, with its witness: the
// symmetric boundary point where the locus meets the line y = x. The value
// is -0.5 log(1 - eps^2/4), attained by p = (2+eps)/4, q = (2-eps)/4 and the
// equiprobable Q.
struct ChernoffMinResult {
  double value;
  WitnessTriple witness;
};

inline ChernoffMinResult chernoff_min(double eps) {
  detail::check_locus_eps(eps);
  const double value = -0.5 * std::log1p(-0.25 * eps * eps);
  Distribution p1 = Distribution::binary(0.25 * (2.0 + eps));
  Distribution p2 = Distribution::binary(0.25 * (2.0 - eps));
  Distribution q = Distribution::binary(0.5);
  const double x = relative_entropy(q, p1);
  const double y = relative_entropy(q, p2);
  WitnessTriple w{std::move(p1), std::move(p2), std::move(q), 0.5, eps, {x, y}};
  return {value, std::move(w)};
}

}  // namespace renyi
