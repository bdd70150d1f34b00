#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

// Small numeric kernels shared by the divergence and bound computations.
// Everything here is deterministic: fixed evaluation order, no global state.

namespace renyi {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

namespace num {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier-compensated accumulator; summation order is the caller's
// insertion order, so results do not depend on chunking or thread count.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// log(sum_i exp(t_i)) with max-shift; -inf terms are skipped, a +inf term
// dominates everything.
inline double log_sum_exp(std::span<const double> terms) {
  double m = -kInf;
  for (double t : terms) {
    if (t > m) m = t;
  }
  if (std::isinf(m)) return m;  // all -inf, or one +inf
  CompensatedSum s;
  for (double t : terms) {
    if (t != -kInf) s.add(std::exp(t - m));
  }
  return m + std::log(s.value());
}

// log(cosh(x)) without overflow for large |x|.
inline double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094172321;
}

struct Extremum {
  double x;
  double value;
};

// Golden-section minimizer on [a,b]; keeps the best of every point it
// evaluates (including both endpoints), so endpoint minima are exact.
template <typename F>
Extremum golden_min(F&& f, double a, double b, double xtol) {
  constexpr double kRatio = 0.6180339887498948482;  // (sqrt(5)-1)/2
  double best_x = a;
  double best_f = f(a);
  auto consider = [&](double x, double fx) {
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }
  };
  consider(b, f(b));
  double x1 = b - kRatio * (b - a);
  double x2 = a + kRatio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  consider(x1, f1);
  consider(x2, f2);
  for (int i = 0; i < 300 && (b - a) > xtol; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kRatio * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kRatio * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    }
  }
  return {best_x, best_f};
}

template <typename F>
Extremum golden_max(F&& f, double a, double b, double xtol) {
  Extremum e = golden_min([&](double x) { return -f(x); }, a, b, xtol);
  return {e.x, -e.value};
}

// Bisection for f strictly increasing on [lo,hi]; returns the point where
// f crosses target, to within xtol interval width.
template <typename F>
double bisect_increasing(F&& f, double lo, double hi, double target, double xtol) {
  for (int i = 0; i < 200 && (hi - lo) > xtol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace detail {

template <typename F>
double simpson_rec(F& f, double a, double fa, double b, double fb, double m, double fm,
                   double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature with absolute tolerance tol.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

namespace detail {

// 15-point Gauss-Legendre nodes (nonnegative half) and weights on [-1,1].
inline constexpr double kGl15Nodes[8] = {
    0.0000000000000000, 0.2011940939974345, 0.3941513470775634, 0.5709721726085388,
    0.7244177313601701, 0.8482065834104272, 0.9372733924007060, 0.9879925180204854};
inline constexpr double kGl15Weights[8] = {
    0.2025782419255613, 0.1984314853271116, 0.1861610000155622, 0.1662692058169939,
    0.1395706779261543, 0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

template <typename F>
double gauss_legendre_panels(F& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  CompensatedSum sum;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    sum.add(kGl15Weights[0] * f(mid));
    for (int i = 1; i < 8; ++i) {
      const double dx = half * kGl15Nodes[i];
      sum.add(kGl15Weights[i] * (f(mid - dx) + f(mid + dx)));
    }
  }
  return 0.5 * h * sum.value();
}

}  // namespace detail

// Adaptive Gaussian quadrature: composite 15-point Gauss-Legendre with
// panel doubling until two successive refinements agree within tol.
template <typename F>
double adaptive_gauss_legendre(F&& f, double a, double b, double tol) {
  int panels = 8;
  double prev = detail::gauss_legendre_panels(f, a, b, panels);
  for (int round = 0; round < 8; ++round) {
    panels *= 2;
    const double next = detail::gauss_legendre_panels(f, a, b, panels);
    if (std::abs(next - prev) <= tol) return next;
    prev = next;
  }
  return prev;
}

}  // namespace num
}  // namespace renyi
