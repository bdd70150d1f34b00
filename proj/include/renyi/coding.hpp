#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "renyi/distribution.hpp"
#include "renyi/numeric.hpp"

// Exponential upper bounds on the ML block error probability of binary
// linear codes over memoryless binary-input output-symmetric channels,
// driven by the Renyi divergence from the normalized distance spectrum to
// the binomial spectrum of the fully random ensemble.

namespace renyi {

// Distance spectrum of a length-n code: counts[l] holds S_l, the number of
// codewords of Hamming weight l (real-valued so ensemble averages fit).
// The code size is M = 1 + sum_{l>=1} S_l.
struct DistanceSpectrum {
  int n = 0;
  std::vector<double> counts;

  void validate() const {
    require(n >= 1, "DistanceSpectrum: n must be >= 1");
    require(counts.size() == static_cast<std::size_t>(n) + 1,
            "DistanceSpectrum: counts must have n+1 entries");
    for (double c : counts) {
      require(std::isfinite(c) && c >= 0.0, "DistanceSpectrum: counts must be finite and >= 0");
    }
  }

  // sum_{l>=1} S_l = M - 1
  double nonzero_total() const {
    num::CompensatedSum s;
    for (std::size_t l = 1; l < counts.size(); ++l) s.add(counts[l]);
    return s.value();
  }
};

// PMF over Hamming weights 0..n, kept in both linear and log form so that
// divergences stay computable when binomial tails underflow.
struct SpectrumPMF {
  int n = 0;
  std::vector<double> probs;
  std::vector<double> log_probs;
};

enum class ChannelKind { bsc, biawgn };

// bsc: parameter = crossover probability in [0, 1/2].
// biawgn: parameter = Es/N0 as a linear ratio, unit-energy antipodal input.
struct ChannelModel {
  ChannelKind kind;
  double parameter;

  static ChannelModel Bsc(double delta) {
    require(delta >= 0.0 && delta <= 0.5, "ChannelModel: bsc crossover must be in [0, 0.5]");
    return {ChannelKind::bsc, delta};
  }
  static ChannelModel Biawgn(double es_n0_linear) {
    require(std::isfinite(es_n0_linear) && es_n0_linear > 0.0,
            "ChannelModel: biawgn Es/N0 must be positive");
    return {ChannelKind::biawgn, es_n0_linear};
  }
};

inline const char* to_string(ChannelKind k) {
  return k == ChannelKind::bsc ? "bsc" : "biawgn";
}

enum class BoundMethod { renyi, shulman_feder, union_bhattacharyya, partitioned };

inline const char* to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::renyi: return "renyi";
    case BoundMethod::shulman_feder: return "shulman_feder";
    case BoundMethod::union_bhattacharyya: return "union";
    case BoundMethod::partitioned: return "partitioned";
  }
  return "?";
}

// Optimized exponent (nats per channel use) plus the maximizing parameters.
// divergence_term holds D_s(P_N||Q_N) at the reported (r,s); the union
// method does not use (r, rho, s, divergence_term) and reports neutral
// values there. subcode marks application to a proper subcode; rate_mismatch
// marks a caller-supplied rate inconsistent with log(M)/N.
struct BoundReport {
  double exponent = 0.0;
  double r_star = 1.0;
  double rho_star = 0.0;
  double s_star = num::kInf;
  double divergence_term = 0.0;
  double prob_bound = 1.0;
  BoundMethod method = BoundMethod::renyi;
  bool subcode = false;
  bool rate_mismatch = false;
};

// Binomial(1/2) weight distribution of the fully random ensemble, exact in
// log domain for n up to 1e4.
inline SpectrumPMF binomial_pmf(int n) {
  require(n >= 1, "binomial_pmf: n must be >= 1");
  SpectrumPMF out;
  out.n = n;
  out.log_probs.resize(static_cast<std::size_t>(n) + 1);
  out.probs.resize(static_cast<std::size_t>(n) + 1);
  const double log_half_n = -static_cast<double>(n) * 0.6931471805599453094172321;
  const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
  for (int l = 0; l <= n; ++l) {
    out.log_probs[static_cast<std::size_t>(l)] =
        lg_n1 - std::lgamma(static_cast<double>(l) + 1.0) -
        std::lgamma(static_cast<double>(n - l) + 1.0) + log_half_n;
  }
  num::CompensatedSum sum;
  for (int l = 0; l <= n; ++l) {
    out.probs[static_cast<std::size_t>(l)] = std::exp(out.log_probs[static_cast<std::size_t>(l)]);
    sum.add(out.probs[static_cast<std::size_t>(l)]);
  }
  const double z = sum.value();
  const double logz = std::log(z);
  for (int l = 0; l <= n; ++l) {
    out.probs[static_cast<std::size_t>(l)] /= z;
    out.log_probs[static_cast<std::size_t>(l)] -= logz;
  }
  return out;
}

// Normalized spectrum P_N(l) = S_l/(M-1) for l >= 1 and P_N(0) = 0, so that
// P_N is a PMF over the nonzero codeword weights.
inline SpectrumPMF spectrum_pmf(const DistanceSpectrum& spec) {
  spec.validate();
  const double m_minus_1 = spec.nonzero_total();
  require(m_minus_1 > 0.0, "spectrum_pmf: spectrum has no nonzero codewords");
  SpectrumPMF out;
  out.n = spec.n;
  out.probs.assign(static_cast<std::size_t>(spec.n) + 1, 0.0);
  num::CompensatedSum sum;
  for (int l = 1; l <= spec.n; ++l) {
    out.probs[static_cast<std::size_t>(l)] = spec.counts[static_cast<std::size_t>(l)] / m_minus_1;
    sum.add(out.probs[static_cast<std::size_t>(l)]);
  }
  const double z = sum.value();
  out.log_probs.assign(static_cast<std::size_t>(spec.n) + 1, -num::kInf);
  for (int l = 1; l <= spec.n; ++l) {
    out.probs[static_cast<std::size_t>(l)] /= z;
    if (out.probs[static_cast<std::size_t>(l)] > 0.0) {
      out.log_probs[static_cast<std::size_t>(l)] =
          std::log(out.probs[static_cast<std::size_t>(l)]);
    }
  }
  return out;
}

// Renyi divergence between weight PMFs, in log domain. Supports the orders
// s in (1, inf], plus s = 1 (relative entropy) for the comparison tests.
inline double renyi_divergence(const SpectrumPMF& p, const SpectrumPMF& q, DivergenceOrder order) {
  require(p.n == q.n, "renyi_divergence: spectrum lengths differ");
  if (order.is_infinite()) {
    double best = 0.0;
    for (std::size_t l = 0; l < p.log_probs.size(); ++l) {
      if (p.log_probs[l] == -num::kInf) continue;
      if (q.log_probs[l] == -num::kInf) return num::kInf;
      best = std::max(best, p.log_probs[l] - q.log_probs[l]);
    }
    return best;
  }
  if (order.is_one()) {
    num::CompensatedSum s;
    for (std::size_t l = 0; l < p.log_probs.size(); ++l) {
      if (p.log_probs[l] == -num::kInf) continue;
      if (q.log_probs[l] == -num::kInf) return num::kInf;
      s.add(std::exp(p.log_probs[l]) * (p.log_probs[l] - q.log_probs[l]));
    }
    return std::max(0.0, s.value());
  }
  const double s = order.value();
  require(s > 0.0, "renyi_divergence: order must be positive");
  std::vector<double> terms;
  terms.reserve(p.log_probs.size());
  for (std::size_t l = 0; l < p.log_probs.size(); ++l) {
    if (p.log_probs[l] == -num::kInf) continue;
    if (q.log_probs[l] == -num::kInf) {
      if (s > 1.0) return num::kInf;
      continue;
    }
    terms.push_back(s * p.log_probs[l] + (1.0 - s) * q.log_probs[l]);
  }
  return std::max(0.0, num::log_sum_exp(terms) / (s - 1.0));
}

// Weight tally of the code spanned by the given generator rows: enumerates
// all 2^k row combinations over GF(2) by Gray code.
inline DistanceSpectrum spectrum_from_generator(const std::vector<std::vector<int>>& rows) {
  require(!rows.empty(), "spectrum_from_generator: need at least one row");
  const std::size_t k = rows.size();
  require(k <= 28, "spectrum_from_generator: more than 28 rows is infeasible to enumerate");
  const std::size_t n = rows.front().size();
  require(n >= 1, "spectrum_from_generator: rows must be nonempty");
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> packed(k, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < k; ++i) {
    require(rows[i].size() == n, "spectrum_from_generator: rows must have a common length");
    for (std::size_t j = 0; j < n; ++j) {
      const int bit = rows[i][j];
      require(bit == 0 || bit == 1, "spectrum_from_generator: rows must be binary");
      if (bit) packed[i][j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
  DistanceSpectrum spec;
  spec.n = static_cast<int>(n);
  spec.counts.assign(n + 1, 0.0);
  spec.counts[0] = 1.0;  // empty combination
  std::vector<std::uint64_t> current(words, 0);
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int j = std::countr_zero(i);  // Gray step flips one row
    int weight = 0;
    for (std::size_t w = 0; w < words; ++w) {
      current[w] ^= packed[static_cast<std::size_t>(j)][w];
      weight += std::popcount(current[w]);
    }
    spec.counts[static_cast<std::size_t>(weight)] += 1.0;
  }
  return spec;
}

// Gallager E0(rho) with the symmetric input distribution q = (1/2, 1/2):
//   E0(rho) = -log sum_y [ 1/2 W(y|0)^(1/(1+rho)) + 1/2 W(y|1)^(1/(1+rho)) ]^(1+rho).
// BSC: closed form rho log2 - (1+rho) log(d^(1/(1+rho)) + (1-d)^(1/(1+rho))).
// BIAWGN: with a = sqrt(2 Es/N0), the integral reduces to
//   E0(rho) = -log Integral phi(t) exp((1+rho) logcosh(a t/(1+rho)) - a^2/2) dt,
// evaluated by adaptive Gaussian quadrature (abs error < 1e-12).
inline double gallager_e0(const ChannelModel& ch, double rho) {
  require(rho >= 0.0 && rho <= 1.0, "gallager_e0: rho must be in [0,1]");
  if (rho == 0.0) return 0.0;
  if (ch.kind == ChannelKind::bsc) {
    const double d = ch.parameter;
    const double e = 1.0 / (1.0 + rho);
    return std::max(0.0, rho * std::log(2.0) -
                             (1.0 + rho) * std::log(std::pow(d, e) + std::pow(1.0 - d, e)));
  }
  const double a = std::sqrt(2.0 * ch.parameter);
  const double c = 1.0 + rho;
  constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
  auto integrand = [&](double t) {
    return kInvSqrt2Pi * std::exp(-0.5 * t * t + c * num::log_cosh(a * t / c) - 0.5 * a * a);
  };
  const double integral = 2.0 * num::adaptive_gauss_legendre(integrand, 0.0, a + 14.0, 1e-13);
  return std::max(0.0, -std::log(integral));
}

namespace detail {

// max_{rho in [0, rho_max]} [E0(rho) - rho * cost]; concave in rho.
inline num::Extremum maximize_e0_linear(const ChannelModel& ch, double cost, double rho_max) {
  if (!std::isfinite(cost)) return {0.0, 0.0};  // only rho = 0 survives an infinite cost
  auto objective = [&](double rho) { return gallager_e0(ch, rho) - rho * cost; };
  num::Extremum e = num::golden_max(objective, 0.0, rho_max, 1e-10);
  if (e.value < 0.0) return {0.0, 0.0};  // rho = 0 always achieves 0
  return e;
}

}  // namespace detail

// Gallager random coding exponent E_r(R) = max_{rho in [0,1]} E0(rho) - rho R.
inline double random_coding_exponent(const ChannelModel& ch, double rate) {
  require(std::isfinite(rate) && rate >= 0.0, "random_coding_exponent: rate must be >= 0");
  return detail::maximize_e0_linear(ch, rate, 1.0).value;
}

// One r-slice of the optimized exponent:
//   F(r) = max_{rho in [0,1/r]} [E0(rho) - rho (r R + D_s(P_N||Q_N)/N)],
// with s = r/(r-1) and the exact order-infinity path at r = 1.
struct RenyiRPoint {
  double r = 1.0;
  double s = num::kInf;
  double d_s = 0.0;
  double rho_star = 0.0;
  double exponent = 0.0;
};

namespace detail {

inline RenyiRPoint evaluate_renyi_r(const SpectrumPMF& pmf, const SpectrumPMF& binom, int n,
                                    double rate, const ChannelModel& ch, double r) {
  RenyiRPoint pt;
  pt.r = r;
  pt.s = (r == 1.0) ? num::kInf : r / (r - 1.0);
  pt.d_s = (r == 1.0) ? renyi_divergence(pmf, binom, DivergenceOrder::infinity())
                      : renyi_divergence(pmf, binom, pt.s);
  const num::Extremum e =
      maximize_e0_linear(ch, r * rate + pt.d_s / static_cast<double>(n), 1.0 / r);
  pt.rho_star = e.x;
  pt.exponent = e.value;
  return pt;
}

inline bool rate_is_consistent(const DistanceSpectrum& spec, double rate) {
  const double m = 1.0 + spec.nonzero_total();
  return std::abs(rate - std::log(m) / static_cast<double>(spec.n)) <= 1e-9;
}

}  // namespace detail

// Evaluation of the optimized bound at a fixed r >= 1; r = 1 reproduces the
// Shulman-Feder exponent exactly.
inline RenyiRPoint renyi_bound_at(const DistanceSpectrum& spec, double rate,
                                  const ChannelModel& ch, double r) {
  spec.validate();
  require(std::isfinite(rate) && rate >= 0.0, "renyi_bound_at: rate must be >= 0");
  require(r >= 1.0, "renyi_bound_at: r must be >= 1");
  const SpectrumPMF pmf = spectrum_pmf(spec);
  const SpectrumPMF binom = binomial_pmf(spec.n);
  return detail::evaluate_renyi_r(pmf, binom, spec.n, rate, ch, r);
}

// Full optimized bound: sup over r >= 1 of the r-slices, searched on a
// 256-point log grid over [1, 1e3] plus golden refinement of the best
// bracket. Ties prefer the smaller grid r, so the degenerate spectrum
// reports r = 1 (s = inf) exactly.
inline BoundReport renyi_bound(const DistanceSpectrum& spec, double rate, const ChannelModel& ch) {
  spec.validate();
  require(std::isfinite(rate) && rate >= 0.0, "renyi_bound: rate must be >= 0");
  const SpectrumPMF pmf = spectrum_pmf(spec);
  const SpectrumPMF binom = binomial_pmf(spec.n);
  auto slice = [&](double r) {
    return detail::evaluate_renyi_r(pmf, binom, spec.n, rate, ch, r);
  };
  constexpr int kGrid = 256;
  RenyiRPoint best;
  best.exponent = -num::kInf;
  int best_i = 0;
  for (int i = 0; i < kGrid; ++i) {
    const double r = std::pow(10.0, 3.0 * static_cast<double>(i) / (kGrid - 1));
    const RenyiRPoint pt = slice(i == 0 ? 1.0 : r);
    if (pt.exponent > best.exponent) {
      best = pt;
      best_i = i;
    }
  }
  const double lo_exp = 3.0 * static_cast<double>(std::max(0, best_i - 1)) / (kGrid - 1);
  const double hi_exp = 3.0 * static_cast<double>(std::min(kGrid - 1, best_i + 1)) / (kGrid - 1);
  const num::Extremum refined = num::golden_max(
      [&](double e) { return slice(std::pow(10.0, e)).exponent; }, lo_exp, hi_exp, 1e-10);
  if (refined.value > best.exponent) {
    best = slice(std::pow(10.0, refined.x));
  }
  BoundReport report;
  report.exponent = best.exponent;
  report.r_star = best.r;
  report.rho_star = best.rho_star;
  report.s_star = best.s;
  report.divergence_term = best.d_s;
  report.prob_bound = std::min(1.0, std::exp(-static_cast<double>(spec.n) * best.exponent));
  report.method = BoundMethod::renyi;
  report.rate_mismatch = !detail::rate_is_consistent(spec, rate);
  return report;
}

// Shulman-Feder specialization: exponent E_r(R + D_inf(P_N||Q_N)/N).
inline BoundReport shulman_feder_bound(const DistanceSpectrum& spec, double rate,
                                       const ChannelModel& ch) {
  spec.validate();
  require(std::isfinite(rate) && rate >= 0.0, "shulman_feder_bound: rate must be >= 0");
  const SpectrumPMF pmf = spectrum_pmf(spec);
  const SpectrumPMF binom = binomial_pmf(spec.n);
  const RenyiRPoint pt = detail::evaluate_renyi_r(pmf, binom, spec.n, rate, ch, 1.0);
  BoundReport report;
  report.exponent = pt.exponent;
  report.r_star = 1.0;
  report.rho_star = pt.rho_star;
  report.s_star = num::kInf;
  report.divergence_term = pt.d_s;
  report.prob_bound = std::min(1.0, std::exp(-static_cast<double>(spec.n) * pt.exponent));
  report.method = BoundMethod::shulman_feder;
  report.rate_mismatch = !detail::rate_is_consistent(spec, rate);
  return report;
}

// Channel Bhattacharyya parameter: 2 sqrt(d(1-d)) for the BSC,
// exp(-Es/N0) for unit-energy antipodal signaling on the BIAWGN channel.
inline double bhattacharyya_parameter(const ChannelModel& ch) {
  if (ch.kind == ChannelKind::bsc) {
    return 2.0 * std::sqrt(ch.parameter * (1.0 - ch.parameter));
  }
  return std::exp(-ch.parameter);
}

// Union-Bhattacharyya bound: P_e <= sum_{l>=1} S_l Z^l, clipped to 1.
inline BoundReport union_bhattacharyya_bound(const DistanceSpectrum& spec,
                                             const ChannelModel& ch) {
  spec.validate();
  const double z = bhattacharyya_parameter(ch);
  num::CompensatedSum sum;
  for (int l = 1; l <= spec.n; ++l) {
    const double c = spec.counts[static_cast<std::size_t>(l)];
    if (c > 0.0) sum.add(c * std::pow(z, static_cast<double>(l)));
  }
  BoundReport report;
  report.prob_bound = std::min(1.0, sum.value());
  report.exponent = -std::log(report.prob_bound) / static_cast<double>(spec.n);
  report.method = BoundMethod::union_bhattacharyya;
  return report;
}

struct PartitionWindow {
  int lo = 0;  // lo = hi = 0 encodes the empty window
  int hi = 0;
  bool empty() const { return lo == 0; }
};

// Combined two-subcode bound: weights inside the window go to the subcode
// bounded by the optimized exponent, the rest to the union bound.
struct PartitionedBound {
  BoundReport report;  // combined, method = partitioned
  PartitionWindow window;
  BoundReport subcode_report;  // optimized bound on C1 (neutral when empty)
  BoundReport union_report;    // union bound on C2
};

// Exhaustive search over contiguous weight windows L = [lo,hi]: C1 takes the
// spectrum restricted to L plus the zero word (rate log(M1)/N, realized as a
// rate offset so degenerate windows reproduce the pure bounds bit-exactly);
// C2 takes the complement under the union bound.
inline PartitionedBound partitioned_bound(const DistanceSpectrum& spec, double rate,
                                          const ChannelModel& ch) {
  spec.validate();
  require(std::isfinite(rate) && rate >= 0.0, "partitioned_bound: rate must be >= 0");
  const double m_minus_1 = spec.nonzero_total();
  require(m_minus_1 > 0.0, "partitioned_bound: spectrum has no nonzero codewords");

  PartitionedBound best;
  {  // empty window: everything through the union bound
    best.window = {0, 0};
    best.subcode_report = BoundReport{};
    best.subcode_report.prob_bound = 0.0;
    best.subcode_report.exponent = num::kInf;
    best.subcode_report.subcode = true;
    best.union_report = union_bhattacharyya_bound(spec, ch);
    best.report.prob_bound = best.union_report.prob_bound;
  }

  DistanceSpectrum c1;
  c1.n = spec.n;
  DistanceSpectrum c2;
  c2.n = spec.n;
  for (int lo = 1; lo <= spec.n; ++lo) {
    for (int hi = lo; hi <= spec.n; ++hi) {
      num::CompensatedSum mass;
      for (int l = lo; l <= hi; ++l) mass.add(spec.counts[static_cast<std::size_t>(l)]);
      const double m1_minus_1 = mass.value();
      if (m1_minus_1 <= 0.0) continue;  // same as the empty window
      c1.counts.assign(static_cast<std::size_t>(spec.n) + 1, 0.0);
      c1.counts[0] = 1.0;
      c2.counts = spec.counts;
      c2.counts[0] = 1.0;
      for (int l = lo; l <= hi; ++l) {
        c1.counts[static_cast<std::size_t>(l)] = spec.counts[static_cast<std::size_t>(l)];
        c2.counts[static_cast<std::size_t>(l)] = 0.0;
      }
      const double rate1 =
          rate + (std::log1p(m1_minus_1) - std::log1p(m_minus_1)) / static_cast<double>(spec.n);
      BoundReport r1 = renyi_bound(c1, rate1, ch);
      r1.subcode = (lo > 1 || hi < spec.n);
      const BoundReport r2 = union_bhattacharyya_bound(c2, ch);
      const double total = std::min(1.0, r1.prob_bound + r2.prob_bound);
      if (total < best.report.prob_bound) {
        best.window = {lo, hi};
        best.subcode_report = r1;
        best.union_report = r2;
        best.report.prob_bound = total;
      }
    }
  }

  best.report.exponent = -std::log(best.report.prob_bound) / static_cast<double>(spec.n);
  best.report.method = BoundMethod::partitioned;
  best.report.r_star = best.subcode_report.r_star;
  best.report.rho_star = best.subcode_report.rho_star;
  best.report.s_star = best.subcode_report.s_star;
  best.report.divergence_term = best.subcode_report.divergence_term;
  best.report.subcode = !(best.window.lo == 1 && best.window.hi == spec.n);
  best.report.rate_mismatch = !detail::rate_is_consistent(spec, rate);
  return best;
}

}  // namespace renyi
