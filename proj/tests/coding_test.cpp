#include "renyi/coding.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "test_support.hpp"

using namespace renyi;
using renyi::testing::binomial_like_spectrum;
using renyi::testing::hamming74_generator;
using renyi::testing::random_spectrum;

namespace {

DistanceSpectrum hamming74() { return spectrum_from_generator(hamming74_generator()); }

double hamming74_rate() { return std::log(16.0) / 7.0; }

TEST(BinomialPmf, PinnedValues) {
  const SpectrumPMF q4 = binomial_pmf(4);
  EXPECT_NEAR(q4.probs[2], 0.375, 1e-15);
  const SpectrumPMF q7 = binomial_pmf(7);
  EXPECT_NEAR(q7.probs[3], 35.0 / 128.0, 1e-15);
  for (int n : {1, 7, 100, 1000, 10000}) {
    const SpectrumPMF q = binomial_pmf(n);
    num::CompensatedSum s;
    for (double p : q.probs) {
      EXPECT_GE(p, 0.0);
      s.add(p);
    }
    EXPECT_NEAR(s.value(), 1.0, 1e-12) << "n=" << n;
    for (double lp : q.log_probs) EXPECT_TRUE(std::isfinite(lp));
  }
}

TEST(SpectrumPmf, Hamming74) {
  const SpectrumPMF p = spectrum_pmf(hamming74());
  EXPECT_EQ(p.probs[0], 0.0);
  EXPECT_NEAR(p.probs[3], 7.0 / 15.0, 1e-15);
  EXPECT_NEAR(p.probs[4], 7.0 / 15.0, 1e-15);
  EXPECT_NEAR(p.probs[7], 1.0 / 15.0, 1e-15);
  num::CompensatedSum s;
  for (double v : p.probs) s.add(v);
  EXPECT_NEAR(s.value(), 1.0, 1e-14);
}

TEST(SpectrumPmf, SingleParityCheck) {
  // (3,2) single parity check: codewords 000, 011, 101, 110
  DistanceSpectrum spec;
  spec.n = 3;
  spec.counts = {1.0, 0.0, 3.0, 0.0};
  const SpectrumPMF p = spectrum_pmf(spec);
  EXPECT_EQ(p.probs[2], 1.0);
  DistanceSpectrum empty;
  empty.n = 3;
  empty.counts = {1.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(spectrum_pmf(empty), std::invalid_argument);
}

TEST(SpectrumFromGenerator, PinnedCodes) {
  const DistanceSpectrum h = hamming74();
  const std::vector<double> expected = {1, 0, 0, 7, 7, 0, 0, 1};
  ASSERT_EQ(h.counts.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(h.counts[i], expected[i]);

  const DistanceSpectrum full =
      spectrum_from_generator({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const std::vector<double> cube = {1, 3, 3, 1};
  for (std::size_t i = 0; i < cube.size(); ++i) EXPECT_EQ(full.counts[i], cube[i]);

  const DistanceSpectrum rep = spectrum_from_generator({{1, 1, 1, 1, 1}});
  EXPECT_EQ(rep.counts[0], 1.0);
  EXPECT_EQ(rep.counts[5], 1.0);
  EXPECT_EQ(rep.nonzero_total(), 1.0);
}

TEST(SpectrumFromGenerator, Validation) {
  EXPECT_THROW(spectrum_from_generator({}), std::invalid_argument);
  EXPECT_THROW(spectrum_from_generator({{1, 2, 0}}), std::invalid_argument);
  EXPECT_THROW(spectrum_from_generator({{1, 0}, {1}}), std::invalid_argument);
  const std::vector<std::vector<int>> too_many(29, std::vector<int>(4, 1));
  EXPECT_THROW(spectrum_from_generator(too_many), std::invalid_argument);
}

TEST(SpectrumRenyi, HammingAgainstBinomial) {
  const SpectrumPMF p = spectrum_pmf(hamming74());
  const SpectrumPMF q = binomial_pmf(7);
  EXPECT_NEAR(renyi_divergence(p, q, DivergenceOrder::infinity()), std::log(128.0 / 15.0), 1e-12);
}

TEST(SpectrumRenyi, MonotoneInOrderAndAboveKL) {
  std::mt19937_64 rng(41);
  const SpectrumPMF q = binomial_pmf(24);
  for (int i = 0; i < 30; ++i) {
    const SpectrumPMF p = spectrum_pmf(random_spectrum(rng, 24));
    const double kl = renyi_divergence(p, q, 1.0);
    double prev = num::kInf;
    for (double r : {1.0078125, 1.03125, 1.125, 1.5, 2.0, 4.0, 16.0, 256.0}) {
      const double s = r / (r - 1.0);  // decreasing in r
      const double d = renyi_divergence(p, q, s);
      EXPECT_LE(d, prev + 1e-12);
      EXPECT_GE(d, kl - 1e-12);
      prev = d;
    }
    EXPECT_GE(renyi_divergence(p, q, DivergenceOrder::infinity()), prev - 1e-12);
  }
}

TEST(GallagerE0, PinnedValues) {
  EXPECT_EQ(gallager_e0(ChannelModel::Bsc(0.2), 0.0), 0.0);
  EXPECT_EQ(gallager_e0(ChannelModel::Biawgn(1.0), 0.0), 0.0);
  EXPECT_NEAR(gallager_e0(ChannelModel::Bsc(0.0), 1.0), std::log(2.0), 1e-15);
  for (double rho : {0.25, 0.5, 1.0}) {
    EXPECT_NEAR(gallager_e0(ChannelModel::Bsc(0.5), rho), 0.0, 1e-12);
  }
}

TEST(GallagerE0, ClosedFormAtRhoOne) {
  // E0(1) = log(2/(1+Z)) for any binary-input output-symmetric channel
  for (double delta : {0.01, 0.11, 0.3}) {
    const ChannelModel ch = ChannelModel::Bsc(delta);
    EXPECT_NEAR(gallager_e0(ch, 1.0), std::log(2.0 / (1.0 + bhattacharyya_parameter(ch))), 1e-12);
  }
  for (double esn0 : {0.5, 1.0, 2.5118864315095801}) {
    const ChannelModel ch = ChannelModel::Biawgn(esn0);
    EXPECT_NEAR(gallager_e0(ch, 1.0), std::log(2.0 / (1.0 + std::exp(-esn0))), 1e-10);
  }
}

TEST(GallagerE0, QuadratureAgreesWithSimpsonOracle) {
  // independent integration route for the BIAWGN integral
  for (double esn0 : {0.3, 1.0, 2.5}) {
    for (double rho : {0.1, 0.5, 0.9}) {
      const double a = std::sqrt(2.0 * esn0);
      const double c = 1.0 + rho;
      auto integrand = [&](double t) {
        return 0.3989422804014326779399461 *
               std::exp(-0.5 * t * t + c * num::log_cosh(a * t / c) - 0.5 * a * a);
      };
      const double simpson = 2.0 * num::adaptive_simpson(integrand, 0.0, a + 14.0, 1e-13);
      const double e0 = gallager_e0(ChannelModel::Biawgn(esn0), rho);
      EXPECT_NEAR(e0, -std::log(simpson), 1e-10) << "esn0=" << esn0 << " rho=" << rho;
    }
  }
}

TEST(GallagerE0, MonotoneAndConcaveInRho) {
  for (const ChannelModel& ch : {ChannelModel::Bsc(0.11), ChannelModel::Biawgn(1.5848931924611136)}) {
    const double h = 1e-4;
    for (double rho = h; rho <= 1.0 - h; rho += 0.0625) {
      const double lo = gallager_e0(ch, rho - h);
      const double mid = gallager_e0(ch, rho);
      const double hi = gallager_e0(ch, rho + h);
      EXPECT_GE(hi, mid - 1e-11);
      EXPECT_GE(mid, lo - 1e-11);
      EXPECT_LE(lo + hi - 2.0 * mid, 1e-9);  // second difference <= 0 up to noise
    }
  }
}

TEST(RandomCodingExponent, PinnedValues) {
  EXPECT_EQ(random_coding_exponent(ChannelModel::Bsc(0.11), std::log(2.0)), 0.0);
  // noiseless channel: E0 = rho log 2, optimum at rho = 1
  EXPECT_NEAR(random_coding_exponent(ChannelModel::Bsc(0.0), 0.3), std::log(2.0) - 0.3, 1e-10);
  EXPECT_GE(random_coding_exponent(ChannelModel::Biawgn(1.0), 0.2), 0.0);
}

TEST(Bhattacharyya, PinnedValues) {
  EXPECT_EQ(bhattacharyya_parameter(ChannelModel::Bsc(0.0)), 0.0);
  EXPECT_EQ(bhattacharyya_parameter(ChannelModel::Bsc(0.5)), 1.0);
  EXPECT_NEAR(bhattacharyya_parameter(ChannelModel::Bsc(0.1)), 0.6, 1e-15);
  EXPECT_NEAR(bhattacharyya_parameter(ChannelModel::Biawgn(1.0)), std::exp(-1.0), 1e-15);
}

TEST(RenyiBound, DegeneratesToRandomCoding) {
  const DistanceSpectrum spec = binomial_like_spectrum(40, 0.3);
  const double rate = std::log(1.0 + spec.nonzero_total()) / 40.0;
  for (double delta : {0.01, 0.05, 0.11}) {
    const ChannelModel ch = ChannelModel::Bsc(delta);
    const BoundReport rb = renyi_bound(spec, rate, ch);
    EXPECT_EQ(rb.r_star, 1.0);
    EXPECT_TRUE(std::isinf(rb.s_star));
    EXPECT_NEAR(rb.exponent, random_coding_exponent(ch, rate), 1e-8) << "delta=" << delta;
  }
}

TEST(RenyiBound, AtOneEqualsShulmanFeder) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 25; ++i) {
    const int n = 8 + (i % 3) * 8;
    const DistanceSpectrum spec = random_spectrum(rng, n);
    const double rate = std::log(1.0 + spec.nonzero_total()) / n;
    const ChannelModel ch =
        (i % 2 == 0) ? ChannelModel::Bsc(0.02 + 0.4 * (i % 5) / 5.0)
                     : ChannelModel::Biawgn(0.5 + 0.5 * (i % 7));
    const RenyiRPoint at1 = renyi_bound_at(spec, rate, ch, 1.0);
    const BoundReport sf = shulman_feder_bound(spec, rate, ch);
    EXPECT_EQ(at1.exponent, sf.exponent) << "i=" << i;
    EXPECT_EQ(at1.d_s, sf.divergence_term);
    const BoundReport rb = renyi_bound(spec, rate, ch);
    EXPECT_GE(rb.exponent, sf.exponent - 1e-12);
  }
}

TEST(ShulmanFeder, HammingDivergenceTerm) {
  const BoundReport sf = shulman_feder_bound(hamming74(), hamming74_rate(), ChannelModel::Bsc(0.05));
  EXPECT_NEAR(sf.divergence_term, std::log(128.0 / 15.0), 1e-12);
  EXPECT_EQ(sf.r_star, 1.0);
}

TEST(UnionBound, PinnedValues) {
  const DistanceSpectrum h = hamming74();
  EXPECT_EQ(union_bhattacharyya_bound(h, ChannelModel::Bsc(0.0)).prob_bound, 0.0);
  DistanceSpectrum rep;
  rep.n = 5;
  rep.counts = {1, 0, 0, 0, 0, 1};
  const BoundReport u = union_bhattacharyya_bound(rep, ChannelModel::Bsc(0.1));
  EXPECT_NEAR(u.prob_bound, std::pow(0.6, 5), 1e-12);
  // larger spectrum dominates a sub-spectrum
  DistanceSpectrum more = rep;
  more.counts[3] = 2.0;
  EXPECT_GE(union_bhattacharyya_bound(more, ChannelModel::Bsc(0.1)).prob_bound, u.prob_bound);
}

TEST(PartitionedBound, DegenerateWindows) {
  const DistanceSpectrum h = hamming74();
  const double rate = hamming74_rate();
  for (double delta : {0.02, 0.2}) {
    const ChannelModel ch = ChannelModel::Bsc(delta);
    const PartitionedBound pb = partitioned_bound(h, rate, ch);
    const BoundReport rb = renyi_bound(h, rate, ch);
    const BoundReport ub = union_bhattacharyya_bound(h, ch);
    EXPECT_LE(pb.report.prob_bound, std::min(rb.prob_bound, ub.prob_bound) + 1e-15);
    EXPECT_LE(pb.report.prob_bound, 1.0);
  }
}

TEST(PartitionedBound, MonotoneInChannelNoise) {
  const DistanceSpectrum h = hamming74();
  const double rate = hamming74_rate();
  double prev = 0.0;
  for (double delta = 0.01; delta <= 0.3; delta += 0.03) {
    const double p = renyi_bound(h, rate, ChannelModel::Bsc(delta)).prob_bound;
    EXPECT_GE(p, prev - 1e-12) << "delta=" << delta;
    prev = p;
  }
}

TEST(Reports, BitExactReproducibility) {
  const DistanceSpectrum h = hamming74();
  const double rate = hamming74_rate();
  const ChannelModel ch = ChannelModel::Biawgn(1.2);
  const BoundReport a = renyi_bound(h, rate, ch);
  const BoundReport b = renyi_bound(h, rate, ch);
  EXPECT_EQ(a.exponent, b.exponent);
  EXPECT_EQ(a.r_star, b.r_star);
  EXPECT_EQ(a.rho_star, b.rho_star);
  EXPECT_EQ(a.divergence_term, b.divergence_term);
  EXPECT_EQ(a.prob_bound, b.prob_bound);
}

TEST(Channels, Validation) {
  EXPECT_THROW(ChannelModel::Bsc(0.6), std::invalid_argument);
  EXPECT_THROW(ChannelModel::Bsc(-0.1), std::invalid_argument);
  EXPECT_THROW(ChannelModel::Biawgn(0.0), std::invalid_argument);
}

}  // namespace
