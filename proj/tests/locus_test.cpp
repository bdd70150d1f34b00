#include "renyi/locus.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace renyi;
using renyi::testing::random_positive_distribution;

namespace {

TEST(BoundaryLine, PinnedValues) {
  const BoundaryLine l = boundary_line(1.0, 0.5);
  EXPECT_DOUBLE_EQ(l.slope, -1.0);
  EXPECT_NEAR(l.intercept, -std::log(0.75), 1e-10);
  // alpha -> 0: slope -> 0-, intercept -> 0+
  const BoundaryLine tiny = boundary_line(1.0, 1e-4);
  EXPECT_LT(tiny.slope, 0.0);
  EXPECT_GT(tiny.slope, -1.1e-4);
  EXPECT_GT(tiny.intercept, 0.0);
  EXPECT_LT(tiny.intercept, 1e-3);
}

TEST(BoundaryLine, AxisCrossingIsSkewSymmetricG) {
  // the line crosses y = 0 at x = ((1-a)/a) g_a(eps) = g_{1-a}(eps)
  for (double a : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    const BoundaryLine l = boundary_line(1.2, a);
    const double crossing = l.intercept / (-l.slope);
    EXPECT_NEAR(crossing, g_alpha({1.0 - a, 1.2}).value, 1e-8) << "a=" << a;
  }
}

TEST(EnvelopeY, SymmetricPointAndAxisLimits) {
  const double c = chernoff_min(1.0).value;
  EXPECT_NEAR(envelope_y(1.0, c), c, 1e-6);
  const double g1 = g_alpha({1.0, 1.0}).value;
  EXPECT_EQ(envelope_y(1.0, 0.0), g1);
  EXPECT_EQ(envelope_y(1.0, g1 + 0.01), 0.0);
  EXPECT_GT(envelope_y(1.0, g1 - 0.01), 0.0);
}

TEST(Contains, PinnedCases) {
  EXPECT_FALSE(contains(1.0, 0.0, 0.0, 1e-9));
  EXPECT_TRUE(contains(1.0, 10.0, 10.0, 1e-9));
  const WitnessTriple w = witness_triple(1.0, -2.0);
  EXPECT_TRUE(contains(1.0, w.point[0], w.point[1], 1e-9));
  EXPECT_FALSE(contains(1.0, w.point[0] - 1e-3, w.point[1] - 1e-3, 1e-9));
}

TEST(WitnessTriple, SymmetricSlope) {
  const WitnessTriple w = witness_triple(1.0, -1.0);
  EXPECT_NEAR(w.alpha, 0.5, 1e-12);
  EXPECT_NEAR(w.p1_star[0], 0.75, 1e-9);
  EXPECT_NEAR(w.p2_star[0], 0.25, 1e-9);
  EXPECT_NEAR(w.q_star[0], 0.5, 1e-9);
  EXPECT_NEAR(w.point[0], 0.14384, 5e-6);
  EXPECT_NEAR(w.point[1], w.point[0], 1e-12);
  // slope -1 gives equal coordinates for any eps
  for (double eps : {0.4, 1.3, 1.9}) {
    const WitnessTriple ws = witness_triple(eps, -1.0);
    EXPECT_NEAR(ws.point[0], ws.point[1], 1e-10) << "eps=" << eps;
  }
}

TEST(WitnessTriple, SatisfiesTangentLineEquation) {
  // slope -3 -> alpha = 3/4 and D(Q||P2) + 3 D(Q||P1) = g_{3/4}(eps)
  const WitnessTriple w = witness_triple(1.0, -3.0);
  EXPECT_NEAR(w.alpha, 0.75, 1e-12);
  EXPECT_NEAR(w.point[1] + 3.0 * w.point[0], g_alpha({0.75, 1.0}).value, 1e-8);
}

TEST(WitnessTriple, InvariantsAcrossSlopes) {
  for (double slope : {-30.0, -5.0, -1.0, -0.3, -0.02}) {
    const WitnessTriple w = witness_triple(1.2, slope);
    EXPECT_NEAR(total_variation(w.p1_star, w.p2_star), 1.2, 1e-9);
    EXPECT_NEAR(w.point[0], relative_entropy(w.q_star, w.p1_star), 1e-15);
    EXPECT_NEAR(w.point[1], relative_entropy(w.q_star, w.p2_star), 1e-15);
    const Distribution tilt = tilted_measure(w.p1_star, w.p2_star, w.alpha);
    EXPECT_NEAR(w.q_star[0], tilt[0], 1e-9);
    EXPECT_NEAR(envelope_y(1.2, w.point[0]), w.point[1], 1e-6) << "slope=" << slope;
  }
  EXPECT_THROW(witness_triple(1.0, 0.5), std::invalid_argument);
}

TEST(BoundaryPolyline, ShapeChecks) {
  const auto poly = boundary_polyline(1.0, 200);
  ASSERT_EQ(poly.size(), 200u);
  const double g1 = g_alpha({1.0, 1.0}).value;
  // endpoints approach (0, g1) and (g1, 0)
  EXPECT_LT(poly.front().point[0], 1e-6);
  EXPECT_NEAR(poly.front().point[1], g1, 1e-3);
  EXPECT_NEAR(poly.back().point[0], g1, 1e-3);
  EXPECT_LT(poly.back().point[1], 1e-6);
  // monotone sweep
  for (std::size_t i = 1; i < poly.size(); ++i) {
    EXPECT_GT(poly[i].point[0], poly[i - 1].point[0]);
    EXPECT_LT(poly[i].point[1], poly[i - 1].point[1]);
  }
  // discrete convexity: chord slopes nondecreasing
  for (std::size_t i = 2; i < poly.size(); ++i) {
    const double m1 = (poly[i - 1].point[1] - poly[i - 2].point[1]) /
                      (poly[i - 1].point[0] - poly[i - 2].point[0]);
    const double m2 =
        (poly[i].point[1] - poly[i - 1].point[1]) / (poly[i].point[0] - poly[i - 1].point[0]);
    EXPECT_GE(m2, m1 - 1e-8);
  }
  // symmetric under swapping coordinates
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[poly.size() - 1 - i];
    EXPECT_NEAR(a.point[0], b.point[1], 1e-6);
    EXPECT_NEAR(a.point[1], b.point[0], 1e-6);
  }
}

TEST(BoundaryPolyline, MonotoneNesting) {
  const auto outer = boundary_polyline(1.0, 40);
  const auto inner = boundary_polyline(1.4, 40);
  for (std::size_t i = 2; i + 2 < inner.size(); ++i) {
    EXPECT_TRUE(contains(1.0, inner[i].point[0], inner[i].point[1], 1e-9));
  }
  for (std::size_t i = 2; i + 2 < outer.size(); ++i) {
    EXPECT_FALSE(contains(1.4, outer[i].point[0], outer[i].point[1], 1e-9));
  }
}

TEST(WitnessForPoint, BoundaryPointKeepsEps) {
  const WitnessTriple w = witness_triple(1.0, -1.5);
  const WitnessTriple back = witness_for_point(1.0, w.point[0], w.point[1]);
  EXPECT_EQ(back.tv, 1.0);
  EXPECT_NEAR(back.alpha, w.alpha, 1e-6);
}

TEST(WitnessForPoint, InteriorPointsNeedLargerSeparation) {
  const double c14 = chernoff_min(1.4).value;
  const WitnessTriple w = witness_for_point(1.0, c14, c14);
  EXPECT_NEAR(w.tv, 1.4, 1e-6);
  EXPECT_NEAR(w.alpha, 0.5, 1e-6);
  EXPECT_NEAR(total_variation(w.p1_star, w.p2_star), w.tv, 1e-9);
  // rounded display values from the worked example
  EXPECT_NEAR(witness_for_point(1.0, 0.337, 0.337).tv, 1.4, 1e-3);
  EXPECT_NEAR(witness_for_point(1.0, 0.830, 0.830).tv, 1.8, 1e-3);
}

TEST(WitnessForPoint, RejectsOutsidePoints) {
  EXPECT_THROW(witness_for_point(1.0, 0.01, 0.01), std::invalid_argument);
}

TEST(ChernoffMin, PaperValues) {
  EXPECT_NEAR(chernoff_min(1.00).value, 0.144, 5e-4);
  EXPECT_NEAR(chernoff_min(1.40).value, 0.337, 5e-4);
  EXPECT_NEAR(chernoff_min(1.80).value, 0.830, 5e-4);
  EXPECT_NEAR(chernoff_min(1.98).value, 1.959, 5e-4);
  EXPECT_LT(chernoff_min(1e-6).value, 1e-9);
}

TEST(ChernoffMin, WitnessConsistency) {
  for (double eps : {0.6, 1.0, 1.7}) {
    const ChernoffMinResult r = chernoff_min(eps);
    EXPECT_NEAR(r.witness.p1_star[0], 0.25 * (2.0 + eps), 1e-15);
    EXPECT_NEAR(r.witness.p2_star[0], 0.25 * (2.0 - eps), 1e-15);
    EXPECT_NEAR(r.witness.q_star[0], 0.5, 1e-15);
    EXPECT_NEAR(chernoff_information(r.witness.p1_star, r.witness.p2_star), r.value, 1e-9);
    // the witness point sits on y = x and on the envelope
    EXPECT_NEAR(r.witness.point[0], r.witness.point[1], 1e-12);
    EXPECT_NEAR(r.witness.point[0], r.value, 1e-12);
    EXPECT_NEAR(envelope_y(eps, r.witness.point[0]), r.witness.point[1], 1e-6);
  }
}

TEST(ChernoffMin, TangentSlopeAtDiagonalIsMinusOne) {
  for (double eps : {1.0, 1.8}) {
    const double c = chernoff_min(eps).value;
    const WitnessTriple w = witness_for_point(eps, c, c);
    EXPECT_EQ(w.tv, eps);
    EXPECT_NEAR(-w.alpha / (1.0 - w.alpha), -1.0, 1e-6) << "eps=" << eps;
  }
}

TEST(Soundness, RandomTriplesLandInside) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 80; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 5);
    const Distribution p1 = random_positive_distribution(rng, n);
    const Distribution p2 = random_positive_distribution(rng, n);
    const Distribution q = random_positive_distribution(rng, n);
    const double eps = total_variation(p1, p2);
    if (eps <= 1e-6 || eps >= 2.0 - 1e-9) continue;
    EXPECT_TRUE(contains(eps, relative_entropy(q, p1), relative_entropy(q, p2), 1e-9))
        << "i=" << i;
  }
}

}  // namespace
