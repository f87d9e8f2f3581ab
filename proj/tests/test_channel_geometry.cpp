#include <cmath>

#include <gtest/gtest.h>

#include "fdsec/channel_geometry.hpp"
#include "fdsec/montecarlo.hpp"

using namespace fdsec;

TEST(Normalize, IdentityWhenGainAndNoiseAreOne) {
  const auto n = normalize(RawLinkParams{1.0, 10.0, 5.0, 0.2, 1.0, 1.0}, 3.0, 7.0);
  EXPECT_DOUBLE_EQ(n.p_t, 10.0);
  EXPECT_DOUBLE_EQ(n.p_j, 5.0);
  EXPECT_DOUBLE_EQ(n.rho, 0.2);
  EXPECT_DOUBLE_EQ(n.a, 3.0);
  EXPECT_DOUBLE_EQ(n.b, 7.0);
}

TEST(Normalize, RhoScalesByInverseGain) {
  const auto n = normalize(RawLinkParams{0.01, 1.0, 0.0, 0.001, 1.0, 1.0}, 1.0, 1.0);
  EXPECT_NEAR(n.rho, 0.1, 1e-15);
}

TEST(Normalize, TransmitPowerArithmetic) {
  const auto n = normalize(RawLinkParams{2.0, 8.0, 0.0, 0.0, 4.0, 1.0}, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(n.p_t, 4.0);
}

TEST(Normalize, RejectsNonPositiveGainOrNoise) {
  EXPECT_THROW(normalize(RawLinkParams{0.0, 1.0, 0.0, 0.0, 1.0, 1.0}, 1.0, 1.0), InvalidParameter);
  EXPECT_THROW(normalize(RawLinkParams{1.0, 1.0, 0.0, 0.0, 0.0, 1.0}, 1.0, 1.0), InvalidParameter);
  EXPECT_THROW(normalize(RawLinkParams{1.0, 1.0, 0.0, 0.0, 1.0, -2.0}, 1.0, 1.0), InvalidParameter);
}

TEST(Normalize, RoundTripRecoversRawInputs) {
  auto s = sample_stream(7, 0);
  for (int i = 0; i < 1000; ++i) {
    const RawLinkParams raw{std::exp(4 * s.uniform() - 2), std::exp(6 * s.uniform()), std::exp(6 * s.uniform() - 3),
                            std::exp(-6 * s.uniform()), std::exp(4 * s.uniform() - 2), std::exp(4 * s.uniform() - 2)};
    const double ap = std::exp(4 * s.uniform() - 2), bp = std::exp(4 * s.uniform() - 2);
    const auto back = denormalize(normalize(raw, ap, bp), raw.g_prime, raw.noise_b, raw.noise_e);
    EXPECT_NEAR(back.raw.pt_prime / raw.pt_prime, 1.0, 1e-12);
    EXPECT_NEAR(back.raw.pj_prime / raw.pj_prime, 1.0, 1e-12);
    EXPECT_NEAR(back.raw.rho_prime / raw.rho_prime, 1.0, 1e-12);
    EXPECT_NEAR(back.a_prime / ap, 1.0, 1e-12);
    EXPECT_NEAR(back.b_prime / bp, 1.0, 1e-12);
  }
}

TEST(SystemParams, Validation) {
  SystemParams p;
  EXPECT_NO_THROW(p.validate());
  p.alpha = 1.5;
  EXPECT_THROW(p.validate(), InvalidParameter);
  p = SystemParams{};
  p.p_t = 0.0;
  EXPECT_THROW(p.validate(), InvalidParameter);
  p = SystemParams{};
  p.delta = 0.0;
  EXPECT_THROW(p.validate(), InvalidParameter);
  p = SystemParams{};
  p.p_j = kInf;
  EXPECT_NO_THROW(p.validate());
}

TEST(Gains, Midpoint) {
  const auto g = gains({0.0, 0.0}, 2.0);
  EXPECT_DOUBLE_EQ(g.d_a, 0.5);
  EXPECT_DOUBLE_EQ(g.d_b, 0.5);
  EXPECT_DOUBLE_EQ(g.a, 4.0);
  EXPECT_DOUBLE_EQ(g.b, 4.0);
}

TEST(Gains, WorstLocationForDeltaTenth) {
  const auto g = gains({-0.6, 0.0}, 2.0);
  EXPECT_NEAR(g.a, 100.0, 1e-10);
  EXPECT_NEAR(g.b, 1.0 / 1.21, 1e-12);
}

TEST(Gains, AtBobIsInfinite) {
  for (double alpha : {2.0, 3.0, 4.5}) {
    const auto g = gains({0.5, 0.0}, alpha);
    EXPECT_TRUE(std::isinf(g.b));
    EXPECT_DOUBLE_EQ(g.a, 1.0);
  }
}

TEST(Gains, Symmetries) {
  auto s = sample_stream(3, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = 4 * s.uniform() - 2, y = 4 * s.uniform() - 2, alpha = 2 + 2 * s.uniform();
    const auto g = gains({x, y}, alpha);
    const auto gy = gains({x, -y}, alpha);
    const auto gx = gains({-x, y}, alpha);
    EXPECT_EQ(g.a, gy.a);
    EXPECT_EQ(g.b, gy.b);
    EXPECT_EQ(g.a, gx.b);
    EXPECT_EQ(g.b, gx.a);
  }
}

TEST(Regions, Examples) {
  EXPECT_EQ(region_classify(0.5, 0.5, 0.1), Region::R1);
  EXPECT_EQ(region_classify(4.0, 4.0, 0.01), Region::R2);
  EXPECT_EQ(region_classify(2.0, 0.01, 0.1), Region::R4);
  EXPECT_EQ(region_classify(0.5, 0.01, 0.1), Region::R3);
}

TEST(Regions, BoundaryGoesToR3OrR4) {
  EXPECT_EQ(region_classify(0.5, 0.05, 0.1), Region::R3);
  EXPECT_EQ(region_classify(2.0, 0.2, 0.1), Region::R4);
}

TEST(Regions, NoR3FromGeometryWhenRhoSmall) {
  for (double alpha : {2.0, 3.0}) {
    const double rho = std::pow(2.0, -alpha);
    for (int i = 0; i <= 400; ++i)
      for (int j = 0; j <= 400; ++j) {
        const auto g = gains({-2.0 + 0.01 * i, -2.0 + 0.01 * j}, alpha);
        ASSERT_NE(region_classify(g, rho), Region::R3);
        ASSERT_NE(region_classify(g, rho * 0.5), Region::R3);
      }
  }
}

TEST(RhoDisk, HalfPlaneAtOne) {
  const auto d = rho_disk(1.0, 2.0);
  EXPECT_EQ(d.side, DiskSide::HalfPlane);
  EXPECT_TRUE(d.contains(0.1, 3.0));
  EXPECT_FALSE(d.contains(-0.1, 0.0));
}

TEST(RhoDisk, ShrinksToAliceAsRhoVanishes) {
  const auto d = rho_disk(1e-12, 2.0);
  EXPECT_NEAR(d.x0, 0.5, 1e-10);
  EXPECT_NEAR(d.r, 0.0, 1e-5);
  const auto z = rho_disk(0.0, 2.0);
  EXPECT_EQ(z.x0, 0.5);
  EXPECT_EQ(z.r, 0.0);
}

TEST(RhoDisk, QuarterExample) {
  const auto d = rho_disk(0.25, 2.0);
  EXPECT_NEAR(d.x0, 5.0 / 6.0, 1e-15);
  EXPECT_NEAR(d.r, 2.0 / 3.0, 1e-15);
  const auto g = gains({-1.0 / 6.0, 0.0}, 2.0);
  EXPECT_NEAR(rho_margin(g.a, g.b, 0.25), 0.0, 1e-14);
}

TEST(RhoDisk, AgreesWithMarginSign) {
  auto s = sample_stream(11, 0);
  int checked = 0;
  for (int i = 0; i < 100000; ++i) {
    const double x = 6 * s.uniform() - 3, y = 6 * s.uniform() - 3;
    const double rho = std::exp(8 * s.uniform() - 6);
    const double alpha = 2 + 3 * s.uniform();
    const auto g = gains({x, y}, alpha);
    const double m = rho_margin(g.a, g.b, rho);
    if (std::abs(m) <= 1e-12 * std::max(g.b, rho * g.a)) continue;
    ASSERT_EQ(m > 0.0, rho_disk(rho, alpha).contains(x, y)) << x << " " << y << " " << rho << " " << alpha;
    ++checked;
  }
  EXPECT_GT(checked, 99000);
}

TEST(Region4Threshold, Examples) {
  EXPECT_NEAR(region4_containment_threshold(0.1, 2.0), 0.0082644628, 1e-10);
  EXPECT_NEAR(to_db(region4_containment_threshold(0.1, 2.0)), -20.83, 0.01);
  EXPECT_DOUBLE_EQ(region4_containment_threshold(1.0, 2.0), 0.25);
  EXPECT_DOUBLE_EQ(region4_containment_threshold(1.5, 2.0), 1.0);
  EXPECT_THROW(region4_containment_threshold(0.0, 2.0), InvalidParameter);
}

TEST(Region4Threshold, ContainmentHoldsOnGrid) {
  const double delta = 0.1, rho = 0.99 * region4_containment_threshold(delta, 2.0);
  for (int i = 0; i <= 400; ++i)
    for (int j = 0; j <= 400; ++j) {
      const EveLocation loc{-2.0 + 0.01 * i, -2.0 + 0.01 * j};
      const auto g = gains(loc, 2.0);
      if (region_classify(g, rho) == Region::R4) {
        ASSERT_LT(g.d_a, delta);
      }
    }
}

TEST(Decibel, RoundTrip) {
  EXPECT_DOUBLE_EQ(from_db(20.0), 100.0);
  EXPECT_NEAR(to_db(from_db(-13.7)), -13.7, 1e-12);
}
