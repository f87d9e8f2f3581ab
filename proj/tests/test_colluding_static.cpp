#include <cmath>

#include <gtest/gtest.h>

#include "fdsec/colluding_static.hpp"
#include "fdsec/montecarlo.hpp"
#include "fdsec/oracles.hpp"

using namespace fdsec;

namespace {

SystemParams params(double p_t, double p_j, double rho, double alpha = 2.0, double delta = 0.1) {
  SystemParams p;
  p.p_t = p_t;
  p.p_j = p_j;
  p.rho = rho;
  p.alpha = alpha;
  p.delta = delta;
  return p;
}

double log_uniform(SampleStream& s, double lo, double hi) {
  return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * s.uniform());
}

}  // namespace

TEST(Snr, Examples) {
  EXPECT_DOUBLE_EQ(snr_ab(100.0, 0.0, 1e6), 100.0);
  EXPECT_DOUBLE_EQ(snr_ab(100.0, 0.01, 100.0), 50.0);
  EXPECT_DOUBLE_EQ(snr_ab(100.0, 0.1, kInf), 0.0);
  EXPECT_DOUBLE_EQ(snr_ae(4.0, 1.0, 100.0, 0.0), 400.0);
  EXPECT_DOUBLE_EQ(snr_ae(4.0, 1.0, 100.0, 3.0), 100.0);
  EXPECT_DOUBLE_EQ(snr_ae(4.0, kInf, 100.0, 1.0), 0.0);
  EXPECT_TRUE(std::isinf(snr_ae(kInf, 1.0, 100.0, 1.0)));
}

TEST(Secrecy, NoJammingNoSecrecyNearAlice) {
  const auto g = gains({0.0, 0.0}, 2.0);
  EXPECT_EQ(secrecy_ab(g, params(100.0, 0.0, 0.01)), 0.0);
}

TEST(Secrecy, EveFarAway) {
  const auto g = make_gains(1e-12, 1e-12);
  EXPECT_NEAR(secrecy_ab(g, params(100.0, 0.0, 0.0)), std::log2(101.0), 1e-9);
}

TEST(Secrecy, EveAtAliceIsZero) {
  const auto g = gains({-0.5, 0.0}, 2.0);
  EXPECT_EQ(secrecy_ab(g, params(100.0, 1e6, 0.01)), 0.0);
}

TEST(Secrecy, EveAtBobWithJamming) {
  const auto g = gains({0.5, 0.0}, 2.0);
  EXPECT_NEAR(secrecy_ab(g, params(100.0, 100.0, 0.01)), std::log2(51.0), 1e-12);
}

TEST(Secrecy, DirectRecomputation) {
  const auto g = make_gains(100.0, 1.0 / 1.21);
  const auto p = params(1e6, 1000.0, 0.005);
  const double legit = 1e6 / (1.0 + 0.005 * 1000.0);
  const double eve = 100.0 * 1e6 / (1.0 + 1000.0 / 1.21);
  EXPECT_NEAR(secrecy_ab(g, p), std::log2(1.0 + legit) - std::log2(1.0 + eve), 1e-12);
}

TEST(Positivity, EquivalentToPositiveSecrecy) {
  auto s = sample_stream(21, 0);
  for (int i = 0; i < 100000; ++i) {
    const auto g = make_gains(log_uniform(s, 1e-3, 1e3), log_uniform(s, 1e-3, 1e3));
    const auto p = params(log_uniform(s, 1e-2, 1e6), s.uniform() < 0.05 ? 0.0 : log_uniform(s, 1e-3, 1e7),
                          log_uniform(s, 1e-5, 10.0));
    const double lambda = snr_ratio(g, p);
    if (std::abs(lambda - 1.0) < 1e-9) continue;
    ASSERT_EQ(positivity(g, p), secrecy_ab(g, p) > 0.0) << g.a << " " << g.b << " " << p.rho << " " << p.p_j;
    ASSERT_EQ(positivity(g, p), lambda > 1.0);
  }
}

TEST(ZeroRegion, MatchesZeroSecrecyOnGrid) {
  const auto p = params(100.0, jam_auto(100.0, 0.1), 0.1);
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      const auto g = gains({-2.0 + 0.02 * i, -2.0 + 0.02 * j}, 2.0);
      if (!std::isfinite(g.a) || !std::isfinite(g.b)) continue;
      ASSERT_EQ(zero_region_predicate(g, p), secrecy_ab(g, p) == 0.0);
    }
}

TEST(ZeroRegion, Preconditions) {
  const auto g = make_gains(2.0, 1.0);
  EXPECT_THROW(zero_region_predicate(g, params(100.0, 10.0, 0.3)), UnsupportedRegime);
  EXPECT_THROW(zero_region_predicate(g, params(100.0, 0.0, 0.1)), UnsupportedRegime);
}

TEST(OptJam, WorkedExample) {
  const auto r = opt_jam(make_gains(4.0, 1.0), 0.01, 100.0);
  EXPECT_EQ(r.region, Region::R2);
  ASSERT_TRUE(r.gamma && r.beta);
  EXPECT_NEAR(*r.gamma, 3.125, 1e-12);
  EXPECT_NEAR(*r.beta, 41665.625, 1e-6);
  EXPECT_NEAR(r.p_j_opt, 207.27, 0.01);
  const auto brute = oracle::opt_jam_bruteforce(make_gains(4.0, 1.0), 0.01, 100.0);
  EXPECT_NEAR(r.p_j_opt / brute.x, 1.0, 1e-6);
}

TEST(OptJam, R3GivesZero) {
  const auto r = opt_jam(make_gains(0.5, 0.01), 0.1, 100.0);
  EXPECT_EQ(r.region, Region::R3);
  EXPECT_EQ(r.p_j_opt, 0.0);
}

TEST(OptJam, R4IsIndifferent) {
  const auto r = opt_jam(make_gains(2.0, 0.01), 0.1, 100.0);
  EXPECT_TRUE(r.indifferent);
  for (double pj : {0.0, 1.0, 1e3, 1e9}) EXPECT_EQ(secrecy_ab(make_gains(2.0, 0.01), params(100.0, pj, 0.1)), 0.0);
}

TEST(OptJam, SmallRhoLimit) {
  const double a = 2.0, b = 0.5, rho = 1e-10, p_t = 10.0;
  const auto r = opt_jam(make_gains(a, b), rho, p_t);
  EXPECT_NEAR(r.p_j_opt / std::sqrt(a * (1.0 + p_t) / (rho * b)), 1.0, 1e-3);
}

TEST(OptJam, Errors) {
  EXPECT_THROW(opt_jam(make_gains(2.0, 1.0), 0.0, 100.0), UnboundedOptimum);
  EXPECT_THROW(opt_jam(gains({0.5, 0.0}, 2.0), 0.1, 100.0), InvalidParameter);
  EXPECT_THROW(opt_jam(make_gains(2.0, 1.0), 0.1, 0.0), InvalidParameter);
}

TEST(OptJam, AgreesWithBruteForce) {
  auto s = sample_stream(5, 0);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const auto g = make_gains(log_uniform(s, 1e-2, 1e2), log_uniform(s, 1e-2, 1e2));
    const double rho = log_uniform(s, 1e-4, 10.0), p_t = log_uniform(s, 1e-2, 1e6);
    const auto r = opt_jam(g, rho, p_t);
    if (r.indifferent || r.p_j_opt > 1e9) continue;
    const auto brute = oracle::opt_jam_bruteforce(g, rho, p_t);
    const double s_closed = secrecy_ab(g, params(p_t, r.p_j_opt, rho));
    ASSERT_GE(s_closed, brute.value * (1.0 - 1e-9) - 1e-12) << g.a << " " << g.b << " " << rho << " " << p_t;
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(OptJam, DerivativeSignMatchesQuadratic) {
  auto s = sample_stream(6, 0);
  int checked = 0;
  for (int i = 0; i < 5000; ++i) {
    const double a = log_uniform(s, 1e-2, 1e2), b = log_uniform(s, 1e-2, 1e2), rho = log_uniform(s, 1e-4, 1.0),
                 p_t = log_uniform(s, 1e-1, 1e4), p_j = log_uniform(s, 1e-3, 1e6);
    const auto g = make_gains(a, b);
    auto f = [&](double x) { return secrecy_ab(g, params(p_t, x, rho)); };
    if (f(p_j * (1 - 1e-4)) <= 0.0 || f(p_j * (1 + 1e-4)) <= 0.0) continue;
    const double num = jam_coefficients(a, b, rho, p_t).numerator(p_j);
    const double scale = jam_coefficients(a, b, rho, p_t).c0 + jam_coefficients(a, b, rho, p_t).c2 * p_j * p_j;
    if (std::abs(num) < 1e-3 * scale) continue;
    const double fd = oracle::central_difference(f, p_j, 1e-6 * p_j);
    ASSERT_EQ(fd > 0.0, num > 0.0) << a << " " << b << " " << rho << " " << p_t << " " << p_j;
    ++checked;
  }
  EXPECT_GT(checked, 1000);
}

TEST(OptJam, RatioLimits) {
  {
    const double a = 2.0, b = 0.5, rho = 1e-8, p_t = 1e-6;
    const auto r = opt_jam(make_gains(a, b), rho, p_t);
    const double lambda = snr_ratio(make_gains(a, b), params(p_t, r.p_j_opt, rho));
    EXPECT_NEAR(lambda / std::sqrt(b / (rho * a)), 1.0, 1e-2);
  }
  {
    const double a = 2.0, b = 0.5, rho = 0.01, p_t = 1e12;
    const auto r = opt_jam(make_gains(a, b), rho, p_t);
    const double lambda = snr_ratio(make_gains(a, b), params(p_t, r.p_j_opt, rho));
    EXPECT_NEAR(lambda / (b / (rho * a)), 1.0, 1e-2);
  }
}

TEST(OptJam, BetaNonIncreasingInB) {
  auto s = sample_stream(8, 0);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const double a = log_uniform(s, 1.0, 1e2), rho = log_uniform(s, 1e-4, 0.5), p_t = log_uniform(s, 1e-2, 1e6);
    const double b = rho * a * (1.0 + log_uniform(s, 1e-2, 1e2));
    const double h = 1e-6 * b;
    const auto hi = jam_beta(a, b + h, rho, p_t), lo = jam_beta(a, b - h, rho, p_t);
    ASSERT_TRUE(hi && lo);
    ASSERT_LE(*hi, *lo * (1.0 + 1e-12)) << a << " " << b << " " << rho << " " << p_t;
    ++checked;
  }
  EXPECT_EQ(checked, 10000);
}

TEST(OptJam, NonIncreasingAlongRayLeftOfAlice) {
  const double rho = 0.005, p_t = 100.0;
  double prev = kInf;
  for (int k = 0; k <= 290; ++k) {
    const double d_a = 0.1 + 0.01 * k;
    const auto r = opt_jam(gains({-0.5 - d_a, 0.0}, 2.0), rho, p_t);
    ASSERT_LE(r.p_j_opt, prev * (1.0 + 1e-12)) << d_a;
    prev = r.p_j_opt;
  }
}

TEST(WorstLocation, Examples) {
  const auto p = params(1e4, jam_auto(1e4, 0.005), 0.005, 2.0, 0.1);
  const auto loc = worst_location(p);
  EXPECT_NEAR(loc.x, -0.6, 1e-15);
  EXPECT_EQ(loc.y, 0.0);
}

TEST(WorstLocation, Errors) {
  EXPECT_THROW(worst_location(params(1e4, 1e3, 0.005, 2.0, 1.5)), UnsupportedRegime);
  EXPECT_THROW(worst_location(params(1e4, 1e3, 0.01, 2.0, 0.1)), UnsupportedRegime);
  EXPECT_THROW(worst_location(params(1e4, 1.0, 0.005, 2.0, 0.1)), UnsupportedRegime);
}

TEST(WorstLocation, IsGridMinimumOutsideExclusion) {
  const auto p = params(1e4, jam_auto(1e4, 0.005), 0.005, 2.0, 0.1);
  const auto worst = worst_location(p);
  const double s_worst = secrecy_ab(gains(worst, p.alpha), p);
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      const EveLocation loc{-2.0 + 0.02 * i, -2.0 + 0.02 * j};
      const auto g = gains(loc, p.alpha);
      if (g.d_a < p.delta) continue;
      ASSERT_GE(secrecy_ab(g, p), s_worst - 1e-12) << loc.x << " " << loc.y;
    }
}
