#pragma once

// Independent reference computations used by the tests and the verify suite.
// They recompute from the SNR definitions and avoid the closed forms they check.

#include <cmath>
#include <functional>
#include <vector>

#include "fdsec/channel_geometry.hpp"
#include "fdsec/colluding_fading.hpp"
#include "fdsec/colluding_static.hpp"
#include "fdsec/montecarlo.hpp"
#include "fdsec/pairwise_fading.hpp"

namespace fdsec::oracle {

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section maximization of a unimodal f on [lo, hi].
inline Maximum golden_max(const std::function<double(double)>& f, double lo, double hi, double rel_tol = 1e-15) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 400 && (hi - lo) > rel_tol * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? Maximum{x1, f1} : Maximum{x2, f2};
}

/// argmax of secrecy_ab over P_J in [0, 1e9]: 0 plus a 1999-point log grid from 1e-6,
/// then golden-section refinement between the neighbours of the best grid point.
inline Maximum opt_jam_bruteforce(const LinkGains& g, double rho, double p_t) {
  auto s = [&](double pj) {
    SystemParams p;
    p.p_t = p_t;
    p.rho = rho;
    p.p_j = pj;
    return secrecy_ab(g, p);
  };
  std::vector<double> grid;
  grid.reserve(2000);
  grid.push_back(0.0);
  for (int k = 0; k < 1999; ++k) grid.push_back(std::pow(10.0, -6.0 + 15.0 * k / 1998.0));
  std::size_t best = 0;
  double best_v = s(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = s(grid[i]);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  if (best_v <= 0.0) return {0.0, 0.0};
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  Maximum m = golden_max(s, lo, hi);
  if (best_v > m.value) m = {grid[best], best_v};
  return m;
}

/// Central difference of f at x with step h.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Second-order central difference.
inline double second_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// P{both directions have zero secrecy | A~, B1~, B2~} over C~, D~ ~ Exp(1),
/// by quadrature over C~ = x in [0, 40] (trapezoid, step h).  The admissible D~
/// interval comes straight from SNR_AE >= SNR_AB and SNR_BE >= SNR_BA; the
/// inner integral of e^{-y} over it is exact.  Finite gains and P_J only.
inline double wedge_probability(const LinkGains& g, const SystemParams& p, double a_tilde, double b1_tilde,
                                double b2_tilde, double h = 1e-4) {
  const double a = g.a;
  const double b = g.b;
  const double pj = p.p_j;
  const double legit_fwd = a_tilde / (1.0 + p.rho * b1_tilde * pj);  // SNR_AB / P_T
  const double legit_bwd = a_tilde / (1.0 + p.rho * b2_tilde * pj);  // SNR_BA / P_T
  auto inner = [&](double x) {
    // Reverse link: b y / (1 + a x P_J) >= legit_bwd  <=>  y >= legit_bwd (1 + a x P_J) / b.
    const double y_lo = legit_bwd * (1.0 + a * x * pj) / b;
    // Forward link: a x / (1 + b y P_J) >= legit_fwd  <=>  y <= (a x / legit_fwd - 1) / (b P_J).
    double y_hi;
    if (pj == 0.0) {
      y_hi = (a * x >= legit_fwd) ? kInf : -1.0;
    } else {
      y_hi = (a * x / legit_fwd - 1.0) / (b * pj);
    }
    if (!(y_hi > y_lo)) return 0.0;
    return std::exp(-y_lo) - (std::isinf(y_hi) ? 0.0 : std::exp(-y_hi));
  };
  const double x_max = 40.0;
  const auto n = static_cast<long>(std::ceil(x_max / h));
  const double step = x_max / static_cast<double>(n);
  double sum = 0.5 * (inner(0.0) + std::exp(-x_max) * inner(x_max));
  for (long i = 1; i < n; ++i) {
    const double x = step * static_cast<double>(i);
    sum += std::exp(-x) * inner(x);
  }
  return sum * step;
}

/// Monte Carlo over (C~, D~) of 1[secrecy == 0], colluding link, for fixed (A~, B~).
inline Estimate mc_zero_prob_colluding(const LinkGains& g, const SystemParams& p, double a_tilde, double b_tilde,
                                       const MCConfig& mc, std::uint64_t stream = 0) {
  return estimate(
      [&](SampleStream& s) {
        FadingSampleColluding f;
        f.a_tilde = a_tilde;
        f.b_tilde = b_tilde;
        f.c_tilde = s.exponential();
        f.d_tilde = s.exponential();
        return secrecy_ab_fading(g, p, f) == 0.0 ? 1.0 : 0.0;
      },
      mc, stream);
}

/// Monte Carlo over (C~, D~) of 1[both directions have zero secrecy] for fixed (A~, B1~, B2~).
inline Estimate mc_zero_prob_pair(const LinkGains& g, const SystemParams& p, double a_tilde, double b1_tilde,
                                  double b2_tilde, const MCConfig& mc, std::uint64_t stream = 0) {
  return estimate(
      [&](SampleStream& s) {
        FadingSamplePair f;
        f.a_tilde = a_tilde;
        f.b1_tilde = b1_tilde;
        f.b2_tilde = b2_tilde;
        f.c_tilde = s.exponential();
        f.d_tilde = s.exponential();
        return secrecy_pair_fading(g, p, f).s == 0.0 ? 1.0 : 0.0;
      },
      mc, stream);
}

}  // namespace fdsec::oracle
