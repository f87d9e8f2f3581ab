#pragma once

// Acceptance criteria as runnable checks.  Shared by `fdsec verify` and the
// acceptance test binary.  Tolerances are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fdsec/channel_geometry.hpp"
#include "fdsec/colluding_fading.hpp"
#include "fdsec/colluding_static.hpp"
#include "fdsec/field.hpp"
#include "fdsec/montecarlo.hpp"
#include "fdsec/oracles.hpp"
#include "fdsec/pairwise_fading.hpp"
#include "fdsec/pairwise_static.hpp"

namespace fdsec {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double elapsed_ms = 0.0;
  double budget_ms = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

namespace detail {

/// Reproducible random parameters for the suites.
class ParamRng {
public:
  ParamRng(std::uint64_t seed, std::uint64_t stream) : s_(sample_stream(seed, 0, stream)) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * s_.uniform(); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  double exponential() { return s_.exponential(); }

private:
  SampleStream s_;
};

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

/// |estimate - p| <= 3 sigma with sigma the binomial standard error at p.
inline bool within_3sigma(const Estimate& e, double p) {
  const double sigma = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(e.n));
  return std::abs(e.mean - p) <= 3.0 * sigma;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline CriterionResult check_region4_threshold(const VerifyOptions&) {
  CriterionResult r{"region4-threshold", false, "", 0, 1.0};
  const double v = region4_containment_threshold(0.1, 2.0);
  const double db = to_db(v);
  r.passed = std::abs(v - 0.008264) <= 5e-7 && std::round(db * 10.0) / 10.0 == -20.8 &&
             std::round(db) == -21.0;
  r.detail = "threshold " + detail::fmt("%.6f", v) + " = " + detail::fmt("%.2f", db) + " dB";
  return r;
}

inline CriterionResult check_opt_jam(const VerifyOptions& o) {
  CriterionResult r{"opt-jam-vs-oracle", false, "", 0, 60000.0};
  detail::ParamRng rng(o.seed, 101);
  int counts[4] = {0, 0, 0, 0};
  int done = 0, bad = 0, skipped_r4 = 0, skipped_cap = 0;
  double worst_rel = 0.0, worst_bits = 0.0;
  while (done < 10000) {
    const LinkGains g = make_gains(rng.log_uniform(1e-2, 1e2), rng.log_uniform(1e-2, 1e2));
    const double rho = rng.log_uniform(1e-4, 10.0);
    const double p_t = rng.log_uniform(1e-2, 1e6);
    const Region reg = region_classify(g, rho);
    if (reg == Region::R4) {
      ++skipped_r4;
      continue;
    }
    const auto res = opt_jam(g, rho, p_t);
    if (res.p_j_opt > 1e9) {  // outside the oracle's search interval
      ++skipped_cap;
      continue;
    }
    const auto ref = oracle::opt_jam_bruteforce(g, rho, p_t);
    SystemParams p;
    p.p_t = p_t;
    p.rho = rho;
    p.p_j = res.p_j_opt;
    const double s_closed = secrecy_ab(g, p);
    const double rel = std::abs(res.p_j_opt - ref.x) / std::max(std::abs(ref.x), 1e-300);
    const double bits = std::abs(s_closed - ref.value);
    const bool ok = (ref.x == res.p_j_opt) || rel <= 1e-6 || bits <= 1e-10;
    if (!ok) {
      ++bad;
      worst_rel = std::max(worst_rel, rel);
      worst_bits = std::max(worst_bits, bits);
    }
    ++counts[region_index(reg) - 1];
    ++done;
  }
  r.passed = bad == 0 && counts[0] > 0 && counts[1] > 0 && counts[2] > 0;
  std::ostringstream d;
  d << done << " instances (R1 " << counts[0] << ", R2 " << counts[1] << ", R3 " << counts[2] << "), " << bad
    << " mismatches; skipped " << skipped_r4 << " in R4, " << skipped_cap << " with P_J,opt > 1e9";
  if (bad) d << "; worst rel " << worst_rel << ", worst bits " << worst_bits;
  r.detail = d.str();
  return r;
}

inline CriterionResult check_worst_location(const VerifyOptions& o) {
  CriterionResult r{"worst-location-grid", false, "", 0, 4 * 30000.0};
  struct Regime {
    double delta, alpha, rho, p_t;
  };
  const Regime regimes[] = {{0.1, 2.0, 0.005, 1e4}, {0.25, 3.0, 0.005, 1e4}, {0.5, 2.0, 0.05, 1e3}, {1.0, 2.0, 0.2, 1e2}};
  bool all = true;
  std::ostringstream d;
  for (const auto& q : regimes) {
    SystemParams p;
    p.delta = q.delta;
    p.alpha = q.alpha;
    p.rho = q.rho;
    p.p_t = q.p_t;
    p.p_j = jam_auto(q.p_t, q.rho);
    const EveLocation loc = worst_location(p);
    FieldRequest fr;
    fr.params = p;
    fr.mc.threads = o.threads;
    const auto field = compute_field(fr);
    const auto m = grid_extremum(field, false, [&](double x, double y) { return std::hypot(x + 0.5, y) >= q.delta - 1e-9; });
    const double tol = fr.grid.step + 1e-9;
    const bool ok = m && std::abs(m->x - loc.x) <= tol && std::abs(m->y - loc.y) <= tol;
    all = all && ok;
    d << "delta " << q.delta << ": argmin (" << (m ? m->x : NAN) << ", " << (m ? m->y : NAN) << ") vs (" << loc.x
      << ", 0)" << (ok ? "" : " MISS") << "; ";
  }
  r.passed = all;
  r.detail = d.str();
  return r;
}

inline CriterionResult check_colluding_fading(const VerifyOptions& o) {
  CriterionResult r{"colluding-fading-closed-form", false, "", 0, 120000.0};
  detail::ParamRng rng(o.seed, 102);
  int bad = 0;
  double worst_z = 0.0;
  for (int k = 0; k < 100; ++k) {
    const EveLocation loc{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const LinkGains g = gains(loc, 2.0);
    SystemParams p;
    p.rho = rng.log_uniform(1e-3, 1.0);
    p.p_t = rng.log_uniform(1.0, 1e6);
    p.p_j = rng.log_uniform(1e-2, 1e6);
    const double at = rng.exponential();
    const double bt = rng.exponential();
    const double closed = cond_prob_zero(g, p, at, bt);
    MCConfig mc{o.seed, 1000000, std::uint64_t{1} << 16, o.threads};
    const auto est = oracle::mc_zero_prob_colluding(g, p, at, bt, mc, 1000 + k);
    const double sigma = std::sqrt(closed * (1.0 - closed) / 1e6);
    if (sigma > 0) worst_z = std::max(worst_z, std::abs(est.mean - closed) / sigma);
    if (!detail::within_3sigma(est, closed)) ++bad;
  }
  r.passed = bad == 0;
  r.detail = "100 sets x 1e6 samples, " + std::to_string(bad) + " outside 3 sigma, max |z| " + detail::fmt("%.2f", worst_z);
  return r;
}

inline CriterionResult check_headline_bound(const VerifyOptions&) {
  CriterionResult r{"decreasing-prob-headline", false, "", 0, 1.0};
  const LinkGains g = gains(EveLocation{-0.6, 0.0}, 2.0);
  const auto v = decreasing_prob_lower_bound_eta(g.a, 1.01);
  const double analytic = std::exp(-100.0) * (101.0 - 100.0 * std::exp(-1.0));
  const bool in_band = v.complement >= 2.1e-42 && v.complement <= 2.5e-42;
  const bool matches = std::abs(v.complement - analytic) <= 1e-12 * analytic;
  r.passed = in_band && matches && v.value == 1.0;
  r.detail = "1 - P = " + detail::fmt("%.6e", v.complement) + " (analytic " + detail::fmt("%.6e", analytic) + ")";
  return r;
}

inline CriterionResult check_worst_location_prob_zero(const VerifyOptions& o) {
  CriterionResult r{"worst-location-prob-zero", false, "", 0, 120000.0};
  const LinkGains g = gains(EveLocation{-0.6, 0.0}, 2.0);
  SystemParams p;
  p.delta = 0.1;
  p.rho = g.b / (1.01 * g.a);
  p.p_t = 1e6;
  bool all = true;
  std::ostringstream d;
  for (double db : {40.0, 50.0, 60.0}) {
    p.p_j = from_db(db);
    MCConfig mc{o.seed, 100000, std::uint64_t{1} << 16, o.threads};
    const auto u = uncond_prob_zero(g, p, mc);
    const bool ok = std::abs(u.prob.mean - 0.5) <= 0.05 && u.prob.mean < u.upper.mean;
    all = all && ok;
    d << db << " dB: " << detail::fmt("%.4f", u.prob.mean) << " (upper " << detail::fmt("%.4f", u.upper.mean) << "); ";
  }
  r.passed = all;
  r.detail = d.str();
  return r;
}

inline CriterionResult check_cdf_bound(const VerifyOptions& o) {
  CriterionResult r{"cdf-lower-bound", false, "", 0, 180000.0};
  const LinkGains g = gains(EveLocation{-0.6, 0.0}, 2.0);
  SystemParams p;
  p.rho = 0.01;
  p.p_t = 1e6;
  std::vector<double> grid;
  for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
  int violations = 0, checks = 0;
  auto run = [&](double p_j, std::uint64_t stream) {
    p.p_j = p_j;
    MCConfig mc{o.seed, 1000000, std::uint64_t{1} << 16, o.threads};
    const auto values = sample_values(
        [&](SampleStream& s) {
          const double at = s.exponential();
          const double bt = s.exponential();
          return cond_prob_zero(g, p, at, bt);
        },
        mc, stream);
    return ecdf(values, grid);
  };
  std::uint64_t stream = 300;
  for (double db : {20.0, 30.0, 40.0}) {
    const auto cdf = run(from_db(db), stream++);
    for (const auto& c : cdf) {
      ++checks;
      // sigma at the bound value: an empty tail of 1e6 draws cannot refute a 1e-6 bound.
      const double lb = cdf_lower_bound(c.x, g.a, g.b, p.rho, from_db(db));
      const double sigma = std::max(c.std_error, std::sqrt(lb * (1.0 - lb) / 1e6));
      if (c.cdf < lb - 3.0 * sigma) ++violations;
    }
  }
  int exact_bad = 0;
  double worst_z = 0.0;
  const auto cdf_inf = run(kInf, stream++);
  for (const auto& c : cdf_inf) {
    const double exact = cdf_lower_bound(c.x, g.a, g.b, p.rho, kInf);
    const double sigma = std::sqrt(exact * (1.0 - exact) / 1e6);
    worst_z = std::max(worst_z, std::abs(c.cdf - exact) / sigma);
    if (std::abs(c.cdf - exact) > 3.0 * sigma) ++exact_bad;
  }
  r.passed = violations == 0 && exact_bad == 0;
  r.detail = std::to_string(violations) + "/" + std::to_string(checks) + " domination violations; P_J=inf: " +
             std::to_string(exact_bad) + "/19 outside 3 sigma (max |z| " + detail::fmt("%.2f", worst_z) + ")";
  return r;
}

inline CriterionResult check_pairwise_nojam(const VerifyOptions& o) {
  CriterionResult r{"pairwise-nojam", false, "", 0, 60000.0};
  SystemParams p;
  p.p_j = 0.0;
  p.p_t = 10.0;
  bool all = true;
  std::ostringstream d;
  std::uint64_t stream = 400;
  for (double alpha : {2.0, 3.0}) {
    for (EveLocation loc : {EveLocation{0.0, 0.0}, EveLocation{-0.5, 0.0}, EveLocation{0.5, 0.0}}) {
      const LinkGains g = gains(loc, alpha);
      const double closed = prob_zero_nojam(g);
      const double expected = loc.x == 0.0 ? 1.0 / (1.0 + std::pow(0.5, alpha - 1.0)) : 0.5;
      MCConfig mc{o.seed, 1000000, std::uint64_t{1} << 16, o.threads};
      const auto est = estimate(
          [&](SampleStream& s) { return secrecy_pair_fading(g, p, draw_pair(s)).s == 0.0 ? 1.0 : 0.0; }, mc, stream++);
      const bool ok = std::abs(closed - expected) <= 1e-15 && detail::within_3sigma(est, closed);
      all = all && ok;
      d << "alpha " << alpha << " (" << loc.x << ",0): " << detail::fmt("%.4f", closed) << " MC "
        << detail::fmt("%.4f", est.mean) << (ok ? "" : " FAIL") << "; ";
    }
  }
  r.passed = all;
  r.detail = d.str();
  return r;
}

inline CriterionResult check_pairwise_fading(const VerifyOptions& o) {
  CriterionResult r{"pairwise-fading-closed-form", false, "", 0, 300000.0};
  detail::ParamRng rng(o.seed, 103);
  int quad_bad = 0, mc_bad = 0, near_gate = 0, zero_cases = 0;
  double worst_quad = 0.0, worst_z = 0.0;
  for (int k = 0; k < 200; ++k) {
    EveLocation loc{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const LinkGains g = gains(loc, 2.0);
    SystemParams p;
    p.rho = rng.log_uniform(1e-3, 1.0);
    p.p_t = 1e3;
    double at = rng.exponential(), b1 = rng.exponential(), b2 = rng.exponential();
    if (k % 4 == 3) {
      // Straddle w1 = 0.
      auto star = pj_star(at, b1, b2, p.rho);
      while (!star) {
        at = rng.exponential();
        star = pj_star(at, b1, b2, p.rho);
      }
      p.p_j = *star * (1.0 + rng.uniform(-0.05, 0.05));
      ++near_gate;
    } else {
      p.p_j = k % 10 == 0 ? 0.0 : rng.log_uniform(1e-2, 1e4);
    }
    const double closed = cond_prob_zero_pair(g, p, at, b1, b2);
    if (closed == 0.0) ++zero_cases;
    const double quad = oracle::wedge_probability(g, p, at, b1, b2);
    worst_quad = std::max(worst_quad, std::abs(quad - closed));
    if (std::abs(quad - closed) > 1e-4) ++quad_bad;
    MCConfig mc{o.seed, 1000000, std::uint64_t{1} << 16, o.threads};
    const auto est = oracle::mc_zero_prob_pair(g, p, at, b1, b2, mc, 2000 + k);
    const double sigma = std::sqrt(closed * (1.0 - closed) / 1e6);
    if (sigma > 0) worst_z = std::max(worst_z, std::abs(est.mean - closed) / sigma);
    if (!detail::within_3sigma(est, closed)) ++mc_bad;
  }
  r.passed = quad_bad == 0 && mc_bad == 0;
  std::ostringstream d;
  d << "200 sets (" << near_gate << " straddling w1=0, " << zero_cases << " exactly 0): quadrature max |diff| "
    << worst_quad << ", " << quad_bad << " over 1e-4; MC " << mc_bad << " outside 3 sigma, max |z| "
    << detail::fmt("%.2f", worst_z);
  r.detail = d.str();
  return r;
}

inline CriterionResult check_pj_star_gate(const VerifyOptions& o) {
  CriterionResult r{"pj-star-gate", false, "", 0, 10000.0};
  detail::ParamRng rng(o.seed, 104);
  int done = 0, above_bad = 0, below_bad = 0;
  while (done < 1000) {
    const double at = rng.exponential(), b1 = rng.exponential(), b2 = rng.exponential();
    const double rho = rng.log_uniform(1e-3, 1.0);
    const auto star = pj_star(at, b1, b2, rho);
    if (!star) continue;
    const LinkGains g = gains(EveLocation{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}, 2.0);
    SystemParams p;
    p.rho = rho;
    p.p_j = *star * 1.001;
    if (cond_prob_zero_pair(g, p, at, b1, b2) != 0.0) ++above_bad;
    p.p_j = *star * 0.999;
    if (!(cond_log_prob_zero_pair(g, p, at, b1, b2) > -kInf)) ++below_bad;
    ++done;
  }
  r.passed = above_bad == 0 && below_bad == 0;
  r.detail = "1000 triples: " + std::to_string(above_bad) + " nonzero at 1.001 P_J*, " + std::to_string(below_bad) +
             " zero at 0.999 P_J*";
  return r;
}

struct PolicyTableRow {
  double p_j_db = 0.0;
  double semi_origin = 0.0;
  double semi_worst = 0.0;
  double const_origin = 0.0;
  double const_worst = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double bound = 0.0;
};

/// Zero-secrecy probabilities of the constant and semi-dynamic policies at (0,0)
/// and (-0.6,0) against P_J, next to P1, P2 and pi rho / 4.
inline std::vector<PolicyTableRow> policy_table(double rho, double alpha, const std::vector<double>& p_j_db,
                                                const MCConfig& mc) {
  std::vector<PolicyTableRow> rows;
  const LinkGains origin = gains(EveLocation{0.0, 0.0}, alpha);
  const LinkGains worst = gains(EveLocation{-0.6, 0.0}, alpha);
  const double p1 = p1_bound(rho);
  for (double db : p_j_db) {
    SystemParams p;
    p.rho = rho;
    p.alpha = alpha;
    p.p_j = from_db(db);
    PolicyTableRow row;
    row.p_j_db = db;
    row.semi_origin = policy_prob_zero({JamPolicyKind::SemiDynamic}, origin, p, mc).prob_zero.mean;
    row.semi_worst = policy_prob_zero({JamPolicyKind::SemiDynamic}, worst, p, mc).prob_zero.mean;
    row.const_origin = policy_prob_zero({JamPolicyKind::Constant}, origin, p, mc).prob_zero.mean;
    row.const_worst = policy_prob_zero({JamPolicyKind::Constant}, worst, p, mc).prob_zero.mean;
    row.p1 = p1;
    row.p2 = p2_bound(rho, p.p_j);
    row.bound = pi_rho_over_4(rho);
    rows.push_back(row);
  }
  return rows;
}

inline std::string format_policy_table(const std::vector<PolicyTableRow>& rows) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%8s %12s %12s %12s %12s %12s %12s %12s\n", "P_J[dB]", "semi(0,0)", "semi(-.6,0)",
                "const(0,0)", "const(-.6,0)", "P1", "P2", "pi*rho/4");
  os << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%8.1f %12.5e %12.5e %12.5e %12.5e %12.5e %12.5e %12.5e\n", r.p_j_db, r.semi_origin,
                  r.semi_worst, r.const_origin, r.const_worst, r.p1, r.p2, r.bound);
    os << buf;
  }
  return os.str();
}

inline CriterionResult check_policy_bounds(const VerifyOptions& o) {
  CriterionResult r{"policy-bounds", false, "", 0, 180000.0};
  const std::vector<double> ladder{0.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0};
  bool all = true;
  std::ostringstream d;
  for (double rho : {0.1, 0.01}) {
    MCConfig mc{o.seed, 200000, std::uint64_t{1} << 16, o.threads};
    const auto rows = policy_table(rho, 2.0, ladder, mc);
    bool semi_ok = true, order_ok = true, shrink_ok = true;
    double prev_gap = kInf;
    for (const auto& row : rows) {
      semi_ok = semi_ok && row.semi_origin < row.p1 && row.semi_worst < row.p1;
      order_ok = order_ok && row.p1 < row.p2;
      const double gap = row.p2 - row.p1;
      shrink_ok = shrink_ok && gap < prev_gap;
      prev_gap = gap;
    }
    const bool bound_ok = rows.front().p1 < rows.front().bound;
    const bool limit_ok = prev_gap < 1e-2 * rows.front().p1;
    const bool ok = semi_ok && order_ok && shrink_ok && bound_ok && limit_ok;
    all = all && ok;
    d << "rho " << rho << ": P1 " << detail::fmt("%.5f", rows.front().p1) << " < " << detail::fmt("%.5f", rows.front().bound)
      << ", P2-P1 at 60 dB " << detail::fmt("%.2e", prev_gap) << (ok ? "" : " FAIL") << "\n"
      << format_policy_table(rows);
  }
  r.passed = all;
  r.detail = d.str();
  return r;
}

inline CriterionResult check_near_field(const VerifyOptions& o) {
  CriterionResult r{"near-field-flat", false, "", 0, 30000.0};
  FieldRequest fr;
  fr.mode = LinkMode::Pairwise;
  fr.params.rho = 0.01;
  fr.params.p_t = from_db(60.0);
  fr.params.p_j = jam_auto(fr.params.p_t, fr.params.rho);
  fr.params.delta = 0.1;
  fr.mc.threads = o.threads;
  const auto f = compute_field(fr);
  auto inside = [&](double x, double y) {
    const double da = std::hypot(x + 0.5, y), db = std::hypot(x - 0.5, y);
    return da > 0.1 && da < 1.0 && db > 0.1 && db < 1.0;
  };
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t c = 0; c < f.values.size(); ++c) {
    if (!inside(f.spec.x_of(c), f.spec.y_of(c))) continue;
    sum += f.values[c];
    ++n;
  }
  const auto lo = grid_extremum(f, false, inside);
  const auto hi = grid_extremum(f, true, inside);
  const double mean = sum / static_cast<double>(n);
  const double spread = hi->value - lo->value;
  r.passed = std::abs(mean - 6.64) <= 0.2 && spread <= 0.3;
  const auto nf = near_far_field(fr.params);
  std::ostringstream d;
  d << n << " cells: mean " << detail::fmt("%.4f", mean) << ", max-min " << detail::fmt("%.4f", spread) << " (min "
    << detail::fmt("%.4f", lo->value) << " at (" << lo->x << "," << lo->y << ")); regime margin "
    << detail::fmt("%.3g", nf.margin);
  r.detail = d.str();
  return r;
}

inline CriterionResult check_derivatives(const VerifyOptions& o) {
  CriterionResult r{"x-axis-derivative-suite", false, "", 0, 60000.0};
  std::ostringstream d;

  // (a) Closed form against central differences of S along y = 0.
  int fd_checked = 0, fd_bad = 0;
  double fd_worst = 0.0;
  struct P {
    double p_t, p_j, rho, alpha;
  };
  for (const P& q : {P{1e6, 1e4, 0.01, 2.0}, P{1e4, 1e3, 0.001, 2.0}, P{1e5, 300.0, 0.005, 3.0}, P{100.0, 50.0, 0.01, 2.0}}) {
    SystemParams p;
    p.p_t = q.p_t;
    p.p_j = q.p_j;
    p.rho = q.rho;
    p.alpha = q.alpha;
    auto s = [&](double x) { return secrecy_pair(gains(EveLocation{x, 0.0}, p.alpha), p).s; };
    for (double dd = 0.1; dd <= 2.0 + 1e-12; dd += 0.01) {
      if (std::abs(dd - 0.5) <= 0.05 || std::abs(dd - 1.0) <= 0.05) continue;
      const LinkGains g = gains(EveLocation{dd - 0.5, 0.0}, p.alpha);
      if (!t_form_hypotheses(g, p)) continue;
      const double h = 1e-5 * std::min(dd, std::abs(1.0 - dd));
      if (!t_form_hypotheses(gains(EveLocation{dd - 0.5 - h, 0.0}, p.alpha), p) ||
          !t_form_hypotheses(gains(EveLocation{dd - 0.5 + h, 0.0}, p.alpha), p))
        continue;
      const double closed = deriv_x_axis(dd, p);
      const double fd = oracle::central_difference(s, dd - 0.5, h);
      const double rel = std::abs(closed - fd) / std::abs(fd);
      fd_worst = std::max(fd_worst, rel);
      ++fd_checked;
      if (rel > 1e-4) ++fd_bad;
    }
  }
  d << "FD: " << fd_checked << " points, " << fd_bad << " over 1e-4 (worst " << detail::fmt("%.2e", fd_worst) << "); ";

  // (b) Asymptote near Bob.
  SystemParams pa;
  pa.alpha = 2.0;
  pa.rho = 1e-8;
  pa.p_j = 1e7;
  pa.p_t = 1e8;
  const double x = 0.5 - 1e-3;
  const double asym_ratio = deriv_x_axis(x + 0.5, pa) / x_axis_singularity(x, pa.alpha);
  const bool asym_ok = std::abs(asym_ratio - 1.0) <= 0.05;
  d << "asymptote ratio " << detail::fmt("%.4f", asym_ratio) << "; ";

  // (c) Origin extremum against direct sampling at x = +-1e-3.
  detail::ParamRng rng(o.seed, 105);
  int done = 0, ext_bad = 0, skipped = 0;
  while (done < 1000) {
    SystemParams p;
    p.alpha = rng.uniform(2.0, 4.0);
    p.rho = rng.log_uniform(1e-4, 0.5);
    p.p_t = rng.log_uniform(1.0, 1e6);
    const double gamma0 = (1.0 - std::pow(2.0, -p.alpha)) / (1.0 - p.rho);
    p.p_j = rng.log_uniform(gamma0 * 1.0001, std::max(gamma0 * 10.0, 1e4));
    // Stay 1% away from the switch so the sampled difference is resolvable.
    const double c = std::pow(2.0, p.alpha), pc = p.p_j * c;
    const double pos = p.alpha * (4 * pc * pc * pc + 7 * pc * pc + 4 * pc) + (pc * pc + pc * p.p_t * c + 2 * pc + p.p_t * c + 1);
    const double neg = p.alpha * pc * p.p_t * c;
    if (std::abs(pos - neg) < 1e-2 * (pos + neg)) {
      ++skipped;
      continue;
    }
    const auto cls = origin_extremum(p);
    auto s = [&](double xx) { return secrecy_pair(gains(EveLocation{xx, 0.0}, p.alpha), p).s; };
    const double s0 = s(0.0), sl = s(-1e-3), sr = s(1e-3);
    ExtremumClass sampled = ExtremumClass::Boundary;
    if (sl < s0 && sr < s0) sampled = ExtremumClass::LocalMax;
    if (sl > s0 && sr > s0) sampled = ExtremumClass::LocalMin;
    if (sampled != cls) ++ext_bad;
    ++done;
  }
  d << "origin extremum: " << ext_bad << "/1000 disagree (" << skipped << " near-switch draws skipped)";
  r.passed = fd_bad == 0 && fd_checked > 100 && asym_ok && ext_bad == 0;
  r.detail = d.str();
  return r;
}

inline CriterionResult check_pairwise_cdf_mass(const VerifyOptions& o) {
  CriterionResult r{"pairwise-cdf-mass", false, "", 0, 60000.0};
  const LinkGains g = gains(EveLocation{0.0, 0.0}, 2.0);
  SystemParams p;
  p.rho = 0.1;
  p.p_j = from_db(0.0);
  MCConfig mc{o.seed, 10000, std::uint64_t{1} << 16, o.threads};
  const auto values = sample_values(
      [&](SampleStream& s) {
        const double at = s.exponential(), b1 = s.exponential(), b2 = s.exponential();
        return cond_prob_zero_pair(g, p, at, b1, b2);
      },
      mc, 500);
  const double grid[] = {1e-4};
  const auto c = ecdf(values, grid);
  // ecdf is right-continuous (<=); count strictly below separately.
  std::size_t below = 0;
  for (double v : values) below += v < 1e-4;
  const double frac = static_cast<double>(below) / static_cast<double>(values.size());
  r.passed = frac >= 0.10;
  r.detail = "P{cond prob < 1e-4} = " + detail::fmt("%.4f", frac) + " (ecdf at 1e-4: " + detail::fmt("%.4f", c[0].cdf) + ")";
  return r;
}

struct Criterion {
  const char* name;
  CriterionResult (*run)(const VerifyOptions&);
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"region4-threshold", check_region4_threshold},
      {"opt-jam-vs-oracle", check_opt_jam},
      {"worst-location-grid", check_worst_location},
      {"colluding-fading-closed-form", check_colluding_fading},
      {"decreasing-prob-headline", check_headline_bound},
      {"worst-location-prob-zero", check_worst_location_prob_zero},
      {"cdf-lower-bound", check_cdf_bound},
      {"pairwise-nojam", check_pairwise_nojam},
      {"pairwise-fading-closed-form", check_pairwise_fading},
      {"pj-star-gate", check_pj_star_gate},
      {"policy-bounds", check_policy_bounds},
      {"near-field-flat", check_near_field},
      {"x-axis-derivative-suite", check_derivatives},
      {"pairwise-cdf-mass", check_pairwise_cdf_mass},
  };
  return all;
}

/// Runs one criterion, timing it; a runtime over budget fails the criterion.
inline CriterionResult run_criterion(const Criterion& c, const VerifyOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = c.run(o);
  } catch (const std::exception& e) {
    r.name = c.name;
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  r.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (r.budget_ms > 0.0 && r.elapsed_ms > r.budget_ms) {
    r.passed = false;
    r.detail += " [over time budget]";
  }
  return r;
}

inline std::string format_result(const CriterionResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "[%s] %-30s %10.1f ms (budget %.0f ms)", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.elapsed_ms, r.budget_ms);
  return std::string(buf) + "\n       " + r.detail;
}

}  // namespace fdsec
