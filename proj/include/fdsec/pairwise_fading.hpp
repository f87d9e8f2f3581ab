#pragma once

// Dual-phase exchange under Rayleigh fading: zero-secrecy probabilities,
// the dynamic jamming threshold P_J*, jamming policies and the homogeneous
// near-field secrecy.
//
// Fading factors: A~ shared by both directions (reciprocity), B1~/B2~ the
// self-interference at Bob/Alice, C~/D~ the unknown Alice-Eve/Bob-Eve factors.

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "fdsec/channel_geometry.hpp"
#include "fdsec/colluding_static.hpp"
#include "fdsec/errors.hpp"
#include "fdsec/montecarlo.hpp"
#include "fdsec/pairwise_static.hpp"

namespace fdsec {

struct FadingSamplePair {
  double a_tilde = 1.0;
  double b1_tilde = 1.0;
  double b2_tilde = 1.0;
  double c_tilde = 1.0;
  double d_tilde = 1.0;
};

inline FadingSamplePair draw_pair(SampleStream& s) {
  FadingSamplePair f;
  f.a_tilde = s.exponential();
  f.b1_tilde = s.exponential();
  f.b2_tilde = s.exponential();
  f.c_tilde = s.exponential();
  f.d_tilde = s.exponential();
  return f;
}

/// Instantaneous dual-phase secrecy from the faded SNRs.
inline PairSecrecy secrecy_pair_fading(const LinkGains& g, const SystemParams& p, const FadingSamplePair& f) {
  const double snr_fwd = snr_ab(f.a_tilde * p.p_t, p.rho * f.b1_tilde, p.p_j);
  const double snr_bwd = snr_ab(f.a_tilde * p.p_t, p.rho * f.b2_tilde, p.p_j);
  const double eve_fwd = snr_ae(g.a * f.c_tilde, g.b * f.d_tilde, p.p_t, p.p_j);
  const double eve_bwd = snr_ae(g.b * f.d_tilde, g.a * f.c_tilde, p.p_t, p.p_j);
  PairSecrecy out;
  out.s_ab = secrecy_from_snr(snr_fwd, eve_fwd);
  out.s_ba = secrecy_from_snr(snr_bwd, eve_bwd);
  out.s = 0.5 * (out.s_ab + out.s_ba);
  return out;
}

/// Zero secrecy iff C~ - v1 D~ - v2 >= 0 and D~ - u1 C~ - u2 >= 0.
/// The probability of that wedge is K e^{-E} when w1 > 0, with K = w1/w2, E = w3/w1.
struct ZeroSecrecyTermsPair {
  double v1 = 0.0;
  double v2 = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  double c_min = 0.0;
  double k = 0.0;
  double e_exp = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;
  bool open = false;  // w1 > 0 (outside the guard band)
};

/// Finite gains only; see cond_prob_zero_pair for Eve at a node.
inline ZeroSecrecyTermsPair zero_secrecy_terms_pair(const LinkGains& g, const SystemParams& p, double a_tilde,
                                                    double b1_tilde, double b2_tilde) {
  if (!std::isfinite(g.a) || !std::isfinite(g.b)) throw InvalidParameter("wedge terms need finite gains");
  const double a = g.a;
  const double b = g.b;
  const double at = a_tilde;
  ZeroSecrecyTermsPair t;
  if (std::isinf(p.p_j)) {
    // Every w scaled by 1/P_J^2; w3 grows only linearly so E -> 0.
    const double s1 = p.rho * b1_tilde;
    const double s2 = p.rho * b2_tilde;
    t.w1 = a * b * (s1 * s2 - at * at);
    t.w2 = (a * at + b * s2) * (b * at + a * s1);
    t.w3 = 0.0;
    t.v1 = s1 > 0.0 ? b * at / (a * s1) : kInf;
    t.u1 = s2 > 0.0 ? a * at / (b * s2) : kInf;
    t.v2 = s1 > 0.0 ? 0.0 : at / a;
    t.u2 = s2 > 0.0 ? 0.0 : at / b;
  } else {
    const double h1 = 1.0 + p.rho * b1_tilde * p.p_j;
    const double h2 = 1.0 + p.rho * b2_tilde * p.p_j;
    const double ap = at * p.p_j;
    t.w1 = a * b * (h1 * h2 - ap * ap);
    t.w2 = (a * ap + b * h2) * (b * ap + a * h1);
    t.w3 = at * (a * h1 + b * h2 + b * ap + a * ap);
    t.v1 = b * ap / (a * h1);
    t.v2 = at / (a * h1);
    t.u1 = a * ap / (b * h2);
    t.u2 = at / (b * h2);
  }
  const double vu = t.v1 * t.u1;
  t.c_min = (vu < 1.0) ? (t.v2 + t.v1 * t.u2) / (1.0 - vu) : kInf;
  t.open = t.w1 > 1e-30 * t.w2;
  if (t.open) {
    t.k = t.w1 / t.w2;
    t.e_exp = t.w3 / t.w1;
  } else {
    t.k = 0.0;
    t.e_exp = kInf;
  }
  return t;
}

/// ln P{S = 0 | A~, B1~, B2~}; -inf when the probability is exactly zero.
inline double cond_log_prob_zero_pair(const LinkGains& g, const SystemParams& p, double a_tilde, double b1_tilde,
                                      double b2_tilde) {
  const bool node = std::isinf(g.a) || std::isinf(g.b);
  if (node) {
    // Eve on top of a node: any jamming makes her SNR from the other node vanish.
    if (p.p_j > 0.0) return -kInf;
    return -a_tilde * (1.0 / g.a + 1.0 / g.b);
  }
  const auto t = zero_secrecy_terms_pair(g, p, a_tilde, b1_tilde, b2_tilde);
  if (!t.open) return -kInf;
  return std::log(t.w1) - std::log(t.w2) - t.e_exp;
}

/// P{S = 0 | A~, B1~, B2~} = K e^{-E} if w1 > 0, else 0.
inline double cond_prob_zero_pair(const LinkGains& g, const SystemParams& p, double a_tilde, double b1_tilde,
                                  double b2_tilde) {
  return std::exp(cond_log_prob_zero_pair(g, p, a_tilde, b1_tilde, b2_tilde));
}

/// Unconditional P{S = 0} without jamming: 1 / (1 + (a+b)/(ab)).
inline double prob_zero_nojam(const LinkGains& g) { return 1.0 / (1.0 + 1.0 / g.a + 1.0 / g.b); }

/// Unconditional P{S = 0} with Eve at Alice or Bob.
inline double eve_at_node_prob(const SystemParams& p) { return p.p_j > 0.0 ? 0.0 : 0.5; }

/// Smallest P_J at and above which w1 <= 0, i.e. zero secrecy has probability 0 everywhere.
/// Exists iff A~^2 > rho^2 B1~ B2~.
inline std::optional<double> pj_star(double a_tilde, double b1_tilde, double b2_tilde, double rho) {
  if (!(rho >= 0.0)) throw InvalidParameter("rho must be >= 0");
  const double disc = a_tilde * a_tilde - rho * rho * b1_tilde * b2_tilde;
  if (!(disc > 0.0)) return std::nullopt;
  const double s = rho * (b1_tilde + b2_tilde);
  return (s + std::sqrt(s * s + 4.0 * disc)) / (2.0 * disc);
}

namespace detail {

/// Composite Simpson over [0, hi]^2 with n (even) panels per axis.
template <class F>
double simpson_square(F&& f, double hi, int n) {
  const double h = hi / n;
  auto weight = [n](int i) { return (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    double row = 0.0;
    for (int j = 0; j <= n; ++j) row += weight(j) * f(i * h, j * h);
    sum += weight(i) * row;
  }
  return sum * h * h / 9.0;
}

/// E over (u, v) ~ Exp(1)^2 of q(u, v), by u = s^2, v = t^2 to remove the sqrt cusp.
template <class Q>
double exp2_expectation(Q&& q) {
  return simpson_square(
      [&](double s, double t) { return 4.0 * s * t * std::exp(-s * s - t * t) * q(s * s, t * t); }, 6.5, 1200);
}

}  // namespace detail

/// P1 = P{A~^2 <= rho^2 B1~ B2~} = E{1 - e^{-rho sqrt(B1~ B2~)}}.
inline double p1_bound(double rho) {
  if (!(rho >= 0.0)) throw InvalidParameter("rho must be >= 0");
  if (rho == 0.0) return 0.0;
  return detail::exp2_expectation([rho](double u, double v) { return -std::expm1(-rho * std::sqrt(u * v)); });
}

/// P2 = E{1 - e^{-w0}} with w0 = sqrt(rho^2 uv + (1 + rho(u+v) P_J)/P_J^2):
/// probability that w1 > 0 at a constant P_J.
inline double p2_bound(double rho, double p_j) {
  if (!(rho >= 0.0)) throw InvalidParameter("rho must be >= 0");
  if (!(p_j >= 0.0)) throw InvalidParameter("P_J must be >= 0");
  if (p_j == 0.0) return 1.0;
  if (std::isinf(p_j)) return p1_bound(rho);
  return detail::exp2_expectation([rho, p_j](double u, double v) {
    const double w0 = std::sqrt(rho * rho * u * v + (1.0 + rho * (u + v) * p_j) / (p_j * p_j));
    return -std::expm1(-w0);
  });
}

inline double pi_rho_over_4(double rho) { return std::numbers::pi * rho / 4.0; }

enum class JamPolicyKind { Constant, SemiDynamic, FullDynamic, GeneralDynamic };

inline const char* to_string(JamPolicyKind k) {
  switch (k) {
    case JamPolicyKind::Constant: return "constant";
    case JamPolicyKind::SemiDynamic: return "semi-dynamic";
    case JamPolicyKind::FullDynamic: return "full-dynamic";
    case JamPolicyKind::GeneralDynamic: return "general-dynamic";
  }
  return "?";
}

/// Constant: always SystemParams::p_j.  SemiDynamic: P_J* when it exists, else p_j.
/// FullDynamic: transmit only when P_J* exists.  GeneralDynamic: transmit only when
/// the conditional zero-secrecy probability at the chosen location is <= threshold.
struct JamPolicy {
  JamPolicyKind kind = JamPolicyKind::Constant;
  double threshold = 0.1;

  void validate() const {
    if (kind == JamPolicyKind::GeneralDynamic && !(threshold > 0.0 && threshold < 1.0))
      throw InvalidParameter("general-dynamic threshold must lie in (0, 1)");
  }
};

struct PolicyReport {
  JamPolicyKind kind = JamPolicyKind::Constant;
  Estimate prob_zero;                    // P{S = 0} under the policy (given transmission, for the waiting policies)
  std::optional<double> p1;              // semi-dynamic bound
  std::optional<double> p2;              // constant-P_J bound
  double pi_rho_over_4 = 0.0;
  std::optional<Estimate> acceptance;    // waiting policies: probability a fading draw is used
};

inline bool pj_star_exists(const FadingSamplePair& f, double rho) {
  return f.a_tilde * f.a_tilde > rho * rho * f.b1_tilde * f.b2_tilde;
}

/// Evaluates a jamming policy at gains g by Monte Carlo over (A~, B1~, B2~).
inline PolicyReport policy_prob_zero(const JamPolicy& policy, const LinkGains& g, const SystemParams& p,
                                     const MCConfig& mc) {
  policy.validate();
  PolicyReport out;
  out.kind = policy.kind;
  out.pi_rho_over_4 = pi_rho_over_4(p.rho);
  auto draw3 = [](SampleStream& s) {
    FadingSamplePair f;
    f.a_tilde = s.exponential();
    f.b1_tilde = s.exponential();
    f.b2_tilde = s.exponential();
    return f;
  };
  switch (policy.kind) {
    case JamPolicyKind::Constant: {
      out.prob_zero = estimate(
          [&](SampleStream& s) {
            const auto f = draw3(s);
            return cond_prob_zero_pair(g, p, f.a_tilde, f.b1_tilde, f.b2_tilde);
          },
          mc);
      out.p1 = p1_bound(p.rho);
      out.p2 = p2_bound(p.rho, p.p_j);
      break;
    }
    case JamPolicyKind::SemiDynamic: {
      out.prob_zero = estimate(
          [&](SampleStream& s) {
            const auto f = draw3(s);
            if (pj_star_exists(f, p.rho)) return 0.0;
            return cond_prob_zero_pair(g, p, f.a_tilde, f.b1_tilde, f.b2_tilde);
          },
          mc);
      out.p1 = p1_bound(p.rho);
      break;
    }
    case JamPolicyKind::FullDynamic: {
      out.prob_zero = Estimate{0.0, 0.0, mc.n_samples};
      out.acceptance = estimate(
          [&](SampleStream& s) {
            const auto f = draw3(s);
            return pj_star_exists(f, p.rho) ? 1.0 : 0.0;
          },
          mc);
      out.p1 = p1_bound(p.rho);
      break;
    }
    case JamPolicyKind::GeneralDynamic: {
      const auto values = sample_values(
          [&](SampleStream& s) {
            const auto f = draw3(s);
            return cond_prob_zero_pair(g, p, f.a_tilde, f.b1_tilde, f.b2_tilde);
          },
          mc);
      detail::Moments accepted;
      double n_acc = 0.0;
      for (double v : values) {
        if (v <= policy.threshold) {
          accepted.add(v);
          n_acc += 1.0;
        }
      }
      const double n = static_cast<double>(values.size());
      const double frac = n_acc / n;
      out.acceptance = Estimate{frac, std::sqrt(frac * (1.0 - frac) / n), values.size()};
      out.prob_zero = accepted.to_estimate();
      out.p2 = p2_bound(p.rho, p.p_j);
      break;
    }
  }
  return out;
}

/// Location-invariant near-field secrecy log2(A~ / (rho sqrt(B1~ B2~))).
inline double homogeneous_secrecy(double a_tilde, double b1_tilde, double b2_tilde, double rho) {
  if (!(rho > 0.0)) throw InvalidParameter("rho must be > 0");
  return std::log2(a_tilde / (rho * std::sqrt(b1_tilde * b2_tilde)));
}

/// Same, refusing parameters outside the near-field regime in strict mode.
inline double homogeneous_secrecy(const FadingSamplePair& f, const SystemParams& p,
                                  RegimeCheck check = RegimeCheck::Strict) {
  near_far_field(p, check);
  return homogeneous_secrecy(f.a_tilde, f.b1_tilde, f.b2_tilde, p.rho);
}

/// Upper bound on P{homogeneous secrecy <= s}: 2^s rho pi / 4.
inline double homogeneous_tail_bound(double s, double rho) { return std::exp2(s) * pi_rho_over_4(rho); }

}  // namespace fdsec
