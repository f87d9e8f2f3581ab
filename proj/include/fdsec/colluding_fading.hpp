#pragma once

// Zero-secrecy probabilities for the Alice -> Bob link under Rayleigh
// small-scale fading.  A~ (Alice-Bob) and B~ (Bob self-interference) are known
// to the legitimate pair; C~ (Alice-Eve) and D~ (Bob-Eve) are not.

#include <cmath>
#include <optional>

#include "fdsec/channel_geometry.hpp"
#include "fdsec/colluding_static.hpp"
#include "fdsec/montecarlo.hpp"

namespace fdsec {

/// Unit-mean exponential power factors for one realization.
struct FadingSampleColluding {
  double a_tilde = 1.0;
  double b_tilde = 1.0;
  double c_tilde = 1.0;
  double d_tilde = 1.0;
};

inline FadingSampleColluding draw_colluding(SampleStream& s) {
  FadingSampleColluding f;
  f.a_tilde = s.exponential();
  f.b_tilde = s.exponential();
  f.c_tilde = s.exponential();
  f.d_tilde = s.exponential();
  return f;
}

/// Instantaneous secrecy of the faded link, from the SNR definitions.
inline double secrecy_ab_fading(const LinkGains& g, const SystemParams& p, const FadingSampleColluding& f) {
  const double legit = snr_ab(f.a_tilde * p.p_t, p.rho * f.b_tilde, p.p_j);
  const double eve = snr_ae(g.a * f.c_tilde, g.b * f.d_tilde, p.p_t, p.p_j);
  return secrecy_from_snr(legit, eve);
}

/// Secrecy is zero iff C~ - v1 D~ - v2 >= 0.
struct ZeroSecrecyTermsColluding {
  double v1 = 0.0;
  double v2 = 0.0;
};

inline ZeroSecrecyTermsColluding zero_secrecy_terms(const LinkGains& g, const SystemParams& p, double a_tilde,
                                                    double b_tilde) {
  if (std::isinf(g.a) || a_tilde == 0.0) return {0.0, 0.0};
  if (p.p_j == 0.0) return {0.0, a_tilde / g.a};
  const double si = p.rho * b_tilde;
  if (std::isinf(p.p_j)) {
    if (si > 0.0) return {g.b * a_tilde / (g.a * si), 0.0};
    return {kInf, a_tilde / g.a};
  }
  const double denom = g.a * (1.0 + si * p.p_j);
  if (std::isinf(g.b)) return {kInf, a_tilde / denom};
  return {g.b * a_tilde * p.p_j / denom, a_tilde / denom};
}

/// P{S = 0 | A~, B~} = e^{-v2} / (1 + v1).
inline double cond_prob_zero(const LinkGains& g, const SystemParams& p, double a_tilde, double b_tilde) {
  const auto t = zero_secrecy_terms(g, p, a_tilde, b_tilde);
  if (std::isinf(t.v1)) return 0.0;
  return std::exp(-t.v2) / (1.0 + t.v1);
}

/// E{1/(1+v1)} integrand, an upper bound on cond_prob_zero.
inline double cond_prob_zero_upper(const LinkGains& g, const SystemParams& p, double a_tilde, double b_tilde) {
  const auto t = zero_secrecy_terms(g, p, a_tilde, b_tilde);
  if (std::isinf(t.v1)) return 0.0;
  return 1.0 / (1.0 + t.v1);
}

struct UncondProbZero {
  Estimate prob;   // E{e^{-v2}/(1+v1)}
  Estimate upper;  // E{1/(1+v1)} on the same draws
};

/// Monte Carlo over (A~, B~) of the conditional closed form.
inline UncondProbZero uncond_prob_zero(const LinkGains& g, const SystemParams& p, const MCConfig& mc) {
  const auto est = estimate_many<2>(
      [&](SampleStream& s) {
        const double a_t = s.exponential();
        const double b_t = s.exponential();
        return std::array<double, 2>{cond_prob_zero(g, p, a_t, b_t), cond_prob_zero_upper(g, p, a_t, b_t)};
      },
      mc);
  return {est[0], est[1]};
}

enum class JamResponseKind { OptimalInfinite, OptimalFinite, OptimalZero };

struct JamResponseClass {
  JamResponseKind kind = JamResponseKind::OptimalZero;
  double value = 0.0;  // the finite optimum a0 / (-a1), or 0 / inf
  double a0 = 0.0;
  double a1 = 0.0;
};

/// How cond_prob_zero responds to P_J for known (A~, B~).  dP/dP_J has the sign of
/// -(a1 P_J + a0) with a0 = a(b - rho B~), a1 = rho B~ [a(b - rho B~) - b A~].
inline JamResponseClass classify_jam_response(const LinkGains& g, double rho, double a_tilde, double b_tilde) {
  if (!std::isfinite(g.a) || !std::isfinite(g.b)) throw InvalidParameter("classification needs finite gains");
  if (!(rho > 0.0)) throw InvalidParameter("classification needs rho > 0");
  JamResponseClass r;
  r.a0 = g.a * (g.b - rho * b_tilde);
  r.a1 = rho * b_tilde * (r.a0 - g.b * a_tilde);
  // With a0 = 0 the derivative is -a1 P_J >= 0, so zero jamming is optimal.
  if (r.a0 <= 0.0) {
    r.kind = JamResponseKind::OptimalZero;
    r.value = 0.0;
  } else if (r.a1 >= 0.0) {
    r.kind = JamResponseKind::OptimalInfinite;
    r.value = kInf;
  } else {
    r.kind = JamResponseKind::OptimalFinite;
    r.value = r.a0 / -r.a1;
  }
  return r;
}

/// A probability close to one, kept as 1 - complement so the complement survives underflow of 1 - x.
struct NearOneProbability {
  double value = 1.0;
  double complement = 0.0;
  double log_complement = -kInf;
};

/// Lower bound on P{cond_prob_zero decreases in P_J}, parametrized by b/rho = eta a:
/// 1 - [eta e^{-a} - e^{-eta a}] / (eta - 1), evaluated in log space.
inline NearOneProbability decreasing_prob_lower_bound_eta(double a, double eta) {
  if (!(a > 0.0)) throw InvalidParameter("a must be > 0");
  if (!(eta > 0.0)) throw InvalidParameter("eta must be > 0");
  NearOneProbability out;
  if (std::isinf(a)) return out;
  double log_c = 0.0;
  if (std::isinf(eta)) {
    log_c = -a;
  } else if (eta >= 1.0) {
    // e^{-a} [1 + (1 - e^{-(eta-1)a}) / (eta-1)]; eta = 1 is the (1+a) e^{-a} limit.
    const double eps = eta - 1.0;
    const double tail = eps == 0.0 ? a : -std::expm1(-eps * a) / eps;
    log_c = -a + std::log1p(tail);
  } else {
    // e^{-eta a} [(1 - e^{-t}) / (1-eta) + e^{-t}], t = (1-eta) a.
    const double t = (1.0 - eta) * a;
    const double inner = -std::expm1(-t) / (1.0 - eta) + std::exp(-t);
    log_c = -eta * a + std::log(inner);
  }
  out.log_complement = log_c;
  out.complement = std::exp(log_c);
  out.value = -std::expm1(log_c);
  return out;
}

/// Same bound in terms of (a, b, rho): 1 - b/(b-rho a) e^{-a} + rho a/(b-rho a) e^{-b/rho}.
inline NearOneProbability decreasing_prob_lower_bound(double a, double b, double rho) {
  if (!(b > 0.0)) throw InvalidParameter("b must be > 0");
  if (!(rho >= 0.0)) throw InvalidParameter("rho must be >= 0");
  if (std::isinf(a)) return NearOneProbability{};
  const double eta = rho == 0.0 ? kInf : b / (rho * a);
  return decreasing_prob_lower_bound_eta(a, eta);
}

/// Lower bound on P{cond_prob_zero <= p}: e^{-a(1-p)/(b P_J p)} b p / (b p + a rho (1-p)).
/// Exact at P_J = infinity.
inline double cdf_lower_bound(double p, double a, double b, double rho, double p_j) {
  if (!(p > 0.0) || p > 1.0) throw InvalidParameter("p must lie in (0, 1]");
  if (!(p_j > 0.0)) throw InvalidParameter("P_J must be > 0");
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidParameter("gains must be > 0");
  if (p == 1.0) return 1.0;
  if (std::isinf(a)) return 0.0;
  if (std::isinf(b)) return 1.0;
  const double bp = b * p;
  const double ratio = bp / (bp + a * rho * (1.0 - p));
  if (std::isinf(p_j)) return ratio;
  return std::exp(-a * (1.0 - p) / (b * p_j * p)) * ratio;
}

}  // namespace fdsec
