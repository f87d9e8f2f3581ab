#pragma once

// Dual-phase exchange: Alice sends a key while Bob jams, then Bob sends while
// Alice jams.  Against a non-colluding Eve the secrecy is the average of the
// two directions.  No small-scale fading here.

#include <cmath>
#include <numbers>
#include <string>

#include "fdsec/channel_geometry.hpp"
#include "fdsec/colluding_static.hpp"
#include "fdsec/errors.hpp"

namespace fdsec {

struct PairSecrecy {
  double s = 0.0;
  double s_ab = 0.0;
  double s_ba = 0.0;
};

inline PairSecrecy secrecy_pair(const LinkGains& g, const SystemParams& p) {
  PairSecrecy out;
  out.s_ab = secrecy_ab(g, p);
  out.s_ba = secrecy_ab(swapped(g), p);
  out.s = 0.5 * (out.s_ab + out.s_ba);
  return out;
}

struct PairPositivity {
  bool without_jamming = false;  // P_J = 0: outside the intersection of the two unit disks
  bool with_some_jamming = false;  // some P_J >= 0 works: outside R4 of both directions
  bool everywhere_possible = false;  // every location can be protected: rho < 1
};

inline PairPositivity positivity_pair(const LinkGains& g, double rho) {
  PairPositivity out;
  out.without_jamming = !(g.a >= 1.0 && g.b >= 1.0);
  out.with_some_jamming =
      !(region_classify(g.a, g.b, rho) == Region::R4 && region_classify(g.b, g.a, rho) == Region::R4);
  out.everywhere_possible = rho < 1.0;
  return out;
}

/// T = (1 + SNR_AE)(1 + SNR_BE).
inline double t_factor(const LinkGains& g, const SystemParams& p) {
  return (1.0 + snr_ae(g.a, g.b, p.p_t, p.p_j)) * (1.0 + snr_ae(g.b, g.a, p.p_t, p.p_j));
}

/// Both directions in their R_rho sets and P_J above both gamma thresholds.
/// Under these conditions both one-way secrecies are positive.
inline bool t_form_hypotheses(const LinkGains& g, const SystemParams& p) {
  if (!std::isfinite(g.a) || !std::isfinite(g.b)) return false;
  const double m = rho_margin(g.a, g.b, p.rho);
  const double m_bar = rho_margin(g.b, g.a, p.rho);
  if (!(m > 0.0) || !(m_bar > 0.0)) return false;
  const double gamma = (g.a - 1.0) / m;
  const double gamma_bar = (g.b - 1.0) / m_bar;
  return p.p_j > std::max(gamma, gamma_bar);
}

/// S = log2(1 + SNR) - (1/2) log2 T, valid under t_form_hypotheses().
inline double secrecy_via_t(const LinkGains& g, const SystemParams& p) {
  if (!t_form_hypotheses(g, p)) throw UnsupportedRegime("T-form secrecy needs (x,y) in R_rho and its mirror, P_J > max(gamma, gamma_bar)");
  const double half_log_t =
      0.5 * (capacity_bits(snr_ae(g.a, g.b, p.p_t, p.p_j)) + capacity_bits(snr_ae(g.b, g.a, p.p_t, p.p_j)));
  return capacity_bits(snr_ab(p)) - half_log_t;
}

/// Coefficient k of T(x, 0) = T(0, 0) + k x^2 + O(x^4), exact.
inline double t_quadratic_coefficient(double p_t, double p_j, double alpha) {
  const double c = std::pow(2.0, alpha);
  const double pc = p_j * c;
  const double bracket = alpha * (4.0 * pc * pc * pc + 7.0 * pc * pc + 4.0 * pc - pc * p_t * c) +
                         (pc * pc + pc * p_t * c + 2.0 * pc + p_t * c + 1.0);
  const double q = (pc + 1.0) * (pc + 1.0);
  return 4.0 * p_t * alpha * c * bracket / (q * q);
}

/// The closed-form jamming threshold (-1 + sqrt(1 + 2^{alpha+1} P_T)) / 2^{alpha+1}.
/// It comes from a truncated expansion of T and only approximates the exact
/// extremum switch used by origin_extremum().
inline double origin_jam_threshold(double p_t, double alpha) {
  const double c2 = std::pow(2.0, alpha + 1.0);
  return (-1.0 + std::sqrt(1.0 + c2 * p_t)) / c2;
}

enum class ExtremumClass { LocalMax, LocalMin, Boundary };

inline const char* to_string(ExtremumClass e) {
  switch (e) {
    case ExtremumClass::LocalMax: return "local-max";
    case ExtremumClass::LocalMin: return "local-min";
    case ExtremumClass::Boundary: return "boundary";
  }
  return "?";
}

/// Whether S(0,0) is a local max or min of S along the x axis, from the sign of
/// the exact quadratic coefficient of T (S = log2(1+SNR) - log2(T)/2).
inline ExtremumClass origin_extremum(const SystemParams& p) {
  if (!(p.rho < 1.0)) throw UnsupportedRegime("origin extremum needs rho < 1");
  if (std::isinf(p.p_j)) throw UnsupportedRegime("origin extremum needs finite P_J");
  const double gamma0 = (1.0 - std::pow(2.0, -p.alpha)) / (1.0 - p.rho);
  if (!(p.p_j > gamma0))
    throw UnsupportedRegime("origin extremum needs P_J > (1 - 2^-alpha)/(1 - rho) = " + std::to_string(gamma0));
  const double c = std::pow(2.0, p.alpha);
  const double pc = p.p_j * c;
  const double pos = p.alpha * (4.0 * pc * pc * pc + 7.0 * pc * pc + 4.0 * pc) +
                     (pc * pc + pc * p.p_t * c + 2.0 * pc + p.p_t * c + 1.0);
  const double neg = p.alpha * pc * p.p_t * c;
  const double bracket = pos - neg;
  if (std::abs(bracket) <= 1e-12 * (pos + neg)) return ExtremumClass::Boundary;
  return bracket > 0.0 ? ExtremumClass::LocalMax : ExtremumClass::LocalMin;
}

namespace detail {

/// |t|^{m alpha} t^j: t^{m alpha + j} for even alpha, extended to real alpha
/// consistently with gains |t|^{-alpha}.
inline double signed_pow(double t, double m_alpha, int j) { return std::pow(std::abs(t), m_alpha) * std::pow(t, j); }

}  // namespace detail

/// N(d) and D(d) with d = d_A = x + 0.5 on the x axis; d ln T / dd = N / D.
struct XAxisDerivativeTerms {
  double n = 0.0;
  double d = 0.0;
};

inline XAxisDerivativeTerms x_axis_terms(double d, double p_t, double p_j, double alpha) {
  const double e = 1.0 - d;
  const double al = alpha;
  auto pd = [&](double m, int j) { return detail::signed_pow(d, m * al, j); };
  auto pe = [&](double m, int j) { return detail::signed_pow(e, m * al, j); };
  auto term = [&](double m, int j) { return (pd(m, j) - pe(m, j)) / (pd(m, j) * pe(m, j)); };

  XAxisDerivativeTerms out;
  out.d = (1.0 + p_j / pe(1, 0) + p_t / pd(1, 0)) * (1.0 + p_j / pe(1, 0)) * (1.0 + p_j / pd(1, 0) + p_t / pe(1, 0)) *
          (1.0 + p_j / pd(1, 0));
  out.n = -al * p_j * p_t * p_t * (pd(1, -1) - pe(1, -1)) / (pd(2, 0) * pe(2, 0)) +
          al * p_t * term(1, 1) + 2.0 * al * p_j * p_t * term(2, 1) +
          al * p_j * p_j * p_t * (2.0 * (pd(1, 0) - pe(1, 0)) / (pd(2, 1) * pe(2, 1)) + term(3, 1)) +
          al * p_j * p_j * p_j * p_t * (pd(2, 0) - pe(2, 0)) / (pd(3, 1) * pe(3, 1)) +
          al * p_t * p_t * (2.0 * d - 1.0) / (pd(1, 1) * pe(1, 1));
  return out;
}

/// dS(x,0)/dx at x = d - 0.5, equal to -(log2 e / 2) N(d)/D(d) under the T-form hypotheses.
inline double deriv_x_axis(double d, const SystemParams& p) {
  if (d == 0.0 || d == 1.0) throw UnsupportedRegime("derivative is singular at a node");
  if (std::isinf(p.p_j)) throw UnsupportedRegime("derivative needs finite P_J");
  if (!t_form_hypotheses(gains(EveLocation{d - 0.5, 0.0}, p.alpha), p))
    throw UnsupportedRegime("derivative formula needs the T-form hypotheses at (d - 0.5, 0)");
  const auto t = x_axis_terms(d, p.p_t, p.p_j, p.alpha);
  return -0.5 * std::numbers::log2e * t.n / t.d;
}

/// Leading behaviour of dS/dx as x -> 0.5 (large P_J, small rho).
inline double x_axis_singularity(double x, double alpha) { return -0.5 * std::numbers::log2e * alpha / (0.5 - x); }

struct LrAsymmetry {
  double t_left = 0.0;   // T at (0.5 - delta, 0)
  double t_right = 0.0;  // T at (0.5 + delta, 0)
  double difference = 0.0;
  double t_left_asymptotic = 0.0;
  double t_right_asymptotic = 0.0;
  double difference_asymptotic = 0.0;  // 2 alpha delta^{1-alpha} P_T / P_J
  double s_left = 0.0;
  double s_right = 0.0;
};

/// T and secrecy a distance delta either side of Bob.
inline LrAsymmetry lr_asymmetry(double delta, const SystemParams& p) {
  if (!(delta > 0.0)) throw InvalidParameter("delta must be > 0");
  if (!(p.p_j > 0.0) || std::isinf(p.p_j)) throw InvalidParameter("asymmetry needs finite P_J > 0");
  const LinkGains left = gains(EveLocation{0.5 - delta, 0.0}, p.alpha);
  const LinkGains right = gains(EveLocation{0.5 + delta, 0.0}, p.alpha);
  LrAsymmetry out;
  out.t_left = t_factor(left, p);
  out.t_right = t_factor(right, p);
  out.difference = out.t_right - out.t_left;
  const double r = p.p_t / p.p_j;
  const double ad = p.alpha * delta;
  const double dm = std::pow(delta, -p.alpha);
  out.t_left_asymptotic = 1.0 + dm * (1.0 - ad) * r + (1.0 - ad * ad) * r * r;
  out.t_right_asymptotic = 1.0 + dm * (1.0 + ad) * r + (1.0 - ad * ad) * r * r;
  out.difference_asymptotic = 2.0 * p.alpha * std::pow(delta, 1.0 - p.alpha) * r;
  out.s_left = secrecy_pair(left, p).s;
  out.s_right = secrecy_pair(right, p).s;
  return out;
}

enum class RegimeCheck { Report, Strict };

struct NearFarField {
  double near = 0.0;    // log2(1/rho)
  double far = 0.0;     // (1/2) log2(P_T/rho)
  double margin = 0.0;  // delta^alpha sqrt(rho P_T); the regime wants this >> 1
  bool jam_matches = false;  // P_J == sqrt(P_T/rho)
  bool rho_ok = false;       // rho < delta^alpha/(1+delta)^alpha
  bool margin_ok = false;    // margin >= 10

  bool hypotheses_hold() const { return jam_matches && rho_ok && margin_ok; }
};

/// Location-invariant near-field and far-field secrecy under P_J = sqrt(P_T/rho).
/// Strict mode raises when the regime conditions are not met.
inline NearFarField near_far_field(const SystemParams& p, RegimeCheck check = RegimeCheck::Report) {
  if (!(p.rho > 0.0)) throw InvalidParameter("near/far field needs rho > 0");
  NearFarField out;
  out.near = -std::log2(p.rho);
  out.far = 0.5 * std::log2(p.p_t / p.rho);
  out.margin = std::pow(p.delta, p.alpha) * std::sqrt(p.rho * p.p_t);
  const double target = jam_auto(p.p_t, p.rho);
  out.jam_matches = std::abs(p.p_j - target) <= 1e-9 * target;
  out.rho_ok = p.rho < region4_containment_threshold(p.delta, p.alpha);
  out.margin_ok = out.margin >= 10.0;
  if (check == RegimeCheck::Strict && !out.hypotheses_hold()) {
    throw UnsupportedRegime("near-field regime not met (P_J=sqrt(P_T/rho): " + std::string(out.jam_matches ? "yes" : "no") +
                            ", rho below containment threshold: " + (out.rho_ok ? "yes" : "no") +
                            ", margin delta^alpha*sqrt(rho*P_T) = " + std::to_string(out.margin) + ")");
  }
  return out;
}

/// Far field for the near/far comparison: both SNRs at Eve negligible,
/// max(a, b) * max(P_T, P_J) <= 1e-2.
inline bool is_far_field(const LinkGains& g, const SystemParams& p) {
  return std::max(g.a, g.b) * std::max(p.p_t, p.p_j) <= 1e-2;
}

/// Secrecy with Eve at either node: (1/2) log2(1 + SNR).
inline double node_peaks(const SystemParams& p) {
  if (!(p.rho < std::pow(2.0, -p.alpha))) throw UnsupportedRegime("node peaks need rho < 2^-alpha");
  if (!(p.p_j > 0.0)) throw UnsupportedRegime("node peaks need P_J > 0");
  return 0.5 * capacity_bits(snr_ab(p));
}

}  // namespace fdsec
