#pragma once

// Secrecy of the Alice -> Bob link against a single (or colluding) Eve,
// without small-scale fading, and the jamming power that maximizes it.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "fdsec/channel_geometry.hpp"
#include "fdsec/errors.hpp"

namespace fdsec {

/// log2(1 + snr), accurate for small snr.
inline double capacity_bits(double snr) {
  if (std::isinf(snr)) return kInf;
  return std::log1p(snr) / std::numbers::ln2;
}

/// SNR at Bob: P_T / (1 + rho P_J).
inline double snr_ab(double p_t, double rho, double p_j) {
  if (std::isinf(p_j)) return rho > 0.0 ? 0.0 : p_t;
  return p_t / (1.0 + rho * p_j);
}

inline double snr_ab(const SystemParams& p) { return snr_ab(p.p_t, p.rho, p.p_j); }

/// SNR at Eve: a P_T / (1 + b P_J).
inline double snr_ae(double a, double b, double p_t, double p_j) {
  if (std::isinf(a)) return kInf;
  if (p_j == 0.0) return a * p_t;
  if (std::isinf(b) || std::isinf(p_j)) return 0.0;
  return a * p_t / (1.0 + b * p_j);
}

/// [C_AB - C_AE]^+ given the two SNRs.
inline double secrecy_from_snr(double snr_legit, double snr_eve) {
  if (std::isinf(snr_eve)) return 0.0;
  const double s = capacity_bits(snr_legit) - capacity_bits(snr_eve);
  return s > 0.0 ? s : 0.0;
}

/// Secrecy capacity S_{A,B,x,y} in bits per channel use.
inline double secrecy_ab(const LinkGains& g, const SystemParams& p) {
  return secrecy_from_snr(snr_ab(p), snr_ae(g.a, g.b, p.p_t, p.p_j));
}

/// lambda = SNR_AB / SNR_AE = (1 + b P_J) / (a (1 + rho P_J)).
inline double snr_ratio(const LinkGains& g, const SystemParams& p) {
  if (std::isinf(g.a)) return 0.0;
  if (std::isinf(p.p_j)) return p.rho > 0.0 ? g.b / (g.a * p.rho) : kInf;
  if (std::isinf(g.b)) return p.p_j > 0.0 ? kInf : 1.0 / g.a;
  return (1.0 + g.b * p.p_j) / (g.a * (1.0 + p.rho * p.p_j));
}

/// gamma = (a - 1) / (b - rho a); undefined on b = rho a.
inline std::optional<double> jam_gamma(double a, double b, double rho) {
  const double m = rho_margin(a, b, rho);
  if (m == 0.0 || std::isinf(a)) return std::nullopt;
  return (a - 1.0) / m;
}

/// beta = (ab - rho + a P_T (b - rho)) / (rho b (b - rho a)); undefined for rho = 0 or b = rho a.
inline std::optional<double> jam_beta(double a, double b, double rho, double p_t) {
  const double m = rho_margin(a, b, rho);
  if (rho == 0.0 || m == 0.0 || std::isinf(a) || std::isinf(b)) return std::nullopt;
  return (a * b - rho + a * p_t * (b - rho)) / (rho * b * m);
}

/// Positive secrecy test via the three sign clauses on b - rho a.
/// Equivalent to snr_ratio() > 1.
inline bool positivity(const LinkGains& g, const SystemParams& p) {
  if (std::isinf(g.a)) return false;
  const double m = rho_margin(g.a, g.b, p.rho);
  if (m == 0.0) return g.a < 1.0;
  const double gamma = (g.a - 1.0) / m;
  return m > 0.0 ? p.p_j > gamma : p.p_j < gamma;
}

/// Membership in R4 u R_{P_J}, the zero-secrecy set when R3 is empty.
/// Requires rho < 2^-alpha and P_J > 0.
inline bool zero_region_predicate(const LinkGains& g, const SystemParams& p) {
  if (!(p.rho < std::pow(2.0, -p.alpha)))
    throw UnsupportedRegime("zero region needs rho < 2^-alpha");
  if (!(p.p_j > 0.0)) throw UnsupportedRegime("zero region needs P_J > 0");
  switch (region_classify(g, p.rho)) {
    case Region::R4: return true;
    case Region::R1:
    case Region::R2: {
      const auto gamma = jam_gamma(g.a, g.b, p.rho);
      return gamma && p.p_j <= *gamma;
    }
    case Region::R3: return !positivity(g, p);  // not reachable from a geometric location
  }
  return false;
}

/// Quadratic whose sign is the sign of dS/dP_J where S > 0:
/// -c2 P_J^2 + c1 P_J + c0.
struct JamCoefficients {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double numerator(double p_j) const { return (-c2 * p_j + c1) * p_j + c0; }
};

inline JamCoefficients jam_coefficients(double a, double b, double rho, double p_t) {
  return JamCoefficients{a * b - rho + a * p_t * (b - rho), 2.0 * rho * b * (a - 1.0), rho * b * (b - rho * a)};
}

struct OptJamResult {
  double p_j_opt = 0.0;
  std::optional<double> gamma;
  std::optional<double> beta;
  Region region = Region::R1;
  bool indifferent = false;  // R4: secrecy is zero for every P_J
};

/// Jamming power maximizing secrecy_ab at gains (a, b).
inline OptJamResult opt_jam(const LinkGains& g, double rho, double p_t) {
  if (!(p_t > 0.0)) throw InvalidParameter("P_T must be > 0");
  if (!std::isfinite(g.a) || !std::isfinite(g.b) || !(g.a > 0.0) || !(g.b > 0.0))
    throw InvalidParameter("opt_jam needs finite positive gains");
  if (!(rho > 0.0)) throw UnboundedOptimum("with rho = 0 secrecy increases without bound in P_J");

  OptJamResult out;
  out.region = region_classify(g, rho);
  out.gamma = jam_gamma(g.a, g.b, rho);
  out.beta = jam_beta(g.a, g.b, rho, p_t);

  switch (out.region) {
    case Region::R3: return out;
    case Region::R4: out.indifferent = true; return out;
    case Region::R1:
    case Region::R2: break;
  }
  const JamCoefficients c = jam_coefficients(g.a, g.b, rho, p_t);
  if (c.c0 <= 0.0) return out;  // only reachable in R1
  // Larger root of -c2 x^2 + c1 x + c0; the second form avoids cancellation when c1 < 0.
  const double root = std::sqrt(c.c1 * c.c1 + 4.0 * c.c0 * c.c2);
  out.p_j_opt = c.c1 >= 0.0 ? (c.c1 + root) / (2.0 * c.c2) : 2.0 * c.c0 / (root - c.c1);
  return out;
}

/// The location minimizing secrecy over d_A >= delta: delta to the left of Alice.
inline EveLocation worst_location(const SystemParams& p) {
  p.validate();
  if (p.delta > 1.0) throw UnsupportedRegime("worst location derived for delta <= 1");
  const double threshold = region4_containment_threshold(p.delta, p.alpha);
  if (!(p.rho < threshold))
    throw UnsupportedRegime("worst location needs rho < delta^alpha/(1+delta)^alpha = " + std::to_string(threshold));
  const EveLocation loc{-p.delta - 0.5, 0.0};
  const LinkGains g = gains(loc, p.alpha);
  const auto gamma = jam_gamma(g.a, g.b, p.rho);
  if (!gamma || !(p.p_j > *gamma))
    throw UnsupportedRegime("worst location needs P_J > gamma at (-delta-0.5, 0)");
  return loc;
}

}  // namespace fdsec
