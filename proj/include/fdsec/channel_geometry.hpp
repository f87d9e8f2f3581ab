#pragma once

// Normalized link model and large-scale geometry.
//
// Alice sits at (-0.5, 0) and Bob at (0.5, 0); distances are in units of the
// Alice-Bob distance, powers are normalized by the Alice-Bob gain and Bob's
// noise variance.  Everything is stored linear; dB only at the I/O boundary.

#include <cmath>
#include <limits>
#include <string>

#include "fdsec/errors.hpp"

namespace fdsec {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

/// Un-normalized link quantities as measured at the radios.
struct RawLinkParams {
  double g_prime = 1.0;    // Alice-Bob channel gain
  double pt_prime = 1.0;   // Alice transmit power
  double pj_prime = 0.0;   // Bob jamming power
  double rho_prime = 0.0;  // residual self-interference gain
  double noise_b = 1.0;    // noise variance at Bob
  double noise_e = 1.0;    // noise variance at Eve

  void validate() const {
    if (!(g_prime > 0.0)) throw InvalidParameter("g' must be > 0");
    if (!(noise_b > 0.0) || !(noise_e > 0.0)) throw InvalidParameter("noise variances must be > 0");
    if (!(pt_prime > 0.0)) throw InvalidParameter("P_T' must be > 0");
    if (!(pj_prime >= 0.0)) throw InvalidParameter("P_J' must be >= 0");
    if (!(rho_prime >= 0.0)) throw InvalidParameter("rho' must be >= 0");
  }
};

/// Normalized system scalars.  `p_j` may be kInf, which selects the
/// infinite-jamming limit forms in every module.
struct SystemParams {
  double p_t = 1.0;
  double p_j = 0.0;
  double rho = 0.0;
  double alpha = 2.0;
  double delta = 0.1;

  void validate() const {
    if (!(p_t > 0.0) || std::isinf(p_t)) throw InvalidParameter("P_T must be finite and > 0");
    if (!(p_j >= 0.0)) throw InvalidParameter("P_J must be >= 0");
    if (!(rho >= 0.0) || std::isinf(rho)) throw InvalidParameter("rho must be finite and >= 0");
    if (!(alpha >= 2.0) || std::isinf(alpha)) throw InvalidParameter("alpha must be finite and >= 2");
    if (!(delta > 0.0)) throw InvalidParameter("delta must be > 0");
  }

  bool infinite_jamming() const { return std::isinf(p_j); }
};

/// The jamming power sqrt(P_T / rho): optimal at the origin for small rho and large P_T.
inline double jam_auto(double p_t, double rho) {
  if (!(rho > 0.0)) throw InvalidParameter("sqrt(P_T/rho) needs rho > 0");
  return std::sqrt(p_t / rho);
}

struct EveLocation {
  double x = 0.0;
  double y = 0.0;
};

/// Large-scale gains from Alice (a) and Bob (b) to Eve.  A zero distance
/// gives an infinite gain, which downstream formulas treat as a limit.
struct LinkGains {
  double a = 0.0;
  double b = 0.0;
  double d_a = kInf;
  double d_b = kInf;
};

/// Gains with distances left unknown (direct a/b input).
inline LinkGains make_gains(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidParameter("gains a, b must be > 0");
  return LinkGains{a, b, std::isinf(a) ? 0.0 : kInf, std::isinf(b) ? 0.0 : kInf};
}

inline double path_gain(double distance, double alpha) {
  return distance == 0.0 ? kInf : std::pow(distance, -alpha);
}

inline LinkGains gains(EveLocation loc, double alpha) {
  const double d_a = std::hypot(loc.x + 0.5, loc.y);
  const double d_b = std::hypot(loc.x - 0.5, loc.y);
  return LinkGains{path_gain(d_a, alpha), path_gain(d_b, alpha), d_a, d_b};
}

/// Same gains with the roles of Alice and Bob exchanged.
inline LinkGains swapped(const LinkGains& g) { return LinkGains{g.b, g.a, g.d_b, g.d_a}; }

/// Result of normalizing a raw link: the normalized powers and gains.
struct NormalizedLink {
  double p_t = 0.0;
  double p_j = 0.0;
  double rho = 0.0;
  double a = 0.0;
  double b = 0.0;
};

inline NormalizedLink normalize(const RawLinkParams& raw, double a_prime, double b_prime) {
  raw.validate();
  if (!(a_prime > 0.0) || !(b_prime > 0.0)) throw InvalidParameter("a', b' must be > 0");
  const double scale_e = raw.noise_b / (raw.g_prime * raw.noise_e);
  return NormalizedLink{raw.g_prime * raw.pt_prime / raw.noise_b,
                        raw.g_prime * raw.pj_prime / raw.noise_b,
                        raw.rho_prime / raw.g_prime,
                        a_prime * scale_e,
                        b_prime * scale_e};
}

/// Inverse of normalize() given the gain and noise variances it consumed.
struct DenormalizedLink {
  RawLinkParams raw;
  double a_prime = 0.0;
  double b_prime = 0.0;
};

inline DenormalizedLink denormalize(const NormalizedLink& n, double g_prime, double noise_b, double noise_e) {
  if (!(g_prime > 0.0) || !(noise_b > 0.0) || !(noise_e > 0.0))
    throw InvalidParameter("g' and noise variances must be > 0");
  DenormalizedLink out;
  out.raw = RawLinkParams{g_prime, n.p_t * noise_b / g_prime, n.p_j * noise_b / g_prime,
                          n.rho * g_prime, noise_b, noise_e};
  const double scale_e = g_prime * noise_e / noise_b;
  out.a_prime = n.a * scale_e;
  out.b_prime = n.b * scale_e;
  return out;
}

/// b - rho*a with the infinite-gain conventions (rho = 0 never multiplies an infinity).
inline double rho_margin(double a, double b, double rho) {
  if (rho == 0.0) return b;
  return b - rho * a;
}

enum class Region { R1, R2, R3, R4 };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::R1: return "R1";
    case Region::R2: return "R2";
    case Region::R3: return "R3";
    case Region::R4: return "R4";
  }
  return "?";
}

inline int region_index(Region r) { return static_cast<int>(r) + 1; }

/// R1: b-rho*a > 0, a < 1.  R2: b-rho*a > 0, a >= 1.
/// R3: b-rho*a <= 0, a < 1.  R4: b-rho*a <= 0, a >= 1.
inline Region region_classify(double a, double b, double rho) {
  const bool positive_margin = rho_margin(a, b, rho) > 0.0;
  const bool near_alice = a >= 1.0;
  if (positive_margin) return near_alice ? Region::R2 : Region::R1;
  return near_alice ? Region::R4 : Region::R3;
}

inline Region region_classify(const LinkGains& g, double rho) { return region_classify(g.a, g.b, rho); }

enum class DiskSide { LeftExclusion, RightInclusion, HalfPlane };

/// Boundary of the set {b - rho*a > 0}: a circle centred at (-x0, 0) of radius r,
/// or the half plane x > 0 when rho == 1.
struct DiskBoundary {
  double x0 = 0.0;
  double r = 0.0;
  DiskSide side = DiskSide::HalfPlane;

  /// Membership of (x, y) in {b - rho*a > 0}.
  bool contains(double x, double y) const {
    const double s = (x + x0) * (x + x0) + y * y - r * r;
    switch (side) {
      case DiskSide::HalfPlane: return x > 0.0;
      case DiskSide::LeftExclusion: return s > 0.0;
      case DiskSide::RightInclusion: return s < 0.0;
    }
    return false;
  }
};

inline DiskBoundary rho_disk(double rho, double alpha) {
  if (!(rho >= 0.0)) throw InvalidParameter("rho must be >= 0");
  if (rho == 0.0) return DiskBoundary{0.5, 0.0, DiskSide::LeftExclusion};
  if (rho == 1.0) return DiskBoundary{0.0, kInf, DiskSide::HalfPlane};
  const double q = std::pow(rho, 2.0 / alpha);
  const double x0 = (1.0 + q) / (2.0 * (1.0 - q));
  const double r = std::sqrt(x0 * x0 - 0.25);
  return DiskBoundary{x0, r, rho < 1.0 ? DiskSide::LeftExclusion : DiskSide::RightInclusion};
}

/// Largest rho for which R4 lies inside the exclusion disk d_A < delta.
inline double region4_containment_threshold(double delta, double alpha) {
  if (!(delta > 0.0)) throw InvalidParameter("delta must be > 0");
  if (delta > 1.0) return 1.0;
  return std::pow(delta / (1.0 + delta), alpha);
}

}  // namespace fdsec
