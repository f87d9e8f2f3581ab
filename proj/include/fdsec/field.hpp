#pragma once

// Grid sweeps over Eve's location (x, y).  Cells are laid out row-major with x
// varying fastest.  Any random draw in cell i comes from sample_stream(seed, i),
// so a sweep does not depend on the thread count.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdsec/channel_geometry.hpp"
#include "fdsec/colluding_fading.hpp"
#include "fdsec/colluding_static.hpp"
#include "fdsec/errors.hpp"
#include "fdsec/montecarlo.hpp"
#include "fdsec/pairwise_fading.hpp"
#include "fdsec/pairwise_static.hpp"

namespace fdsec {

struct GridSpec {
  double x_min = -2.0;
  double x_max = 2.0;
  double y_min = -2.0;
  double y_max = 2.0;
  double step = 0.01;

  void validate() const {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max))
      throw InvalidParameter("grid bounds must be finite");
    if (!(x_min < x_max)) throw InvalidParameter("grid needs x_min < x_max");
    if (!(y_min < y_max)) throw InvalidParameter("grid needs y_min < y_max");
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidParameter("grid step must be > 0");
  }

  // floor((max - min)/step + 1); the slack absorbs decimal steps such as 0.01.
  std::size_t nx() const { return static_cast<std::size_t>(std::floor((x_max - x_min) / step + 1.0 + 1e-9)); }
  std::size_t ny() const { return static_cast<std::size_t>(std::floor((y_max - y_min) / step + 1.0 + 1e-9)); }
  std::size_t cells() const { return nx() * ny(); }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * step; }
  double y(std::size_t j) const { return y_min + static_cast<double>(j) * step; }
  double x_of(std::size_t cell) const { return x(cell % nx()); }
  double y_of(std::size_t cell) const { return y(cell / nx()); }
};

inline nlohmann::json to_json(const GridSpec& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min}, {"y_max", g.y_max}, {"step", g.step}};
}

inline GridSpec grid_from_json(const nlohmann::json& j) {
  GridSpec g;
  g.x_min = j.at("x_min").get<double>();
  g.x_max = j.at("x_max").get<double>();
  g.y_min = j.at("y_min").get<double>();
  g.y_max = j.at("y_max").get<double>();
  g.step = j.at("step").get<double>();
  g.validate();
  return g;
}

/// Non-finite doubles become the strings "inf", "-inf", "nan" (JSON has no such numbers).
inline nlohmann::json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double number_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw InvalidParameter("unexpected number string: " + s);
  }
  return j.get<double>();
}

inline nlohmann::json to_json(const SystemParams& p) {
  return {{"p_t", number_to_json(p.p_t)},
          {"p_j", number_to_json(p.p_j)},
          {"rho", number_to_json(p.rho)},
          {"alpha", number_to_json(p.alpha)},
          {"delta", number_to_json(p.delta)}};
}

inline SystemParams params_from_json(const nlohmann::json& j) {
  SystemParams p;
  p.p_t = number_from_json(j.at("p_t"));
  p.p_j = number_from_json(j.at("p_j"));
  p.rho = number_from_json(j.at("rho"));
  p.alpha = number_from_json(j.at("alpha"));
  p.delta = number_from_json(j.at("delta"));
  return p;
}

enum class LinkMode { Colluding, Pairwise };
enum class FieldQuantity { Secrecy, ProbZero, Region, OptJam };
enum class JamRule { Fixed, Opt };

inline const char* to_string(LinkMode m) { return m == LinkMode::Colluding ? "colluding" : "pairwise"; }

inline const char* to_string(FieldQuantity q) {
  switch (q) {
    case FieldQuantity::Secrecy: return "secrecy";
    case FieldQuantity::ProbZero: return "prob-zero";
    case FieldQuantity::Region: return "region";
    case FieldQuantity::OptJam: return "optjam";
  }
  return "?";
}

inline const char* to_string(JamRule r) { return r == JamRule::Fixed ? "fixed" : "opt"; }

/// What to sweep.
///  Secrecy, no fading: S at each cell.  Secrecy with fading: one fresh (C~, D~)
///  per cell with A~ = B~ = 1.  ProbZero, no fading: conditional probability at
///  A~ = B~ = 1.  ProbZero with fading: unconditional, mc.n_samples draws per cell.
///  Region and OptJam are colluding-only and static.
struct FieldRequest {
  LinkMode mode = LinkMode::Colluding;
  FieldQuantity quantity = FieldQuantity::Secrecy;
  bool fading = false;
  JamRule jam = JamRule::Fixed;
  SystemParams params;
  GridSpec grid;
  MCConfig mc;

  void validate() const {
    params.validate();
    grid.validate();
    mc.validate();
    if (jam == JamRule::Opt && mode != LinkMode::Colluding)
      throw InvalidParameter("per-cell optimal jamming is defined for the colluding link only");
    if ((quantity == FieldQuantity::Region || quantity == FieldQuantity::OptJam) && mode != LinkMode::Colluding)
      throw InvalidParameter("region and optjam grids are colluding-only");
    if (jam == JamRule::Opt && !(params.rho > 0.0))
      throw InvalidParameter("per-cell optimal jamming needs rho > 0");
  }
};

inline nlohmann::json to_json(const FieldRequest& r) {
  return {{"mode", to_string(r.mode)},
          {"quantity", to_string(r.quantity)},
          {"fading", r.fading},
          {"jam_rule", to_string(r.jam)},
          {"params", to_json(r.params)},
          {"grid", to_json(r.grid)},
          {"seed", r.mc.seed},
          {"samples", r.mc.n_samples},
          {"chunk", r.mc.chunk}};
}

struct FieldGrid {
  GridSpec spec;
  std::vector<double> values;
  nlohmann::json meta = nlohmann::json::object();

  double at(std::size_t i, std::size_t j) const { return values.at(j * spec.nx() + i); }
};

namespace detail {

inline double field_cell(const FieldRequest& r, std::size_t cell) {
  const EveLocation loc{r.grid.x_of(cell), r.grid.y_of(cell)};
  const LinkGains g = gains(loc, r.params.alpha);
  const bool finite = std::isfinite(g.a) && std::isfinite(g.b);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  SystemParams p = r.params;
  if (r.jam == JamRule::Opt || r.quantity == FieldQuantity::OptJam) {
    if (!finite) return nan;
    p.p_j = opt_jam(g, p.rho, p.p_t).p_j_opt;
    if (r.quantity == FieldQuantity::OptJam) return p.p_j;
  }
  if (r.quantity == FieldQuantity::Region) {
    return static_cast<double>(region_index(region_classify(g, p.rho)));
  }

  if (r.quantity == FieldQuantity::Secrecy) {
    if (!r.fading) return r.mode == LinkMode::Colluding ? secrecy_ab(g, p) : secrecy_pair(g, p).s;
    auto s = sample_stream(r.mc.seed, cell);
    const double c = s.exponential();
    const double d = s.exponential();
    if (r.mode == LinkMode::Colluding) return secrecy_ab_fading(g, p, FadingSampleColluding{1.0, 1.0, c, d});
    return secrecy_pair_fading(g, p, FadingSamplePair{1.0, 1.0, 1.0, c, d}).s;
  }

  // ProbZero
  if (!r.fading) {
    if (r.mode == LinkMode::Colluding) return cond_prob_zero(g, p, 1.0, 1.0);
    return cond_prob_zero_pair(g, p, 1.0, 1.0, 1.0);
  }
  MCConfig mc = r.mc;
  mc.threads = 1;  // cells are already spread over threads
  mc.seed = mix64(r.mc.seed ^ mix64(cell + 0x2545F4914F6CDD1DULL));
  if (r.mode == LinkMode::Colluding) return uncond_prob_zero(g, p, mc).prob.mean;
  return estimate(
             [&](SampleStream& s) {
               const double at = s.exponential();
               const double b1 = s.exponential();
               const double b2 = s.exponential();
               return cond_prob_zero_pair(g, p, at, b1, b2);
             },
             mc)
      .mean;
}

}  // namespace detail

inline FieldGrid compute_field(const FieldRequest& r) {
  r.validate();
  FieldGrid out;
  out.spec = r.grid;
  out.values.assign(r.grid.cells(), 0.0);
  out.meta = to_json(r);
  parallel_for(out.values.size(), r.mc.threads, [&](std::uint64_t c) { out.values[c] = detail::field_cell(r, c); });
  return out;
}

struct GridExtremum {
  std::size_t cell = 0;
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// argmin (or argmax) over cells accepted by `keep`, ignoring NaN; ties go to the
/// lexicographically smallest (x, y).
template <class Keep>
std::optional<GridExtremum> grid_extremum(const FieldGrid& f, bool maximize, Keep&& keep) {
  std::optional<GridExtremum> best;
  for (std::size_t c = 0; c < f.values.size(); ++c) {
    const double v = f.values[c];
    if (std::isnan(v)) continue;
    const double x = f.spec.x_of(c);
    const double y = f.spec.y_of(c);
    if (!keep(x, y)) continue;
    bool better = false;
    if (!best) {
      better = true;
    } else if (maximize ? v > best->value : v < best->value) {
      better = true;
    } else if (v == best->value && (x < best->x || (x == best->x && y < best->y))) {
      better = true;
    }
    if (better) best = GridExtremum{c, x, y, v};
  }
  return best;
}

inline std::optional<GridExtremum> grid_argmin(const FieldGrid& f) {
  return grid_extremum(f, false, [](double, double) { return true; });
}

inline std::optional<GridExtremum> grid_argmax(const FieldGrid& f) {
  return grid_extremum(f, true, [](double, double) { return true; });
}

}  // namespace fdsec
