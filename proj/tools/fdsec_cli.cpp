// fdsec: grid sweeps, point queries and the verify suite.
//
// Exit status: 0 success, 1 usage or parameter error, 2 verify failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdsec/fdsec.hpp"
#include "fdsec/verify.hpp"

using namespace fdsec;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags that may not appear together.  A config-file key is dropped when the
// command line already sets a member of its group.
const std::vector<std::set<std::string>>& exclusive_groups() {
  static const std::vector<std::set<std::string>> g{
      {"pt", "pt-db"},
      {"pj", "pj-db", "pj-auto", "pj-opt", "pj-inf"},
      {"rho", "rho-db"},
      {"at", "a", "b"},
  };
  return g;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Reads `key = value` lines (# comments) into command-line tokens.
std::vector<std::pair<std::string, std::vector<std::string>>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    std::istringstream vs(trim(line.substr(eq + 1)));
    std::vector<std::string> values;
    for (std::string v; vs >> v;) values.push_back(v);
    out.emplace_back(key, values);
  }
  return out;
}

std::string flag_name(const std::string& token) {
  if (token.rfind("--", 0) != 0) return "";
  auto name = token.substr(2);
  const auto eq = name.find('=');
  if (eq != std::string::npos) name.erase(eq);
  return name;
}

/// argv with the config file's settings spliced in ahead of the user's own flags,
/// so that (with TakeLast options) the command line wins.
/// `known(sub, key)`: 1 if the subcommand has the flag, 0 if only some other
/// subcommand has it (skipped), -1 if no subcommand has it (error).
template <class Known>
std::vector<std::string> expand_config(int argc, char** argv, Known&& known) {
  std::vector<std::string> args(argv, argv + argc);
  std::optional<std::string> config;
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config) return args;
  if (rest.empty() || rest[0].rfind("-", 0) == 0) throw UsageError("--config must follow a subcommand");

  std::set<std::string> on_cli;
  for (const auto& t : rest) {
    const auto n = flag_name(t);
    if (!n.empty()) on_cli.insert(n);
  }
  auto blocked = [&](const std::string& key) {
    if (on_cli.count(key)) return true;
    for (const auto& group : exclusive_groups()) {
      if (!group.count(key)) continue;
      for (const auto& k : group)
        if (on_cli.count(k)) return true;
    }
    return false;
  };

  std::vector<std::string> out{args[0], rest[0]};
  for (const auto& [key, values] : read_config(*config)) {
    const int k = known(rest[0], key);
    if (k < 0) throw UsageError("unknown config key '" + key + "'");
    if (k == 0 || blocked(key)) continue;
    if (values.size() == 1 && (values[0] == "true" || values[0] == "false")) {
      if (values[0] == "true") out.push_back("--" + key);
      continue;
    }
    out.push_back("--" + key);
    out.insert(out.end(), values.begin(), values.end());
  }
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

// ---------------------------------------------------------------------------

struct Common {
  std::optional<double> pt, pt_db, pj, pj_db, rho, rho_db;
  bool pj_auto = false, pj_opt = false, pj_inf = false;
  double alpha = 2.0;
  double delta = 0.1;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
  unsigned threads = 0;
  bool json_out = false;
  std::string out;
};

struct Point {
  std::vector<double> at;
  std::optional<double> a, b;
};

struct Grid {
  GridSpec spec;
};

CLI::Option* last(CLI::Option* o) { return o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast); }

void add_common(CLI::App* app, Common& c, bool with_jam = true) {
  auto* pt = last(app->add_option("--pt", c.pt, "transmit power P_T (linear)"));
  auto* pt_db = last(app->add_option("--pt-db", c.pt_db, "transmit power P_T in dB"));
  pt->excludes(pt_db);
  if (with_jam) {
    auto* pj = last(app->add_option("--pj", c.pj, "jamming power P_J (linear)"));
    auto* pj_db = last(app->add_option("--pj-db", c.pj_db, "jamming power P_J in dB"));
    auto* pj_auto = app->add_flag("--pj-auto", c.pj_auto, "P_J = sqrt(P_T/rho)");
    auto* pj_opt = app->add_flag("--pj-opt", c.pj_opt, "per-cell optimal P_J (colluding secrecy fields only)");
    auto* pj_inf = app->add_flag("--pj-inf", c.pj_inf, "infinite jamming power (limit forms)");
    const std::vector<CLI::Option*> jam{pj, pj_db, pj_auto, pj_opt, pj_inf};
    for (auto* x : jam)
      for (auto* y : jam)
        if (x != y) x->excludes(y);
  }
  auto* rho = last(app->add_option("--rho", c.rho, "residual self-interference gain rho (linear)"));
  auto* rho_db = last(app->add_option("--rho-db", c.rho_db, "rho in dB"));
  rho->excludes(rho_db);
  last(app->add_option("--alpha", c.alpha, "path-loss exponent")->capture_default_str());
  last(app->add_option("--delta", c.delta, "Eve exclusion radius around Alice")->capture_default_str());
  last(app->add_option("--seed", c.seed, "random seed")->envname("FDSEC_SEED")->capture_default_str());
  last(app->add_option("--samples", c.samples, "Monte Carlo samples")->check(CLI::PositiveNumber)->capture_default_str());
  last(app->add_option("--threads", c.threads, "worker threads (0: all cores)")->capture_default_str());
  app->add_flag("--json", c.json_out, "machine-readable output");
}

void add_point(CLI::App* app, Point& p) {
  auto* at = last(app->add_option("--at", p.at, "Eve location x y")->expected(2));
  auto* a = last(app->add_option("--a", p.a, "Alice-Eve gain a (instead of --at)"));
  auto* b = last(app->add_option("--b", p.b, "Bob-Eve gain b (instead of --at)"));
  at->excludes(a)->excludes(b);
  a->needs(b);
  b->needs(a);
}

void add_grid(CLI::App* app, Grid& g) {
  last(app->add_option("--x-min", g.spec.x_min)->capture_default_str());
  last(app->add_option("--x-max", g.spec.x_max)->capture_default_str());
  last(app->add_option("--y-min", g.spec.y_min)->capture_default_str());
  last(app->add_option("--y-max", g.spec.y_max)->capture_default_str());
  last(app->add_option("--step", g.spec.step)->capture_default_str());
}

SystemParams resolve(const Common& c) {
  SystemParams p;
  if (c.pt) p.p_t = *c.pt;
  if (c.pt_db) p.p_t = from_db(*c.pt_db);
  if (c.rho) p.rho = *c.rho;
  if (c.rho_db) p.rho = from_db(*c.rho_db);
  p.alpha = c.alpha;
  p.delta = c.delta;
  if (c.pj) p.p_j = *c.pj;
  if (c.pj_db) p.p_j = from_db(*c.pj_db);
  if (c.pj_inf) p.p_j = kInf;
  if (c.pj_auto) {
    if (!(p.rho > 0.0)) throw UsageError("--pj-auto needs rho > 0");
    p.p_j = jam_auto(p.p_t, p.rho);
  }
  p.validate();
  return p;
}

MCConfig mc_of(const Common& c) { return MCConfig{c.seed, c.samples, std::uint64_t{1} << 16, c.threads}; }

std::optional<LinkGains> point_gains(const Point& pt, const SystemParams& p) {
  if (pt.a) {
    if (!(*pt.a > 0.0) || !(*pt.b > 0.0)) throw UsageError("--a and --b must be > 0");
    return make_gains(*pt.a, *pt.b);
  }
  if (pt.at.size() == 2) return gains(EveLocation{pt.at[0], pt.at[1]}, p.alpha);
  return std::nullopt;
}

json point_json(const Point& pt) {
  if (pt.a) return {{"a", *pt.a}, {"b", *pt.b}};
  return {{"x", pt.at[0]}, {"y", pt.at[1]}};
}

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.json_out)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

void write_field(const Common& c, const FieldGrid& f) {
  if (c.out.empty()) {
    if (c.json_out)
      write_json(f, std::cout);
    else
      write_csv(f, std::cout);
    return;
  }
  std::ofstream os(c.out);
  if (!os) throw UsageError("cannot write " + c.out);
  const bool as_json = c.out.size() >= 5 && c.out.compare(c.out.size() - 5, 5, ".json") == 0;
  if (as_json)
    write_json(f, os);
  else
    write_csv(f, os);
  double lo = kInf, hi = -kInf;
  for (double v : f.values)
    if (!std::isnan(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  std::cout << "wrote " << f.values.size() << " cells to " << c.out << " (min " << lo << ", max " << hi << ")\n";
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

LinkMode parse_mode(const std::string& s) { return s == "pairwise" ? LinkMode::Pairwise : LinkMode::Colluding; }

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"Secrecy capacity fields for full-duplex jamming links"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.add_option("--config", "flat key=value file; command-line flags override it");

  // field
  Common fc;
  Grid fg;
  std::string f_mode = "colluding", f_quantity = "secrecy";
  bool f_fading = false;
  auto* field = app.add_subcommand("field", "sweep secrecy or zero-secrecy probability over a grid");
  add_common(field, fc);
  add_grid(field, fg);
  last(field->add_option("--mode", f_mode)->check(CLI::IsMember({"colluding", "pairwise"}))->capture_default_str());
  last(field->add_option("--quantity", f_quantity)->check(CLI::IsMember({"secrecy", "prob-zero"}))->capture_default_str());
  field->add_flag("--fading", f_fading, "small-scale fading (fresh C~, D~ per cell)");
  last(field->add_option("--out", fc.out, "output file (.csv or .json)"));

  // regions
  Common rc;
  Grid rg;
  auto* regions = app.add_subcommand("regions", "grid of region labels R1..R4");
  add_common(regions, rc, false);
  add_grid(regions, rg);
  last(regions->add_option("--out", rc.out, "output file (.csv or .json)"));

  // optjam
  Common oc;
  Grid og;
  Point op;
  auto* optjam = app.add_subcommand("optjam", "optimal jamming power at a point (--at/--a --b) or over a grid");
  add_common(optjam, oc, false);
  add_point(optjam, op);
  add_grid(optjam, og);
  last(optjam->add_option("--out", oc.out, "output file for the grid form"));

  // prob-zero
  Common pc;
  Point pp;
  std::string p_mode = "colluding";
  double at_t = 1.0, b_t = 1.0, b1_t = 1.0, b2_t = 1.0;
  auto* probzero = app.add_subcommand("prob-zero", "zero-secrecy probability: closed form next to Monte Carlo");
  add_common(probzero, pc);
  add_point(probzero, pp);
  last(probzero->add_option("--mode", p_mode)->check(CLI::IsMember({"colluding", "pairwise"}))->capture_default_str());
  last(probzero->add_option("--a-tilde", at_t, "fading factor A~")->capture_default_str());
  last(probzero->add_option("--b-tilde", b_t, "fading factor B~ (colluding)")->capture_default_str());
  last(probzero->add_option("--b1-tilde", b1_t, "fading factor B1~ (pairwise)")->capture_default_str());
  last(probzero->add_option("--b2-tilde", b2_t, "fading factor B2~ (pairwise)")->capture_default_str());

  // cdf
  Common cc;
  Point cp;
  std::string c_mode = "colluding";
  std::vector<double> c_grid;
  auto* cdf = app.add_subcommand("cdf", "empirical CDF of the conditional zero-secrecy probability, with the bound");
  add_common(cdf, cc);
  add_point(cdf, cp);
  last(cdf->add_option("--mode", c_mode)->check(CLI::IsMember({"colluding", "pairwise"}))->capture_default_str());
  cdf->add_option("--p", c_grid, "probability levels (default 0.05..0.95)");

  // policy
  Common yc;
  Point yp;
  std::string y_policy = "semi-dynamic";
  double y_threshold = 0.1;
  bool y_table = false;
  std::vector<double> y_ladder{0, 10, 20, 30, 40, 50, 60};
  auto* policy = app.add_subcommand("policy", "zero-secrecy probability under a jamming policy (pairwise)");
  add_common(policy, yc);
  add_point(policy, yp);
  last(policy->add_option("--policy", y_policy)
           ->check(CLI::IsMember({"constant", "semi-dynamic", "full-dynamic", "general-dynamic"}))
           ->capture_default_str());
  last(policy->add_option("--threshold", y_threshold, "general-dynamic acceptance threshold p")->capture_default_str());
  policy->add_flag("--table", y_table, "P_J ladder table of policies and bounds at (0,0) and (-0.6,0)");
  policy->add_option("--ladder-db", y_ladder, "P_J ladder in dB for --table");

  // verify
  std::vector<std::string> suites{"all"};
  VerifyOptions vo;
  bool v_list = false;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--suite", suites, "criterion names, or all")->capture_default_str();
  last(verify->add_option("--seed", vo.seed)->envname("FDSEC_SEED")->capture_default_str());
  last(verify->add_option("--threads", vo.threads)->capture_default_str());
  verify->add_flag("--list", v_list, "list criterion names");

  auto has = [](CLI::App* sub, const std::string& key) {
    return sub->get_option_no_throw("--" + key) != nullptr;
  };
  const auto args = expand_config(argc, argv, [&](const std::string& sub_name, const std::string& key) {
    CLI::App* sub = nullptr;
    try {
      sub = app.get_subcommand(sub_name);
    } catch (const CLI::OptionNotFound&) {
      throw UsageError("unknown subcommand '" + sub_name + "'");
    }
    if (has(sub, key)) return 1;
    for (auto* other : app.get_subcommands({}))
      if (has(other, key)) return 0;
    return -1;
  });

  std::vector<const char*> cargv;
  for (const auto& a : args) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*field) {
    FieldRequest r;
    r.mode = parse_mode(f_mode);
    r.quantity = f_quantity == "secrecy" ? FieldQuantity::Secrecy : FieldQuantity::ProbZero;
    r.fading = f_fading;
    r.jam = fc.pj_opt ? JamRule::Opt : JamRule::Fixed;
    r.params = resolve(fc);
    r.grid = fg.spec;
    r.mc = mc_of(fc);
    write_field(fc, compute_field(r));
    return 0;
  }

  if (*regions) {
    FieldRequest r;
    r.quantity = FieldQuantity::Region;
    r.params = resolve(rc);
    r.grid = rg.spec;
    r.mc = mc_of(rc);
    write_field(rc, compute_field(r));
    return 0;
  }

  if (*optjam) {
    const SystemParams p = resolve(oc);
    const auto g = point_gains(op, p);
    if (!g) {
      FieldRequest r;
      r.quantity = FieldQuantity::OptJam;
      r.params = p;
      r.grid = og.spec;
      r.mc = mc_of(oc);
      write_field(oc, compute_field(r));
      return 0;
    }
    const auto res = opt_jam(*g, p.rho, p.p_t);
    SystemParams at = p;
    at.p_j = res.p_j_opt;
    const double s = secrecy_ab(*g, at);
    json j = point_json(op);
    j["a"] = g->a;
    j["b"] = g->b;
    j["rho"] = p.rho;
    j["p_t"] = p.p_t;
    j["p_j_opt"] = res.p_j_opt;
    j["region"] = to_string(res.region);
    j["gamma"] = res.gamma ? json(*res.gamma) : json(nullptr);
    j["beta"] = res.beta ? json(*res.beta) : json(nullptr);
    j["secrecy_at_opt"] = s;
    j["indifferent"] = res.indifferent;
    std::ostringstream t;
    t << "P_J,opt = " << fmt("%.6g", res.p_j_opt) << " (" << fmt("%.3f", to_db(res.p_j_opt)) << " dB), region "
      << to_string(res.region) << ", secrecy " << fmt("%.6g", s) << " bits";
    if (res.gamma) t << ", gamma " << fmt("%.6g", *res.gamma);
    if (res.beta) t << ", beta " << fmt("%.6g", *res.beta);
    if (res.indifferent) t << " (secrecy is zero for every P_J)";
    t << '\n';
    emit(oc, j, t.str());
    return 0;
  }

  if (*probzero) {
    if (pc.pj_opt) throw UsageError("--pj-opt applies to colluding secrecy fields only");
    const SystemParams p = resolve(pc);
    const auto g = point_gains(pp, p).value_or(gains(EveLocation{-p.delta - 0.5, 0.0}, p.alpha));
    const MCConfig mc = mc_of(pc);
    json j;
    j["mode"] = p_mode;
    j["a"] = number_to_json(g.a);
    j["b"] = number_to_json(g.b);
    j["params"] = to_json(p);
    j["seed"] = mc.seed;
    j["samples"] = mc.n_samples;
    std::ostringstream t;
    if (p_mode == "colluding") {
      const double closed = cond_prob_zero(g, p, at_t, b_t);
      const auto check = oracle::mc_zero_prob_colluding(g, p, at_t, b_t, mc, 1);
      const auto u = uncond_prob_zero(g, p, mc);
      j["conditional"] = {{"closed_form", closed}, {"monte_carlo", check.mean}, {"std_error", check.std_error}};
      j["unconditional"] = {{"mean", u.prob.mean}, {"std_error", u.prob.std_error}, {"upper_bound", u.upper.mean}};
      t << "conditional (A~=" << at_t << ", B~=" << b_t << "): closed form " << fmt("%.6g", closed) << ", Monte Carlo "
        << fmt("%.6g", check.mean) << " +- " << fmt("%.2g", check.std_error) << '\n'
        << "unconditional: " << fmt("%.6g", u.prob.mean) << " +- " << fmt("%.2g", u.prob.std_error)
        << ", upper bound E{1/(1+v1)} " << fmt("%.6g", u.upper.mean) << '\n';
    } else {
      const double closed = cond_prob_zero_pair(g, p, at_t, b1_t, b2_t);
      j["conditional"] = {{"closed_form", closed}};
      t << "conditional (A~=" << at_t << ", B1~=" << b1_t << ", B2~=" << b2_t << "): closed form " << fmt("%.6g", closed);
      if (std::isfinite(g.a) && std::isfinite(g.b)) {
        const auto check = oracle::mc_zero_prob_pair(g, p, at_t, b1_t, b2_t, mc, 1);
        j["conditional"]["monte_carlo"] = check.mean;
        j["conditional"]["std_error"] = check.std_error;
        t << ", Monte Carlo " << fmt("%.6g", check.mean) << " +- " << fmt("%.2g", check.std_error);
      }
      t << '\n';
      const auto values = sample_values(
          [&](SampleStream& s) {
            const double a = s.exponential(), b1 = s.exponential(), b2 = s.exponential();
            return cond_prob_zero_pair(g, p, a, b1, b2);
          },
          mc, 2);
      double sum = 0.0;
      std::size_t below = 0;
      for (double v : values) sum += v, below += v < 1e-4;
      const double mean = sum / static_cast<double>(values.size());
      const double frac = static_cast<double>(below) / static_cast<double>(values.size());
      j["unconditional"] = {{"mean", mean}};
      j["cdf_mass_below_1e-4"] = frac;
      t << "unconditional: " << fmt("%.6g", mean) << '\n' << "P{conditional < 1e-4} = " << fmt("%.4f", frac) << '\n';
      if (p.p_j == 0.0) {
        j["no_jamming_closed_form"] = prob_zero_nojam(g);
        t << "no-jamming closed form: " << fmt("%.6g", prob_zero_nojam(g)) << '\n';
      }
    }
    emit(pc, j, t.str());
    return 0;
  }

  if (*cdf) {
    if (cc.pj_opt) throw UsageError("--pj-opt applies to colluding secrecy fields only");
    const SystemParams p = resolve(cc);
    const auto g = point_gains(cp, p).value_or(gains(EveLocation{-p.delta - 0.5, 0.0}, p.alpha));
    if (c_grid.empty())
      for (int k = 1; k <= 19; ++k) c_grid.push_back(0.05 * k);
    const MCConfig mc = mc_of(cc);
    const bool coll = c_mode == "colluding";
    const auto values = sample_values(
        [&](SampleStream& s) {
          if (coll) {
            const double a = s.exponential(), b = s.exponential();
            return cond_prob_zero(g, p, a, b);
          }
          const double a = s.exponential(), b1 = s.exponential(), b2 = s.exponential();
          return cond_prob_zero_pair(g, p, a, b1, b2);
        },
        mc, 3);
    const auto table = ecdf(values, c_grid);
    const bool bound = coll && p.p_j > 0.0 && std::isfinite(g.a) && std::isfinite(g.b);
    json rows = json::array();
    std::ostringstream t;
    t << "p,ecdf,std_error" << (bound ? ",lower_bound" : "") << '\n';
    for (const auto& c : table) {
      json row = {{"p", c.x}, {"ecdf", c.cdf}, {"std_error", c.std_error}};
      t << fmt("%.4g", c.x) << ',' << fmt("%.6f", c.cdf) << ',' << fmt("%.2g", c.std_error);
      if (bound) {
        const double lb = cdf_lower_bound(c.x, g.a, g.b, p.rho, p.p_j);
        row["lower_bound"] = lb;
        t << ',' << fmt("%.6f", lb);
      }
      t << '\n';
      rows.push_back(row);
    }
    json j = {{"mode", c_mode}, {"params", to_json(p)}, {"seed", mc.seed}, {"samples", mc.n_samples}, {"rows", rows}};
    emit(cc, j, t.str());
    return 0;
  }

  if (*policy) {
    if (yc.pj_opt) throw UsageError("--pj-opt applies to colluding secrecy fields only");
    const SystemParams p = resolve(yc);
    const MCConfig mc = mc_of(yc);
    if (y_table) {
      if (!(p.rho > 0.0)) throw UsageError("--table needs rho > 0");
      const auto rows = policy_table(p.rho, p.alpha, y_ladder, mc);
      json arr = json::array();
      for (const auto& r : rows)
        arr.push_back({{"p_j_db", r.p_j_db},
                       {"semi_origin", r.semi_origin},
                       {"semi_worst", r.semi_worst},
                       {"const_origin", r.const_origin},
                       {"const_worst", r.const_worst},
                       {"p1", r.p1},
                       {"p2", r.p2},
                       {"pi_rho_over_4", r.bound}});
      emit(yc, json{{"params", to_json(p)}, {"seed", mc.seed}, {"samples", mc.n_samples}, {"rows", arr}},
           format_policy_table(rows));
      return 0;
    }
    JamPolicy pol;
    pol.kind = y_policy == "constant"       ? JamPolicyKind::Constant
               : y_policy == "semi-dynamic" ? JamPolicyKind::SemiDynamic
               : y_policy == "full-dynamic" ? JamPolicyKind::FullDynamic
                                            : JamPolicyKind::GeneralDynamic;
    pol.threshold = y_threshold;
    auto g = point_gains(yp, p);
    json where;
    if (g) {
      where = point_json(yp);
    } else {
      // Worst default-grid location: largest conditional probability at unit fading.
      FieldRequest r;
      r.mode = LinkMode::Pairwise;
      r.quantity = FieldQuantity::ProbZero;
      r.params = p;
      r.mc = mc;
      const auto f = compute_field(r);
      const auto m = grid_extremum(f, true, [](double, double) { return true; });
      g = gains(EveLocation{m->x, m->y}, p.alpha);
      where = {{"x", m->x}, {"y", m->y}, {"chosen", "worst grid location"}};
    }
    const auto rep = policy_prob_zero(pol, *g, p, mc);
    json j = {{"policy", to_string(rep.kind)},
              {"location", where},
              {"params", to_json(p)},
              {"prob_zero", {{"mean", rep.prob_zero.mean}, {"std_error", rep.prob_zero.std_error}}},
              {"pi_rho_over_4", rep.pi_rho_over_4}};
    std::ostringstream t;
    t << "policy " << to_string(rep.kind) << " at " << where.dump() << '\n'
      << "P{S=0}" << (rep.acceptance ? " given transmission" : "") << ": " << fmt("%.6g", rep.prob_zero.mean) << " +- "
      << fmt("%.2g", rep.prob_zero.std_error) << '\n';
    if (rep.p1) j["p1"] = *rep.p1, t << "P1 = " << fmt("%.6g", *rep.p1) << '\n';
    if (rep.p2) j["p2"] = *rep.p2, t << "P2 = " << fmt("%.6g", *rep.p2) << '\n';
    if (rep.acceptance) {
      j["acceptance"] = {{"mean", rep.acceptance->mean}, {"std_error", rep.acceptance->std_error}};
      t << "acceptance probability " << fmt("%.6g", rep.acceptance->mean) << " +- "
        << fmt("%.2g", rep.acceptance->std_error) << '\n';
    }
    t << "pi*rho/4 = " << fmt("%.6g", rep.pi_rho_over_4) << '\n';
    emit(yc, j, t.str());
    return 0;
  }

  if (*verify) {
    if (v_list) {
      for (const auto& c : criteria()) std::cout << c.name << '\n';
      return 0;
    }
    std::set<std::string> wanted(suites.begin(), suites.end());
    const bool all = wanted.count("all") > 0;
    for (const auto& w : wanted) {
      bool known = w == "all";
      for (const auto& c : criteria()) known = known || w == c.name;
      if (!known) throw UsageError("unknown suite '" + w + "' (see verify --list)");
    }
    int failed = 0, ran = 0;
    for (const auto& c : criteria()) {
      if (!all && !wanted.count(c.name)) continue;
      const auto r = run_criterion(c, vo);
      std::cout << format_result(r) << std::endl;
      failed += !r.passed;
      ++ran;
    }
    std::cout << (ran - failed) << "/" << ran << " passed\n";
    return failed == 0 ? 0 : 2;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
