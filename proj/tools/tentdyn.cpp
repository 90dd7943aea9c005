#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "tent/chain.hpp"
#include "tent/error.hpp"
#include "tent/kneading.hpp"
#include "tent/omega.hpp"
#include "tent/symbolic.hpp"
#include "tent/tent_map.hpp"

#ifndef TENTDYN_VERSION
#define TENTDYN_VERSION "0.0.0"
#endif

namespace {

using namespace tent;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUndecided = 2;

int env_precision() {
  if (const char* env = std::getenv("TENT_PRECISION")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, std::string("TENT_PRECISION is not an integer: ") + env);
    }
  }
  return kDefaultPrecision;
}

/// `0.3` or `0.3@512` (explicit precision in bits).
BigFloat parse_point(const std::string& text, int precision) {
  auto at = text.find('@');
  if (at == std::string::npos) return BigFloat::parse(text, precision);
  int p = 0;
  try {
    p = std::stoi(text.substr(at + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad precision suffix in point " + text);
  }
  if (p < kMinPrecision) {
    throw Error(ErrorCode::InvalidArgument, "point precision below " + std::to_string(kMinPrecision));
  }
  return BigFloat::parse(text.substr(0, at), p);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string word_or_dash(const Word& w) { return w.empty() ? "-" : to_string(w); }

/// Structured key: value output with a reproducibility header.
class Report {
 public:
  explicit Report(std::ostream& os) : os_(os) {}

  void header(const std::string& command, const std::vector<std::pair<std::string, std::string>>& config,
              bool csv = false) {
    const char* lead = csv ? "# " : "";
    os_ << lead << "tentdyn: " << TENTDYN_VERSION << "\n";
    os_ << lead << "command: " << command << "\n";
    for (const auto& [k, v] : config) os_ << lead << "config." << k << ": " << v << "\n";
    if (!csv) os_ << "---\n";
  }
  template <typename V>
  void kv(const std::string& key, const V& value) {
    os_ << key << ": " << value << "\n";
  }
  void section(const std::string& name) { os_ << "[" << name << "]\n"; }
  std::ostream& raw() { return os_; }

 private:
  std::ostream& os_;
};

struct Common {
  std::string slope = "golden";
  int precision = 0;
  std::string output;
  std::uint64_t seed = 20240917;
};

/// Parses a net description. Pieces are joined with '+':
///   core                 interval net on [T^2(c), T(c)]
///   crit-orbit           the periodic critical orbit
///   fixed                the fixed points 0 and lambda/(1+lambda)
///   interval:a:b         interval net on [a, b]
///   points:a,b,c         isolated points
FiniteNet parse_net(const std::string& spec, const TentMap& T, double resolution) {
  const int p = T.precision();
  std::vector<BigFloat> pts;
  double res = 0.0;
  for (const auto& piece : split(spec, '+')) {
    if (piece == "core") {
      auto n = core_net(T, resolution);
      pts.insert(pts.end(), n.points().begin(), n.points().end());
      res = resolution;
    } else if (piece == "crit-orbit") {
      auto m = T.critical_period();
      if (!m) throw Error(ErrorCode::InvalidArgument, "crit-orbit needs a periodic critical point");
      CriticalOrbit orbit(T);
      for (std::size_t i = 0; i < *m; ++i) pts.push_back(orbit.point(i).midpoint());
    } else if (piece == "fixed") {
      pts.emplace_back(0.0, p);
      BigFloat one(1.0, p);
      pts.push_back(div(T.slope(), add(one, T.slope())));
    } else if (piece.rfind("interval:", 0) == 0) {
      auto parts = split(piece.substr(9), ':');
      if (parts.size() != 2) throw Error(ErrorCode::ParseError, "interval:a:b expected, got " + piece);
      auto n = FiniteNet::interval(parse_point(parts[0], p), parse_point(parts[1], p),
                                   2 * resolution, "");
      pts.insert(pts.end(), n.points().begin(), n.points().end());
      res = resolution;
    } else if (piece.rfind("points:", 0) == 0) {
      for (const auto& x : split(piece.substr(7), ',')) pts.push_back(parse_point(x, p));
    } else {
      throw Error(ErrorCode::ParseError, "unknown net piece '" + piece + "'");
    }
  }
  if (pts.empty()) throw Error(ErrorCode::InvalidArgument, "empty net");
  return FiniteNet(std::move(pts), res, spec);
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Uncertified:
    case ErrorCode::NoConvergence:
      return kExitUndecided;
    default:
      return kExitUsage;
  }
}

// ---------------------------------------------------------------------------

struct App {
  Common common;
  std::unique_ptr<std::ofstream> file;
  std::ostream* out = &std::cout;

  TentMap map() const { return resolve_slope(common.slope, common.precision); }

  std::vector<std::pair<std::string, std::string>> base_config() const {
    return {{"slope", common.slope},
            {"precision", std::to_string(common.precision)},
            {"seed", std::to_string(common.seed)}};
  }

  void open_output() {
    if (common.output.empty()) return;
    file = std::make_unique<std::ofstream>(common.output);
    if (!*file) throw Error(ErrorCode::InvalidArgument, "cannot open " + common.output);
    out = file.get();
  }
};

int cmd_itinerary(App& app, const std::string& x_text, std::size_t depth, const std::string& side) {
  TentMap T = app.map();
  BigFloat x = parse_point(x_text, T.precision());
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"x", x_text}, {"depth", std::to_string(depth)}, {"side", side}});
  r.header("itinerary", cfg);
  if (side == "exact") {
    auto it = itinerary_prefix(T, x, depth, T.tolerance());
    r.kv("itinerary", word_or_dash(it.word));
    r.kv("crit_hit", it.crit_hit ? std::to_string(*it.crit_hit) : "none");
    r.kv("certified", yes_no(it.certified));
    r.kv("first_uncertain", it.first_uncertain ? std::to_string(*it.first_uncertain) : "none");
    return it.certified ? kExitOk : kExitUndecided;
  }
  auto it = limit_itinerary(T, Interval::point(x), side == "upper" ? Side::Upper : Side::Lower,
                            depth, T.tolerance());
  r.kv("itinerary", word_or_dash(it.word));
  r.kv("certified", yes_no(it.certified));
  r.kv("first_uncertain", it.first_uncertain ? std::to_string(*it.first_uncertain) : "none");
  return it.certified ? kExitOk : kExitUndecided;
}

int cmd_kneading(App& app, std::size_t depth) {
  TentMap T = app.map();
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.emplace_back("depth", std::to_string(depth));
  r.header("kneading", cfg);
  KneadingInfo K = kneading_prefix(T, depth);
  r.kv("kneading", word_or_dash(K.prefix));
  r.kv("exact", K.exact ? K.exact->to_string() : "none");
  r.kv("m", K.period_m ? std::to_string(*K.period_m) : "none");
  r.kv("certified", yes_no(K.certified));
  r.kv("first_uncertain", K.first_uncertain ? std::to_string(*K.first_uncertain) : "none");
  if (K.period_m && *K.period_m >= 3) {
    CriticalData cd = critical_data(T);
    r.kv("delta_T", cd.delta_T.to_string(15));
    r.kv("min_gap", cd.min_gap.to_string(15));
    r.kv("accessible_side", to_string(cd.accessible));
    r.kv("head_parity", to_string(cd.head_parity));
    r.kv("parity_agrees", yes_no(cd.parity_agrees));
  }
  return K.certified ? kExitOk : kExitUndecided;
}

int cmd_slope_find(App& app, const std::string& seq, std::size_t depth) {
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"seq", seq}, {"depth", std::to_string(depth)}});
  r.header("slope-find", cfg);
  SeqView target = parse_sequence(seq);
  SlopeResult s = slope_from_kneading(target, depth, app.common.precision);
  r.kv("slope", s.value.to_string(20));
  r.kv("enclosure_lo", s.enclosure.lo.to_string(20));
  r.kv("enclosure_hi", s.enclosure.hi.to_string(20));
  r.kv("compare_depth", s.compare_depth);
  r.kv("iterations", s.iterations);
  return kExitOk;
}

int cmd_admissible(App& app, const std::string& seq, std::size_t depth) {
  TentMap T = app.map();
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"seq", seq}, {"depth", std::to_string(depth)}});
  r.header("admissible", cfg);
  KneadingInfo K = kneading_prefix(T, depth + 8);
  r.kv("kneading", K.symbolic ? K.symbolic->to_string() : to_string(K.prefix));
  auto v = admissible(parse_sequence(seq), K, depth);
  r.kv("status", to_string(v.status));
  r.kv("shifts_checked", v.shifts_checked);
  if (v.witness) {
    r.kv("witness.shift", v.witness->shift);
    r.kv("witness.depth", v.witness->depth);
    r.kv("witness.window", word_or_dash(v.witness->window));
    r.kv("witness.reason", v.witness->reason);
  }
  return kExitOk;
}

int cmd_precritical(App& app, std::size_t n, const std::string& prefix) {
  TentMap T = app.map();
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"n", std::to_string(n)}, {"prefix", prefix.empty() ? "-" : prefix}});
  r.header("precritical", cfg);
  if (!prefix.empty()) {
    KneadingInfo K = kneading_prefix(T, 4 * prefix.size() + 16);
    auto v = precritical_admissible(parse_word(prefix), K);
    r.kv("verdict", v.yes ? "YES" : "NO");
    r.kv("case", static_cast<int>(v.which));
    if (v.witness) {
      r.kv("witness.shift", v.witness->shift);
      r.kv("witness.window", word_or_dash(v.witness->window));
      r.kv("witness.reason", v.witness->reason);
    }
    return kExitOk;
  }
  PrecriticalSet P = precritical_set(T, n);
  r.kv("bound", P.bound);
  r.kv("count", P.points.size());
  r.kv("capped", yes_no(P.capped));
  r.section("points");
  for (const auto& e : P.points) {
    r.raw() << e.p.to_string(17) << " n_p=" << e.n_p << " address=" << word_or_dash(e.address)
            << "\n";
  }
  return kExitOk;
}

int cmd_signature(App& app, std::size_t n) {
  TentMap T = app.map();
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.emplace_back("n", std::to_string(n));
  r.header("signature", cfg);
  KneadingInfo K = kneading_prefix(T, n + 1);
  auto rho = signature(K.view(), n);
  std::string s;
  for (std::size_t i = 0; i < rho.size(); ++i) s += (i ? " " : "") + std::string(rho[i] > 0 ? "+1" : "-1");
  r.kv("kneading", word_or_dash(K.prefix));
  r.kv("signature", s);
  return K.certified ? kExitOk : kExitUndecided;
}

int cmd_shadow_criterion(App& app, const std::string& eps, std::size_t horizon) {
  TentMap T = app.map();
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"epsilon", eps}, {"horizon", std::to_string(horizon)}});
  r.header("shadow-criterion", cfg);
  auto c = shadowing_criterion(T, parse_point(eps, T.precision()), horizon);
  std::string status = to_string(c.status);
  if (c.status != ShadowCriterion::NotFound) status += "(" + std::to_string(c.witness) + ")";
  r.kv("status", status);
  r.kv("witness", c.witness);
  r.kv("clause", c.clause.empty() ? "-" : c.clause);
  r.kv("rho", c.rho);
  r.kv("k_symbol", to_char(c.k_symbol));
  r.kv("distance", c.distance);
  r.kv("horizon", c.horizon);
  return c.status == ShadowCriterion::Ambiguous ? kExitUndecided : kExitOk;
}

int cmd_shadow_point(App& app, const std::string& eps, double delta, std::size_t length,
                     const std::string& points) {
  TentMap T = app.map();
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"epsilon", eps},
                         {"delta", std::to_string(delta)},
                         {"length", std::to_string(length)},
                         {"points", points.empty() ? "random" : points}});
  r.header("shadow-point", cfg);
  std::vector<BigFloat> orbit;
  if (points.empty()) {
    orbit = random_pseudo_orbit(T, delta, length, app.common.seed);
  } else {
    for (const auto& x : split(points, ',')) orbit.push_back(parse_point(x, T.precision()));
  }
  BigFloat e = parse_point(eps, T.precision());
  auto res = shadow_point(T, orbit, e);
  r.kv("status", to_string(res.status));
  r.kv("length", orbit.size());
  r.kv("max_branches", res.max_branches);
  r.kv("precision", res.precision);
  if (res.enclosure) {
    r.kv("enclosure_lo", res.enclosure->lo.to_string(20));
    r.kv("enclosure_hi", res.enclosure->hi.to_string(20));
    r.kv("shadow_error", shadow_error(T, orbit, res.enclosure->midpoint()));
  }
  return kExitOk;
}

int cmd_ict_check(App& app, const std::string& net_spec, double resolution, const std::string& delta) {
  TentMap T = app.map();
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"net", net_spec},
                         {"resolution", std::to_string(resolution)},
                         {"delta", delta.empty() ? "auto" : delta}});
  r.header("ict-check", cfg);
  FiniteNet net = parse_net(net_spec, T, resolution);
  const double floor = std::ldexp(1.0, -T.precision() / 2);
  BigFloat d = delta.empty()
                   ? BigFloat(std::max(kDefaultChainScale * net.resolution(), floor), T.precision())
                   : parse_point(delta, T.precision());
  if (d.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  r.kv("delta", d.to_string(6));
  ChainGraph g = build_chain_graph(T, net, d);
  auto v = is_chain_transitive(g);
  r.kv("net_size", net.size());
  r.kv("edges", g.edge_count());
  r.kv("uncertain_edges", v.uncertain_edges);
  r.kv("verdict", v.yes ? "YES" : "NO");
  if (v.witness) {
    r.kv("witness.from", net[v.witness->first].to_string(17));
    r.kv("witness.to", net[v.witness->second].to_string(17));
  } else {
    r.kv("witness", "none");
  }
  return (!v.yes && v.uncertain_edges > 0) ? kExitUndecided : kExitOk;
}

int cmd_wi_check(App& app, const std::string& net_spec, double resolution, std::size_t granularity,
                 double slack) {
  TentMap T = app.map();
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"net", net_spec},
                         {"resolution", std::to_string(resolution)},
                         {"granularity", std::to_string(granularity)},
                         {"delta", slack > 0 ? std::to_string(slack) : "auto"}});
  r.header("wi-check", cfg);
  FiniteNet net = parse_net(net_spec, T, resolution);
  auto v = weak_incompressibility_check(T, net, granularity, slack);
  r.kv("net_size", net.size());
  r.kv("candidates", v.candidates);
  r.kv("slack", v.slack);
  r.kv("verdict", v.consistent ? "CONSISTENT" : "REFUTED");
  for (std::size_t i = 0; i < v.witness.size(); ++i) {
    const auto& [a, b] = v.witness[i];
    r.kv("witness." + std::to_string(i),
         "[" + net[a].to_string(12) + ", " + net[b - 1].to_string(12) + "] (" +
             std::to_string(b - a) + " points)");
  }
  return kExitOk;
}

int cmd_omega_approx(App& app, const std::string& x_text, std::size_t burn_in, std::size_t samples,
                     double tol) {
  TentMap T = app.map();
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"x", x_text},
                         {"burn_in", std::to_string(burn_in)},
                         {"samples", std::to_string(samples)},
                         {"cluster_tol", std::to_string(tol)}});
  r.header("omega-approx", cfg);
  auto o = omega_approx(T, parse_point(x_text, T.precision()), burn_in, samples, tol);
  r.kv("collected", o.collected);
  r.kv("clusters", o.net.size());
  r.kv("truncated", yes_no(o.truncated));
  if (!o.warning.empty()) r.kv("warning", o.warning);
  r.section("points");
  for (const auto& p : o.net.points()) r.raw() << p.to_string(12) << "\n";
  return o.truncated ? kExitUndecided : kExitOk;
}

int cmd_omega_member(App& app, const std::string& x_text, const std::string& y_text,
                     std::size_t depth, std::size_t min_occ, std::size_t horizon) {
  TentMap T = app.map();
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"x", x_text},
                         {"y", y_text},
                         {"depth", std::to_string(depth)},
                         {"min_occurrences", std::to_string(min_occ)},
                         {"horizon", std::to_string(horizon)}});
  r.header("omega-member", cfg);
  auto m = omega_membership(T, parse_point(x_text, T.precision()),
                            parse_point(y_text, T.precision()), depth, min_occ, horizon);
  r.kv("verdict", m.supported ? "SUPPORTED" : "REFUTED_AT_DEPTH");
  r.kv("preperiodic", yes_no(m.preperiodic));
  r.kv("clause", m.clause);
  r.kv("occurrences", m.occurrences);
  r.kv("last_occurrence", m.last_occurrence);
  if (!m.supported) {
    r.kv("failing_length", m.failing_length);
    r.kv("failing_word", word_or_dash(m.failing_word));
  }
  return kExitOk;
}

int cmd_counterexample(App& app, std::size_t k, std::size_t depth, std::size_t jmax,
                       std::size_t window) {
  Report r(*app.out);
  const std::size_t nmax = 3 * jmax + k + 4;
  std::vector<std::pair<std::string, std::string>> cfg = {
      {"k", std::to_string(k)},
      {"depth", std::to_string(depth)},
      {"jmax", std::to_string(jmax)},
      {"nmax", std::to_string(nmax)},
      {"window", std::to_string(window)},
      {"precision", std::to_string(app.common.precision)}};
  r.header("counterexample", cfg);
  Counterexample ce = build_counterexample(k, depth, jmax, nmax, app.common.precision);
  r.kv("kneading", ce.map.critical_itinerary() ? counterexample_kneading(k).to_string() : "-");
  r.kv("slope", ce.slope.value.to_string(15));
  r.kv("slope_width", ce.slope.enclosure.width().to_string(3));
  KneadingInfo K = kneading_prefix(ce.map.at_precision(app.common.precision), 40);
  Word expected = counterexample_kneading(k).prefix(40);
  r.kv("recomputed_kneading", word_or_dash(K.prefix));
  r.kv("recomputed_matches", yes_no(K.prefix == expected));
  r.kv("L_size", ce.L.size());
  for (double d : {0.05, 0.02, 0.01}) {
    auto v = is_chain_transitive(build_chain_graph(ce.map, ce.L, BigFloat(d, app.common.precision)));
    std::ostringstream key;
    key << "ict." << d;
    r.kv(key.str(), std::string(v.yes ? "YES" : "NO") +
                        " (uncertain_edges=" + std::to_string(v.uncertain_edges) + ")");
  }
  auto sc = shadowing_criterion(ce.map, BigFloat(0.01, app.common.precision), 10000);
  r.kv("shadow_criterion.0.01", std::string(to_string(sc.status)) +
                                    " (horizon=" + std::to_string(sc.horizon) + ")");
  auto cert = non_omega_certificate(k, window);
  r.section("certificate");
  for (const auto& c : cert.cases) {
    r.raw() << to_string(c.H) << ": " << to_string(c.verdict) << " window=" << word_or_dash(c.window)
            << " evidence=\"" << c.evidence << "\"\n";
  }
  r.section("L");
  for (std::size_t i = 0; i < ce.sequences.size(); ++i) {
    r.raw() << ce.sequences[i].to_string() << " <- " << ce.provenance[i] << "\n";
  }
  return kExitOk;
}

int cmd_construct(App& app, const std::string& net_spec, double resolution, std::size_t stages,
                  std::size_t burn_in, std::size_t samples) {
  TentMap T = app.map();
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"net", net_spec},
                         {"resolution", std::to_string(resolution)},
                         {"stages", std::to_string(stages)},
                         {"burn_in", std::to_string(burn_in)},
                         {"samples", std::to_string(samples)}});
  r.header("construct-omega", cfg);
  FiniteNet D = parse_net(net_spec, T, resolution);
  ConstructionOptions opt;
  opt.stages = stages;
  opt.burn_in = burn_in;
  opt.samples = samples;
  opt.seed = app.common.seed;
  auto tr = construct_omega_point(T, D, opt);
  r.kv("case", to_string(tr.which));
  if (!tr.note.empty()) r.kv("note", tr.note);
  for (const auto& st : tr.stages) {
    r.section("stage " + std::to_string(st.n));
    r.kv("q", st.q);
    r.kv("F_size", st.F.size());
    r.kv("epsilon", st.epsilon);
    r.kv("eta", st.eta);
    r.kv("retries", st.retries);
    r.kv("work_net_size", st.work_net_size);
    r.kv("extension_points", st.extension_points);
    r.kv("precritical_count", st.precritical_count);
    r.kv("calibration.seed", st.calibration.seed);
    r.kv("calibration.trials", st.calibration.trials);
    std::ostringstream grid;
    for (const auto& [d, passed] : st.calibration.grid) grid << d << ":" << passed << " ";
    r.kv("calibration.grid", grid.str());
    for (std::size_t idx : st.segments) {
      const auto& s = tr.segments[idx];
      r.raw() << "segment " << s.kind << st.n << ": length=" << s.length
              << " padded=" << yes_no(s.padded) << " check=" << to_string(s.check)
              << " shadow_error=" << s.shadow_error << "\n";
    }
  }
  if (tr.which != ConstructionCase::Constructed) return kExitOk;
  r.section("result");
  r.kv("repeats", tr.repeats);
  r.kv("gamma_length", tr.gamma.size());
  r.kv("gamma_head", to_string(Word(tr.gamma.begin(),
                                    tr.gamma.begin() + std::min<std::size_t>(80, tr.gamma.size()))));
  if (tr.gamma_admissible) r.kv("gamma_admissible", to_string(tr.gamma_admissible->status));
  r.kv("orbit_checks", tr.orbit_checks);
  r.kv("orbit_check_failures", tr.orbit_check_failures);
  if (tr.y) r.kv("y", tr.y->midpoint().to_string(30));
  r.kv("y_precision", tr.y_precision);
  if (tr.omega) {
    r.kv("omega_clusters", tr.omega->net.size());
    r.kv("omega_truncated", yes_no(tr.omega->truncated));
  }
  r.kv("hausdorff", tr.hausdorff);
  bool valid = tr.orbit_check_failures == 0;
  for (const auto& s : tr.segments) valid = valid && s.check == OrbitCheck::Valid;
  return valid ? kExitOk : kExitUndecided;
}

int cmd_plot(App& app, const std::string& kind, const std::string& x_text, std::size_t n,
             const std::string& net_spec, double resolution, std::size_t k) {
  Report r(*app.out);
  auto cfg = app.base_config();
  cfg.insert(cfg.end(), {{"kind", kind},
                         {"x", x_text},
                         {"n", std::to_string(n)},
                         {"net", net_spec},
                         {"resolution", std::to_string(resolution)},
                         {"k", std::to_string(k)}});
  r.header("plot-data", cfg, true);
  auto& os = r.raw();
  if (kind == "certificate") {
    auto cert = non_omega_certificate(k, 60);
    os << "H,verdict,window,shift\n";
    for (const auto& c : cert.cases) {
      os << to_string(c.H) << "," << to_string(c.verdict) << "," << word_or_dash(c.window) << ","
         << c.shift << "\n";
    }
    return kExitOk;
  }
  TentMap T = app.map();
  if (kind == "orbit") {
    os << "index,value\n";
    auto pts = orbit_prefix(T, parse_point(x_text, T.precision()), n);
    for (std::size_t i = 0; i < pts.size(); ++i) os << i << "," << pts[i].to_string(17) << "\n";
  } else if (kind == "cobweb") {
    os << "x,y\n";
    auto pts = orbit_prefix(T, parse_point(x_text, T.precision()), n + 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      os << pts[i].to_string(17) << "," << pts[i + 1].to_string(17) << "\n";
    }
  } else if (kind == "net") {
    os << "index,value\n";
    FiniteNet net = parse_net(net_spec, T, resolution);
    for (std::size_t i = 0; i < net.size(); ++i) os << i << "," << net[i].to_string(17) << "\n";
  } else if (kind == "omega") {
    os << "index,value\n";
    auto o = omega_approx(T, parse_point(x_text, T.precision()), 1000, n);
    for (std::size_t i = 0; i < o.net.size(); ++i) os << i << "," << o.net[i].to_string(17) << "\n";
  } else if (kind == "precritical") {
    os << "p,n_p\n";
    for (const auto& e : precritical_set(T, n).points) os << e.p.to_string(17) << "," << e.n_p << "\n";
  } else if (kind == "graph") {
    os << "x,y\n";
    FiniteNet net = parse_net(net_spec, T, resolution);
    for (const auto& x : net.points()) os << x.to_string(17) << "," << eval(T, x).to_string(17) << "\n";
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown plot kind " + kind);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Symbolic and chain dynamics of tent maps", "tentdyn"};
  cli.set_version_flag("--version", TENTDYN_VERSION);
  cli.require_subcommand(1);

  App app;
  int result = kExitOk;
  std::function<int()> run;

  auto common = [&](CLI::App* sub, bool slope = true) {
    if (slope) sub->add_option("--slope", app.common.slope, "golden, kneading:<seq> or a decimal");
    sub->add_option("--precision", app.common.precision, "working precision in bits");
    sub->add_option("--output,-o", app.common.output, "write to a file instead of stdout");
    sub->add_option("--seed", app.common.seed, "random seed");
  };

  // Option storage lives for the whole of main.
  std::string x = "0.5", y, seq, side = "exact", prefix, eps = "0.05", delta_text,
              points, net = "core", kind = "orbit";
  std::size_t depth = 40, horizon = 10000, n = 3, length = 200, granularity = 64, burn_in = 1000,
              samples = 10000, min_occ = 3, k = 2, jmax = 6, window = 60, stages = 5;
  double delta = 0.01, resolution = 0.02, tol = 1e-3;

  auto* it = cli.add_subcommand("itinerary", "itinerary of a point");
  common(it);
  it->add_option("--x", x, "point, optionally with @bits");
  it->add_option("--depth", depth);
  it->add_option("--side", side)->check(CLI::IsMember({"exact", "upper", "lower"}));
  it->callback([&] { run = [&] { return cmd_itinerary(app, x, depth, side); }; });

  auto* kn = cli.add_subcommand("kneading", "kneading sequence and critical data");
  common(kn);
  kn->add_option("--depth", depth);
  kn->callback([&] { run = [&] { return cmd_kneading(app, depth); }; });

  auto* sf = cli.add_subcommand("slope-find", "slope realising a kneading sequence");
  common(sf, false);
  sf->add_option("--seq", seq, "PRE(PERIOD) or a finite prefix")->required();
  sf->add_option("--depth", depth);
  sf->callback([&] { run = [&] { return cmd_slope_find(app, seq, depth); }; });

  auto* ad = cli.add_subcommand("admissible", "admissibility of a sequence against K");
  common(ad);
  ad->add_option("--seq", seq)->required();
  ad->add_option("--depth", depth);
  ad->callback([&] { run = [&] { return cmd_admissible(app, seq, depth); }; });

  auto* pc = cli.add_subcommand("precritical", "precritical set, or the prefix clause with --prefix");
  common(pc);
  pc->add_option("--n", n);
  pc->add_option("--prefix", prefix, "word over {0,1} preceding C");
  pc->callback([&] { run = [&] { return cmd_precritical(app, n, prefix); }; });

  auto* sg = cli.add_subcommand("signature", "signature sequence of K");
  common(sg);
  sg->add_option("--n", n);
  sg->callback([&] { run = [&] { return cmd_signature(app, n); }; });

  auto* sc = cli.add_subcommand("shadow-criterion", "shadowing criterion at epsilon");
  common(sc);
  sc->add_option("--epsilon", eps);
  sc->add_option("--horizon", horizon);
  sc->callback([&] { run = [&] { return cmd_shadow_criterion(app, eps, horizon); }; });

  auto* sp = cli.add_subcommand("shadow-point", "shadow a pseudo-orbit");
  common(sp);
  sp->add_option("--epsilon", eps);
  sp->add_option("--delta", delta, "kick size for a random pseudo-orbit");
  sp->add_option("--length", length);
  sp->add_option("--points", points, "comma separated pseudo-orbit");
  sp->callback([&] { run = [&] { return cmd_shadow_point(app, eps, delta, length, points); }; });

  auto* ic = cli.add_subcommand("ict-check", "internal chain transitivity of a net");
  common(ic);
  ic->add_option("--net", net, "core, crit-orbit, fixed, interval:a:b, points:a,b joined by +");
  ic->add_option("--resolution", resolution);
  ic->add_option("--delta", delta_text, "chain step; default 2.5 * resolution");
  ic->callback([&] { run = [&] { return cmd_ict_check(app, net, resolution, delta_text); }; });

  auto* wi = cli.add_subcommand("wi-check", "weak incompressibility of a net");
  common(wi);
  wi->add_option("--net", net);
  wi->add_option("--resolution", resolution);
  wi->add_option("--granularity", granularity);
  double slack = 0.0;
  wi->add_option("--delta", slack, "image slack; default 2.5 * resolution");
  wi->callback([&] { run = [&] { return cmd_wi_check(app, net, resolution, granularity, slack); }; });

  auto* oa = cli.add_subcommand("omega-approx", "clustered tail of an orbit");
  common(oa);
  oa->add_option("--x", x);
  oa->add_option("--burn-in", burn_in);
  oa->add_option("--samples", samples);
  oa->add_option("--cluster-tol", tol);
  oa->callback([&] { run = [&] { return cmd_omega_approx(app, x, burn_in, samples, tol); }; });

  auto* om = cli.add_subcommand("omega-member", "finite-depth test of y in omega(x)");
  common(om);
  om->add_option("--x", x);
  om->add_option("--y", y)->required();
  om->add_option("--depth", depth);
  om->add_option("--min-occurrences", min_occ);
  om->add_option("--horizon", horizon);
  om->callback([&] { run = [&] { return cmd_omega_member(app, x, y, depth, min_occ, horizon); }; });

  auto* ce = cli.add_subcommand("counterexample", "ICT set that is not an omega-limit set");
  common(ce, false);
  ce->add_option("--k", k);
  ce->add_option("--depth", depth);
  ce->add_option("--jmax", jmax);
  ce->add_option("--window", window);
  ce->callback([&] { run = [&] { return cmd_counterexample(app, k, depth, jmax, window); }; });

  auto* co = cli.add_subcommand("construct-omega", "point whose omega-limit set approximates a net");
  common(co);
  co->add_option("--net", net);
  co->add_option("--resolution", resolution);
  co->add_option("--stages", stages);
  co->add_option("--burn-in", burn_in);
  co->add_option("--samples", samples);
  co->callback([&] {
    run = [&] { return cmd_construct(app, net, resolution, stages, burn_in, samples); };
  });

  auto* pd = cli.add_subcommand("plot-data", "CSV for external plotting");
  common(pd);
  pd->add_option("--kind", kind)
      ->check(CLI::IsMember({"orbit", "cobweb", "net", "omega", "precritical", "graph", "certificate"}));
  pd->add_option("--x", x);
  pd->add_option("--n", n);
  pd->add_option("--net", net);
  pd->add_option("--resolution", resolution);
  pd->add_option("--k", k);
  pd->callback([&] { run = [&] { return cmd_plot(app, kind, x, n, net, resolution, k); }; });

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return cli.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.common.precision == 0) app.common.precision = env_precision();
    if (app.common.precision < kMinPrecision) {
      std::cerr << "error: precision " << app.common.precision << " is below the floor of "
                << kMinPrecision << " bits\n";
      return kExitUsage;
    }
    app.open_output();
    result = run();
  } catch (const Error& e) {
    *app.out << "error: " << to_string(e.code()) << "\n";
    *app.out << "message: " << e.what() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code());
  }
  return result;
}
