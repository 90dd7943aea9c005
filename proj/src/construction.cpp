#include <algorithm>
#include <cmath>

#include "tent/error.hpp"
#include "tent/omega.hpp"

namespace tent {

namespace {

bool less(const BigFloat& a, const BigFloat& b) { return a < b; }

std::size_t index_of(const FiniteNet& net, const BigFloat& x) {
  const auto& pts = net.points();
  auto it = std::lower_bound(pts.begin(), pts.end(), x, less);
  if (it == pts.end() || !(*it == x)) {
    throw Error(ErrorCode::StageFailed, "point " + x.to_string(12) + " missing from work net");
  }
  return static_cast<std::size_t>(it - pts.begin());
}

/// Appends path b (which starts where a ends) to a.
void join(std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.empty()) {
    a = b;
    return;
  }
  a.insert(a.end(), b.begin() + 1, b.end());
}

double nearest_distance(const FiniteNet& P, const BigFloat& x) {
  return P.empty() ? 1.0 : P.distance_to(x);
}

std::vector<BigFloat> greedy_cover(const FiniteNet& candidates, const FiniteNet& P, double radius,
                                   double keep_out) {
  std::vector<BigFloat> out;
  BigFloat reach(-1.0, 64);
  BigFloat R(0.9 * radius, 64);
  for (const auto& x : candidates.points()) {
    if (nearest_distance(P, x) < keep_out) continue;
    if (x > reach) {
      out.push_back(x);
      reach = add(x, R);
    }
  }
  return out;
}

double dyadic_below(double bound, std::size_t n) {
  int k = std::max(static_cast<int>(n) + 1, static_cast<int>(std::ceil(-std::log2(bound))));
  while (std::ldexp(1.0, -k) >= bound) ++k;
  return std::ldexp(1.0, -k);
}

}  // namespace

const char* to_string(ConstructionCase c) {
  switch (c) {
    case ConstructionCase::Constructed: return "CONSTRUCTED";
    case ConstructionCase::OrbitOfC: return "ORBIT_OF_C";
    case ConstructionCase::NoCriticalPoint: return "NO_CRITICAL_POINT";
    case ConstructionCase::Zero: return "ZERO";
  }
  return "?";
}

ConstructionTrace construct_omega_point(const TentMap& T, const FiniteNet& D,
                                        const ConstructionOptions& opt) {
  if (D.empty() || opt.stages < 1) {
    throw Error(ErrorCode::InvalidArgument, "construction needs a non-empty D and >= 1 stage");
  }
  ConstructionTrace tr;
  const int prec = std::max(T.precision(), D.precision());
  const double res = D.resolution();

  if (D.size() == 1 && D[0].is_zero()) {
    tr.which = ConstructionCase::Zero;
    tr.note = "D = {0} is the omega-limit set of 0";
    tr.y = Interval::point(D[0]);
    return tr;
  }

  CriticalData cd = critical_data(T);
  const TentMap& Tc = cd.map;
  const std::size_t m = cd.period_m;
  const BigFloat c = half(prec);

  {
    BigFloat top = Tc.critical_value().hi;
    BigFloat bottom = eval(Tc, Tc.critical_value().midpoint());
    BigFloat slack(res + 1e-12, prec);
    for (const auto& x : D.points()) {
      if (x < sub(bottom, slack) || x > add(top, slack)) {
        throw Error(ErrorCode::PreconditionFailed,
                    "D is not inside [T^2(c), T(c)]: " + x.to_string(12));
      }
    }
  }
  for (double scale : {kDefaultChainScale, 2 * kDefaultChainScale}) {
    BigFloat delta(std::max(scale * res, scale * 1e-9), prec);
    auto v = is_chain_transitive(build_chain_graph(Tc, D, delta));
    if (!v.yes) {
      throw Error(ErrorCode::PreconditionFailed,
                  "D is not chain transitive at delta = " + delta.to_string(6) + " (no chain " +
                      std::to_string(v.witness->first) + " -> " +
                      std::to_string(v.witness->second) + ")");
    }
  }

  if (!D.covers(c, res)) {
    tr.which = ConstructionCase::NoCriticalPoint;
    tr.note = "c is not in D; D avoids the critical value orbit and is handled by the "
              "no-critical-point case, witnessed by its chain graph";
    return tr;
  }

  {
    bool isolated = true;
    for (const auto& comp : D.components()) isolated = isolated && !comp.is_interval();
    bool on_orbit = isolated;
    for (const auto& x : D.points()) {
      bool hit = false;
      for (const auto& o : cd.orbit) hit = hit || abs(sub(x, o.midpoint())) <= res + 1e-12;
      on_orbit = on_orbit && hit;
    }
    if (on_orbit) {
      tr.which = ConstructionCase::OrbitOfC;
      tr.note = "c is isolated in D, so D = Orb(c) = omega(c)";
      tr.y = Interval::point(c);
      tr.omega = omega_approx(Tc, c, opt.burn_in, opt.samples, opt.cluster_tol);
      tr.hausdorff = hausdorff(tr.omega->net, D);
      return tr;
    }
  }

  const std::size_t N = opt.stages;
  {
    PrecriticalSet deepest = precritical_set(Tc, N, m);
    FiniteNet P = deepest.net();
    FiniteNet cand = res > 0 ? D.refine(std::min(res, std::ldexp(1.0, -static_cast<int>(N) - 2)))
                             : D;
    double best = -1.0;
    for (const auto& x : cand.points()) {
      double d = nearest_distance(P, x);
      if (d > best) {
        best = d;
        tr.anchor = x;
      }
    }
  }
  const BigFloat& anchor = tr.anchor;

  KneadingInfo K = kneading_prefix(Tc, 4 * m + 8);
  std::optional<BigFloat> prev_last;
  std::optional<std::size_t> loop_c, loop_d;

  for (std::size_t n = 1; n <= N; ++n) {
    StageRecord st;
    st.n = n;
    st.q = std::max(n, 2 * m);
    PrecriticalSet P = precritical_set(Tc, n, m);
    FiniteNet Pnet = P.net();
    st.precritical_count = P.points.size();
    Extension ext = extend_ict(Tc, D, n, cd, P);
    Extension ext1 = extend_ict(Tc, D, n + 1, cd, precritical_set(Tc, n + 1, m));
    std::vector<BigFloat> added = ext.seed;
    for (const auto& cl : ext.clusters) added.insert(added.end(), cl.points.begin(), cl.points.end());
    st.extension_points = added.size();

    std::vector<BigFloat> F{anchor};
    for (const auto& e : P.points) {
      for (const auto& cl : ext1.clusters) {
        if (!(cl.p == e.p) || cl.points.empty()) continue;
        const BigFloat* far = &cl.points.front();
        for (const auto& x : cl.points) {
          if (abs(sub(x, e.p)) > abs(sub(*far, e.p))) far = &x;
        }
        F.push_back(*far);
        added.push_back(*far);
      }
    }
    const double cover = std::ldexp(1.0, -static_cast<int>(n));
    FiniteNet cand = res > 0 ? ext.net.refine(std::min(res, cover / 8)) : ext.net;
    auto G = greedy_cover(cand, Pnet, cover, cover / 2);
    F.insert(F.end(), G.begin(), G.end());
    std::sort(F.begin(), F.end(), less);
    F.erase(std::unique(F.begin(), F.end()), F.end());
    st.F = F;

    double gap = cover;
    for (const auto& f : F) gap = std::min(gap, nearest_distance(Pnet, f));
    if (n - 1 < opt.epsilon_schedule.size()) gap = std::min(gap, opt.epsilon_schedule[n - 1]);
    if (!(gap > 0)) {
      throw Error(ErrorCode::StageFailed, "stage " + std::to_string(n) + ": F_n meets P_n");
    }
    st.epsilon = dyadic_below(gap, n);
    const BigFloat eps(st.epsilon, prec);

    std::vector<double> grid;
    for (int i = 1; i <= 12; ++i) grid.push_back(std::ldexp(st.epsilon, -i));
    try {
      st.calibration = calibrate_shadowing_modulus(Tc, eps, opt.trials, grid,
                                                   opt.seed + 7919 * n, opt.calibration_length);
    } catch (const Error& e) {
      throw Error(ErrorCode::StageFailed,
                  "stage " + std::to_string(n) + ": calibration failed: " + e.what());
    }

    std::vector<BigFloat> extra = added;
    extra.insert(extra.end(), F.begin(), F.end());
    if (prev_last) extra.push_back(*prev_last);

    std::string failure;
    bool done = false;
    for (std::size_t attempt = 0; attempt <= opt.max_retries && !done; ++attempt) {
      st.retries = attempt;
      st.eta = std::ldexp(st.calibration.delta, -static_cast<int>(attempt));
      FiniteNet W = (res > 0 ? ext.net.refine(st.eta / 2) : ext.net)
                        .with_points(extra, "work n=" + std::to_string(n));
      st.work_net_size = W.size();
      ChainGraph g = build_chain_graph(Tc, W, BigFloat(st.eta, prec));
      const std::size_t s0 = index_of(W, anchor);

      std::vector<Segment> made;
      auto make = [&](char kind, std::vector<std::size_t> path) -> bool {
        Segment seg;
        seg.kind = kind;
        seg.stage = n;
        if (path.size() < st.q + 2) {
          auto cycle = find_path(g, s0, s0);
          while (path.size() < st.q + 2) {
            if (kind == 'c') {
              std::vector<std::size_t> p = cycle;
              join(p, path);
              path = std::move(p);
            } else {
              join(path, cycle);
            }
            seg.padded = true;
          }
        }
        for (std::size_t k : path) seg.pseudo_orbit.push_back(W[k]);
        seg.length = seg.pseudo_orbit.size() - 1;
        seg.check = verify_pseudo_orbit(Tc, seg.pseudo_orbit, BigFloat(st.eta, prec)).status;
        ShadowResult sh = shadow_point(Tc, seg.pseudo_orbit, eps);
        if (sh.status != ShadowStatus::Found) {
          failure = std::string("shadowing ") + kind + " segment: " + to_string(sh.status);
          return false;
        }
        seg.enclosure = *sh.enclosure;
        BigFloat mid = seg.enclosure.midpoint();
        seg.shadow_error = shadow_error(Tc, seg.pseudo_orbit, mid);
        TentMap Tp = Tc.at_precision(sh.precision);
        auto it = itinerary_prefix(Tp, mid, seg.length + st.q, Tp.tolerance());
        if (!it.certified || it.crit_hit) {
          failure = std::string("uncertified itinerary of ") + kind + " segment";
          return false;
        }
        seg.word = std::move(it.word);
        made.push_back(std::move(seg));
        return true;
      };

      try {
        bool ok = true;
        if (prev_last) ok = make('d', find_path(g, index_of(W, *prev_last), s0));
        std::vector<std::size_t> path{s0};
        for (const auto& f : F) {
          if (f == anchor) continue;
          join(path, find_path(g, path.back(), index_of(W, f)));
        }
        if (path.size() == 1) path = find_path(g, s0, s0);
        std::size_t last = path.back();
        ok = ok && make('c', std::move(path));
        if (ok && n == N) ok = make('d', find_path(g, last, s0));
        if (!ok) continue;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoPath) throw;
        failure = e.what();
        continue;
      }
      for (auto& seg : made) {
        st.segments.push_back(tr.segments.size());
        if (seg.kind == 'c') {
          prev_last = seg.pseudo_orbit.back();
          loop_c = tr.segments.size();
        } else if (n == N && loop_c) {
          loop_d = tr.segments.size();
        }
        tr.segments.push_back(std::move(seg));
      }
      done = true;
    }
    if (!done) {
      throw Error(ErrorCode::StageFailed, "stage " + std::to_string(n) + ": " + failure);
    }
    tr.stages.push_back(std::move(st));
  }

  // gamma: c_1 d_1 c_2 ... c_N d_N, then (c_N d_N) repeated to cover the window.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < tr.segments.size(); ++i) order.push_back(i);
  auto gamma_len = [&]() {
    std::size_t L = 0;
    for (std::size_t i : order) L += tr.segments[i].length;
    return L;
  };
  const std::size_t need = opt.burn_in + opt.samples + 64;
  while (gamma_len() < need) {
    order.push_back(*loop_c);
    order.push_back(*loop_d);
    ++tr.repeats;
  }
  for (std::size_t i : order) {
    const auto& s = tr.segments[i];
    tr.gamma.insert(tr.gamma.end(), s.word.begin(), s.word.begin() + s.length);
  }

  std::size_t t = 0;
  for (std::size_t i : order) {
    const auto& s = tr.segments[i];
    const std::size_t q = tr.stages[s.stage - 1].q;
    for (std::size_t j = 0; j < s.length && t + j + q <= tr.gamma.size(); ++j) {
      ++tr.orbit_checks;
      if (!std::equal(s.word.begin() + j, s.word.begin() + j + q, tr.gamma.begin() + t + j)) {
        ++tr.orbit_check_failures;
      }
    }
    t += s.length;
  }

  tr.gamma_admissible = admissible(SeqView(tr.gamma), K, tr.gamma.size());
  if (tr.gamma_admissible->status == Admissibility::Violates) {
    throw Error(ErrorCode::StageFailed, "gamma violates admissibility at shift " +
                                            std::to_string(tr.gamma_admissible->witness->shift));
  }
  tr.y_precision = static_cast<int>(std::ceil(tr.gamma.size() * Tc.log2_slope())) + 128;
  TentMap Ty = Tc.at_precision(tr.y_precision);
  tr.y = itinerary_to_point(Ty, SeqView(tr.gamma), tr.gamma.size());
  tr.omega = omega_approx(Ty, tr.y->midpoint(), opt.burn_in, opt.samples, opt.cluster_tol);
  tr.hausdorff = hausdorff(tr.omega->net, D);
  return tr;
}

}  // namespace tent
