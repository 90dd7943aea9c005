#include <algorithm>
#include <cmath>

#include "tent/error.hpp"
#include "tent/omega.hpp"

namespace tent {

namespace {

constexpr int kPrecisionBudget = 1 << 16;

int orbit_precision(const TentMap& T, std::size_t steps, int floor) {
  double bits = static_cast<double>(steps) * std::max(T.log2_slope(), 0.0) + 64;
  int p = static_cast<int>(std::min<double>(std::ceil(bits), kPrecisionBudget));
  return std::max(p, floor);
}

bool less(const BigFloat& a, const BigFloat& b) { return a < b; }

std::vector<BigFloat> cluster(std::vector<BigFloat> v, double tol) {
  std::sort(v.begin(), v.end(), less);
  std::vector<BigFloat> out;
  BigFloat gap(tol / 2, 64);
  for (auto& x : v) {
    if (out.empty() || sub(x, out.back()) >= gap) out.push_back(std::move(x));
  }
  return out;
}

/// Smallest p <= max_period with w[i] == w[i + p] over the second half of w.
std::optional<std::size_t> tail_period(const Word& w, std::size_t max_period) {
  const std::size_t h = w.size();
  for (std::size_t p = 1; p <= max_period && 2 * p <= h; ++p) {
    bool ok = true;
    for (std::size_t i = h / 2; i + p < h && ok; ++i) ok = w[i] == w[i + p];
    if (ok) return p;
  }
  return std::nullopt;
}

Word itinerary_of(const TentMap& T, const BigFloat& x, std::size_t n, const char* what) {
  if (T.critical_itinerary() && x == 0.5) return T.critical_itinerary()->prefix(n);
  TentMap Tp = T.at_precision(orbit_precision(T, n, std::max(T.precision(), x.precision())));
  auto it = itinerary_prefix(Tp, x.with_precision(Tp.precision()), n, Tp.tolerance());
  if (!it.certified) {
    throw Error(ErrorCode::Uncertified, std::string("itinerary of ") + what +
                                            " undecided at step " +
                                            std::to_string(*it.first_uncertain));
  }
  return it.word;
}

}  // namespace

OmegaApprox omega_approx(const TentMap& T, const BigFloat& x, std::size_t burn_in,
                         std::size_t samples, double cluster_tol) {
  if (burn_in < 1 || samples < 1 || !(cluster_tol > 0)) {
    throw Error(ErrorCode::InvalidArgument, "omega_approx needs burn_in, samples >= 1");
  }
  OmegaApprox out;
  out.burn_in = burn_in;
  out.samples = samples;
  out.cluster_tol = cluster_tol;
  const std::size_t total = burn_in + samples;
  std::vector<BigFloat> pts;

  if (T.critical_itinerary() && x == 0.5) {
    CriticalOrbit orbit(T);
    for (std::size_t i = burn_in; i < total; ++i) pts.push_back(orbit.point(i).midpoint());
    out.collected = samples;
  } else {
    const int p = orbit_precision(T, total, std::max(T.precision(), x.precision()));
    TentMap Tp = T.at_precision(p);
    BigFloat limit(cluster_tol / 4, 64);
    Interval X = Interval::point(x.with_precision(p));
    for (std::size_t i = 0; i < total; ++i) {
      if (X.width() > limit) {
        out.truncated = true;
        out.warning = "orbit enclosure exceeded cluster_tol/4 at step " + std::to_string(i) +
                      " (precision " + std::to_string(p) + " bits)";
        break;
      }
      if (i >= burn_in) pts.push_back(X.midpoint());
      X = eval(Tp, X);
    }
    out.collected = pts.size();
  }
  out.net = FiniteNet(cluster(std::move(pts), cluster_tol), cluster_tol / 2, "omega");
  return out;
}

namespace {

/// Start positions of `needle` in `hay`, where C on either side matches any
/// symbol (a point at c lies in the closure of both cylinders).
std::vector<std::size_t> find_cylinder(const Word& needle, const Word& hay) {
  std::vector<std::size_t> out;
  if (needle.size() > hay.size()) return out;
  for (std::size_t p = 0; p + needle.size() <= hay.size(); ++p) {
    bool match = true;
    for (std::size_t i = 0; i < needle.size() && match; ++i) {
      Symbol a = needle[i], b = hay[p + i];
      match = a == b || a == Symbol::Crit || b == Symbol::Crit;
    }
    if (match) out.push_back(p);
  }
  return out;
}

}  // namespace

OmegaMembership omega_membership(const TentMap& T, const BigFloat& x, const BigFloat& y,
                                 std::size_t depth, std::size_t min_occurrences,
                                 std::size_t horizon) {
  if (depth < 1 || horizon < depth || min_occurrences < 1) {
    throw Error(ErrorCode::InvalidArgument, "need 1 <= depth <= horizon, min_occurrences >= 1");
  }
  OmegaMembership out;
  Word ix = itinerary_of(T, x, horizon, "x");
  out.preperiodic = tail_period(ix, std::max<std::size_t>(horizon / 3, 1)).has_value();

  std::vector<std::pair<std::string, Word>> targets;
  if (out.preperiodic) {
    targets.emplace_back("itin(y)", itinerary_of(T, y, depth, "y"));
  } else {
    TentMap Tp = T.at_precision(orbit_precision(T, depth, std::max(T.precision(), y.precision())));
    Interval Y = Interval::point(y.with_precision(Tp.precision()));
    for (Side side : {Side::Upper, Side::Lower}) {
      auto lim = limit_itinerary(Tp, Y, side, depth, Tp.tolerance());
      if (!lim.certified) {
        throw Error(ErrorCode::Uncertified, "limit itinerary of y undecided at step " +
                                                std::to_string(*lim.first_uncertain));
      }
      targets.emplace_back(side == Side::Upper ? "itin+(y)" : "itin-(y)", lim.word);
    }
  }

  std::vector<char> alive(targets.size(), 1);
  for (std::size_t l = 1; l <= depth; ++l) {
    bool any = false;
    std::size_t best_count = 0, best_last = 0;
    Word best_word;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (!alive[t]) continue;
      Word needle(targets[t].second.begin(), targets[t].second.begin() + l);
      auto pos = find_cylinder(needle, ix);
      std::size_t last = pos.empty() ? 0 : pos.back();
      bool ok = pos.size() >= min_occurrences && !pos.empty() && 2 * last >= horizon;
      if (ok) {
        any = true;
        out.clause = targets[t].first;
        out.occurrences = pos.size();
        out.last_occurrence = last;
      } else {
        alive[t] = 0;
        if (pos.size() >= best_count) {
          best_count = pos.size();
          best_last = last;
          best_word = needle;
        }
      }
    }
    if (!any) {
      out.supported = false;
      out.failing_length = l;
      out.failing_word = best_word;
      out.occurrences = best_count;
      out.last_occurrence = best_last;
      return out;
    }
  }
  return out;
}

const char* to_string(AccessibleSide s) {
  return s == AccessibleSide::Left ? "LEFT_OF_C" : "RIGHT_OF_C";
}

CriticalData critical_data(const TentMap& T, std::size_t max_period) {
  KneadingInfo K = kneading_prefix(T, 2 * max_period + 2);
  if (!K.period_m || *K.period_m < 3) {
    throw Error(ErrorCode::PreconditionFailed,
                "critical point of " + T.label() + " is not periodic with period >= 3");
  }
  const std::size_t m = *K.period_m;
  TentMap Tc = T.critical_itinerary() ? T : T.with_critical_itinerary(*K.critical_itinerary());
  CriticalData out{m, BigFloat(T.precision()), AccessibleSide::Left, {}, BigFloat(T.precision()),
                   Parity::Even, true, Tc};
  CriticalOrbit orbit(Tc);
  for (std::size_t i = 0; i < m; ++i) out.orbit.push_back(orbit.point(i));

  const int p = T.precision();
  BigFloat gap(1.0, p);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      BigFloat d = abs(sub(out.orbit[i].midpoint(), out.orbit[j].midpoint()));
      if (d < gap) gap = d;
    }
  }
  out.min_gap = gap;
  out.delta_T = div(gap, pow(T.slope(), static_cast<long>(m)));

  // T^m is monotone on [c, c + delta_T] and fixes c, so the side is read off
  // the image of the endpoint.
  Interval z = Interval::point(add(T.critical_point(), out.delta_T));
  for (std::size_t i = 0; i < m; ++i) z = eval(T, z);
  if (z.lo > 0.5) {
    out.accessible = AccessibleSide::Left;
  } else if (z.hi < 0.5) {
    out.accessible = AccessibleSide::Right;
  } else {
    throw Error(ErrorCode::Uncertified, "cannot decide the accessible side of c");
  }
  out.head_parity = parity(K.prefix, m - 1);
  out.parity_agrees =
      (out.accessible == AccessibleSide::Left) == (out.head_parity == Parity::Odd);
  return out;
}

FiniteNet PrecriticalSet::net() const {
  std::vector<BigFloat> pts;
  for (const auto& e : points) pts.push_back(e.p);
  return FiniteNet(std::move(pts), 0.0, "precritical");
}

PrecriticalSet precritical_set(const TentMap& T, std::size_t n, std::size_t period_m,
                               std::size_t cap) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "precritical_set needs n >= 1");
  PrecriticalSet out;
  out.bound = std::max(n, 2 * period_m);
  const int p = T.precision();
  const BigFloat same = BigFloat(std::ldexp(1.0, -p / 2), p);
  std::vector<BigFloat> known{T.critical_point()};
  auto seen = [&](const BigFloat& x) {
    auto it = std::lower_bound(known.begin(), known.end(), x, less);
    if (it != known.end() && abs(sub(*it, x)) <= same) return true;
    return it != known.begin() && abs(sub(*std::prev(it), x)) <= same;
  };

  struct Node {
    Interval x;
    Word address;
  };
  std::vector<Node> level{{Interval::point(T.critical_point()), {}}};
  out.points.push_back({T.critical_point(), 0, {}});
  for (std::size_t depth = 1; depth < out.bound && !level.empty(); ++depth) {
    std::vector<Node> next;
    for (const auto& node : level) {
      for (Symbol s : {Symbol::Zero, Symbol::One}) {
        auto pulled = pullback(T, node.x, s);
        if (!pulled) continue;
        BigFloat mid = pulled->midpoint();
        if (seen(mid)) continue;
        known.insert(std::lower_bound(known.begin(), known.end(), mid, less), mid);
        Word address{s};
        address.insert(address.end(), node.address.begin(), node.address.end());
        out.points.push_back({mid, depth, address});
        next.push_back({std::move(*pulled), std::move(address)});
        if (out.points.size() >= cap) {
          out.capped = true;
          break;
        }
      }
      if (out.capped) break;
    }
    if (out.capped) break;
    level = std::move(next);
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const PrecriticalPoint& a, const PrecriticalPoint& b) { return a.p < b.p; });
  return out;
}

PrecriticalSet precritical_set(const TentMap& T, std::size_t n) {
  KneadingInfo K = kneading_prefix(T, 130);
  return precritical_set(T, n, K.period_m.value_or(0));
}

Extension extend_ict(const TentMap& T, const FiniteNet& D, std::size_t n,
                     const CriticalData& cd, const PrecriticalSet& P) {
  if (D.empty()) throw Error(ErrorCode::PreconditionFailed, "D is empty");
  const int prec = std::max(T.precision(), D.precision());
  const BigFloat c = half(prec);
  const double res = D.resolution();
  if (!D.covers(c, res)) {
    throw Error(ErrorCode::PreconditionFailed, "c is not in D at net resolution");
  }
  const BigFloat r = mul(cd.delta_T, BigFloat(std::ldexp(1.0, -static_cast<int>(n)), prec));
  const bool left = cd.accessible == AccessibleSide::Left;
  const BigFloat lo = left ? sub(c, r) : c;
  const BigFloat hi = left ? c : add(c, r);

  Extension out;
  auto in_side = [&](const BigFloat& x) {
    return left ? (lo <= x && x < c) : (c < x && x <= hi);
  };
  for (const auto& comp : D.components()) {
    if (!comp.is_interval()) {
      if (in_side(D[comp.first])) out.seed.push_back(D[comp.first]);
      continue;
    }
    const BigFloat& a = max(D[comp.first], lo);
    const BigFloat& b = min(D[comp.last], hi);
    if (!(a < b)) continue;
    FiniteNet piece = FiniteNet::interval(a, b, std::min(res, r.to_double() / 8), "");
    for (const auto& x : piece.points()) {
      if (in_side(x)) out.seed.push_back(x);
    }
  }
  if (out.seed.size() < 2) {
    throw Error(ErrorCode::PreconditionFailed,
                "c is isolated in D n A at scale 2^-" + std::to_string(n) + " delta_T");
  }

  std::vector<BigFloat> added = out.seed;
  const BigFloat slack(1e-12, prec);
  const BigFloat top = T.critical_value().midpoint();
  const BigFloat bottom = eval(T, top);
  for (const auto& e : P.points) {
    if (!D.covers(e.p, res)) continue;
    ExtensionCluster cl{e.p, e.n_p, {}};
    if (e.n_p == 0) {
      cl.points = out.seed;
    } else {
      BigFloat radius = add(div(r, pow(T.slope(), static_cast<long>(e.n_p))), slack);
      for (const auto& s : out.seed) {
        std::optional<Interval> X = Interval::point(s);
        for (std::size_t k = e.address.size(); k-- > 0 && X;) X = pullback(T, *X, e.address[k]);
        if (!X) continue;
        BigFloat x = X->midpoint();
        if (abs(sub(x, e.p)) <= radius && bottom <= x && x <= top) {
          cl.points.push_back(std::move(x));
        }
      }
      added.insert(added.end(), cl.points.begin(), cl.points.end());
    }
    out.clusters.push_back(std::move(cl));
  }
  out.net = D.with_points(added, "D_" + std::to_string(n));
  return out;
}

FiniteNet core_net(const TentMap& T, double resolution) {
  BigFloat top = T.critical_value().midpoint();
  BigFloat bottom = eval(T, top);
  return FiniteNet::interval(bottom, top, 2 * resolution, "core");
}

}  // namespace tent
