#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>

#include "tent/chain.hpp"
#include "tent/error.hpp"

namespace tent {

namespace {

using Range = std::pair<std::size_t, std::size_t>;

struct Family {
  std::vector<std::size_t> cuts;  ///< sorted node-index cut positions in [0, n]
  std::vector<Range> image;       ///< net indices near T(p_i)
  std::size_t n = 0;
  double slack = 0.0;
};

std::vector<std::size_t> cut_positions(const FiniteNet& net, std::size_t granularity) {
  const std::size_t n = net.size();
  std::vector<std::size_t> cuts;
  if (granularity < 2) granularity = 2;
  if (n + 1 <= granularity) {
    for (std::size_t k = 0; k <= n; ++k) cuts.push_back(k);
    return cuts;
  }
  for (std::size_t t = 0; t < granularity; ++t) {
    cuts.push_back((t * n + (granularity - 1) / 2) / (granularity - 1));
  }
  auto comps = net.components();
  if (comps.size() > 1 && 2 * comps.size() <= granularity) {
    for (const auto& c : comps) {
      cuts.push_back(c.first);
      cuts.push_back(c.last + 1);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

Family make_family(const TentMap& T, const FiniteNet& net, std::size_t granularity,
                   double slack_in) {
  if (net.empty()) throw Error(ErrorCode::InvalidArgument, "WI check on an empty net");
  Family f;
  f.n = net.size();
  f.cuts = cut_positions(net, granularity);
  const int p = std::max(net.precision(), T.precision());
  if (!(slack_in > 0)) slack_in = kDefaultChainScale * net.resolution();
  f.slack = std::max(slack_in, std::ldexp(1.0, -p / 2));
  BigFloat slack(f.slack, p);
  const auto& pts = net.points();
  auto less = [](const BigFloat& a, const BigFloat& b) { return a < b; };
  f.image.resize(f.n);
  for (std::size_t i = 0; i < f.n; ++i) {
    Interval e = eval(T, Interval::point(pts[i]));
    BigFloat lo = sub(e.lo, slack, Round::Down);
    BigFloat hi = add(e.hi, slack, Round::Up);
    auto a = static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), lo, less) -
                                      pts.begin());
    auto b = static_cast<std::size_t>(std::upper_bound(pts.begin(), pts.end(), hi, less) -
                                      pts.begin());
    f.image[i] = {a, std::max(a, b)};
  }
  return f;
}

bool inside(const Range& r, const Range& u) { return u.first <= r.first && r.second <= u.second; }

/// True when no point of U has a net neighbour of its image outside U. A point
/// whose image is away from the net counts as trapped.
bool traps(const Family& f, const Range& a, const Range& b) {
  for (const Range& part : {a, b}) {
    for (std::size_t i = part.first; i < part.second; ++i) {
      const Range& r = f.image[i];
      if (r.first == r.second) continue;
      if (!inside(r, a) && !inside(r, b)) return false;
    }
  }
  return true;
}

constexpr Range kNone{0, 0};

/// First trapping set whose leading cut is `a`, in the fixed enumeration order.
std::optional<std::vector<Range>> scan_from(const Family& f, std::size_t a, bool pairs) {
  const auto& c = f.cuts;
  const std::size_t m = c.size();
  if (!pairs) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (c[a] == 0 && c[b] == f.n) continue;
      Range u{c[a], c[b]};
      if (traps(f, u, kNone)) return std::vector<Range>{u};
    }
    return std::nullopt;
  }
  for (std::size_t b = a + 1; b < m; ++b) {
    Range u{c[a], c[b]};
    for (std::size_t d = b + 1; d < m; ++d) {
      for (std::size_t e = d + 1; e < m; ++e) {
        Range v{c[d], c[e]};
        if (traps(f, u, v)) return std::vector<Range>{u, v};
      }
    }
  }
  return std::nullopt;
}

std::size_t family_size(std::size_t m) {
  auto choose = [](std::size_t k, std::size_t r) {
    if (k < r) return std::size_t{0};
    std::size_t out = 1;
    for (std::size_t i = 0; i < r; ++i) out = out * (k - i) / (i + 1);
    return out;
  };
  return choose(m, 2) - 1 + choose(m, 4);
}

WIVerdict verdict(const Family& f, std::optional<std::vector<Range>> hit) {
  WIVerdict out;
  out.slack = f.slack;
  out.candidates = family_size(f.cuts.size());
  if (hit) {
    out.consistent = false;
    out.witness = std::move(*hit);
  }
  return out;
}

}  // namespace

WIVerdict weak_incompressibility_check(const TentMap& T, const FiniteNet& net,
                                       std::size_t granularity, double slack) {
  Family f = make_family(T, net, granularity, slack);
  const std::size_t m = f.cuts.size();
  for (bool pairs : {false, true}) {
    std::vector<std::optional<std::vector<Range>>> found(m);
    std::atomic<std::size_t> best{m};
#pragma omp parallel for schedule(dynamic)
    for (std::size_t a = 0; a < m; ++a) {
      if (a > best.load(std::memory_order_relaxed)) continue;
      found[a] = scan_from(f, a, pairs);
      if (found[a]) {
        std::size_t cur = best.load();
        while (a < cur && !best.compare_exchange_weak(cur, a)) {
        }
      }
    }
    if (best.load() < m) return verdict(f, found[best.load()]);
  }
  return verdict(f, std::nullopt);
}

WIVerdict weak_incompressibility_check_serial(const TentMap& T, const FiniteNet& net,
                                              std::size_t granularity, double slack) {
  Family f = make_family(T, net, granularity, slack);
  for (bool pairs : {false, true}) {
    for (std::size_t a = 0; a < f.cuts.size(); ++a) {
      if (auto hit = scan_from(f, a, pairs)) return verdict(f, hit);
    }
  }
  return verdict(f, std::nullopt);
}

}  // namespace tent
