#include <algorithm>
#include <deque>
#include <numeric>

#include "tent/chain.hpp"
#include "tent/error.hpp"

namespace tent {

namespace {

bool less(const BigFloat& a, const BigFloat& b) { return a < b; }

struct NodeEdges {
  std::size_t first, last, maybe_first, maybe_last;
};

NodeEdges node_edges(const TentMap& T, const std::vector<BigFloat>& pts, std::size_t i,
                     const BigFloat& delta) {
  Interval e = eval(T, Interval::point(pts[i]));
  BigFloat a = sub(e.hi, delta, Round::Up);
  BigFloat b = add(e.lo, delta, Round::Down);
  NodeEdges out{};
  out.first = static_cast<std::size_t>(
      std::upper_bound(pts.begin(), pts.end(), a, less) - pts.begin());
  out.last = static_cast<std::size_t>(
      std::lower_bound(pts.begin(), pts.end(), b, less) - pts.begin());
  if (out.last < out.first) out.last = out.first;
  BigFloat ma = sub(e.lo, delta, Round::Down);
  BigFloat mb = add(e.hi, delta, Round::Up);
  out.maybe_first = static_cast<std::size_t>(
      std::lower_bound(pts.begin(), pts.end(), ma, less) - pts.begin());
  out.maybe_last = static_cast<std::size_t>(
      std::upper_bound(pts.begin(), pts.end(), mb, less) - pts.begin());
  if (out.maybe_last < out.maybe_first) out.maybe_last = out.maybe_first;
  return out;
}

void check_inputs(const FiniteNet& net, const BigFloat& delta) {
  if (net.empty()) throw Error(ErrorCode::InvalidArgument, "chain graph on an empty net");
  if (delta.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
}

/// Union-find "next unvisited index" skipper.
class Skipper {
 public:
  explicit Skipper(std::size_t n) : next_(n + 1) {
    std::iota(next_.begin(), next_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t k) {
    std::size_t root = k;
    while (next_[root] != root) root = next_[root];
    while (next_[k] != root) {
      std::size_t up = next_[k];
      next_[k] = root;
      k = up;
    }
    return root;
  }
  void remove(std::size_t k) { next_[k] = k + 1; }

 private:
  std::vector<std::size_t> next_;
};

template <class Ranges>
std::vector<char> reach(std::size_t n, std::size_t start, Ranges ranges) {
  std::vector<char> seen(n, 0);
  Skipper skip(n);
  std::deque<std::size_t> queue{start};
  seen[start] = 1;
  skip.remove(start);
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (auto [f, l] : ranges(u)) {
      for (std::size_t k = skip.find(f); k < l; k = skip.find(k)) {
        seen[k] = 1;
        skip.remove(k);
        queue.push_back(k);
      }
    }
  }
  return seen;
}

}  // namespace

const char* to_string(OrbitCheck c) {
  switch (c) {
    case OrbitCheck::Valid: return "VALID";
    case OrbitCheck::Invalid: return "INVALID";
    case OrbitCheck::Ambiguous: return "AMBIGUOUS";
  }
  return "?";
}

PseudoOrbitVerdict verify_pseudo_orbit(const TentMap& T, const std::vector<BigFloat>& points,
                                       const BigFloat& delta) {
  if (points.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a pseudo-orbit needs at least 2 points");
  }
  PseudoOrbitVerdict out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Interval e = eval(T, Interval::point(points[i]));
    const BigFloat& y = points[i + 1];
    BigFloat hi = max(sub(y, e.lo, Round::Up), sub(e.hi, y, Round::Up));
    BigFloat lo = max(sub(y, e.hi, Round::Down), sub(e.lo, y, Round::Down));
    out.worst = std::max(out.worst, hi.to_double());
    if (hi < delta) continue;
    if (out.status == OrbitCheck::Valid) {
      out.status = lo >= delta ? OrbitCheck::Invalid : OrbitCheck::Ambiguous;
      out.index = i;
    }
  }
  return out;
}

std::size_t ChainGraph::edge_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < size(); ++i) n += last_[i] - first_[i];
  return n;
}

std::size_t ChainGraph::uncertain_edges() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    n += (maybe_last_[i] - maybe_first_[i]) - (last_[i] - first_[i]);
  }
  return n;
}

std::vector<std::pair<std::size_t, std::size_t>> ChainGraph::predecessors(std::size_t j) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  if (!monotone_) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!has_edge(i, j)) continue;
      if (!out.empty() && out.back().second == i) {
        out.back().second = i + 1;
      } else {
        out.emplace_back(i, i + 1);
      }
    }
    return out;
  }
  auto part = [](std::size_t lo, std::size_t hi, auto pred) {
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (pred(mid)) lo = mid + 1; else hi = mid;
    }
    return lo;
  };
  std::size_t a = part(0, split_, [&](std::size_t i) { return first_[i] <= j; });
  std::size_t b = part(0, split_, [&](std::size_t i) { return last_[i] <= j; });
  if (b < a) out.emplace_back(b, a);
  std::size_t a2 = part(split_, n, [&](std::size_t i) { return first_[i] > j; });
  std::size_t b2 = part(split_, n, [&](std::size_t i) { return last_[i] > j; });
  if (a2 < b2) out.emplace_back(a2, b2);
  return out;
}

namespace {

bool branch_monotone(const std::vector<std::size_t>& first,
                     const std::vector<std::size_t>& last, std::size_t split) {
  for (std::size_t i = 1; i < first.size(); ++i) {
    if (i == split) continue;
    bool up = i < split;
    if (up ? (first[i] < first[i - 1] || last[i] < last[i - 1])
           : (first[i] > first[i - 1] || last[i] > last[i - 1])) {
      return false;
    }
  }
  return true;
}

}  // namespace

ChainGraph build_chain_graph(const TentMap& T, const FiniteNet& net, const BigFloat& delta) {
  check_inputs(net, delta);
  const auto& pts = net.points();
  const std::size_t n = pts.size();
  ChainGraph g;
  g.net_ = net;
  g.delta_ = delta;
  g.first_.assign(n, 0);
  g.last_.assign(n, 0);
  g.maybe_first_.assign(n, 0);
  g.maybe_last_.assign(n, 0);
  g.split_ = static_cast<std::size_t>(
      std::upper_bound(pts.begin(), pts.end(), half(net.precision()), less) - pts.begin());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    NodeEdges e = node_edges(T, pts, i, delta);
    g.first_[i] = e.first;
    g.last_[i] = e.last;
    g.maybe_first_[i] = e.maybe_first;
    g.maybe_last_[i] = e.maybe_last;
  }
  g.monotone_ = branch_monotone(g.first_, g.last_, g.split_);
  return g;
}

ChainGraph build_chain_graph_serial(const TentMap& T, const FiniteNet& net,
                                    const BigFloat& delta) {
  check_inputs(net, delta);
  const auto& pts = net.points();
  const std::size_t n = pts.size();
  ChainGraph g;
  g.net_ = net;
  g.delta_ = delta;
  g.split_ = 0;
  while (g.split_ < n && pts[g.split_] <= 0.5) ++g.split_;
  for (std::size_t i = 0; i < n; ++i) {
    NodeEdges e = node_edges(T, pts, i, delta);
    g.first_.push_back(e.first);
    g.last_.push_back(e.last);
    g.maybe_first_.push_back(e.maybe_first);
    g.maybe_last_.push_back(e.maybe_last);
  }
  g.monotone_ = branch_monotone(g.first_, g.last_, g.split_);
  return g;
}

bool operator==(const ChainGraph& a, const ChainGraph& b) {
  return a.net_.points() == b.net_.points() && a.delta_ == b.delta_ && a.split_ == b.split_ &&
         a.first_ == b.first_ && a.last_ == b.last_ && a.maybe_first_ == b.maybe_first_ &&
         a.maybe_last_ == b.maybe_last_;
}

TransitivityVerdict is_chain_transitive(const ChainGraph& g) {
  TransitivityVerdict out;
  out.uncertain_edges = g.uncertain_edges();
  const std::size_t n = g.size();
  if (n == 1) {
    out.yes = g.has_edge(0, 0);
    if (!out.yes) out.witness = std::make_pair(std::size_t{0}, std::size_t{0});
    return out;
  }
  auto fwd = reach(n, 0, [&](std::size_t u) {
    return std::vector<std::pair<std::size_t, std::size_t>>{g.successors(u)};
  });
  for (std::size_t y = 0; y < n; ++y) {
    if (!fwd[y]) {
      out.witness = std::make_pair(std::size_t{0}, y);
      return out;
    }
  }
  auto bwd = reach(n, 0, [&](std::size_t u) { return g.predecessors(u); });
  for (std::size_t x = 0; x < n; ++x) {
    if (!bwd[x]) {
      out.witness = std::make_pair(x, std::size_t{0});
      return out;
    }
  }
  out.yes = true;
  return out;
}

std::vector<std::size_t> find_path(const ChainGraph& g, std::size_t from, std::size_t to) {
  const std::size_t n = g.size();
  if (from >= n || to >= n) throw Error(ErrorCode::InvalidArgument, "node out of range");
  std::vector<std::size_t> parent(n, n);
  Skipper skip(n);
  std::deque<std::size_t> queue;
  auto expand = [&](std::size_t u) {
    auto [f, l] = g.successors(u);
    for (std::size_t k = skip.find(f); k < l; k = skip.find(k)) {
      parent[k] = u;
      skip.remove(k);
      queue.push_back(k);
    }
  };
  expand(from);
  while (!queue.empty() && parent[to] == n) {
    std::size_t u = queue.front();
    queue.pop_front();
    expand(u);
  }
  if (parent[to] == n) {
    throw Error(ErrorCode::NoPath, "no chain from node " + std::to_string(from) + " to node " +
                                       std::to_string(to));
  }
  std::vector<std::size_t> path{to};
  std::size_t cur = to;
  do {
    cur = parent[cur];
    path.push_back(cur);
  } while (cur != from || path.size() == 1);
  std::reverse(path.begin(), path.end());
  return path;
}

PseudoOrbit find_chain(const ChainGraph& g, std::size_t from, std::size_t to) {
  PseudoOrbit out{{}, g.delta()};
  for (std::size_t k : find_path(g, from, to)) out.points.push_back(g.net()[k]);
  return out;
}

}  // namespace tent
