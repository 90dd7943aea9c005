#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tent/bigfloat.hpp"
#include "tent/tent_map.hpp"

namespace tent {

/// Finite stand-in for a closed subset of [0, 1]: sorted, deduplicated points
/// such that every point of the set is within `resolution` of a net point.
/// Runs of points with gaps <= 2*resolution are read as interval pieces.
class FiniteNet {
 public:
  FiniteNet() = default;
  FiniteNet(std::vector<BigFloat> points, double resolution, std::string label);

  /// Evenly spaced points on [a, b] with spacing at most `spacing`.
  static FiniteNet interval(const BigFloat& a, const BigFloat& b, double spacing,
                            std::string label);

  const std::vector<BigFloat>& points() const { return points_; }
  const BigFloat& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  double resolution() const { return resolution_; }
  const std::string& label() const { return label_; }
  int precision() const;

  struct Component {
    std::size_t first;
    std::size_t last;  ///< inclusive
    bool is_interval() const { return last > first; }
  };
  std::vector<Component> components() const;

  /// Interval pieces resampled at spacing `resolution`; isolated points kept.
  FiniteNet refine(double resolution) const;
  FiniteNet with_points(const std::vector<BigFloat>& extra, std::string label) const;

  /// Index of the nearest net point.
  std::size_t nearest(const BigFloat& x) const;
  double distance_to(const BigFloat& x) const;
  /// True when x lies in an interval piece or within `slack` of a point.
  bool covers(const BigFloat& x, double slack) const;

 private:
  std::vector<BigFloat> points_;
  double resolution_ = 0.0;
  std::string label_;
};

/// Hausdorff distance between the point sets of two nets.
double hausdorff(const FiniteNet& a, const FiniteNet& b);

struct PseudoOrbit {
  std::vector<BigFloat> points;
  BigFloat delta;
};

enum class OrbitCheck { Valid, Invalid, Ambiguous };
const char* to_string(OrbitCheck c);

struct PseudoOrbitVerdict {
  OrbitCheck status = OrbitCheck::Valid;
  std::size_t index = 0;  ///< first failing step
  double worst = 0.0;     ///< largest |T(x_i) - x_{i+1}| seen
};

PseudoOrbitVerdict verify_pseudo_orbit(const TentMap& T, const std::vector<BigFloat>& points,
                                       const BigFloat& delta);

/// Directed graph on a net with i -> j iff |T(p_i) - p_j| < delta.
///
/// Because T is monotone on each branch and the net is sorted, the successors
/// of a node form a contiguous index range, so the graph is stored as one
/// certified range and one possible range per node.
class ChainGraph {
 public:
  const FiniteNet& net() const { return net_; }
  const BigFloat& delta() const { return delta_; }
  std::size_t size() const { return first_.size(); }

  /// Certified successors [first, last).
  std::pair<std::size_t, std::size_t> successors(std::size_t i) const {
    return {first_[i], last_[i]};
  }
  bool has_edge(std::size_t i, std::size_t j) const {
    return first_[i] <= j && j < last_[i];
  }
  std::size_t edge_count() const;
  /// Edges whose strict inequality could not be certified either way.
  std::size_t uncertain_edges() const;
  /// First index on the decreasing branch (points > c).
  std::size_t split() const { return split_; }

  /// Sources i with a certified edge i -> j, as at most two index ranges.
  std::vector<std::pair<std::size_t, std::size_t>> predecessors(std::size_t j) const;

  friend ChainGraph build_chain_graph(const TentMap&, const FiniteNet&, const BigFloat&);
  friend ChainGraph build_chain_graph_serial(const TentMap&, const FiniteNet&,
                                             const BigFloat&);
  friend bool operator==(const ChainGraph& a, const ChainGraph& b);

 private:
  FiniteNet net_;
  BigFloat delta_;
  std::size_t split_ = 0;
  bool monotone_ = true;
  std::vector<std::size_t> first_, last_;
  std::vector<std::size_t> maybe_first_, maybe_last_;
};

/// OpenMP-parallel build over nodes.
ChainGraph build_chain_graph(const TentMap& T, const FiniteNet& net, const BigFloat& delta);
/// Serial reference build.
ChainGraph build_chain_graph_serial(const TentMap& T, const FiniteNet& net,
                                    const BigFloat& delta);
bool operator==(const ChainGraph& a, const ChainGraph& b);

struct TransitivityVerdict {
  bool yes = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  ///< no path x -> y
  std::size_t uncertain_edges = 0;
};

TransitivityVerdict is_chain_transitive(const ChainGraph& g);

/// Shortest path from -> to with at least one edge (so from == to asks for a
/// cycle). Throws NoPath.
PseudoOrbit find_chain(const ChainGraph& g, std::size_t from, std::size_t to);
std::vector<std::size_t> find_path(const ChainGraph& g, std::size_t from, std::size_t to);

struct WIVerdict {
  bool consistent = true;
  /// Index ranges [first, last) whose union U has closure of T(U) inside U.
  std::vector<std::pair<std::size_t, std::size_t>> witness;
  std::size_t candidates = 0;
  double slack = 0.0;
};

/// Tests relatively open sets cut out by one or two intervals with endpoints
/// at net midpoints; `granularity` caps the number of cut positions. Net
/// points within `slack` of T(p) count as the image of p; slack <= 0 selects
/// kDefaultChainScale * resolution.
WIVerdict weak_incompressibility_check(const TentMap& T, const FiniteNet& net,
                                       std::size_t granularity, double slack = 0.0);
WIVerdict weak_incompressibility_check_serial(const TentMap& T, const FiniteNet& net,
                                              std::size_t granularity, double slack = 0.0);

/// Chain scale used for a net when none is given, in units of its resolution.
inline constexpr double kDefaultChainScale = 2.5;

enum class ShadowStatus { Found, NoShadowFound, CapExceeded };
const char* to_string(ShadowStatus s);

struct ShadowResult {
  ShadowStatus status = ShadowStatus::NoShadowFound;
  std::optional<Interval> enclosure;
  std::size_t max_branches = 0;
  int precision = 0;
};

inline constexpr std::size_t kShadowBranchCap = 64;

/// Backward interval refinement E_i = B(x_i, eps) n T^-1(E_{i+1}).
ShadowResult shadow_point(const TentMap& T, const std::vector<BigFloat>& points,
                          const BigFloat& epsilon, std::size_t cap = kShadowBranchCap);

/// Largest |T^i(y) - x_i| along the orbit of y, computed at the precision
/// used by shadow_point.
double shadow_error(const TentMap& T, const std::vector<BigFloat>& points, const BigFloat& y);

struct CalibrationResult {
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t length = 0;
  /// (grid delta, passed trials)
  std::vector<std::pair<double, std::size_t>> grid;
};

/// Random delta-pseudo-orbits (perturbation walks) that must all be
/// epsilon-shadowed; returns the largest passing grid value.
CalibrationResult calibrate_shadowing_modulus(const TentMap& T, const BigFloat& epsilon,
                                              std::size_t trials,
                                              std::vector<double> delta_grid,
                                              std::uint64_t seed = 20240917,
                                              std::size_t length = 200);
CalibrationResult calibrate_shadowing_modulus_serial(const TentMap& T, const BigFloat& epsilon,
                                                     std::size_t trials,
                                                     std::vector<double> delta_grid,
                                                     std::uint64_t seed = 20240917,
                                                     std::size_t length = 200);

/// Random walk x_{i+1} = T(x_i) + u with |u| < 0.9 delta started in the core.
std::vector<BigFloat> random_pseudo_orbit(const TentMap& T, double delta, std::size_t length,
                                          std::uint64_t seed);

}  // namespace tent
