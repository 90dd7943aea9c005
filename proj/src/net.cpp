#include <algorithm>
#include <cmath>

#include "tent/chain.hpp"
#include "tent/error.hpp"

namespace tent {

namespace {

double gap(const BigFloat& a, const BigFloat& b) { return sub(b, a).to_double(); }

}  // namespace

FiniteNet::FiniteNet(std::vector<BigFloat> points, double resolution, std::string label)
    : points_(std::move(points)), resolution_(resolution), label_(std::move(label)) {
  if (!(resolution >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "net resolution must be non-negative");
  }
  std::sort(points_.begin(), points_.end(),
            [](const BigFloat& a, const BigFloat& b) { return a < b; });
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

FiniteNet FiniteNet::interval(const BigFloat& a, const BigFloat& b, double spacing,
                              std::string label) {
  if (!(spacing > 0.0) || b < a) {
    throw Error(ErrorCode::InvalidArgument, "bad interval net");
  }
  const int p = std::max({a.precision(), b.precision(), kMinPrecision});
  BigFloat width = sub(b, a);
  auto n = static_cast<std::size_t>(std::ceil(width.to_double() / spacing));
  std::vector<BigFloat> pts;
  pts.reserve(n + 1);
  if (n == 0) {
    pts.push_back(a.with_precision(p));
  } else {
    BigFloat step = div(width, BigFloat(static_cast<double>(n), p));
    for (std::size_t k = 0; k < n; ++k) {
      pts.push_back(add(a, mul(step, BigFloat(static_cast<double>(k), p))));
    }
    pts.push_back(b.with_precision(p));
  }
  return FiniteNet(std::move(pts), spacing / 2, std::move(label));
}

int FiniteNet::precision() const {
  int p = kMinPrecision;
  for (const auto& x : points_) p = std::max(p, x.precision());
  return p;
}

std::vector<FiniteNet::Component> FiniteNet::components() const {
  std::vector<Component> out;
  if (points_.empty()) return out;
  const double joined = 2 * resolution_ * (1 + 1e-9);
  Component cur{0, 0};
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (resolution_ > 0 && gap(points_[i - 1], points_[i]) <= joined) {
      cur.last = i;
    } else {
      out.push_back(cur);
      cur = {i, i};
    }
  }
  out.push_back(cur);
  return out;
}

FiniteNet FiniteNet::refine(double resolution) const {
  if (!(resolution > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "refine needs a positive resolution");
  }
  std::vector<BigFloat> pts;
  for (const auto& comp : components()) {
    if (!comp.is_interval()) {
      pts.push_back(points_[comp.first]);
      continue;
    }
    FiniteNet piece = interval(points_[comp.first], points_[comp.last], 2 * resolution, "");
    pts.insert(pts.end(), piece.points_.begin(), piece.points_.end());
  }
  return FiniteNet(std::move(pts), resolution, label_);
}

FiniteNet FiniteNet::with_points(const std::vector<BigFloat>& extra, std::string label) const {
  std::vector<BigFloat> pts = points_;
  pts.insert(pts.end(), extra.begin(), extra.end());
  return FiniteNet(std::move(pts), resolution_, std::move(label));
}

std::size_t FiniteNet::nearest(const BigFloat& x) const {
  if (points_.empty()) throw Error(ErrorCode::InvalidArgument, "empty net");
  auto it = std::lower_bound(points_.begin(), points_.end(), x,
                             [](const BigFloat& a, const BigFloat& b) { return a < b; });
  if (it == points_.end()) return points_.size() - 1;
  auto i = static_cast<std::size_t>(it - points_.begin());
  if (i == 0) return 0;
  return abs(sub(x, points_[i - 1])) <= abs(sub(*it, x)) ? i - 1 : i;
}

double FiniteNet::distance_to(const BigFloat& x) const {
  return abs(sub(x, points_[nearest(x)])).to_double();
}

bool FiniteNet::covers(const BigFloat& x, double slack) const {
  if (points_.empty()) return false;
  for (const auto& comp : components()) {
    if (comp.is_interval() && points_[comp.first] <= x && x <= points_[comp.last]) {
      return true;
    }
  }
  return distance_to(x) <= slack;
}

double hausdorff(const FiniteNet& a, const FiniteNet& b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::InvalidArgument, "hausdorff distance of an empty net");
  }
  double d = 0.0;
  for (const auto& x : a.points()) d = std::max(d, b.distance_to(x));
  for (const auto& y : b.points()) d = std::max(d, a.distance_to(y));
  return d;
}

}  // namespace tent
