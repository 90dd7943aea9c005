#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "tent/chain.hpp"
#include "tent/error.hpp"
#include "tent/kneading.hpp"

namespace tent {

namespace {

int shadow_precision(const TentMap& T, std::size_t length) {
  double bits = static_cast<double>(length) * std::max(T.log2_slope(), 0.0) + 64;
  return std::max(T.precision(), static_cast<int>(std::ceil(bits)));
}

/// Closed ball of radius r around x intersected with [0, 1], rounded inward.
std::optional<Interval> ball(const BigFloat& x, const BigFloat& r, int p) {
  BigFloat lo = sub(x.with_precision(p), r, Round::Up);
  BigFloat hi = add(x.with_precision(p), r, Round::Down);
  if (lo.sign() < 0) lo = BigFloat(0.0, p);
  if (hi > 1.0) hi = BigFloat(1.0, p);
  if (hi < lo) return std::nullopt;
  return Interval(std::move(lo), std::move(hi));
}

std::vector<Interval> merge(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (auto& e : v) {
    if (!out.empty() && e.lo <= out.back().hi) {
      if (out.back().hi < e.hi) out.back().hi = e.hi;
    } else {
      out.push_back(std::move(e));
    }
  }
  return out;
}

void keep_widest(std::vector<Interval>& v, std::size_t cap) {
  std::stable_sort(v.begin(), v.end(),
                   [](const Interval& a, const Interval& b) { return b.width() < a.width(); });
  v.resize(cap);
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
}

}  // namespace

const char* to_string(ShadowStatus s) {
  switch (s) {
    case ShadowStatus::Found: return "FOUND";
    case ShadowStatus::NoShadowFound: return "NO_SHADOW_FOUND";
    case ShadowStatus::CapExceeded: return "CAP_EXCEEDED";
  }
  return "?";
}

ShadowResult shadow_point(const TentMap& T0, const std::vector<BigFloat>& points,
                          const BigFloat& epsilon, std::size_t cap) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty pseudo-orbit");
  if (epsilon.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (cap == 0) throw Error(ErrorCode::InvalidArgument, "branch cap must be positive");
  ShadowResult out;
  out.precision = shadow_precision(T0, points.size());
  const int p = out.precision;
  TentMap T = T0.at_precision(p);
  BigFloat r = mul(epsilon.with_precision(p), BigFloat(1.0 - std::ldexp(1.0, -30), p),
                   Round::Down);
  bool cap_hit = false;

  std::vector<Interval> E;
  if (auto b = ball(points.back(), r, p)) E.push_back(std::move(*b));
  for (std::size_t i = points.size() - 1; i-- > 0 && !E.empty();) {
    auto b = ball(points[i], r, p);
    std::vector<Interval> next;
    if (b) {
      for (const auto& e : E) {
        for (Symbol s : {Symbol::Zero, Symbol::One}) {
          auto pulled = pullback(T, e, s);
          Interval cut;
          if (pulled && intersect(*pulled, *b, cut)) next.push_back(std::move(cut));
        }
      }
    }
    E = merge(std::move(next));
    if (E.size() > cap) {
      cap_hit = true;
      keep_widest(E, cap);
    }
    out.max_branches = std::max(out.max_branches, E.size());
  }
  if (E.empty()) {
    out.status = cap_hit ? ShadowStatus::CapExceeded : ShadowStatus::NoShadowFound;
    return out;
  }
  out.max_branches = std::max(out.max_branches, E.size());
  auto widest = std::max_element(E.begin(), E.end(), [](const Interval& a, const Interval& b) {
    return a.width() < b.width();
  });
  out.status = ShadowStatus::Found;
  out.enclosure = *widest;
  return out;
}

double shadow_error(const TentMap& T0, const std::vector<BigFloat>& points, const BigFloat& y) {
  const int p = std::max(shadow_precision(T0, points.size()), y.precision());
  TentMap T = T0.at_precision(p);
  BigFloat x = y.with_precision(p);
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) x = eval(T, x);
    worst = std::max(worst, abs(sub(x, points[i])).to_double());
  }
  return worst;
}

std::vector<BigFloat> random_pseudo_orbit(const TentMap& T, double delta, std::size_t length,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double top = T.critical_value().midpoint().to_double();
  const double bottom = eval(T, T.critical_value().midpoint()).to_double();
  std::uniform_real_distribution<double> start(bottom, top);
  std::uniform_real_distribution<double> kick(-0.9 * delta, 0.9 * delta);
  const int p = T.precision();
  std::vector<BigFloat> out;
  out.reserve(length);
  out.emplace_back(start(rng), p);
  while (out.size() < length) {
    double next = eval(T, out.back()).to_double() + kick(rng);
    out.emplace_back(std::clamp(next, 0.0, 1.0), p);
  }
  return out;
}

namespace {

CalibrationResult calibrate(const TentMap& T, const BigFloat& epsilon, std::size_t trials,
                            std::vector<double> delta_grid, std::uint64_t seed,
                            std::size_t length, bool parallel) {
  if (delta_grid.empty() || trials == 0) {
    throw Error(ErrorCode::InvalidArgument, "calibration needs a grid and at least one trial");
  }
  if (length < 200) length = 200;
  auto crit = shadowing_criterion(T, epsilon, 10000);
  if (crit.status != ShadowCriterion::Satisfied) {
    throw Error(ErrorCode::PreconditionFailed,
                "shadowing criterion not satisfied for " + T.label());
  }
  std::sort(delta_grid.begin(), delta_grid.end(), std::greater<>());
  CalibrationResult out;
  out.seed = seed;
  out.trials = trials;
  out.length = length;
  for (double delta : delta_grid) {
    std::size_t passed = 0;
#pragma omp parallel for reduction(+ : passed) schedule(dynamic) if (parallel)
    for (std::size_t t = 0; t < trials; ++t) {
      auto orbit = random_pseudo_orbit(T, delta, length, seed + t);
      if (shadow_point(T, orbit, epsilon).status == ShadowStatus::Found) ++passed;
    }
    out.grid.emplace_back(delta, passed);
    if (passed == trials) {
      out.delta = delta;
      return out;
    }
  }
  throw Error(ErrorCode::NonePass, "no grid delta passed all " + std::to_string(trials) +
                                       " trials; smallest tried " +
                                       std::to_string(delta_grid.back()));
}

}  // namespace

CalibrationResult calibrate_shadowing_modulus(const TentMap& T, const BigFloat& epsilon,
                                              std::size_t trials,
                                              std::vector<double> delta_grid,
                                              std::uint64_t seed, std::size_t length) {
  return calibrate(T, epsilon, trials, std::move(delta_grid), seed, length, true);
}

CalibrationResult calibrate_shadowing_modulus_serial(const TentMap& T, const BigFloat& epsilon,
                                                     std::size_t trials,
                                                     std::vector<double> delta_grid,
                                                     std::uint64_t seed, std::size_t length) {
  return calibrate(T, epsilon, trials, std::move(delta_grid), seed, length, false);
}

}  // namespace tent
