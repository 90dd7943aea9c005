#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tent/bigfloat.hpp"
#include "tent/symbolic.hpp"

namespace tent {

/// Tent map x -> lambda*x (x <= 1/2), lambda*(1-x) (x > 1/2).
///
/// The slope is carried as a rigorous enclosure together with a recipe for
/// recomputing it at another precision. A map may also carry the symbolic
/// itinerary of its critical point when that is known exactly (for instance a
/// slope recovered from a kneading sequence); orbit code then recognises
/// returns to 1/2 that floating point alone cannot certify.
class TentMap {
 public:
  using Refiner = std::function<Interval(int precision)>;

  TentMap(Interval slope, int precision, std::string label, Refiner refine = {});

  static TentMap from_decimal(std::string_view text, int precision = kDefaultPrecision);
  /// lambda^2 = lambda + 1; the critical orbit has period 3.
  static TentMap golden(int precision = kDefaultPrecision);

  const Interval& slope_enclosure() const { return slope_; }
  const BigFloat& slope() const { return mid_; }
  int precision() const { return precision_; }
  const std::string& label() const { return label_; }
  /// True when lambda = 2 is inside the enclosure (allowed, but outside the
  /// standing range (1, 2)).
  bool flagged() const { return slope_.hi >= 2.0; }
  double log2_slope() const { return log2_of(mid_); }

  /// Same map at a different working precision. Without a refiner the slope
  /// enclosure is kept as is.
  TentMap at_precision(int precision) const;

  const std::optional<EPSeq>& critical_itinerary() const { return crit_itin_; }
  TentMap with_critical_itinerary(EPSeq itin) const;
  /// Period of the critical orbit when the symbolic fact says it is periodic.
  std::optional<std::size_t> critical_period() const;

  /// Default decision tolerance 2^-(precision/4).
  BigFloat tolerance() const;
  BigFloat critical_point() const { return half(precision_); }
  /// Enclosure of T(c) = lambda/2.
  Interval critical_value() const;

 private:
  Interval slope_;
  BigFloat mid_;
  int precision_;
  std::string label_;
  Refiner refine_;
  std::optional<EPSeq> crit_itin_;
};

enum class Address { Zero, One, Crit, NearCrit };
enum class Side { Upper, Lower };

const char* to_string(Address a);
const char* to_string(Side s);

/// Round-to-nearest image using the slope midpoint.
BigFloat eval(const TentMap& T, const BigFloat& x);
/// Outward-rounded image enclosure.
Interval eval(const TentMap& T, const Interval& x);
std::vector<BigFloat> orbit_prefix(const TentMap& T, const BigFloat& x, std::size_t n);

Address address(const BigFloat& x, const BigFloat& tol);
Address address(const Interval& x, const BigFloat& tol);

struct ItineraryResult {
  Word word;
  std::optional<std::size_t> crit_hit;
  bool certified = true;
  std::optional<std::size_t> first_uncertain;
};

ItineraryResult itinerary_prefix(const TentMap& T, const Interval& x, std::size_t n,
                                 const BigFloat& tol);
ItineraryResult itinerary_prefix(const TentMap& T, const BigFloat& x, std::size_t n,
                                 const BigFloat& tol);

struct LimitItinerary {
  Word word;  ///< over {0, 1}
  bool certified = true;
  std::optional<std::size_t> first_uncertain;
};

LimitItinerary limit_itinerary(const TentMap& T, const Interval& x, Side side,
                               std::size_t n, const BigFloat& tol);

/// Points y/lambda and 1 - y/lambda, merged when they coincide at c and
/// empty above T(c).
std::vector<BigFloat> preimages(const TentMap& T, const BigFloat& y);

/// Preimage of E through the branch of `a` (0 or 1), intersected with that
/// branch; empty when the two do not meet. For C the result is {c} when
/// T(c) is in E.
std::optional<Interval> pullback(const TentMap& T, const Interval& E, Symbol a);

/// Closure of the set of points whose itinerary starts with s|depth, found by
/// backward interval pullback. Throws InadmissiblePrefix on an empty pullback.
Interval itinerary_to_point(const TentMap& T, const SeqView& s, std::size_t depth);

/// Enclosure of I_N(x). Throws Uncertified if the itinerary is not certified.
Interval interval_of_prefix(const TentMap& T, const BigFloat& x, std::size_t N,
                            const BigFloat& tol);

/// True when x lies outside [T^2(c), T(c)].
bool outside_core(const TentMap& T, const BigFloat& x);

}  // namespace tent
