#include "tent/tent_map.hpp"

#include <array>
#include <utility>

#include "tent/error.hpp"

namespace tent {

namespace {

void validate_slope(const Interval& slope) {
  if (!(slope.lo > 1.0) || slope.hi > 2.0) {
    throw Error(ErrorCode::InvalidArgument,
                "slope must lie in (1, 2], got [" + slope.lo.to_string(17) + ", " +
                    slope.hi.to_string(17) + "]");
  }
}

Interval golden_enclosure(int precision) {
  BigFloat five(5.0, precision);
  BigFloat one(1.0, precision);
  BigFloat lo = add(one, sqrt(five, Round::Down), Round::Down);
  BigFloat hi = add(one, sqrt(five, Round::Up), Round::Up);
  mpfr_div_2ui(lo.get(), lo.get(), 1, MPFR_RNDD);
  mpfr_div_2ui(hi.get(), hi.get(), 1, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval decimal_enclosure(const std::string& text, int precision) {
  return Interval(BigFloat::parse(text, precision, Round::Down),
                  BigFloat::parse(text, precision, Round::Up));
}

/// [l] * [x] for l > 0 with arbitrary-signed x.
Interval scale(const Interval& l, const Interval& x) {
  if (x.lo.sign() >= 0) {
    return Interval(mul(l.lo, x.lo, Round::Down), mul(l.hi, x.hi, Round::Up));
  }
  if (x.hi.sign() <= 0) {
    return Interval(mul(l.hi, x.lo, Round::Down), mul(l.lo, x.hi, Round::Up));
  }
  return Interval(mul(l.hi, x.lo, Round::Down), mul(l.hi, x.hi, Round::Up));
}

Interval left_image(const TentMap& T, const Interval& x) {
  return scale(T.slope_enclosure(), x);
}

Interval right_image(const TentMap& T, const Interval& x) {
  return scale(T.slope_enclosure(),
               Interval(one_minus(x.hi, Round::Down), one_minus(x.lo, Round::Up)));
}

/// Walks an orbit symbol by symbol. Once the orbit is known to sit exactly at
/// the critical point and the map carries the symbolic critical itinerary,
/// the remaining symbols are read from it.
class OrbitWalker {
 public:
  struct Step {
    Symbol symbol;
    bool uncertain;
  };

  OrbitWalker(const TentMap& T, Interval x, const BigFloat& tol)
      : T_(T), x_(std::move(x)), tol_(tol) {
    int p = T.precision();
    c_ = half(p);
    near_lo_ = sub(c_, tol_, Round::Down);
    near_hi_ = add(c_, tol_, Round::Up);
  }

  Step next() {
    if (symbolic_) return {T_.critical_itinerary()->at(j_++), false};
    Address a = address(x_, tol_);
    switch (a) {
      case Address::Zero:
      case Address::One:
        x_ = eval(T_, x_);
        return {a == Address::Zero ? Symbol::Zero : Symbol::One, false};
      case Address::Crit:
        return at_critical();
      case Address::NearCrit:
        break;
    }
    if (T_.critical_itinerary() && near_lo_ <= x_.lo && x_.hi <= near_hi_) {
      return at_critical();
    }
    BigFloat mid = x_.midpoint();
    Symbol s = mid < c_ ? Symbol::Zero : Symbol::One;
    x_ = eval(T_, x_);
    return {s, true};
  }

 private:
  Step at_critical() {
    if (T_.critical_itinerary()) {
      symbolic_ = true;
      j_ = 1;
    } else {
      x_ = eval(T_, Interval::point(c_));
    }
    return {Symbol::Crit, false};
  }

  const TentMap& T_;
  Interval x_;
  BigFloat tol_;
  BigFloat c_;
  BigFloat near_lo_;
  BigFloat near_hi_;
  bool symbolic_ = false;
  std::size_t j_ = 0;
};

Interval branch(Symbol s, int precision) {
  BigFloat c = half(precision);
  switch (s) {
    case Symbol::Zero: return Interval(BigFloat(0.0, precision), c);
    case Symbol::One: return Interval(c, BigFloat(1.0, precision));
    case Symbol::Crit: break;
  }
  return Interval::point(c);
}

}  // namespace

TentMap::TentMap(Interval slope, int precision, std::string label, Refiner refine)
    : slope_(std::move(slope)),
      mid_(precision),
      precision_(precision),
      label_(std::move(label)),
      refine_(std::move(refine)) {
  if (precision < kMinPrecision) {
    throw Error(ErrorCode::InvalidArgument,
                "precision " + std::to_string(precision) + " below the floor of " +
                    std::to_string(kMinPrecision) + " bits");
  }
  validate_slope(slope_);
  mid_ = slope_.midpoint().with_precision(precision);
}

TentMap TentMap::from_decimal(std::string_view text, int precision) {
  std::string s(text);
  return TentMap(decimal_enclosure(s, precision), precision, s,
                 [s](int p) { return decimal_enclosure(s, p); });
}

TentMap TentMap::golden(int precision) {
  TentMap T(golden_enclosure(precision), precision, "golden", golden_enclosure);
  return T.with_critical_itinerary(EPSeq({}, parse_word("C10")));
}

TentMap TentMap::at_precision(int precision) const {
  Interval slope = refine_ ? refine_(precision) : slope_;
  TentMap out(std::move(slope), precision, label_, refine_);
  out.crit_itin_ = crit_itin_;
  return out;
}

TentMap TentMap::with_critical_itinerary(EPSeq itin) const {
  if (itin.at(0) != Symbol::Crit) {
    throw Error(ErrorCode::InvalidArgument,
                "critical itinerary must start with C: " + itin.to_string());
  }
  TentMap out = *this;
  out.crit_itin_ = std::move(itin);
  return out;
}

std::optional<std::size_t> TentMap::critical_period() const {
  if (!crit_itin_ || !crit_itin_->preperiod().empty()) return std::nullopt;
  return crit_itin_->period().size();
}

BigFloat TentMap::tolerance() const {
  BigFloat tol(1.0, precision_);
  mpfr_div_2si(tol.get(), tol.get(), precision_ / 4, MPFR_RNDN);
  return tol;
}

Interval TentMap::critical_value() const {
  BigFloat lo = slope_.lo.with_precision(precision_, Round::Down);
  BigFloat hi = slope_.hi.with_precision(precision_, Round::Up);
  mpfr_div_2ui(lo.get(), lo.get(), 1, MPFR_RNDD);
  mpfr_div_2ui(hi.get(), hi.get(), 1, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

const char* to_string(Address a) {
  switch (a) {
    case Address::Zero: return "ZERO";
    case Address::One: return "ONE";
    case Address::Crit: return "CRIT";
    case Address::NearCrit: return "NEAR_CRIT";
  }
  return "?";
}

const char* to_string(Side s) { return s == Side::Upper ? "UPPER" : "LOWER"; }

BigFloat eval(const TentMap& T, const BigFloat& x) {
  if (x <= 0.5) return mul(T.slope(), x);
  return mul(T.slope(), one_minus(x));
}

Interval eval(const TentMap& T, const Interval& x) {
  if (x.hi <= 0.5) return left_image(T, x);
  if (x.lo >= 0.5) return right_image(T, x);
  BigFloat c = half(x.precision());
  return hull(left_image(T, Interval(x.lo, c)), right_image(T, Interval(c, x.hi)));
}

std::vector<BigFloat> orbit_prefix(const TentMap& T, const BigFloat& x, std::size_t n) {
  std::vector<BigFloat> out;
  out.reserve(n);
  out.push_back(x.with_precision(std::max(x.precision(), T.precision())));
  for (std::size_t i = 1; i < n; ++i) out.push_back(eval(T, out.back()));
  return out;
}

Address address(const Interval& x, const BigFloat& tol) {
  int p = std::max(x.precision(), tol.precision()) + 2;
  BigFloat c = half(p);
  if (x.hi < sub(c, tol, Round::Down)) return Address::Zero;
  if (x.lo > add(c, tol, Round::Up)) return Address::One;
  if (x.lo == c && x.hi == c) return Address::Crit;
  return Address::NearCrit;
}

Address address(const BigFloat& x, const BigFloat& tol) {
  return address(Interval::point(x), tol);
}

ItineraryResult itinerary_prefix(const TentMap& T, const Interval& x, std::size_t n,
                                 const BigFloat& tol) {
  ItineraryResult out;
  out.word.reserve(n);
  OrbitWalker walk(T, x, tol);
  for (std::size_t i = 0; i < n; ++i) {
    auto step = walk.next();
    if (step.symbol == Symbol::Crit && !out.crit_hit) out.crit_hit = i;
    if (step.uncertain && out.certified) {
      out.certified = false;
      out.first_uncertain = i;
    }
    out.word.push_back(step.symbol);
  }
  return out;
}

ItineraryResult itinerary_prefix(const TentMap& T, const BigFloat& x, std::size_t n,
                                 const BigFloat& tol) {
  return itinerary_prefix(T, Interval::point(x), n, tol);
}

LimitItinerary limit_itinerary(const TentMap& T, const Interval& x, Side side,
                               std::size_t n, const BigFloat& tol) {
  LimitItinerary out;
  out.word.reserve(n);
  OrbitWalker walk(T, x, tol);
  bool positive = side == Side::Upper;
  for (std::size_t i = 0; i < n; ++i) {
    auto step = walk.next();
    if (step.uncertain && out.certified) {
      out.certified = false;
      out.first_uncertain = i;
    }
    switch (step.symbol) {
      case Symbol::Zero:
        out.word.push_back(Symbol::Zero);
        break;
      case Symbol::One:
        out.word.push_back(Symbol::One);
        positive = !positive;
        break;
      case Symbol::Crit:
        out.word.push_back(positive ? Symbol::One : Symbol::Zero);
        positive = false;
        break;
    }
  }
  return out;
}

std::vector<BigFloat> preimages(const TentMap& T, const BigFloat& y) {
  std::vector<BigFloat> out;
  BigFloat top = T.critical_value().midpoint();
  BigFloat tol = T.tolerance();
  if (y.sign() < 0 || y > add(top, tol)) return out;
  if (abs(sub(y, top)) <= tol) {
    out.push_back(T.critical_point());
    return out;
  }
  BigFloat left = div(y, T.slope());
  out.push_back(left);
  BigFloat right = one_minus(left);
  if (!(right == left)) out.push_back(std::move(right));
  return out;
}

std::optional<Interval> pullback(const TentMap& T, const Interval& E, Symbol a) {
  const int p = std::max(T.precision(), E.precision());
  Interval out;
  if (a == Symbol::Crit) {
    if (!intersect(T.critical_value(), E, out)) return std::nullopt;
    return branch(Symbol::Crit, p);
  }
  const Interval& L = T.slope_enclosure();
  BigFloat lo = E.lo.sign() < 0 ? BigFloat(0.0, p) : E.lo;
  if (E.hi < lo) return std::nullopt;
  Interval pulled;
  if (a == Symbol::Zero) {
    pulled = Interval(div(lo, L.hi, Round::Down), div(E.hi, L.lo, Round::Up));
  } else {
    pulled = Interval(one_minus(div(E.hi, L.lo, Round::Up), Round::Down),
                      one_minus(div(lo, L.hi, Round::Down), Round::Up));
  }
  if (!intersect(pulled, branch(a, p), out)) return std::nullopt;
  return out;
}

Interval itinerary_to_point(const TentMap& T, const SeqView& s, std::size_t depth) {
  const int p = T.precision();
  if (depth == 0) return Interval(BigFloat(0.0, p), BigFloat(1.0, p));
  Interval E = branch(s.at(depth - 1), p);
  for (std::size_t k = depth - 1; k-- > 0;) {
    auto pulled = pullback(T, E, s.at(k));
    if (!pulled) {
      throw Error(ErrorCode::InadmissiblePrefix,
                  "empty pullback at position " + std::to_string(k) + " of " +
                      s.to_string());
    }
    E = std::move(*pulled);
  }
  return E;
}

Interval interval_of_prefix(const TentMap& T, const BigFloat& x, std::size_t N,
                            const BigFloat& tol) {
  ItineraryResult it = itinerary_prefix(T, x, N, tol);
  if (!it.certified) {
    throw Error(ErrorCode::Uncertified,
                "itinerary of " + x.to_string(20) + " undecided at step " +
                    std::to_string(*it.first_uncertain));
  }
  return itinerary_to_point(T, SeqView(it.word), N);
}

bool outside_core(const TentMap& T, const BigFloat& x) {
  BigFloat tc = T.critical_value().midpoint();
  BigFloat t2c = eval(T, tc);
  return x < t2c || x > tc;
}

}  // namespace tent
