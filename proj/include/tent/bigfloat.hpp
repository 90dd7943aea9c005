#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace tent {

/// Rounding direction for a single arithmetic operation.
enum class Round { Nearest, Down, Up };

inline constexpr int kDefaultPrecision = 256;
inline constexpr int kMinPrecision = 64;

/// Owning radix-2 arbitrary precision float (an RAII handle over mpfr_t).
///
/// Value semantics: copies are deep. The precision of a result is the larger
/// of the operand precisions unless a precision is given explicitly.
class BigFloat {
 public:
  explicit BigFloat(int precision = kDefaultPrecision);
  BigFloat(double value, int precision);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  /// Parses a decimal literal ("0.3", "1e-5", "-2.25").
  static BigFloat parse(std::string_view text, int precision,
                        Round round = Round::Nearest);

  int precision() const { return static_cast<int>(mpfr_get_prec(value_)); }
  /// Re-rounds to a new precision.
  BigFloat with_precision(int precision, Round round = Round::Nearest) const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Decimal rendering with `digits` significant digits (0 = enough to
  /// round-trip at this precision).
  std::string to_string(int digits = 0) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigFloat& a,
                                           const BigFloat& b) {
    int c = mpfr_cmp(a.value_, b.value_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater
                          : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigFloat& a, double b) {
    return mpfr_cmp_d(a.value_, b) == 0;
  }
  friend std::partial_ordering operator<=>(const BigFloat& a, double b) {
    int c = mpfr_cmp_d(a.value_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater
                          : std::partial_ordering::equivalent);
  }

 private:
  mpfr_t value_;
};

mpfr_rnd_t to_mpfr(Round round);

BigFloat add(const BigFloat& a, const BigFloat& b, Round r = Round::Nearest);
BigFloat sub(const BigFloat& a, const BigFloat& b, Round r = Round::Nearest);
BigFloat mul(const BigFloat& a, const BigFloat& b, Round r = Round::Nearest);
BigFloat div(const BigFloat& a, const BigFloat& b, Round r = Round::Nearest);
/// 1 - a
BigFloat one_minus(const BigFloat& a, Round r = Round::Nearest);
BigFloat abs(const BigFloat& a);
BigFloat sqrt(const BigFloat& a, Round r = Round::Nearest);
BigFloat pow(const BigFloat& a, long exponent, Round r = Round::Nearest);
/// log2(a) as a double, for precision budgeting.
double log2_of(const BigFloat& a);

inline BigFloat operator+(const BigFloat& a, const BigFloat& b) { return add(a, b); }
inline BigFloat operator-(const BigFloat& a, const BigFloat& b) { return sub(a, b); }
inline BigFloat operator*(const BigFloat& a, const BigFloat& b) { return mul(a, b); }
inline BigFloat operator/(const BigFloat& a, const BigFloat& b) { return div(a, b); }

const BigFloat& min(const BigFloat& a, const BigFloat& b);
const BigFloat& max(const BigFloat& a, const BigFloat& b);

/// 1/2 at the given precision (exact).
BigFloat half(int precision);

/// Closed interval [lo, hi] with outward-rounded arithmetic.
struct Interval {
  BigFloat lo;
  BigFloat hi;

  Interval() = default;
  Interval(BigFloat l, BigFloat h);
  static Interval point(const BigFloat& x) { return Interval(x, x); }

  int precision() const { return lo.precision() > hi.precision() ? lo.precision() : hi.precision(); }
  bool is_point() const { return lo == hi; }
  bool contains(const BigFloat& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  /// Upper bound on hi - lo.
  BigFloat width() const { return sub(hi, lo, Round::Up); }
  BigFloat midpoint() const;
};

/// Intersection, or false when empty.
bool intersect(const Interval& a, const Interval& b, Interval& out);
Interval hull(const Interval& a, const Interval& b);
Interval widen(const Interval& a, const BigFloat& radius);

}  // namespace tent
