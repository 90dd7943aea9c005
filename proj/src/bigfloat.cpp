#include "tent/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "tent/error.hpp"

namespace tent {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::InsufficientPrefix: return "INSUFFICIENT_PREFIX";
    case ErrorCode::InadmissiblePrefix: return "INADMISSIBLE_PREFIX";
    case ErrorCode::Uncertified: return "UNCERTIFIED";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::PreconditionFailed: return "PRECONDITION_FAILED";
    case ErrorCode::NoPath: return "NO_PATH";
    case ErrorCode::Inadmissible: return "INADMISSIBLE";
    case ErrorCode::StageFailed: return "STAGE_FAILED";
    case ErrorCode::NonePass: return "NONE_PASS";
  }
  return "UNKNOWN";
}

mpfr_rnd_t to_mpfr(Round round) {
  switch (round) {
    case Round::Down: return MPFR_RNDD;
    case Round::Up: return MPFR_RNDU;
    case Round::Nearest: break;
  }
  return MPFR_RNDN;
}

namespace {

int checked(int precision) {
  if (precision < MPFR_PREC_MIN || precision > 1 << 24) {
    throw Error(ErrorCode::InvalidArgument,
                "precision out of range: " + std::to_string(precision));
  }
  return precision;
}

int joint(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

BigFloat::BigFloat(int precision) {
  mpfr_init2(value_, checked(precision));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, int precision) {
  mpfr_init2(value_, checked(precision));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Steal the limbs; leave `other` as a valid minimal-precision zero.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::parse(std::string_view text, int precision, Round round) {
  BigFloat out(precision);
  std::string buf(text);
  char* end = nullptr;
  if (buf.empty() ||
      mpfr_strtofr(out.value_, buf.c_str(), &end, 10, to_mpfr(round)),
      end == nullptr || *end != '\0' || end == buf.c_str()) {
    throw Error(ErrorCode::ParseError, "not a decimal number: '" + buf + "'");
  }
  return out;
}

BigFloat BigFloat::with_precision(int precision, Round round) const {
  BigFloat out(precision);
  mpfr_set(out.value_, value_, to_mpfr(round));
  return out;
}

std::string BigFloat::to_string(int digits) const {
  if (digits <= 0) {
    digits = static_cast<int>(std::ceil(precision() * 0.30103)) + 1;
  }
  std::unique_ptr<char[]> buf(new char[static_cast<size_t>(digits) + 64]);
  mpfr_snprintf(buf.get(), static_cast<size_t>(digits) + 64, "%.*RNg", digits,
                value_);
  return std::string(buf.get());
}

BigFloat add(const BigFloat& a, const BigFloat& b, Round r) {
  BigFloat out(joint(a, b));
  mpfr_add(out.get(), a.get(), b.get(), to_mpfr(r));
  return out;
}

BigFloat sub(const BigFloat& a, const BigFloat& b, Round r) {
  BigFloat out(joint(a, b));
  mpfr_sub(out.get(), a.get(), b.get(), to_mpfr(r));
  return out;
}

BigFloat mul(const BigFloat& a, const BigFloat& b, Round r) {
  BigFloat out(joint(a, b));
  mpfr_mul(out.get(), a.get(), b.get(), to_mpfr(r));
  return out;
}

BigFloat div(const BigFloat& a, const BigFloat& b, Round r) {
  BigFloat out(joint(a, b));
  mpfr_div(out.get(), a.get(), b.get(), to_mpfr(r));
  return out;
}

BigFloat one_minus(const BigFloat& a, Round r) {
  BigFloat out(a.precision());
  mpfr_ui_sub(out.get(), 1, a.get(), to_mpfr(r));
  return out;
}

BigFloat abs(const BigFloat& a) {
  BigFloat out(a.precision());
  mpfr_abs(out.get(), a.get(), MPFR_RNDN);
  return out;
}

BigFloat sqrt(const BigFloat& a, Round r) {
  BigFloat out(a.precision());
  mpfr_sqrt(out.get(), a.get(), to_mpfr(r));
  return out;
}

BigFloat pow(const BigFloat& a, long exponent, Round r) {
  BigFloat out(a.precision());
  mpfr_pow_si(out.get(), a.get(), exponent, to_mpfr(r));
  return out;
}

double log2_of(const BigFloat& a) {
  long exp = 0;
  double mant = mpfr_get_d_2exp(&exp, a.get(), MPFR_RNDN);
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

const BigFloat& min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }
const BigFloat& max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigFloat half(int precision) { return BigFloat(0.5, precision); }

Interval::Interval(BigFloat l, BigFloat h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) {
    throw Error(ErrorCode::InvalidArgument,
                "interval with lo > hi: [" + lo.to_string(12) + ", " +
                    hi.to_string(12) + "]");
  }
}

BigFloat Interval::midpoint() const {
  BigFloat out(precision());
  mpfr_add(out.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(out.get(), out.get(), 1, MPFR_RNDN);
  return out;
}

bool intersect(const Interval& a, const Interval& b, Interval& out) {
  const BigFloat& l = max(a.lo, b.lo);
  const BigFloat& h = min(a.hi, b.hi);
  if (h < l) return false;
  out = Interval(l, h);
  return true;
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(min(a.lo, b.lo), max(a.hi, b.hi));
}

Interval widen(const Interval& a, const BigFloat& radius) {
  return Interval(sub(a.lo, radius, Round::Down), add(a.hi, radius, Round::Up));
}

}  // namespace tent
