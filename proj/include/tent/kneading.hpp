#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tent/bigfloat.hpp"
#include "tent/symbolic.hpp"
#include "tent/tent_map.hpp"

namespace tent {

struct KneadingInfo {
  Word prefix;                        ///< over {0, 1}
  std::optional<EPSeq> exact;         ///< set when the critical point is periodic
  std::optional<std::size_t> period_m;
  std::optional<EPSeq> symbolic;      ///< K known exactly (periodic or not)
  bool certified = true;
  std::optional<std::size_t> first_uncertain;

  /// Exact sequence when known, otherwise the finite prefix.
  SeqView view() const;
  std::size_t known_depth() const;
  /// itin(c): (C K|m-1)^inf when periodic, C K otherwise.
  std::optional<EPSeq> critical_itinerary() const;
};

/// K known exactly, e.g. a target sequence.
KneadingInfo kneading_from_sequence(const EPSeq& K);
KneadingInfo kneading_prefix(const TentMap& T, std::size_t depth);

enum class Detection { Found, Absent, Ambiguous };
const char* to_string(Detection d);

struct PeriodicDetection {
  Detection status = Detection::Absent;
  std::optional<std::size_t> period;
  std::optional<std::size_t> ambiguous_at;
};

/// Purely numeric search for T^m(c) = c, m <= max_period; ignores any symbolic
/// fact attached to T.
PeriodicDetection detect_periodic_critical(const TentMap& T, std::size_t max_period,
                                           const BigFloat& tol);

enum class Admissibility { Strict, Boundary, Violates };
const char* to_string(Admissibility a);

struct AdmissibilityWitness {
  std::size_t shift = 0;
  std::size_t depth = 0;
  Word window;
  std::string reason;
};

struct AdmissibilityVerdict {
  Admissibility status = Admissibility::Strict;
  std::optional<AdmissibilityWitness> witness;
  std::size_t shifts_checked = 0;
};

AdmissibilityVerdict admissible(const SeqView& s, const KneadingInfo& K, std::size_t depth);

enum class PrecriticalCase { None = 0, ZeroRun = 1, ShiftsBelow = 2, PeriodTail = 3 };

struct PrecriticalVerdict {
  bool yes = false;
  PrecriticalCase which = PrecriticalCase::None;
  std::optional<AdmissibilityWitness> witness;  ///< failing shift for clause 2
};

PrecriticalVerdict precritical_admissible(const Word& prefix, const KneadingInfo& K);

/// Segment r of t with |r| <= m and r above K|_{|r|}, if some shift of t
/// exceeds K within depth.
struct SegmentViolation {
  Word r;
  std::size_t position = 0;  ///< start of r in t
  std::size_t shift = 0;     ///< shift of t that exceeded K
};
std::optional<SegmentViolation> segment_violation(const SeqView& t, const KneadingInfo& K,
                                                  std::size_t depth);

/// rho_0 .. rho_{n-1}.
std::vector<int> signature(const SeqView& K, std::size_t n);

enum class ShadowCriterion { Satisfied, NotFound, Ambiguous };
const char* to_string(ShadowCriterion s);

struct ShadowCriterionResult {
  ShadowCriterion status = ShadowCriterion::NotFound;
  std::size_t witness = 0;  ///< n for SATISFIED / AMBIGUOUS
  std::size_t horizon = 0;
  std::string clause;       ///< which disjunct held
  int rho = 0;
  Symbol k_symbol = Symbol::Zero;
  double distance = 0.0;    ///< |T^n(c) - c| at the witness
};

ShadowCriterionResult shadowing_criterion(const TentMap& T, const BigFloat& epsilon,
                                          std::size_t horizon);

struct SlopeResult {
  Interval enclosure;
  BigFloat value;
  std::size_t compare_depth = 0;
  std::size_t iterations = 0;
};

/// Bisection on lambda in (1, 2) against a target kneading sequence (exact or
/// a finite prefix), validated by recomputation at raised precision.
SlopeResult slope_from_kneading(const SeqView& target, std::size_t depth, int precision);

/// Map whose slope realises K; the symbolic critical itinerary is attached.
TentMap map_from_kneading(const EPSeq& K, int precision = kDefaultPrecision,
                          std::size_t depth = 40);

/// Resolves `golden`, `kneading:<seq>` or a decimal literal.
TentMap resolve_slope(const std::string& spec, int precision = kDefaultPrecision);

/// Enclosure of T^n(c) for a map with a symbolic critical itinerary; results
/// are cached per distinct tail.
class CriticalOrbit {
 public:
  explicit CriticalOrbit(const TentMap& T, std::size_t depth = 0);
  const Interval& point(std::size_t n);
  bool is_critical(std::size_t n) const;

 private:
  TentMap T_;
  EPSeq itin_;
  std::size_t depth_;
  std::map<EPSeq, Interval> cache_;
};

}  // namespace tent
