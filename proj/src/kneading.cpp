#include "tent/kneading.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "tent/error.hpp"

namespace tent {

namespace {

/// K from a symbolic critical itinerary by perturbation-sign tracking starting
/// just below T(c).
EPSeq kneading_from_critical(const EPSeq& itin) {
  const Word& per = itin.period();
  if (itin.preperiod().empty() && per.front() == Symbol::Crit) {
    Word k;
    bool positive = false;
    for (std::size_t i = 1; i < per.size(); ++i) {
      if (per[i] == Symbol::Crit) {
        throw Error(ErrorCode::InvalidArgument,
                    "critical itinerary with two C per period: " + itin.to_string());
      }
      k.push_back(per[i]);
      if (per[i] == Symbol::One) positive = !positive;
    }
    k.push_back(positive ? Symbol::One : Symbol::Zero);
    return EPSeq({}, std::move(k));
  }
  EPSeq tail = itin.shift(1);
  if (tail.contains(Symbol::Crit)) {
    throw Error(ErrorCode::InvalidArgument,
                "critical itinerary returns to C off-period: " + itin.to_string());
  }
  return tail;
}

KneadingInfo from_exact(const EPSeq& K, std::size_t depth) {
  KneadingInfo info;
  info.symbolic = K;
  info.prefix = K.prefix(depth);
  if (K.preperiod().empty()) {
    info.exact = K;
    info.period_m = K.period().size();
  }
  return info;
}

SeqView critical_view(const KneadingInfo& K) {
  if (auto ic = K.critical_itinerary()) return SeqView(*ic);
  Word w{Symbol::Crit};
  w.insert(w.end(), K.prefix.begin(), K.prefix.end());
  return SeqView(std::move(w));
}

std::size_t min_len(std::size_t a, std::size_t b) { return a < b ? a : b; }

/// Order of s against K with the discrepancy index, at the given depth.
struct Comparison {
  Order order;
  std::size_t index;
};

Comparison compare_at(const SeqView& s, const SeqView& K, std::size_t depth) {
  bool odd = false;
  for (std::size_t k = 0; k < depth; ++k) {
    Symbol a = s.at(k);
    Symbol b = K.at(k);
    if (a != b) return {order_at(odd ? Parity::Odd : Parity::Even, a, b), k};
    if (a == Symbol::One) odd = !odd;
  }
  return {Order::EqToDepth, depth};
}

AdmissibilityWitness make_witness(const SeqView& s, std::size_t shift, std::size_t depth,
                                  std::size_t through, std::string reason) {
  AdmissibilityWitness w;
  w.shift = shift;
  w.depth = depth;
  w.window = s.shift(shift).prefix(min_len(through + 1, depth));
  w.reason = std::move(reason);
  return w;
}

}  // namespace

SeqView KneadingInfo::view() const {
  if (symbolic) return SeqView(*symbolic);
  return SeqView(prefix);
}

std::size_t KneadingInfo::known_depth() const {
  return symbolic ? SeqView::kInfinite : prefix.size();
}

std::optional<EPSeq> KneadingInfo::critical_itinerary() const {
  if (!symbolic) return std::nullopt;
  if (period_m) {
    Word per{Symbol::Crit};
    for (std::size_t i = 0; i + 1 < *period_m; ++i) per.push_back(exact->at(i));
    return EPSeq({}, std::move(per));
  }
  Word pre{Symbol::Crit};
  pre.insert(pre.end(), symbolic->preperiod().begin(), symbolic->preperiod().end());
  return EPSeq(std::move(pre), symbolic->period());
}

KneadingInfo kneading_from_sequence(const EPSeq& K) {
  return from_exact(K, K.preperiod().size() + 2 * K.period().size());
}

const char* to_string(Detection d) {
  switch (d) {
    case Detection::Found: return "FOUND";
    case Detection::Absent: return "ABSENT";
    case Detection::Ambiguous: return "AMBIGUOUS";
  }
  return "?";
}

PeriodicDetection detect_periodic_critical(const TentMap& T, std::size_t max_period,
                                           const BigFloat& tol) {
  if (max_period < 3) {
    throw Error(ErrorCode::InvalidArgument, "max_period must be at least 3");
  }
  PeriodicDetection out;
  const BigFloat c = T.critical_point();
  const BigFloat lo_band = sub(c, tol, Round::Down);
  const BigFloat hi_band = add(c, tol, Round::Up);
  Interval x = Interval::point(c);
  for (std::size_t m = 1; m <= max_period; ++m) {
    x = eval(T, x);
    if (abs(sub(x.midpoint(), c)) >= tol) continue;
    if (lo_band <= x.lo && x.hi <= hi_band && x.width() < tol) {
      out.status = Detection::Found;
      out.period = m;
    } else {
      out.status = Detection::Ambiguous;
      out.ambiguous_at = m;
    }
    return out;
  }
  return out;
}

KneadingInfo kneading_prefix(const TentMap& T, std::size_t depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
  if (T.critical_itinerary()) {
    return from_exact(kneading_from_critical(*T.critical_itinerary()), depth);
  }
  const BigFloat tol = T.tolerance();
  PeriodicDetection det = detect_periodic_critical(T, std::max<std::size_t>(3, min_len(depth, 64)), tol);
  if (det.status == Detection::Found) {
    std::size_t m = *det.period;
    ItineraryResult head = itinerary_prefix(T, T.critical_value(), m - 1, tol);
    if (head.certified && !head.crit_hit) {
      Word per{Symbol::Crit};
      per.insert(per.end(), head.word.begin(), head.word.end());
      EPSeq K = kneading_from_critical(EPSeq({}, std::move(per)));
      if (parity(K.period()) != Parity::Even) {
        throw Error(ErrorCode::PreconditionFailed,
                    "detected periodic kneading word " + to_string(K.period()) +
                        " is odd");
      }
      return from_exact(K, depth);
    }
  }
  LimitItinerary lim = limit_itinerary(T, T.critical_value(), Side::Lower, depth, tol);
  KneadingInfo info;
  info.prefix = std::move(lim.word);
  info.certified = lim.certified;
  info.first_uncertain = lim.first_uncertain;
  return info;
}

const char* to_string(Admissibility a) {
  switch (a) {
    case Admissibility::Strict: return "STRICT";
    case Admissibility::Boundary: return "BOUNDARY";
    case Admissibility::Violates: return "VIOLATES";
  }
  return "?";
}

AdmissibilityVerdict admissible(const SeqView& s, const KneadingInfo& K, std::size_t depth) {
  AdmissibilityVerdict out;
  const SeqView Kv = K.view();
  const std::size_t kd = K.known_depth();
  const bool finite = !s.is_exact();
  const std::size_t limit = finite ? min_len(depth, s.known_length()) : depth;

  std::optional<std::size_t> crit;
  for (std::size_t i = 0; i < limit; ++i) {
    if (s.at(i) == Symbol::Crit) {
      crit = i;
      break;
    }
  }
  const std::size_t last_shift = crit ? *crit : limit;
  bool boundary = false;
  for (std::size_t i = 0; i < last_shift; ++i) {
    std::size_t d = finite ? limit - i : depth;
    d = min_len(d, kd);
    SeqView si = s.shift(i);
    Comparison cmp = compare_at(si, Kv, d);
    ++out.shifts_checked;
    if (cmp.order == Order::GT) {
      out.status = Admissibility::Violates;
      out.witness = make_witness(s, i, d, cmp.index, "shift exceeds K");
      return out;
    }
    if (cmp.order == Order::EqToDepth) boundary = true;
  }
  if (crit) {
    // Past the first C the sequence must continue as the itinerary of c.
    SeqView tail = s.shift(*crit);
    SeqView ic = critical_view(K);
    std::size_t d = finite ? limit - *crit : depth;
    d = min_len(d, ic.known_length());
    for (std::size_t k = 0; k < d; ++k) {
      if (tail.at(k) != ic.at(k)) {
        out.status = Admissibility::Violates;
        out.witness = make_witness(s, *crit, d, k, "tail after C differs from itin(c)");
        return out;
      }
    }
  }
  out.status = boundary ? Admissibility::Boundary : Admissibility::Strict;
  return out;
}

PrecriticalVerdict precritical_admissible(const Word& prefix, const KneadingInfo& K) {
  if (!K.certified) {
    throw Error(ErrorCode::Uncertified, "kneading prefix is not certified");
  }
  PrecriticalVerdict out;
  if (std::all_of(prefix.begin(), prefix.end(),
                  [](Symbol s) { return s == Symbol::Zero; })) {
    out.yes = true;
    out.which = PrecriticalCase::ZeroRun;
    return out;
  }
  for (Symbol sym : prefix) {
    if (sym == Symbol::Crit) {
      throw Error(ErrorCode::InvalidArgument, "prefix must be over {0,1}");
    }
  }
  const std::size_t n = prefix.size();
  SeqView ic = critical_view(K);
  SeqView s = [&]() -> SeqView {
    if (ic.is_exact()) {
      Word pre = prefix;
      pre.insert(pre.end(), ic.exact().preperiod().begin(), ic.exact().preperiod().end());
      return SeqView(EPSeq(std::move(pre), ic.exact().period()));
    }
    Word w = prefix;
    Word tail = ic.prefix(ic.known_length());
    w.insert(w.end(), tail.begin(), tail.end());
    return SeqView(std::move(w));
  }();
  if (K.known_depth() < n + 1) {
    throw Error(ErrorCode::InsufficientPrefix, "kneading prefix shorter than |prefix| + 1");
  }
  bool clause2 = true;
  for (std::size_t i = 0; i <= n && clause2; ++i) {
    std::size_t d = n - i + 1;
    Comparison cmp = compare_at(s.shift(i), K.view(), d);
    if (cmp.order != Order::LT) {
      clause2 = false;
      out.witness = make_witness(s, i, d, cmp.index,
                                 cmp.order == Order::GT ? "shift exceeds K"
                                                        : "shift equals K");
    }
  }
  if (clause2) {
    out.yes = true;
    out.which = PrecriticalCase::ShiftsBelow;
    return out;
  }
  if (K.period_m && ic.is_exact()) {
    const Word& per = ic.exact().period();
    Word t(per.begin() + 1, per.end());
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (t.size() - k == n && std::equal(prefix.begin(), prefix.end(),
                                          t.begin() + static_cast<std::ptrdiff_t>(k))) {
        out.yes = true;
        out.which = PrecriticalCase::PeriodTail;
        return out;
      }
    }
  }
  return out;
}

std::optional<SegmentViolation> segment_violation(const SeqView& t, const KneadingInfo& K,
                                                  std::size_t depth) {
  if (!K.exact || !K.period_m) {
    throw Error(ErrorCode::PreconditionFailed, "segment_violation needs periodic K");
  }
  const std::size_t m = *K.period_m;
  const SeqView Kv = K.view();
  const std::size_t limit = min_len(depth, t.known_length());
  for (std::size_t i = 0; i < limit; ++i) {
    std::size_t d = t.is_exact() ? depth : limit - i;
    Comparison cmp = compare_at(t.shift(i), Kv, d);
    if (cmp.order != Order::GT) continue;
    // K|_{mq} is a power of the even word D<>, so the window starting after q
    // full periods carries the same parity as the full agreeing prefix.
    std::size_t q = cmp.index / m;
    std::size_t j = cmp.index % m;
    SegmentViolation v;
    v.shift = i;
    v.position = i + m * q;
    v.r = t.shift(v.position).prefix(j + 1);
    return v;
  }
  return std::nullopt;
}

std::vector<int> signature(const SeqView& K, std::size_t n) {
  std::vector<int> rho;
  rho.reserve(n);
  if (n == 0) return rho;
  rho.push_back(-1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    switch (K.at(i)) {
      case Symbol::Zero: rho.push_back(rho.back()); break;
      case Symbol::One: rho.push_back(-rho.back()); break;
      case Symbol::Crit: rho.push_back(-1); break;
    }
  }
  return rho;
}

const char* to_string(ShadowCriterion s) {
  switch (s) {
    case ShadowCriterion::Satisfied: return "SATISFIED";
    case ShadowCriterion::NotFound: return "NOT_FOUND";
    case ShadowCriterion::Ambiguous: return "AMBIGUOUS";
  }
  return "?";
}

CriticalOrbit::CriticalOrbit(const TentMap& T, std::size_t depth)
    : T_(T), itin_(*T.critical_itinerary()), depth_(depth) {
  if (depth_ == 0) {
    depth_ = static_cast<std::size_t>(std::ceil(T.precision() / T.log2_slope())) + 32;
  }
}

bool CriticalOrbit::is_critical(std::size_t n) const {
  return itin_.at(n) == Symbol::Crit;
}

const Interval& CriticalOrbit::point(std::size_t n) {
  EPSeq tail = itin_.shift(n);
  auto it = cache_.find(tail);
  if (it != cache_.end()) return it->second;
  Interval x = itinerary_to_point(T_, SeqView(tail), depth_);
  return cache_.emplace(std::move(tail), std::move(x)).first->second;
}

ShadowCriterionResult shadowing_criterion(const TentMap& T, const BigFloat& epsilon,
                                          std::size_t horizon) {
  if (!(epsilon > 0.0) || horizon < 1) {
    throw Error(ErrorCode::InvalidArgument, "need epsilon > 0 and horizon >= 1");
  }
  ShadowCriterionResult out;
  out.horizon = horizon;
  KneadingInfo K = kneading_prefix(T, horizon + 1);
  SeqView Kv = K.view();
  std::vector<int> rho = signature(Kv, horizon + 1);

  std::optional<CriticalOrbit> symbolic;
  TentMap Tn = T;
  if (T.critical_itinerary()) {
    symbolic.emplace(T);
  } else if (auto ic = K.critical_itinerary()) {
    symbolic.emplace(T.with_critical_itinerary(*ic));
  } else {
    int p = T.precision() +
            static_cast<int>(std::ceil(static_cast<double>(horizon) * T.log2_slope())) + 64;
    Tn = T.at_precision(p);
  }
  const BigFloat c = Tn.critical_point();
  Interval x = Interval::point(c);
  for (std::size_t n = 1; n <= horizon; ++n) {
    bool exact_return = false;
    if (symbolic) {
      exact_return = symbolic->is_critical(n);
      if (!exact_return) x = symbolic->point(n);
    } else {
      x = eval(Tn, x);
    }
    Symbol kn = (K.known_depth() > n) ? Kv.at(n) : Symbol::Zero;
    if (exact_return) {
      out.status = ShadowCriterion::Satisfied;
      out.witness = n;
      out.clause = "T^n(c) = c";
      out.rho = rho[n];
      out.k_symbol = kn;
      out.distance = 0.0;
      return out;
    }
    BigFloat far = max(sub(c, x.lo, Round::Up), sub(x.hi, c, Round::Up));
    BigFloat near = max(sub(c, x.hi, Round::Down), sub(x.lo, c, Round::Down));
    if (near >= epsilon) continue;
    bool sign_ok = (rho[n] == 1 && kn == Symbol::Zero) || (rho[n] == -1 && kn == Symbol::One);
    if (!sign_ok) continue;
    if (K.known_depth() <= n || (!K.certified && K.first_uncertain && *K.first_uncertain <= n)) {
      out.status = ShadowCriterion::Ambiguous;
      out.witness = n;
      out.clause = "kneading symbol uncertified";
      return out;
    }
    out.witness = n;
    out.rho = rho[n];
    out.k_symbol = kn;
    out.distance = far.to_double();
    if (far < epsilon) {
      out.status = ShadowCriterion::Satisfied;
      out.clause = rho[n] == 1 ? "rho_n = +1 and K_n = 0" : "rho_n = -1 and K_n = 1";
    } else {
      out.status = ShadowCriterion::Ambiguous;
      out.clause = "|T^n(c) - c| < epsilon undecided";
    }
    return out;
  }
  return out;
}

namespace {

struct Probe {
  Order order;
  bool decided;
};

Probe probe(const BigFloat& lambda, const SeqView& target, std::size_t d, int precision) {
  TentMap T(Interval::point(lambda.with_precision(precision)), precision, "probe");
  BigFloat tol(1.0, precision);
  mpfr_div_2si(tol.get(), tol.get(), precision - 2, MPFR_RNDN);
  LimitItinerary lim = limit_itinerary(T, T.critical_value(), Side::Lower, d, tol);
  std::size_t usable = lim.certified ? d : *lim.first_uncertain;
  Comparison cmp = compare_at(SeqView(lim.word), target, usable);
  if (cmp.order != Order::EqToDepth) return {cmp.order, true};
  return {Order::EqToDepth, usable == d};
}

BigFloat midpoint_of(const BigFloat& a, const BigFloat& b) {
  return Interval(a, b).midpoint();
}

}  // namespace

SlopeResult slope_from_kneading(const SeqView& target, std::size_t depth, int precision) {
  if (precision < kMinPrecision) {
    throw Error(ErrorCode::InvalidArgument, "precision below floor");
  }
  const bool exact = target.is_exact();
  if (!exact && target.known_length() < depth) {
    throw Error(ErrorCode::InsufficientPrefix, "target shorter than requested depth");
  }
  const int pi = 2 * precision + 96;
  BigFloat lo(1.0, pi);
  BigFloat hi(2.0, pi);
  BigFloat stop(1.0, pi);
  mpfr_div_2si(stop.get(), stop.get(), precision + 4, MPFR_RNDN);
  SlopeResult out;

  auto depth_for = [&](const BigFloat& lambda) -> std::size_t {
    if (!exact) return target.known_length();
    double bits = static_cast<double>(precision + 8) / std::max(log2_of(lambda), 1e-3);
    return std::max(depth, static_cast<std::size_t>(std::min(bits, 20000.0)));
  };
  // Probes a point of (a, b), nudging it off the exact midpoint when the
  // kneading prefix there cannot be decided.
  auto probe_in = [&](const BigFloat& a, const BigFloat& b, BigFloat& at) -> Probe {
    static constexpr double kNudge[] = {0.5, 0.4375, 0.5625, 0.375, 0.625, 0.3125};
    for (double f : kNudge) {
      BigFloat w = sub(b, a);
      at = add(a, mul(w, BigFloat(f, pi)));
      ++out.iterations;
      out.compare_depth = depth_for(at);
      Probe p = probe(at, target, out.compare_depth, pi);
      if (p.decided) return p;
    }
    return {Order::EqToDepth, false};
  };

  std::optional<BigFloat> inside;
  BigFloat witness(pi);
  const std::size_t cap = 4 * static_cast<std::size_t>(precision) + 256;
  while (sub(hi, lo) > stop && out.iterations < cap) {
    BigFloat at(pi);
    Probe p = probe_in(lo, hi, at);
    if (!p.decided) break;
    if (p.order == Order::LT) {
      lo = at;
    } else if (p.order == Order::GT) {
      hi = at;
    } else {
      inside = at;
      break;
    }
  }
  if (inside) {
    // Edges of the parameter set whose kneading prefix matches the target.
    BigFloat a = lo, b = *inside;
    while (sub(b, a) > stop && out.iterations < 3 * cap) {
      BigFloat at(pi);
      Probe p = probe_in(a, b, at);
      if (!p.decided) break;
      if (p.order == Order::LT) a = at;
      else if (p.order == Order::EqToDepth) b = at;
      else throw Error(ErrorCode::NoConvergence, "kneading not monotone in the bracket");
    }
    lo = a;
    witness = b;
    BigFloat e = *inside;
    BigFloat f = hi;
    while (sub(f, e) > stop && out.iterations < 3 * cap) {
      BigFloat at(pi);
      Probe p = probe_in(e, f, at);
      if (!p.decided) break;
      if (p.order == Order::GT) f = at;
      else if (p.order == Order::EqToDepth) e = at;
      else throw Error(ErrorCode::NoConvergence, "kneading not monotone in the bracket");
    }
    hi = f;
  }
  if (lo == 1.0 || hi == 2.0) {
    throw Error(ErrorCode::NoConvergence,
                "target " + target.to_string() + " is not realised by a slope in (1, 2)");
  }
  if (!inside) witness = lo;
  out.enclosure = Interval(lo.with_precision(precision, Round::Down),
                           hi.with_precision(precision, Round::Up));
  out.value = midpoint_of(lo, hi).with_precision(precision);

  // Kneading sequences are lower limits, so the matching side of a periodic
  // target is the one approached from below.
  Probe check = probe(witness, target, depth, pi + 64);
  if (!check.decided || check.order != Order::EqToDepth) {
    throw Error(ErrorCode::NoConvergence,
                "recomputed kneading prefix does not match " + target.to_string() +
                    " to depth " + std::to_string(depth));
  }
  return out;
}

TentMap map_from_kneading(const EPSeq& K, int precision, std::size_t depth) {
  KneadingInfo self = kneading_from_sequence(K);
  std::size_t span = K.preperiod().size() + 2 * K.period().size() + depth;
  if (admissible(SeqView(K), self, span).status == Admissibility::Violates) {
    throw Error(ErrorCode::InvalidArgument,
                "sequence " + K.to_string() + " exceeds one of its own shifts");
  }
  if (K.preperiod().empty() && parity(K.period()) != Parity::Even) {
    throw Error(ErrorCode::InvalidArgument,
                "periodic kneading word " + to_string(K.period()) + " must be even");
  }
  SlopeResult r = slope_from_kneading(SeqView(K), depth, precision);
  auto cache = std::make_shared<std::map<int, Interval>>();
  auto guard = std::make_shared<std::mutex>();
  cache->emplace(precision, r.enclosure);
  TentMap::Refiner refine = [K, depth, cache, guard](int p) {
    std::lock_guard<std::mutex> lock(*guard);
    auto it = cache->find(p);
    if (it != cache->end()) return it->second;
    Interval e = slope_from_kneading(SeqView(K), depth, p).enclosure;
    cache->emplace(p, e);
    return e;
  };
  TentMap T(r.enclosure, precision, "kneading:" + K.to_string(), refine);
  return T.with_critical_itinerary(*self.critical_itinerary());
}

TentMap resolve_slope(const std::string& spec, int precision) {
  if (spec == "golden") return TentMap::golden(precision);
  const std::string tag = "kneading:";
  if (spec.rfind(tag, 0) == 0) {
    return map_from_kneading(parse_epseq(spec.substr(tag.size())), precision);
  }
  return TentMap::from_decimal(spec, precision);
}

}  // namespace tent
