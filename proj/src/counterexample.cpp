#include <algorithm>

#include "tent/error.hpp"
#include "tent/omega.hpp"

namespace tent {

namespace {

const Word kB{Symbol::One, Symbol::One, Symbol::Zero};

Word word_A(std::size_t k) {
  Word a(k + 1, Symbol::Zero);
  a[0] = Symbol::One;
  return a;
}

Word repeat(const Word& w, std::size_t times) {
  Word out;
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

Word cat(std::initializer_list<Word> parts) {
  Word out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// B^j s A B^inf
EPSeq lambda_seq(std::size_t k, std::size_t j, Symbol s) {
  return EPSeq(cat({repeat(kB, j), Word{s}, word_A(k)}), kB);
}

}  // namespace

EPSeq counterexample_kneading(std::size_t k) { return EPSeq(word_A(k), kB); }

Counterexample build_counterexample(std::size_t k, std::size_t depth, std::size_t jmax,
                                    std::size_t nmax, int precision) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "counterexample needs k >= 2");
  const EPSeq K = counterexample_kneading(k);
  SlopeResult slope = slope_from_kneading(SeqView(K), 40, precision);
  TentMap T = map_from_kneading(K, precision);
  const KneadingInfo KI = kneading_from_sequence(K);

  Counterexample out{k, T, slope, FiniteNet(), {}, {}, jmax, nmax, depth};
  std::vector<BigFloat> pts;
  auto add_point = [&](const EPSeq& s, std::string why) {
    auto v = admissible(SeqView(s), KI, depth);
    if (v.status == Admissibility::Violates) {
      throw Error(ErrorCode::Inadmissible, s.to_string() + " is not admissible: " +
                                               (v.witness ? v.witness->reason : ""));
    }
    if (auto crit = s.find(Symbol::Crit)) {
      auto pv = precritical_admissible(s.prefix(*crit), KI);
      if (!pv.yes) {
        throw Error(ErrorCode::Inadmissible, s.to_string() + " fails the precritical clause");
      }
    }
    Interval x = itinerary_to_point(T, SeqView(s), depth);
    pts.push_back(x.midpoint());
    out.sequences.push_back(s);
    out.provenance.push_back(std::move(why));
  };
  for (std::size_t j = 0; j <= jmax; ++j) {
    EPSeq base = lambda_seq(k, j, Symbol::Crit);
    for (std::size_t n = 0; n <= nmax; ++n) {
      add_point(base.shift(n), "sigma^" + std::to_string(n) + "(B^" + std::to_string(j) +
                                   " C A B^inf)");
    }
  }
  for (std::size_t r = 0; r < 3; ++r) {
    add_point(EPSeq({}, kB).shift(r), "cycle rotation " + std::to_string(r));
  }
  out.L = FiniteNet(std::move(pts), 0.0, "counterexample k=" + std::to_string(k));
  return out;
}

const char* to_string(NonOmegaVerdict v) {
  switch (v) {
    case NonOmegaVerdict::ParityViolation: return "PARITY_VIOLATION";
    case NonOmegaVerdict::NotInLanguage: return "NOT_IN_L_LANGUAGE";
    case NonOmegaVerdict::ExcludedB: return "EXCLUDED_B";
  }
  return "?";
}

NonOmegaCertificate non_omega_certificate(std::size_t k, std::size_t window_depth) {
  if (k < 2 || window_depth < k + 10) {
    throw Error(ErrorCode::InvalidArgument, "need k >= 2 and window_depth >= k + 10");
  }
  NonOmegaCertificate out{k, window_depth, counterexample_kneading(k), {}};
  const SeqView K(out.kneading);
  const Word A = word_A(k);

  // Every point of L has an itinerary (or a limit itinerary) among these.
  std::vector<EPSeq> language;
  for (std::size_t j = 0; 3 * j <= window_depth + 3; ++j) {
    for (Symbol s : {Symbol::Crit, Symbol::Zero, Symbol::One}) language.push_back(lambda_seq(k, j, s));
  }
  language.push_back(EPSeq({}, kB));

  for (unsigned bits = 0; bits < 8; ++bits) {
    NonOmegaCase nc;
    for (int b = 2; b >= 0; --b) nc.H.push_back((bits >> b) & 1 ? Symbol::One : Symbol::Zero);
    if (nc.H == kB) {
      nc.verdict = NonOmegaVerdict::ExcludedB;
      nc.window = kB;
      nc.evidence = "H = B";
    } else if (nc.H[0] == Symbol::Zero) {
      // A B^q followed by 0: the prefix A B^q holds 1 + 2q ones, so the
      // comparison against K = A B B ... is reversed at the 0.
      bool found = false;
      for (std::size_t q = 1; A.size() + 3 * q + 3 <= window_depth && !found; ++q) {
        Word w = cat({A, repeat(kB, q), nc.H});
        auto d = discrepancy(SeqView(w), K, w.size());
        if (d && plex_compare(SeqView(w), K, w.size()) == Order::GT) {
          nc.verdict = NonOmegaVerdict::ParityViolation;
          nc.window = w;
          nc.shift = *d;
          nc.evidence = "A B^" + std::to_string(q) + " H exceeds K at index " +
                        std::to_string(*d) + " after " +
                        std::to_string(count_ones(Word(w.begin(), w.begin() + *d))) + " ones";
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::NoConvergence, "no parity witness within window");
    } else {
      Word needle = cat({kB, nc.H});
      std::size_t hits = 0;
      for (const auto& s : language) {
        hits += find_segment(needle, SeqView(s), 0, window_depth + needle.size()).size();
      }
      nc.verdict = NonOmegaVerdict::NotInLanguage;
      nc.window = needle;
      nc.scanned = language.size();
      nc.evidence = "B H absent from " + std::to_string(language.size()) +
                    " sequences to depth " + std::to_string(window_depth);
      if (hits != 0) {
        throw Error(ErrorCode::Inadmissible, "window " + to_string(needle) + " occurs in L");
      }
    }
    out.cases.push_back(std::move(nc));
  }
  return out;
}

}  // namespace tent
