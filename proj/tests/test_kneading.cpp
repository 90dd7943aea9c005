#include <gtest/gtest.h>

#include <random>
#include <string>

#include "oracle.hpp"
#include "tent/error.hpp"
#include "tent/kneading.hpp"
#include "tent/omega.hpp"

using namespace tent;

namespace {

BigFloat num(double v) { return BigFloat(v, kDefaultPrecision); }
EPSeq E(const std::string& s) { return parse_epseq(s); }

const TentMap& k2_map() {
  static const TentMap T = map_from_kneading(counterexample_kneading(2));
  return T;
}

}  // namespace

TEST(KneadingPrefix, Examples) {
  auto g = kneading_prefix(TentMap::golden(), 9);
  EXPECT_EQ(to_string(g.prefix), "101101101");
  ASSERT_TRUE(g.exact);
  EXPECT_EQ(*g.exact, E("(101)"));
  EXPECT_EQ(g.period_m, 3u);
  EXPECT_TRUE(g.certified);

  EXPECT_EQ(counterexample_kneading(2), E("100(110)"));
  auto k = kneading_prefix(k2_map(), 12);
  EXPECT_EQ(to_string(k.prefix), "100110110110");
  EXPECT_FALSE(k.exact);

  auto near2 = kneading_prefix(TentMap::from_decimal("1.999"), 6);
  EXPECT_EQ(to_string(near2.prefix).substr(0, 4), "1000");
}

TEST(KneadingPrefix, MatchesOracle) {
  for (const char* l : {"1.3", "1.55", "1.8", "1.9"}) {
    auto K = kneading_prefix(TentMap::from_decimal(l), 30);
    EXPECT_EQ(to_string(K.prefix), oracle::kneading(std::stold(l), 30)) << l;
  }
}

TEST(DetectPeriodicCritical, Examples) {
  auto G = TentMap::golden();
  auto g = detect_periodic_critical(G, 20, G.tolerance());
  EXPECT_EQ(g.status, Detection::Found);
  EXPECT_EQ(g.period, 3u);
  auto T = TentMap::from_decimal("1.8");
  EXPECT_EQ(detect_periodic_critical(T, 20, T.tolerance()).status, Detection::Absent);
  EXPECT_EQ(detect_periodic_critical(k2_map(), 20, k2_map().tolerance()).status,
            Detection::Absent);
}

TEST(Admissible, Examples) {
  auto K = kneading_from_sequence(E("100(110)"));
  EXPECT_EQ(admissible(K.view(), K, 40).status, Admissibility::Boundary);
  EXPECT_EQ(admissible(SeqView(E("(110)")), K, 60).status, Admissibility::Strict);
  // 111 is below 100 at shift 0 (the agreeing prefix "1" is odd), so the finite
  // word only reaches the boundary.
  EXPECT_NE(admissible(SeqView(parse_word("111")), K, 3).status, Admissibility::Violates);
  auto v = admissible(SeqView(parse_word("100")), kneading_from_sequence(E("(101)")), 3);
  EXPECT_EQ(v.status, Admissibility::Violates);
  ASSERT_TRUE(v.witness);
}

TEST(Admissible, ViolationsCarryWitness) {
  auto K = kneading_from_sequence(E("(101)"));
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int i = 0; i < 300; ++i) {
    std::string s;
    for (int j = 0; j < 12; ++j) s += bit(rng) ? '1' : '0';
    auto v = admissible(SeqView(parse_word(s)), K, 12);
    if (v.status == Admissibility::Violates) {
      ASSERT_TRUE(v.witness);
      EXPECT_GT(oracle::plex(s.substr(v.witness->shift), oracle::expand("", "101", 40),
                             12 - v.witness->shift),
                0);
    }
    EXPECT_EQ(v.status == Admissibility::Violates,
              !oracle::admissible(s, oracle::expand("", "101", 40)))
        << s;
  }
}

TEST(PrecriticalAdmissible, Examples) {
  auto G = kneading_prefix(TentMap::golden(), 40);
  auto z = precritical_admissible(parse_word("000"), G);
  EXPECT_TRUE(z.yes);
  EXPECT_EQ(z.which, PrecriticalCase::ZeroRun);
  auto r = precritical_admissible(parse_word("10"), G);
  EXPECT_TRUE(r.yes);
  EXPECT_EQ(r.which, PrecriticalCase::PeriodTail);
  EXPECT_TRUE(precritical_admissible(parse_word("01"), G).yes);
}

TEST(PrecriticalAdmissible, ClauseTwoMatchesBruteForce) {
  auto K = kneading_from_sequence(counterexample_kneading(2));
  std::string k = oracle::expand("100", "110", 80);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (unsigned b = 0; b < (1u << n); ++b) {
      std::string w;
      for (std::size_t i = 0; i < n; ++i) w += (b >> (n - 1 - i)) & 1 ? '1' : '0';
      std::string s = w + "C" + k;
      bool below = true;
      for (std::size_t i = 0; i < n && below; ++i) below = oracle::plex(s.substr(i), k, 40) < 0;
      bool zeros = w.find('1') == std::string::npos;
      auto v = precritical_admissible(parse_word(w), K);
      EXPECT_EQ(v.yes, zeros || below) << w;
      if (v.yes && !zeros) {
        EXPECT_EQ(v.which, PrecriticalCase::ShiftsBelow) << w;
      }
    }
  }
}

TEST(SegmentViolation, Examples) {
  auto K = kneading_from_sequence(E("(101)"));
  EXPECT_FALSE(segment_violation(K.view(), K, 30));
  auto r = segment_violation(SeqView(parse_word("100")), K, 3);
  ASSERT_TRUE(r);
  EXPECT_EQ(to_string(r->r), "100");
  for (std::size_t k = 0; k < 6; ++k) {
    std::string t = oracle::expand("", "101", 3 * k) + "100" + "101101";
    auto v = segment_violation(SeqView(parse_word(t)), K, t.size());
    ASSERT_TRUE(v) << t;
    EXPECT_LE(v->r.size(), 3u);
  }
}

TEST(Signature, Examples) {
  EXPECT_EQ(signature(SeqView(E("(0)")), 4), (std::vector<int>{-1, -1, -1, -1}));
  EXPECT_EQ(signature(SeqView(E("(101)")), 6), (std::vector<int>{-1, 1, 1, -1, 1, 1}));
  EXPECT_EQ(signature(SeqView(E("100(110)")), 6), (std::vector<int>{-1, 1, 1, 1, -1, 1}));
  EXPECT_EQ(signature(SeqView(parse_word("C1")), 3), (std::vector<int>{-1, -1, 1}));
}

TEST(ShadowingCriterion, Examples) {
  auto g = shadowing_criterion(TentMap::golden(), num(0.01), 100);
  EXPECT_EQ(g.status, ShadowCriterion::Satisfied);
  EXPECT_EQ(g.witness, 3u);
  auto k = shadowing_criterion(k2_map(), num(0.01), 10000);
  EXPECT_EQ(k.status, ShadowCriterion::NotFound);
  EXPECT_EQ(k.horizon, 10000u);
  // Regression snapshot.
  auto t = shadowing_criterion(TentMap::from_decimal("1.8"), num(0.05), 1000);
  EXPECT_EQ(t.status, ShadowCriterion::Satisfied);
  EXPECT_EQ(t.witness, 26u);
}

TEST(SlopeFromKneading, Examples) {
  auto g = slope_from_kneading(SeqView(E("(101)")), 40, 256);
  EXPECT_NEAR(g.value.to_double(), static_cast<double>(oracle::golden()), 1e-9);
  auto k2 = slope_from_kneading(SeqView(E("100(110)")), 40, 256);
  auto k3 = slope_from_kneading(SeqView(E("1000(110)")), 40, 256);
  EXPECT_GT(k2.value, std::sqrt(2.0));
  EXPECT_LT(k2.value, 2.0);
  EXPECT_NEAR(k2.value.to_double(), 1.82104947669432, 1e-12);
  EXPECT_NEAR(k3.value.to_double(), 1.91751420154915, 1e-12);
  EXPECT_NE(k2.value, k3.value);
  EXPECT_NEAR(k2.value.to_double(), static_cast<double>(oracle::slope_for("100110110110", 12)),
              1e-3);
  auto K = kneading_prefix(TentMap(k2.enclosure, 256, "k2"), 40);
  EXPECT_EQ(to_string(K.prefix), oracle::expand("100", "110", 40));
}

TEST(SlopeFromKneading, UnrealisableTargetFails) {
  try {
    slope_from_kneading(SeqView(E("(1011)")), 40, 128);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}

TEST(ResolveSlope, Forms) {
  EXPECT_NEAR(resolve_slope("golden").slope().to_double(), 1.6180339887498949, 1e-15);
  EXPECT_NEAR(resolve_slope("1.8").slope().to_double(), 1.8, 1e-15);
  auto T = resolve_slope("kneading:(101)", 128);
  EXPECT_NEAR(T.slope().to_double(), 1.6180339887498949, 1e-15);
  EXPECT_THROW(resolve_slope("kneading:(1011)", 128), Error);
}

// ---------------------------------------------------------------------------
// Properties

TEST(KneadingProperty, SelfConsistency) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> lam(1.05, 1.95);
  for (int i = 0; i < 100; ++i) {
    auto K = kneading_prefix(TentMap::from_decimal(std::to_string(lam(rng))), 40);
    if (!K.certified) continue;
    EXPECT_EQ(admissible(SeqView(K.prefix), K, 40).status, Admissibility::Boundary);
  }
}

TEST(KneadingProperty, PeriodicKneadingWordsAreEven) {
  for (const char* D : {"101", "1001", "10001", "10010", "10111"}) {
    auto r = slope_from_kneading(SeqView(E(std::string("(") + D + ")")), 40, 128);
    TentMap T(r.enclosure, 128, D);
    auto K = kneading_prefix(T, 40);
    ASSERT_TRUE(K.exact) << D;
    EXPECT_EQ(to_string(K.exact->period()), D);
    EXPECT_EQ(parity(K.exact->period()), Parity::Even) << D;
  }
}

TEST(KneadingProperty, RealisedItinerariesNeverViolate) {
  auto G = TentMap::golden();
  auto K = kneading_prefix(G, 80);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0, G.critical_value().lo.to_double());
  for (int i = 0; i < 500; ++i) {
    auto r = itinerary_prefix(G, num(u(rng)), 30, G.tolerance());
    if (!r.certified) continue;
    EXPECT_NE(admissible(SeqView(r.word), K, 30).status, Admissibility::Violates);
  }
}

TEST(KneadingProperty, SegmentViolationAgreesWithBruteForce) {
  auto K = kneading_from_sequence(E("(101)"));
  const std::string k = oracle::expand("", "101", 80);
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int i = 0; i < 400; ++i) {
    std::string t;
    for (int j = 0; j < 40; ++j) t += (bit(rng) || j % 3 == 0) ? '1' : '0';
    auto v = segment_violation(SeqView(parse_word(t)), K, 40);
    bool any = false;
    for (std::size_t p = 0; p < t.size() && !any; ++p) {
      for (std::size_t len = 1; len <= 3 && p + len <= t.size(); ++len) {
        if (oracle::plex(t.substr(p, len), k, len) > 0) any = true;
      }
    }
    if (v) {
      EXPECT_LE(v->r.size(), 3u);
      EXPECT_GT(oracle::plex(to_string(v->r), k, v->r.size()), 0) << t;
    }
    EXPECT_EQ(v.has_value(), any) << t;
  }
}

TEST(KneadingProperty, SlopeRoundTrip) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> lam(1.7, 1.95);
  for (int i = 0; i < 4; ++i) {
    double l = lam(rng);
    auto K = kneading_prefix(TentMap::from_decimal(std::to_string(l), 128), 40);
    if (!K.certified) continue;
    auto r = slope_from_kneading(SeqView(K.prefix), 40, 128);
    EXPECT_NEAR(r.value.to_double(), std::stod(std::to_string(l)), 1e-6);
  }
}

TEST(KneadingProperty, SignatureParityLink) {
  std::mt19937_64 rng(45);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int i = 0; i < 200; ++i) {
    std::string s;
    for (int j = 0; j < 20; ++j) s += bit(rng) ? '1' : '0';
    Word w = parse_word(s);
    auto rho = signature(SeqView(w), 20);
    ASSERT_EQ(rho.size(), 20u);
    for (std::size_t n = 0; n < 20; ++n) {
      EXPECT_EQ(rho[n] == 1, parity(w, n) == Parity::Odd) << s << " n=" << n;
    }
  }
}
