#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "tent/error.hpp"
#include "tent/kneading.hpp"
#include "tent/tent_map.hpp"

using namespace tent;

namespace {

BigFloat num(double v) { return BigFloat(v, kDefaultPrecision); }
BigFloat dec(const char* s) { return BigFloat::parse(s, kDefaultPrecision); }
BigFloat tol12() { return dec("1e-12"); }

}  // namespace

TEST(Eval, Examples) {
  auto T = TentMap::from_decimal("1.8");
  EXPECT_EQ(eval(T, num(0)), 0.0);
  EXPECT_NEAR(eval(T, half(256)).to_double(), 0.9, 1e-15);
  auto G = TentMap::golden();
  auto orbit = orbit_prefix(G, half(256), 4);
  EXPECT_NEAR(orbit[1].to_double(), static_cast<double>(oracle::golden() / 2), 1e-15);
  EXPECT_NEAR(orbit[2].to_double(), static_cast<double>((oracle::golden() - 1) / 2), 1e-15);
  EXPECT_NEAR(orbit[3].to_double(), 0.5, 1e-60);
}

TEST(OrbitPrefix, Examples) {
  auto T = TentMap::from_decimal("1.8");
  auto o = orbit_prefix(T, dec("0.3"), 4);
  ASSERT_EQ(o.size(), 4u);
  EXPECT_NEAR(o[1].to_double(), 0.54, 1e-14);
  EXPECT_NEAR(o[2].to_double(), 0.828, 1e-14);
  EXPECT_NEAR(o[3].to_double(), 0.3096, 1e-14);
  for (auto& p : orbit_prefix(T, num(0), 6)) EXPECT_TRUE(p.is_zero());
  auto g = orbit_prefix(TentMap::golden(), half(256), 4);
  double want[] = {0.5, 0.80902, 0.30902, 0.5};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(g[i].to_double(), want[i], 1e-5);
}

TEST(Address, Examples) {
  EXPECT_EQ(address(num(0.25), tol12()), Address::Zero);
  EXPECT_EQ(address(half(256), tol12()), Address::Crit);
  EXPECT_EQ(address(add(half(256), dec("1e-15")), tol12()), Address::NearCrit);
  EXPECT_EQ(address(num(0.75), tol12()), Address::One);
}

TEST(ItineraryPrefix, Examples) {
  auto T = TentMap::from_decimal("1.8");
  auto r = itinerary_prefix(T, dec("0.3"), 4, tol12());
  EXPECT_EQ(to_string(r.word), "0110");
  EXPECT_TRUE(r.certified);
  EXPECT_FALSE(r.crit_hit);

  auto g = itinerary_prefix(TentMap::golden(), half(256), 6, tol12());
  EXPECT_EQ(to_string(g.word), "C10C10");
  ASSERT_TRUE(g.crit_hit);
  EXPECT_EQ(*g.crit_hit, 0u);

  EXPECT_EQ(to_string(itinerary_prefix(T, num(0), 5, tol12()).word), "00000");
}

TEST(ItineraryPrefix, NearCriticalIsFlagged) {
  auto T = TentMap::from_decimal("1.8");
  auto r = itinerary_prefix(T, add(half(256), dec("1e-15")), 3, tol12());
  EXPECT_FALSE(r.certified);
  ASSERT_TRUE(r.first_uncertain);
  EXPECT_EQ(*r.first_uncertain, 0u);
}

TEST(LimitItinerary, Examples) {
  auto G = TentMap::golden();
  auto k = limit_itinerary(G, G.critical_value(), Side::Lower, 9, tol12());
  EXPECT_EQ(to_string(k.word), "101101101");
  EXPECT_EQ(to_string(k.word), to_string(kneading_prefix(G, 9).prefix).substr(0, 9));
  auto T = TentMap::from_decimal("1.8");
  for (Side s : {Side::Upper, Side::Lower}) {
    EXPECT_EQ(to_string(limit_itinerary(T, Interval::point(num(0)), s, 5, tol12()).word), "00000");
  }
}

TEST(LimitItinerary, SidesDifferAtCritical) {
  auto G = TentMap::golden();
  auto up = limit_itinerary(G, Interval::point(half(256)), Side::Upper, 4, tol12());
  auto lo = limit_itinerary(G, Interval::point(half(256)), Side::Lower, 4, tol12());
  EXPECT_EQ(up.word[0], Symbol::One);
  EXPECT_EQ(lo.word[0], Symbol::Zero);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(up.word[i], lo.word[i]);
}

TEST(Preimages, Examples) {
  auto T = TentMap::from_decimal("1.8");
  auto z = preimages(T, num(0));
  ASSERT_EQ(z.size(), 2u);
  EXPECT_EQ(z[0], 0.0);
  EXPECT_EQ(z[1], 1.0);
  auto c = preimages(T, eval(T, half(256)));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NEAR(c[0].to_double(), 0.5, 1e-60);
  auto p = preimages(T, eval(T, dec("0.3")));
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0].to_double(), 0.3, 1e-60);
  EXPECT_NEAR(p[1].to_double(), 0.7, 1e-60);
  EXPECT_TRUE(preimages(T, num(0.95)).empty());
}

TEST(ItineraryToPoint, Examples) {
  auto G = TentMap::golden();
  auto crit = itinerary_to_point(G, SeqView(parse_epseq("(C10)")), 30);
  EXPECT_TRUE(crit.contains(half(256)));
  EXPECT_LE(crit.width(), pow(num(2), -200));

  auto k = itinerary_to_point(G, SeqView(parse_epseq("(101)")), 40);
  Interval tc = G.critical_value();
  EXPECT_LE(k.lo, add(tc.lo, dec("1e-10")));
  EXPECT_GE(k.hi, sub(tc.hi, dec("1e-10")));
  EXPECT_NEAR(k.midpoint().to_double(), 0.80902, 1e-5);

  auto T = TentMap::from_decimal("1.8");
  auto w = itinerary_prefix(T, dec("0.3"), 30, tol12());
  ASSERT_TRUE(w.certified);
  EXPECT_TRUE(itinerary_to_point(T, SeqView(w.word), 30).contains(dec("0.3")));
}

TEST(ItineraryToPoint, EmptyPullbackThrows) {
  // T(c) > 1/2, so nothing starts with C0.
  auto G = TentMap::golden();
  try {
    itinerary_to_point(G, SeqView(parse_word("C0")), 2);
    FAIL() << "expected InadmissiblePrefix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InadmissiblePrefix);
  }
}

TEST(IntervalOfPrefix, Examples) {
  auto T = TentMap::from_decimal("1.8");
  auto one = interval_of_prefix(T, num(0.25), 1, tol12());
  EXPECT_LE(one.lo, 0.0);
  EXPECT_NEAR(one.hi.to_double(), 0.5, 1e-60);

  auto four = interval_of_prefix(T, dec("0.3"), 4, tol12());
  EXPECT_TRUE(four.contains(dec("0.3")));
  EXPECT_LE(four.width().to_double(), std::pow(1.8, -4) + 1e-60);

  auto G = TentMap::golden();
  auto c = interval_of_prefix(G, half(256), 12, tol12());
  EXPECT_TRUE(c.contains(half(256)));
  EXPECT_LE(c.width(), pow(num(2), -200));

  EXPECT_THROW(interval_of_prefix(T, add(half(256), dec("1e-15")), 4, tol12()), Error);
}

TEST(OutsideCore, Examples) {
  auto G = TentMap::golden();
  EXPECT_TRUE(outside_core(G, num(0.1)));
  EXPECT_TRUE(outside_core(G, num(0.9)));
  EXPECT_FALSE(outside_core(G, num(0.5)));
}

// ---------------------------------------------------------------------------
// Properties

TEST(TentMapProperty, OrderConsistency) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> lam(1.05, 1.95), u(0, 1);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    auto T = TentMap::from_decimal(std::to_string(lam(rng)), 128);
    double a = u(rng), b = u(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    BigFloat x(a, 128), y(b, 128), tol(1e-30, 128);
    auto sx = itinerary_prefix(T, x, 30, tol), sy = itinerary_prefix(T, y, 30, tol);
    if (!sx.certified || !sy.certified) continue;
    if (!discrepancy(SeqView(sx.word), SeqView(sy.word), 30)) continue;
    EXPECT_EQ(plex_compare(SeqView(sx.word), SeqView(sy.word), 30), Order::LT)
        << T.label() << " " << a << " " << b;
    ++checked;
  }
  EXPECT_GT(checked, 900);
}

TEST(TentMapProperty, ItineraryMatchesOracle) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> lam(1.05, 1.95), u(0, 1);
  for (int i = 0; i < 500; ++i) {
    double l = lam(rng), x = u(rng);
    if (oracle::crit_margin(l, x, 20) < 1e-9) continue;
    auto T = TentMap::from_decimal(std::to_string(l), 128);
    auto r = itinerary_prefix(T, BigFloat(x, 128), 20, BigFloat(1e-30, 128));
    EXPECT_EQ(to_string(r.word), oracle::itinerary(std::stold(std::to_string(l)), x, 20));
  }
}

TEST(TentMapProperty, RoundTripAndContraction) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> lam(1.05, 1.95), u(0, 1);
  for (int i = 0; i < 300; ++i) {
    auto T = TentMap::from_decimal(std::to_string(lam(rng)));
    BigFloat x(u(rng), 256);
    std::size_t N = 25;
    auto r = itinerary_prefix(T, x, N, T.tolerance());
    if (!r.certified) continue;
    auto I = itinerary_to_point(T, SeqView(r.word), N);
    EXPECT_TRUE(I.contains(x));
    BigFloat bound = add(pow(div(num(1), T.slope()), static_cast<long>(N)), pow(num(2), -(256 - 4)));
    EXPECT_LE(interval_of_prefix(T, x, N, T.tolerance()).width(), bound);
  }
}

TEST(TentMapProperty, PreimagesContainSource) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> lam(1.05, 1.95), u(0, 1);
  for (int i = 0; i < 500; ++i) {
    auto T = TentMap::from_decimal(std::to_string(lam(rng)));
    BigFloat x(u(rng), 256);
    auto pre = preimages(T, eval(T, x));
    bool found = false;
    for (auto& p : pre) found = found || abs(sub(p, x)) < pow(num(2), -240);
    EXPECT_TRUE(found) << x.to_string(20);
  }
}

TEST(TentMapProperty, LimitItineraryAgreesAwayFromCritical) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> lam(1.05, 1.95), u(0, 1);
  for (int i = 0; i < 300; ++i) {
    auto T = TentMap::from_decimal(std::to_string(lam(rng)));
    BigFloat x(u(rng), 256);
    auto r = itinerary_prefix(T, x, 30, T.tolerance());
    if (!r.certified || r.crit_hit) continue;
    for (Side s : {Side::Upper, Side::Lower}) {
      EXPECT_EQ(limit_itinerary(T, Interval::point(x), s, 30, T.tolerance()).word, r.word);
    }
  }
}
