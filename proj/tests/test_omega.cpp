#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "tent/error.hpp"
#include "tent/omega.hpp"

using namespace tent;

namespace {

BigFloat num(double v) { return BigFloat(v, kDefaultPrecision); }

const Counterexample& k2() {
  static const Counterexample ce = build_counterexample(2, 60, 6, 3 * 6 + 2 + 4);
  return ce;
}

const ConstructionTrace& golden_trace() {
  static const ConstructionTrace tr = [] {
    auto G = TentMap::golden();
    return construct_omega_point(G, core_net(G, 0.02), ConstructionOptions{});
  }();
  return tr;
}

FiniteNet golden_cycle() {
  auto G = TentMap::golden();
  return FiniteNet(orbit_prefix(G, half(256), 3), 0.0, "cycle");
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(OmegaApprox, Examples) {
  auto T = TentMap::from_decimal("1.8");
  auto z = omega_approx(T, num(0), 10, 100);
  ASSERT_EQ(z.net.size(), 1u);
  EXPECT_TRUE(z.net[0].is_zero());

  auto g = omega_approx(TentMap::golden(), half(256), 10, 100);
  ASSERT_EQ(g.net.size(), 3u);
  EXPECT_NEAR(g.net[0].to_double(), 0.30902, 1e-5);
  EXPECT_NEAR(g.net[1].to_double(), 0.5, 1e-12);
  EXPECT_NEAR(g.net[2].to_double(), 0.80902, 1e-5);

  auto k = omega_approx(k2().map, half(256), 1000, 100);
  ASSERT_EQ(k.net.size(), 3u);
  auto cycle = itinerary_to_point(k2().map, SeqView(parse_epseq("(110)")), 100);
  EXPECT_LT(k.net.distance_to(cycle.midpoint()), 1e-6);
}

TEST(OmegaApprox, ClusterSeparation) {
  auto G = TentMap::golden();
  auto o = omega_approx(G, num(0.3141), 100, 2000, 0.01);
  for (std::size_t i = 1; i < o.net.size(); ++i) {
    EXPECT_GE(sub(o.net[i], o.net[i - 1]).to_double(), 0.005);
  }
}

TEST(OmegaMembership, Examples) {
  auto G = TentMap::golden();
  // c is periodic, so every orbit point of c is supported.
  for (const auto& y : orbit_prefix(G, half(256), 3)) {
    EXPECT_TRUE(omega_membership(G, half(256), y, 20, 3, 400).supported);
  }
  auto zero = omega_membership(G, half(256), num(0), 10, 3, 400);
  EXPECT_FALSE(zero.supported);
  // C in (C10)^inf matches either symbol, so "00" is seen as "0C" and the
  // first unsupported prefix is "000".
  EXPECT_EQ(zero.failing_length, 3u);
  EXPECT_EQ(to_string(zero.failing_word), "000");

  auto y = itinerary_to_point(k2().map, SeqView(parse_epseq("(110)")), 100);
  EXPECT_TRUE(omega_membership(k2().map, half(256), y.midpoint(), 20, 3, 400).supported);
}

TEST(BuildCounterexample, Examples) {
  auto small = build_counterexample(2, 60, 0, 0);
  EXPECT_TRUE(small.L.covers(half(256), 1e-12));
  EXPECT_EQ(counterexample_kneading(2), parse_epseq("10(011)"));
  const auto& ce = k2();
  EXPECT_NEAR(ce.map.slope().to_double(), 1.82104947669432, 1e-12);
  auto K = kneading_from_sequence(counterexample_kneading(2));
  for (const auto& s : ce.sequences) {
    bool has_c = false;
    for (std::size_t i = 0; i < 60; ++i) has_c = has_c || s.at(i) == Symbol::Crit;
    if (!has_c) {
      EXPECT_NE(admissible(SeqView(s), K, 60).status, Admissibility::Violates) << s.to_string();
    }
  }
  auto k3 = build_counterexample(3, 60, 6, 3 * 6 + 3 + 4);
  EXPECT_NE(k3.map.slope(), ce.map.slope());
  EXPECT_EQ(k3.L.size(), 25u);
}

TEST(NonOmegaCertificate, Examples) {
  auto cert = non_omega_certificate(2, 60);
  ASSERT_EQ(cert.cases.size(), 8u);
  for (const auto& cs : cert.cases) {
    std::string h = to_string(cs.H);
    if (h == "110") {
      EXPECT_EQ(cs.verdict, NonOmegaVerdict::ExcludedB);
    } else if (h[0] == '0') {
      EXPECT_EQ(cs.verdict, NonOmegaVerdict::ParityViolation) << h;
      EXPECT_FALSE(cs.window.empty());
    } else {
      EXPECT_EQ(cs.verdict, NonOmegaVerdict::NotInLanguage) << h;
      EXPECT_GT(cs.scanned, 0u);
    }
  }
  EXPECT_THROW(non_omega_certificate(1, 60), Error);
}

TEST(CriticalData, Examples) {
  auto cd = critical_data(TentMap::golden());
  EXPECT_EQ(cd.period_m, 3u);
  long double l = oracle::golden();
  long double gap = (l / 2 - 0.5L) < (0.5L - (l - 1) / 2) ? (l / 2 - 0.5L) : (0.5L - (l - 1) / 2);
  EXPECT_NEAR(cd.delta_T.to_double(), static_cast<double>(gap / (l * l * l)), 1e-12);
  EXPECT_NEAR(cd.delta_T.to_double(), 0.04509, 1e-5);
  EXPECT_EQ(cd.accessible, AccessibleSide::Left);
  EXPECT_EQ(cd.head_parity, Parity::Odd);
  EXPECT_TRUE(cd.parity_agrees);
  EXPECT_EQ(code_of([] { critical_data(TentMap::from_decimal("1.8")); }),
            ErrorCode::PreconditionFailed);
}

TEST(PrecriticalSet, Examples) {
  auto G = TentMap::golden();
  auto P = precritical_set(G, 3);
  EXPECT_EQ(P.bound, 6u);
  bool has_c = false;
  for (const auto& e : P.points) {
    has_c = has_c || (e.n_p == 0 && e.p == 0.5);
    // Forward check: n_p steps land on c and none before.
    auto orbit = orbit_prefix(G, e.p, e.n_p + 1);
    EXPECT_LT(abs(sub(orbit[e.n_p], half(256))).to_double(), 1e-60);
    for (std::size_t i = 0; i < e.n_p; ++i) {
      EXPECT_GT(abs(sub(orbit[i], half(256))).to_double(), 1e-60);
    }
    EXPECT_LT(e.n_p, P.bound);
  }
  EXPECT_TRUE(has_c);
  for (const auto& o : orbit_prefix(G, half(256), 3)) EXPECT_TRUE(P.net().covers(o, 1e-30));
}

TEST(ExtendIct, Examples) {
  auto G = TentMap::golden();
  auto cd = critical_data(G);
  auto P = precritical_set(G, 3);
  EXPECT_EQ(code_of([&] { extend_ict(G, golden_cycle(), 3, cd, P); }),
            ErrorCode::PreconditionFailed);

  auto D = core_net(G, 0.02);
  auto ext = extend_ict(G, D, 3, cd, P);
  EXPECT_GT(ext.net.size(), D.size());
  BigFloat r = mul(cd.delta_T, num(std::ldexp(1.0, -3)));
  for (const auto& cl : ext.clusters) {
    BigFloat radius = add(div(r, pow(G.slope(), static_cast<long>(cl.n_p))), num(1e-12));
    for (const auto& x : cl.points) {
      EXPECT_LE(abs(sub(x, cl.p)), radius);
      BigFloat y = x;
      for (std::size_t i = 0; i < cl.n_p; ++i) y = eval(G, y);
      // Lands in the accessible half-ball at c.
      EXPECT_LE(y, add(half(256), num(1e-30)));
      EXPECT_GE(y, sub(sub(half(256), r), num(1e-30)));
    }
  }
}

TEST(Construction, CaseSplits) {
  auto G = TentMap::golden();
  auto orbit = construct_omega_point(G, golden_cycle(), ConstructionOptions{});
  EXPECT_EQ(orbit.which, ConstructionCase::OrbitOfC);
  auto T = TentMap::from_decimal("1.8");
  FiniteNet two({num(0), div(num(1.8), num(2.8))}, 0.0, "fixed points");
  EXPECT_EQ(code_of([&] { construct_omega_point(G, two, ConstructionOptions{}); }),
            ErrorCode::PreconditionFailed);
}

TEST(Construction, GoldenCoreIsSound) {
  const auto& tr = golden_trace();
  ASSERT_EQ(tr.which, ConstructionCase::Constructed);
  ASSERT_EQ(tr.stages.size(), 5u);
  auto G = TentMap::golden();
  for (const auto& st : tr.stages) {
    EXPECT_LT(st.epsilon, std::ldexp(1.0, -static_cast<int>(st.n)));
    for (std::size_t idx : st.segments) {
      const Segment& s = tr.segments[idx];
      EXPECT_EQ(verify_pseudo_orbit(G, s.pseudo_orbit, num(st.eta)).status, OrbitCheck::Valid);
      EXPECT_LT(s.shadow_error, st.epsilon + std::ldexp(1.0, -128));
    }
  }
  ASSERT_TRUE(tr.gamma_admissible);
  EXPECT_NE(tr.gamma_admissible->status, Admissibility::Violates);
  EXPECT_EQ(tr.orbit_check_failures, 0u);
  ASSERT_TRUE(tr.omega);
  EXPECT_LE(tr.hausdorff, 2 * (0.02 + tr.stages.back().epsilon));
  EXPECT_LE(tr.hausdorff, 0.05);
}

// ---------------------------------------------------------------------------
// Properties

TEST(OmegaProperty, DeltaTScale) {
  for (const char* D : {"(101)", "(1001)", "(10010)"}) {
    auto T = map_from_kneading(parse_epseq(D));
    auto cd = critical_data(T);
    EXPECT_GT(cd.delta_T, 0.0);
    EXPECT_LT(cd.delta_T, cd.min_gap);
    EXPECT_TRUE(cd.parity_agrees) << D;
    // T^i of the delta_T ball never reaches c in its interior for 0 < i < m.
    Interval ball(sub(half(256), cd.delta_T), add(half(256), cd.delta_T));
    Interval X = ball;
    for (std::size_t i = 1; i < cd.period_m; ++i) {
      X = eval(cd.map, X);
      EXPECT_FALSE(X.lo < 0.5 && 0.5 < X.hi) << D << " i=" << i;
    }
    AccessibleSide expect = parity(T.critical_itinerary()->shift(1).prefix(cd.period_m - 1)) ==
                                    Parity::Even
                                ? AccessibleSide::Right
                                : AccessibleSide::Left;
    EXPECT_EQ(cd.accessible, expect) << D;
  }
}

TEST(OmegaProperty, CounterexampleNetsAreChainTransitive) {
  for (std::size_t k : {2, 3}) {
    auto ce = k == 2 ? k2() : build_counterexample(3, 60, 6, 3 * 6 + 3 + 4);
    for (double d : {0.05, 0.02, 0.01}) {
      EXPECT_TRUE(is_chain_transitive(build_chain_graph(ce.map, ce.L, num(d))).yes)
          << "k=" << k << " delta=" << d;
    }
  }
}

TEST(OmegaProperty, CertificateIsComplete) {
  for (std::size_t k : {2, 3, 4}) {
    auto cert = non_omega_certificate(k, 60);
    ASSERT_EQ(cert.cases.size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) {
      std::string h;
      for (int b = 2; b >= 0; --b) h += (i >> b) & 1 ? '1' : '0';
      EXPECT_EQ(to_string(cert.cases[i].H), h);
    }
  }
}

TEST(OmegaProperty, GammaSegmentsMatchAddresses) {
  const auto& tr = golden_trace();
  auto G = TentMap::golden();
  for (const auto& s : tr.segments) {
    auto r = itinerary_prefix(G, s.enclosure.midpoint(), std::min<std::size_t>(s.word.size(), 12),
                              G.tolerance());
    if (!r.certified) continue;
    for (std::size_t i = 0; i < r.word.size(); ++i) {
      if (s.word[i] == Symbol::Crit || r.word[i] == Symbol::Crit) continue;
      EXPECT_EQ(r.word[i], s.word[i]);
    }
  }
}
