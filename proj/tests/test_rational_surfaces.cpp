#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace blowdown;

namespace {

// Pairing through the brute-force form, not the library.
long opair(const HomClass& a, const HomClass& b) {
  return oracle::form(support::mat(a.lattice()->gram()), support::vec(a), support::vec(b));
}

// Genus from adjunction, recomputed by hand: (C.C + K.C)/2 + 1.
long ogenus(const HomClass& c, const HomClass& K) { return (opair(c, c) + opair(K, c)) / 2 + 1; }

}  // namespace

TEST(BuildR, Examples) {
  RationalSurface r5 = build_R(5);
  EXPECT_EQ(r5.ledger.c1sq, -8);
  EXPECT_EQ(r5.sigma.genus, 3);
  EXPECT_EQ(r5.sigma.self_int, 0);
  EXPECT_TRUE(r5.sigma.symplectic);
  EXPECT_TRUE(r5.sigma.complement_simply_connected);
  EXPECT_EQ(r5.ledger.lattice->rank(), 18u);
  RationalSurface r4 = build_R(4);
  EXPECT_EQ(r4.ledger.c1sq, -4);
  EXPECT_EQ(r4.sigma.genus, 2);
  EXPECT_EQ(r4.sigma.cls->to_string(), "4H-2E-E1-E2-E3-E4-E5-E6-E7-E8-E9-E10-E11-E12");
}

TEST(BuildR, Errors) {
  EXPECT_THROW(build_R(3), DomainError);
  EXPECT_THROW(build_R(-1), DomainError);
}

TEST(BuildS, Examples) {
  RationalSurface s = build_S(4);
  EXPECT_EQ(s.ledger.c1sq, -7);
  EXPECT_EQ(s.sigma.genus, 3);
  EXPECT_EQ(s.ledger.lattice->rank(), 17u);
  long bcount = 0;
  for (const auto& sp : s.spheres) {
    if (sp.label[0] == 'B') {
      ++bcount;
      EXPECT_EQ(sp.self_int, -2);
    }
  }
  EXPECT_EQ(bcount, 7);
  const EmbeddedSurface& c = s.ledger.surface("C1");
  EXPECT_EQ(c.self_int, 0);
  EXPECT_EQ(pair(*c.cls, *s.sigma.cls), 3);
  EXPECT_THROW(build_S(3), DomainError);
}

TEST(BuildSprime, Examples) {
  RationalSurface s = build_Sprime(5);
  EXPECT_EQ(s.ledger.c1sq, -10);
  EXPECT_EQ(s.sigma.genus, 4);
  EXPECT_EQ(s.sigma.self_int, 0);
  EXPECT_EQ(s.ledger.lattice->rank(), 20u);
  auto L = s.ledger.lattice;
  HomClass before = HomClass::of(L, {{"H", 5}, {"E", -2}, {"E1", -2}});
  EXPECT_EQ(square(before), 17);
  EXPECT_EQ(*s.sigma.cls, before - sum_basis(L, "E", 2, 18));
  EXPECT_THROW(build_Sprime(4), DomainError);
}

TEST(SmoothDoublePoints, Examples) {
  auto L = IntLattice::diagonal({"H", "E"}, {1, -1});
  HomClass K = HomClass::of(L, {{"H", -3}, {"E", 1}});
  HomClass line = HomClass::basis(L, "H"), through = HomClass::of(L, {{"H", 1}, {"E", -1}});
  std::vector<HomClass> six(4, through);
  six.push_back(line);
  six.push_back(line);
  auto [sum6, g6] = smooth_double_points(six, K);
  EXPECT_EQ(sum6.to_string(), "6H-4E");
  EXPECT_EQ(g6, 4);
  auto [one, g1] = smooth_double_points({line}, K);
  EXPECT_EQ(one, line);
  EXPECT_EQ(g1, 0);
  auto [s4, gs4] = smooth_double_points({through, line, line, line}, K);
  EXPECT_EQ(s4.to_string(), "4H-E");
  EXPECT_EQ(gs4, 3);
  EXPECT_THROW(smooth_double_points({}, K), DomainError);
}

TEST(RationalSurfaceProperty, RInvariants) {
  for (long q = 4; q <= 12; ++q) {
    RationalSurface r = build_R(q);
    const HomClass& s = *r.sigma.cls;
    EXPECT_EQ(opair(s, s), 0) << q;
    EXPECT_EQ(ogenus(s, *r.ledger.K), q - 2) << q;
    EXPECT_EQ(r.sigma.genus, q - 2) << q;
    EXPECT_EQ(r.ledger.c1sq, 12 - 4 * q) << q;
    EXPECT_EQ(r.ledger.b_minus, 4 * q - 3) << q;
    for (long i = 1; i <= 4 * q - 4; ++i) {
      EXPECT_EQ(opair(s, HomClass::basis(r.ledger.lattice, "E" + std::to_string(i))), 1) << q << " E" << i;
    }
  }
}

TEST(RationalSurfaceProperty, SInvariants) {
  for (long p = 4; p <= 10; ++p) {
    RationalSurface s = build_S(p);
    const HomClass& sig = *s.sigma.cls;
    EXPECT_EQ(s.ledger.c1sq, 17 - 6 * p);
    EXPECT_EQ(s.ledger.b_minus, 6 * p - 8);
    EXPECT_EQ(ogenus(sig, *s.ledger.K), 2 * p - 5);
    EXPECT_EQ(opair(sig, sig), 0);
    std::vector<HomClass> bs;
    HomClass c1 = *s.ledger.surface("C1").cls;
    for (const auto& sp : s.spheres) {
      if (sp.label[0] == 'B') bs.push_back(*sp.cls);
    }
    ASSERT_EQ(static_cast<long>(bs.size()), 3 * p - 5);
    for (std::size_t j = 0; j < bs.size(); ++j) {
      EXPECT_EQ(opair(bs[j], sig), 1);
      EXPECT_EQ(opair(bs[j], bs[j]), -2);
      // B_k.C = (H-E-..).(H-E) = 1 - 1 = 0
      EXPECT_EQ(opair(bs[j], c1), 0);
      for (std::size_t k = j + 1; k < bs.size(); ++k) EXPECT_EQ(opair(bs[j], bs[k]), 0);
    }
  }
}

TEST(RationalSurfaceProperty, SprimeInvariants) {
  for (long p = 5; p <= 10; ++p) {
    RationalSurface s = build_Sprime(p);
    EXPECT_EQ(s.ledger.c1sq, 20 - 6 * p);
    EXPECT_EQ(ogenus(*s.sigma.cls, *s.ledger.K), 2 * p - 6);
    EXPECT_EQ(s.sigma.genus, 2 * p - 6);
    for (const auto& sp : s.spheres) {
      if (sp.label[0] == 'B') {
        EXPECT_EQ(opair(*sp.cls, *s.sigma.cls), 1);
      }
    }
  }
}

TEST(HorizontalFiber, QEqualsThree) {
  HomClass c = horizontal_fiber_class(3);
  EXPECT_EQ(c.coeff("H"), 4);
  EXPECT_EQ(c.coeff("E"), -2);
  for (long i = 1; i <= 12; ++i) EXPECT_EQ(c.coeff("E" + std::to_string(i)), -1);
  EXPECT_EQ(square(c), 0);
}

TEST(HorizontalFiber, MatchesSigmaOfNextR) {
  for (long q = 3; q <= 8; ++q) {
    HomClass c = horizontal_fiber_class(q);
    EXPECT_EQ(support::vec(c), support::vec(*build_R(q + 1).sigma.cls)) << q;
  }
  EXPECT_THROW(horizontal_fiber_class(2), DomainError);
}

TEST(HorizontalFiber, SolutionsSatisfyEveryConstraint) {
  for (long q = 3; q <= 5; ++q) {
    HorizontalFiberSystem sys = horizontal_fiber_system(q);
    HomClass c = horizontal_fiber_class(q);
    for (const auto& k : sys.constraints) EXPECT_EQ(opair(c, k.against), k.value.get_si());
  }
}

TEST(BuildE, BothRoutesAgree) {
  for (long x = 2; x <= 8; ++x) {
    EllipticRoutes r = build_E_routes(x);
    EXPECT_EQ(r.direct.e, 12 * x);
    EXPECT_EQ(r.direct.sign, -8 * x);
    EXPECT_EQ(r.fiber_sum.chi_h, x);
    EXPECT_EQ(r.fiber_sum.c1sq, 0);
    EXPECT_TRUE(same_invariants(r.direct, r.fiber_sum)) << x;
    ManifoldLedger e = build_E(x);
    EXPECT_EQ(e.simply_connected, Connectivity::yes);
    EXPECT_TRUE(e.symplectic);
  }
  ManifoldLedger k3 = build_E(2);
  EXPECT_EQ(k3.e, 24);
  EXPECT_EQ(k3.sign, -16);
  EXPECT_THROW(build_E(1), DomainError);
}

TEST(BuildE, FiberSumFormulaAtFour) {
  // 2 c1^2(R(5)) + 8g - 8 with g = 3.
  RationalSurface r = build_R(5);
  EXPECT_EQ(2 * r.ledger.c1sq + 8 * r.sigma.genus - 8, 0);
  EXPECT_EQ(build_E_routes(4).fiber_sum.c1sq, 0);
}
