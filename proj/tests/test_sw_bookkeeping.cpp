#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "test_support.hpp"

using namespace blowdown;

namespace {

std::set<oracle::Vec> vec_set(const std::vector<HomClass>& cs) {
  std::set<oracle::Vec> out;
  for (const auto& c : cs) out.insert(support::vec(c));
  return out;
}

std::vector<std::string> descriptions(const BasicClassSet& s) {
  std::vector<std::string> out;
  for (const auto& c : s.enumerate()) out.push_back(describe_basic_class(c));
  return out;
}

bool admissible(long x, long k) { return 2 * k <= 3 * x + 2 && x + 2 * k >= 4; }

}  // namespace

TEST(Fragment, GramMatchesOracle) {
  for (long x = 2; x <= 6; ++x) {
    for (long k = 0; k <= 4; ++k) {
      EXPECT_EQ(support::mat(sw_fragment(x, k)->gram()), oracle::fragment(x, k).gram) << x << "," << k;
    }
  }
  EXPECT_THROW(sw_fragment(1, 0), DomainError);
  EXPECT_THROW(sw_fragment(3, -1), DomainError);
}

TEST(BasicClassesE, Examples) {
  EXPECT_EQ(descriptions(basic_classes_E(6)),
            (std::vector<std::string>{"beta(-4)", "beta(-2)", "beta(0)", "beta(2)", "beta(4)"}));
  EXPECT_EQ(basic_classes_E(2).size(), 1);
  EXPECT_TRUE(basic_classes_E(2).enumerate().front().is_zero());
  EXPECT_EQ(descriptions(basic_classes_E(3)), (std::vector<std::string>{"beta(-1)", "beta(1)"}));
  EXPECT_THROW(basic_classes_E(1), DomainError);
  for (long x = 2; x <= 12; ++x) EXPECT_EQ(basic_classes_E(x).size(), x - 1);
}

TEST(BlowupFormula, Examples) {
  BasicClassSet b = blowup_formula(basic_classes_E(3), 1);
  EXPECT_EQ(b.size(), 4);
  EXPECT_EQ(descriptions(b),
            (std::vector<std::string>{"beta(-1;-1)", "beta(-1;+1)", "beta(1;-1)", "beta(1;+1)"}));
  BasicClassSet same = blowup_formula(basic_classes_E(5), 0);
  EXPECT_EQ(same.size(), 4);
  EXPECT_EQ(same.fragment(), basic_classes_E(5).fragment());
  EXPECT_EQ(blowup_formula(basic_classes_E(4), 2).size(), 12);
  // Blowing up in two steps equals one step.
  EXPECT_EQ(vec_set(blowup_formula(blowup_formula(basic_classes_E(4), 1), 2).enumerate()),
            vec_set(blowup_formula(basic_classes_E(4), 3).enumerate()));
  EXPECT_THROW(blowup_formula(basic_classes_E(4), -1), DomainError);
}

TEST(BlowupFormula, SizeIsBigForLargeK) {
  BasicClassSet b = blowup_formula(basic_classes_E(10), 70);
  EXPECT_EQ(b.size().get_str(), "10625324586456701730816");  // 9 * 2^70
  EXPECT_THROW(b.enumerate(), DomainError);
}

TEST(CanonicalClass, Examples) {
  HomClass k40 = canonical_class_E_blowup(4, 0);
  EXPECT_EQ(k40.to_string(), "2f");
  EXPECT_EQ(square(k40), 0);
  EXPECT_TRUE(canonical_class_E_blowup(2, 0).is_zero());
  EXPECT_EQ(square(canonical_class_E_blowup(5, 3)), -3);
  for (long x = 2; x <= 6; ++x) {
    ManifoldLedger m = build_E(x);
    for (long k = 0; k <= 5; ++k) {
      EXPECT_EQ(square(canonical_class_E_blowup(x, k)), m.c1sq);
      m = blow_up(m);
    }
  }
}

TEST(LeadSphere, Examples) {
  for (long x = 2; x <= 8; ++x) {
    EXPECT_EQ(square(lead_sphere_class(x, 0)), -x);
    EXPECT_EQ(square(lead_sphere_class(x, 1)), -(x + 2));
    for (long k = 0; k <= 6; ++k) {
      EXPECT_EQ(support::vec(lead_sphere_class(x, k)), oracle::lead_sphere(oracle::fragment(x, k)));
    }
  }
  LatticePtr L = sw_fragment(4, 2);
  HomClass beta = HomClass::of(L, {{"f", 2}, {"E1", 1}, {"E2", 1}});
  EXPECT_EQ(pair(beta, lead_sphere_class(4, 2)), 6);
}

TEST(ConfigInE, Examples) {
  ConfigCn c0 = config_in_E_blowup(6, 0);
  EXPECT_EQ(c0.n(), 4);
  EXPECT_EQ(c0.lead(), HomClass::basis(sw_fragment(6, 0), "S"));
  ConfigCn c = config_in_E_blowup(4, 2);
  EXPECT_EQ(c.n(), 6);
  EXPECT_EQ(square(c.lead()), -8);
  try {
    config_in_E_blowup(4, 8);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("2k <= 3x+2"), std::string::npos);
  }
  EXPECT_NO_THROW(config_in_E_blowup(4, 7));
  EXPECT_THROW(config_in_E_blowup(2, 0), DomainError);  // C_0
  EXPECT_EQ(config_in_E_blowup(2, 1).n(), 2);
  EXPECT_THROW(config_in_E_blowup(1, 3), DomainError);
  EXPECT_THROW(config_in_E_blowup(4, -1), DomainError);
}

TEST(NextChainSphere, DualExistsUntilChainIsUsedUp) {
  EXPECT_EQ(next_chain_sphere(4, 0)->to_string(), "t1");
  EXPECT_EQ(next_chain_sphere(4, 6)->to_string(), "t13");
  EXPECT_FALSE(next_chain_sphere(4, 7));
  ConfigCn c = config_in_E_blowup(5, 2);
  EXPECT_EQ(pair(*next_chain_sphere(5, 2), c.spheres().back()), 1);
}

TEST(TautFilter, EllipticSix) {
  BasicClassSet s = taut_filter(basic_classes_E(6), config_in_E_blowup(6, 0));
  EXPECT_EQ(descriptions(s), (std::vector<std::string>{"beta(-4)", "beta(4)"}));
}

TEST(TautFilter, FourTwo) {
  BasicClassSet s = taut_filter(blowup_formula(basic_classes_E(4), 2), config_in_E_blowup(4, 2));
  EXPECT_EQ(descriptions(s), (std::vector<std::string>{"beta(-2;-1,-1)", "beta(2;+1,+1)"}));
}

TEST(TautFilter, EmptySet) {
  ConfigCn c = config_in_E_blowup(4, 0);
  BasicClassSet empty(c.lattice(), 4, {}, {}, "none");
  EXPECT_EQ(taut_filter(empty, c).size(), 0);
}

TEST(TautFilter, HypothesisViolations) {
  ConfigCn c = config_in_E_blowup(6, 0);  // C_4: S, t1, t2
  LatticePtr L = c.lattice();
  BasicClassSet meets_t(L, 6, {HomClass::basis(L, "t3")}, {}, "bad");  // t3.t2 = 1
  try {
    taut_filter(meets_t, c);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("k.S2"), std::string::npos) << e.what();
  }
  BasicClassSet too_big(L, 6, {6 * HomClass::basis(L, "f")}, {}, "bad");
  try {
    taut_filter(too_big, c);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("> n = 4"), std::string::npos) << e.what();
  }
  BasicClassSet elsewhere = basic_classes_E(5);
  EXPECT_THROW(taut_filter(elsewhere, c), DomainError);
}

TEST(AdjunctionZero, Examples) {
  EXPECT_TRUE(adjunction_zero_check(4, 1).passed());
  EXPECT_TRUE(adjunction_zero_check(2, 0).passed());
  LatticePtr L = sw_fragment(5, 3);
  for (const auto& b : blowup_formula(basic_classes_E(5), 3).enumerate()) {
    for (long i = 1; i <= 5 + 6 - 4; ++i) EXPECT_EQ(pair(b, HomClass::basis(L, "t" + std::to_string(i))), 0);
  }
  EXPECT_THROW(adjunction_zero_check(4, 8), DomainError);
}

// Exhaustive enumeration with plain arithmetic against the filter.
TEST(SwProperty, FilterMatchesExhaustiveOracle) {
  for (long x = 2; x <= 8; ++x) {
    for (long k = 0; k <= 8; ++k) {
      if (!admissible(x, k)) continue;
      const oracle::Fragment F = oracle::fragment(x, k);
      const long n = x + 2 * k - 2;
      const oracle::Vec lead = oracle::lead_sphere(F);
      std::set<oracle::Vec> want;
      long best = 0;
      for (const auto& b : oracle::basic_classes(F)) {
        for (long i = 1; i <= x + 2 * k - 4; ++i) {
          oracle::Vec t(F.rank(), 0);
          t[F.t(i)] = 1;
          ASSERT_EQ(oracle::form(F.gram, b, t), 0);
        }
        const long v = std::abs(oracle::form(F.gram, b, lead));
        ASSERT_LE(v, n);
        best = std::max(best, v);
        if (v == n) want.insert(b);
      }
      BasicClassSet basic = blowup_formula(basic_classes_E(x), k);
      ASSERT_EQ(basic.size(), (x - 1) << k);
      EXPECT_EQ(vec_set(basic.enumerate()).size(), static_cast<std::size_t>((x - 1) << k));
      BasicClassSet surv = taut_filter(basic, config_in_E_blowup(x, k));
      EXPECT_EQ(vec_set(surv.enumerate()), want) << "x=" << x << " k=" << k;
      if (x >= 3 || k >= 1) {
        EXPECT_EQ(best, n);
        EXPECT_EQ(want.size(), 2u) << "x=" << x << " k=" << k;
      }
    }
  }
}

TEST(SwProperty, NegationClosed) {
  for (long x = 2; x <= 7; ++x) {
    for (long k = 0; k <= 4; ++k) {
      BasicClassSet b = blowup_formula(basic_classes_E(x), k);
      auto all = vec_set(b.enumerate());
      for (const auto& c : b.enumerate()) EXPECT_TRUE(all.count(support::vec(-c)));
      if (!admissible(x, k)) continue;
      BasicClassSet s = taut_filter(b, config_in_E_blowup(x, k));
      auto surv = vec_set(s.enumerate());
      for (const auto& c : s.enumerate()) EXPECT_TRUE(surv.count(support::vec(-c)));
    }
  }
}
