#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace blowdown;

namespace {

std::vector<std::string> survivor_names(const Construction& c) {
  std::vector<std::string> out;
  for (const auto& s : c.survivors->enumerate()) out.push_back(describe_basic_class(s));
  return out;
}

void expect_point(const ManifoldLedger& m, long chi, long c1) {
  EXPECT_EQ(m.chi_h, chi) << m.name;
  EXPECT_EQ(m.c1sq, c1) << m.name;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(ConstructXp, Examples) {
  Construction x4 = construct_Xp(4);
  expect_point(x4.ledger, 4, 1);
  EXPECT_TRUE(x4.report.passed());
  EXPECT_EQ(x4.survivors->size(), 2);
  Construction x5 = construct_Xp(5);
  expect_point(x5.ledger, 6, 3);
  EXPECT_EQ(survivor_names(x5), (std::vector<std::string>{"beta(-4)", "beta(4)"}));
  EXPECT_EQ(x5.ledger.simply_connected, Connectivity::yes);
  EXPECT_THROW(construct_Xp(3), DomainError);
}

TEST(ConstructXp, BothRoutesAgree) {
  for (long p = 4; p <= 10; ++p) {
    Construction x = construct_Xp(p);
    const Check* c = x.report.find("fiber-sum and E-route ledgers agree");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->status, CheckStatus::verified);
    expect_point(x.ledger, 2 * p - 4, 2 * p - 7);
    EXPECT_EQ(x.ledger.c1sq, x.ledger.chi_h - 3);
    EXPECT_EQ(static_cast<long>(x.ledger.surfaces.size()), 3 * p - 5);
  }
}

TEST(ConstructXpPrime, Examples) {
  expect_point(construct_Xp_prime(5).ledger, 5, 2);
  expect_point(construct_Xp_prime(6).ledger, 7, 4);
  for (long p = 5; p <= 10; ++p) {
    Construction x = construct_Xp_prime(p);
    EXPECT_TRUE(x.report.passed());
    EXPECT_EQ(x.ledger.c1sq, x.ledger.chi_h - 3);
    EXPECT_EQ(x.survivors->size(), 2);
  }
  EXPECT_THROW(construct_Xp_prime(4), DomainError);
}

TEST(ConstructXpk, Examples) {
  Construction top = construct_Xpk(4, 7);
  expect_point(top.ledger, 4, 8);
  EXPECT_TRUE(noether_position(top.ledger).in_region_TT);
  const Check* a = top.report.find("basic classes up to sign");
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->status, CheckStatus::asserted);
  Construction zero = construct_Xpk(4, 0);
  EXPECT_TRUE(same_invariants(detail::strip_lattice(zero.ledger), detail::strip_lattice(construct_Xp(4).ledger)));
  EXPECT_EQ(zero.report.find("basic classes up to sign"), nullptr);
  expect_point(construct_Xpk_prime(5, 3).ledger, 5, 5);
  expect_point(construct_Xpk(5, 3, true).ledger, 5, 5);
}

TEST(ConstructXpk, RangeErrors) {
  EXPECT_NE(error_of([] { construct_Xpk(4, 8); }).find("3p-5"), std::string::npos);
  EXPECT_NE(error_of([] { construct_Xpk_prime(5, 9); }).find("3p-7"), std::string::npos);
  EXPECT_THROW(construct_Xpk(4, -1), DomainError);
  EXPECT_THROW(construct_Xpk_prime(4, 0), DomainError);
}

TEST(ConstructXpk, FullRanges) {
  for (long p = 4; p <= 6; ++p) {
    for (long k = 0; k <= 3 * p - 5; ++k) expect_point(construct_Xpk(p, k).ledger, 2 * p - 4, 2 * p - 7 + k);
  }
  for (long p = 5; p <= 6; ++p) {
    for (long k = 0; k <= 3 * p - 7; ++k) expect_point(construct_Xpk_prime(p, k).ledger, 2 * p - 5, 2 * p - 8 + k);
  }
}

TEST(ConstructZ, Examples) {
  Construction z40 = construct_Z(4, 0);
  expect_point(z40.ledger, 4, 1);
  EXPECT_EQ(survivor_names(z40), (std::vector<std::string>{"beta(-2)", "beta(2)"}));
  Construction z47 = construct_Z(4, 7);
  expect_point(z47.ledger, 4, 8);
  EXPECT_EQ(z47.report.find("dual sphere")->status, CheckStatus::asserted);
  EXPECT_EQ(construct_Z(4, 6).report.find("dual sphere")->status, CheckStatus::verified);
  Construction z75 = construct_Z(7, 5);
  expect_point(z75.ledger, 7, 9);
  EXPECT_EQ(survivor_names(z75),
            (std::vector<std::string>{"beta(-5;-1,-1,-1,-1,-1)", "beta(5;+1,+1,+1,+1,+1)"}));
}

TEST(ConstructZ, Errors) {
  EXPECT_THROW(construct_Z(3, 0), DomainError);
  EXPECT_THROW(construct_Z(4, -1), DomainError);
  EXPECT_NE(error_of([] { construct_Z(4, 8); }).find("violates 2k <= 3x+2"), std::string::npos);
}

TEST(GeographyProperty, ConstructZOverAdmissibleRange) {
  for (long x = 4; x <= 10; ++x) {
    for (long k = 0; 2 * k <= 3 * x + 2; ++k) {
      Construction z = construct_Z(x, k);
      EXPECT_TRUE(z.report.passed()) << x << "," << k;
      EXPECT_NO_THROW(validate(z.ledger));
      EXPECT_TRUE(noether_position(z.ledger).in_region_TT);
      EXPECT_EQ(z.survivors->size(), 2);
      EXPECT_EQ(z.ledger.simply_connected, Connectivity::yes);
    }
  }
}

TEST(GeographyRecipe, Examples) {
  GeographyPlan a = geography_recipe(4, 1);
  EXPECT_EQ(a.canonical.route, Route::construction2);
  EXPECT_EQ(a.canonical.k, 0);
  ASSERT_TRUE(a.alternate);
  EXPECT_EQ(a.alternate->route, Route::construction1_even);
  EXPECT_EQ(a.alternate->a, 4);
  GeographyPlan b = geography_recipe(4, 2);
  EXPECT_EQ(b.canonical.k, 1);
  EXPECT_TRUE(noether_position(4, 2).on_noether);
  GeographyPlan c = geography_recipe(9, 20);
  EXPECT_EQ(c.canonical.k, 14);
  ASSERT_TRUE(c.alternate);
  EXPECT_EQ(c.alternate->route, Route::construction1_odd);
  EXPECT_EQ(c.alternate->a, 7);
  EXPECT_EQ(c.alternate->k, 14);
  ASSERT_TRUE(geography_recipe(5, 10).alternate);
  EXPECT_EQ(geography_recipe(5, 10).alternate->k, 8);
}

// Construction 1's inventory reaches the top of every column: 3p-5 = (3x+2)/2 for even x,
// 3p-7 = (3x+1)/2 for odd x.
TEST(GeographyProperty, AlternateRouteCoversRegion) {
  for (long x = 4; x <= 40; ++x) {
    for (long c = x - 3; 2 * c <= 5 * x - 4; ++c) {
      GeographyPlan plan = geography_recipe(x, c);
      ASSERT_TRUE(plan.alternate) << x << "," << c;
      EXPECT_EQ(plan.alternate->expected_chi_h, x);
      EXPECT_EQ(plan.alternate->expected_c1sq, c);
    }
  }
}

TEST(GeographyRecipe, OutOfRegion) {
  EXPECT_NE(error_of([] { geography_recipe(3, 0); }).find("0 < x-3"), std::string::npos);
  EXPECT_NE(error_of([] { geography_recipe(5, 1); }).find("x-3 <= c"), std::string::npos);
  const std::string top = error_of([] { geography_recipe(4, 9); });
  EXPECT_NE(top.find("c <= (5x-4)/2"), std::string::npos);
  EXPECT_NE(top.find("(4, 9)"), std::string::npos);
}

TEST(GeographyProperty, RecipesReproduceTheirPoint) {
  for (long x = 4; x <= 9; ++x) {
    for (long c = x - 3; 2 * c <= 5 * x - 4; ++c) {
      GeographyPlan plan = geography_recipe(x, c);
      Construction z = execute(plan.canonical);
      EXPECT_TRUE(z.report.passed());
      expect_point(z.ledger, x, c);
      if (plan.alternate) {
        Construction alt = execute(*plan.alternate);
        EXPECT_TRUE(alt.report.passed()) << x << "," << c;
        expect_point(alt.ledger, x, c);
      }
    }
  }
}

TEST(Sweep, SmallestRegion) {
  auto rows = geography_sweep(4);
  ASSERT_EQ(rows.size(), 8u);
  std::vector<long> t;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].x, 4);
    EXPECT_EQ(rows[i].c, static_cast<long>(i) + 1);
    EXPECT_TRUE(rows[i].pass) << rows[i].detail;
    if (rows[i].theorem_T) t.push_back(rows[i].c);
  }
  EXPECT_EQ(t, (std::vector<long>{1, 2}));
  EXPECT_THROW(geography_sweep(3), DomainError);
}

TEST(Sweep, ThreadedMatchesSerial) {
  auto a = geography_sweep(9, 1);
  auto b = geography_sweep(9, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(a[i].c, b[i].c);
    EXPECT_EQ(a[i].k, b[i].k);
    EXPECT_EQ(a[i].pass, b[i].pass);
    EXPECT_TRUE(a[i].pass);
  }
}
