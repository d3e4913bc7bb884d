#pragma once

/*
 * End-to-end constructions and the (chi_h, c1^2) geography solver.
 *
 *   X_p        = R(2p-3) #_Sigma S(p),       also C_{2p-6} blown down in E(2p-4)
 *   X'_p       = R(2p-4) #_Sigma S'(p),      also C_{2p-7} blown down in E(2p-5)
 *   X(p,k)     = X_p with k assembled (-4)-spheres blown down
 *   Z(x,k)     = E(x) # k CP2bar with C_{x+2k-2} blown down
 *
 * Region: 0 < x-3 <= c and 2c <= 5x-4.
 */

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "blowdown/rational_surfaces.hpp"
#include "blowdown/report.hpp"
#include "blowdown/surgery_calculus.hpp"
#include "blowdown/sw_bookkeeping.hpp"

namespace blowdown {

enum class Route { construction1_even, construction1_odd, construction2 };

inline const char* to_string(Route r) {
  switch (r) {
    case Route::construction1_even: return "construction1_even";
    case Route::construction1_odd: return "construction1_odd";
    case Route::construction2: return "construction2";
  }
  return "construction2";
}

struct Construction {
  ManifoldLedger ledger;
  Report report;
  std::optional<BasicClassSet> survivors;  // only where the filter was run
};

namespace detail {

inline std::string str(long v) { return std::to_string(v); }

inline ManifoldLedger cached_E(long x) {
  static std::mutex mu;
  static std::map<long, ManifoldLedger> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(x);
    if (it != cache.end()) return it->second;
  }
  ManifoldLedger e = build_E(x);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(x, std::move(e)).first->second;
}

inline bool same_up_to_sign_set(const std::vector<HomClass>& got, const HomClass& c) {
  if (got.size() != 2) return false;
  const HomClass neg = -c;
  return (got[0] == c && got[1] == neg) || (got[0] == neg && got[1] == c);
}

inline std::string class_list(const std::vector<HomClass>& cs) {
  std::string out = "{";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ", ";
    out += cs[i].to_string();
  }
  return out + "}";
}

// E(x) with C_{x-2} = {S, t1..t_{x-4}} blown down; survivors must be +-(x-2)f.
inline Construction elliptic_route(long x, const std::string& name) {
  Construction out;
  out.report.subject = name + " via E(" + str(x) + ")";
  Report& rep = out.report;
  ManifoldLedger E = cached_E(x);
  ConfigCn config = config_in_E_blowup(x, 0);
  BasicClassSet basic = basic_classes_E(x);
  rep.append(adjunction_zero_check(x, 0), "E-route: ");
  BasicClassSet surv = taut_filter(basic, config);
  std::vector<HomClass> got = surv.enumerate();
  const HomClass want = (x - 2) * HomClass::basis(basic.fragment(), "f");
  rep.verify("E-route: filter hypotheses", true,
             str(x - 1) + " basic classes pair 0 with t1..t" + str(x - 4) + " and |k.S0| <= " + str(config.n()));
  rep.verify("E-route: survivors", same_up_to_sign_set(got, want), class_list(got));
  rep.verify("E-route: basic classes up to sign", got.size() == 2, str(static_cast<long>(got.size()) / 2));
  BlowdownOptions opts;
  opts.dual_sphere = next_chain_sphere(x, 0);
  out.ledger = rational_blowdown(E, config, opts);
  out.survivors = std::move(surv);
  return out;
}

}  // namespace detail

// Assembled (-4)-spheres B_i u A_i u C_i u E_{2i-1} u E_{2i} in X_p (or X'_p when odd).
inline std::vector<EmbeddedSurface> minus4_sphere_inventory(long p, bool odd) {
  RationalSurface R = build_R(odd ? 2 * p - 4 : 2 * p - 3);
  RationalSurface S = odd ? build_Sprime(p) : build_S(p);
  const LatticePtr& LR = R.ledger.lattice;
  const LatticePtr& LS = S.ledger.lattice;
  const HomClass& sigR = *R.sigma.cls;
  const HomClass& sigS = *S.sigma.cls;
  const long r_exceptional = odd ? 8 * p - 20 : 8 * p - 16;
  std::vector<const EmbeddedSurface*> bs;
  for (const auto& s : S.spheres) {
    if (s.label[0] == 'B') bs.push_back(&s);
  }
  const long count = std::min<long>(static_cast<long>(bs.size()), r_exceptional / 2);
  auto piece = [](EmbeddedSurface s, const HomClass& sigma, GluingSide side) {
    Integer hits = pair(*s.cls, sigma);
    return SpherePiece{std::move(s), hits, side};
  };
  std::vector<EmbeddedSurface> out;
  for (long i = 1; i <= count; ++i) {
    std::vector<SpherePiece> pieces;
    pieces.push_back(piece(*bs[i - 1], sigS, GluingSide::second));
    pieces.push_back(piece(detail::sphere("A" + detail::str(i), HomClass::of(LR, {{"H", 1}, {"E", -1}})), sigR,
                           GluingSide::first));
    pieces.push_back(piece(detail::sphere("C" + detail::str(i), HomClass::of(LS, {{"H", 1}, {"E", -1}})), sigS,
                           GluingSide::second));
    for (long e : {2 * i - 1, 2 * i}) {
      std::string l = "E" + detail::str(e);
      pieces.push_back(piece(detail::sphere(l, HomClass::basis(LR, l)), sigR, GluingSide::first));
    }
    EmbeddedSurface s = assemble_minus4_sphere(pieces, "Q" + detail::str(i));
    if (s.self_int != -4) {
      throw ConsistencyError("minus4_sphere_inventory: " + s.label + " has square " + s.self_int.get_str());
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

// Fiber-sum route for X_p / X'_p carrying the assembled (-4)-spheres.
inline Construction fiber_sum_route(long p, bool odd) {
  Construction out;
  const std::string name = odd ? "X'_" + str(p) : "X_" + str(p);
  out.report.subject = name;
  RationalSurface R = build_R(odd ? 2 * p - 4 : 2 * p - 3);
  RationalSurface S = odd ? build_Sprime(p) : build_S(p);
  const bool sc = R.sigma.complement_simply_connected && S.sigma.complement_simply_connected;
  out.ledger = fiber_sum(R.ledger, R.sigma, S.ledger, S.sigma, sc, minus4_sphere_inventory(p, odd));
  out.ledger.name = name;
  out.report.verify("fiber sum: complements simply connected", sc,
                    R.sigma.label + ", " + S.sigma.label + " each meet an exceptional sphere once");
  return out;
}

inline Construction construct_X(long p, bool odd) {
  const long pmin = odd ? 5 : 4;
  const std::string fn = odd ? "construct_Xp_prime" : "construct_Xp";
  if (p < pmin) throw DomainError(fn + ": p = " + str(p) + " < " + str(pmin));
  Construction fs = fiber_sum_route(p, odd);
  const long x = odd ? 2 * p - 5 : 2 * p - 4;
  Construction er = elliptic_route(x, fs.ledger.name);
  Construction out;
  out.report.subject = fs.ledger.name;
  out.report.append(fs.report);
  out.report.append(er.report);
  const bool agree = same_invariants(fs.ledger, er.ledger);
  out.report.verify("fiber-sum and E-route ledgers agree", agree,
                    "chi_h " + fs.ledger.chi_h.get_str() + " vs " + er.ledger.chi_h.get_str() + ", c1^2 " +
                        fs.ledger.c1sq.get_str() + " vs " + er.ledger.c1sq.get_str());
  if (!agree) throw ConsistencyError(fn + ": fiber-sum and E-route ledgers disagree for p = " + str(p));
  const Integer chi = odd ? 2 * p - 5 : 2 * p - 4;
  const Integer c1 = odd ? 2 * p - 8 : 2 * p - 7;
  out.report.verify("(chi_h, c1^2)", fs.ledger.chi_h == chi && fs.ledger.c1sq == c1,
                    "(" + fs.ledger.chi_h.get_str() + ", " + fs.ledger.c1sq.get_str() + ")");
  out.report.verify("half-Noether line c1^2 = chi_h - 3", noether_position(fs.ledger).on_half_noether, "");
  out.ledger = std::move(fs.ledger);
  out.ledger.provenance.push_back("agrees with " + er.ledger.name);
  out.survivors = std::move(er.survivors);
  return out;
}

}  // namespace detail

inline Construction construct_Xp(long p) { return detail::construct_X(p, false); }
inline Construction construct_Xp_prime(long p) { return detail::construct_X(p, true); }

// X(p,k) (odd = false) or X'(p,k): k assembled (-4)-spheres blown down as C_2.
inline Construction construct_Xpk(long p, long k, bool odd = false) {
  const std::string fn = odd ? "construct_Xpk_prime" : "construct_Xpk";
  const long kmax = odd ? 3 * p - 7 : 3 * p - 5;
  if (p < (odd ? 5 : 4)) throw DomainError(fn + ": p = " + detail::str(p) + " < " + (odd ? "5" : "4"));
  if (k < 0 || k > kmax) {
    throw DomainError(fn + ": k = " + detail::str(k) + " outside 0 <= k <= " + (odd ? "3p-7" : "3p-5") + " = " +
                      detail::str(kmax));
  }
  Construction base = detail::construct_X(p, odd);
  const auto inventory = minus4_sphere_inventory(p, odd);
  Construction out;
  out.report = base.report;
  out.report.subject = (odd ? "X'(" : "X(") + detail::str(p) + "," + detail::str(k) + ")";
  out.report.verify("(-4)-sphere inventory", static_cast<long>(inventory.size()) == kmax,
                    detail::str(static_cast<long>(inventory.size())) + " disjoint spheres B u A u C u E u E");
  ManifoldLedger m = base.ledger;
  BlowdownOptions opts;
  opts.dual_asserted = true;
  for (long i = 0; i < k; ++i) m = rational_blowdown_formal(m, {inventory[i].label}, opts);
  m.name = out.report.subject;
  out.report.verify("(chi_h, c1^2)", m.chi_h == base.ledger.chi_h && m.c1sq == base.ledger.c1sq + k,
                    "(" + m.chi_h.get_str() + ", " + m.c1sq.get_str() + ")");
  if (k > 0) {
    out.report.assume("simply connected after (-4)-sphere blowdowns", "propagation rule, not recomputed");
    out.report.assume("basic classes up to sign", "1, carried over from the X_p filter");
  }
  out.ledger = std::move(m);
  validate(out.ledger);
  return out;
}

inline Construction construct_Xpk_prime(long p, long k) { return construct_Xpk(p, k, true); }

/*
 * E(x) # k CP2bar with C_{x+2k-2} blown down. The basic-class count is
 * computed by the filter: survivors must be exactly +-beta(x-2;1,...,1).
 */
inline Construction construct_Z(long x, long k) {
  if (x < 4) throw DomainError("construct_Z: x = " + detail::str(x) + " < 4");
  if (k < 0) throw DomainError("construct_Z: k = " + detail::str(k) + " < 0");
  if (2 * k > 3 * x + 2) {
    throw DomainError("construct_Z: k = " + detail::str(k) + " violates 2k <= 3x+2 (= " + detail::str(3 * x + 2) +
                      ")");
  }
  Construction out;
  Report& rep = out.report;
  rep.subject = "Z(" + detail::str(x) + "," + detail::str(k) + ")";
  ManifoldLedger m = detail::cached_E(x);
  for (long j = 0; j < k; ++j) m = blow_up(m);
  const HomClass K = canonical_class_E_blowup(x, k);
  rep.verify("K^2 = c1^2 of E(x)#kCP2bar", square(K) == m.c1sq,
             "K^2 = " + square(K).get_str() + ", c1^2 = " + m.c1sq.get_str());
  rep.append(adjunction_zero_check(x, k));
  ConfigCn config = config_in_E_blowup(x, k);
  BasicClassSet basic = blowup_formula(basic_classes_E(x), k);
  BasicClassSet surv = taut_filter(basic, config);
  rep.verify("filter hypotheses", true,
             basic.size().get_str() + " classes, |k.S0| <= " + detail::str(config.n()) + ", k.t_i = 0");
  std::vector<HomClass> got = surv.enumerate();
  HomClass beta = canonical_class_E_blowup(x, k);  // (x-2)f + sum E_j
  rep.verify("survivors = +-beta(x-2;1,...,1)", detail::same_up_to_sign_set(got, beta), detail::class_list(got));
  rep.verify("basic classes up to sign", got.size() == 2, detail::str(static_cast<long>(got.size()) / 2));
  BlowdownOptions opts;
  opts.dual_sphere = next_chain_sphere(x, k);
  if (!opts.dual_sphere) opts.dual_asserted = true;
  ManifoldLedger z = rational_blowdown(m, config, opts);
  z.name = rep.subject;
  if (opts.dual_sphere) {
    rep.verify("dual sphere", true, opts.dual_sphere->to_string() + " meets the configuration once");
  } else {
    rep.assume("dual sphere", "chain exhausted at 2k = 3x+2; dual taken from the singular fiber");
  }
  rep.verify("(chi_h, c1^2) = (x, x+k-3)", z.chi_h == x && z.c1sq == x + k - 3,
             "(" + z.chi_h.get_str() + ", " + z.c1sq.get_str() + ")");
  rep.verify("region TT", noether_position(z).in_region_TT, "");
  out.ledger = std::move(z);
  out.survivors = std::move(surv);
  return out;
}

struct RecipeStep {
  std::string op;
  std::string detail;
};

struct Recipe {
  Route route = Route::construction2;
  long a = 0;  // p for Construction 1, x for Construction 2
  long k = 0;
  std::vector<RecipeStep> steps;
  Integer expected_chi_h;
  Integer expected_c1sq;
  long expected_basic_classes = 1;  // up to sign
};

struct GeographyPlan {
  Recipe canonical;                 // Construction 2
  std::optional<Recipe> alternate;  // Construction 1 when available
};

inline Recipe construction2_recipe(long x, long k) {
  Recipe r;
  r.route = Route::construction2;
  r.a = x;
  r.k = k;
  const std::string xs = detail::str(x), ks = detail::str(k);
  r.steps = {{"elliptic", "E(" + xs + ")"},
             {"blow_up", ks + " times"},
             {"config", "C_" + detail::str(x + 2 * k - 2) + " = S0, t1..t" + detail::str(x + 2 * k - 4)},
             {"taut_filter", "survivors +-beta(" + detail::str(x - 2) + ";1,...,1)"},
             {"rational_blowdown", "C_" + detail::str(x + 2 * k - 2)}};
  r.expected_chi_h = x;
  r.expected_c1sq = x + k - 3;
  return r;
}

inline Recipe construction1_recipe(long p, long k, bool odd) {
  Recipe r;
  r.route = odd ? Route::construction1_odd : Route::construction1_even;
  r.a = p;
  r.k = k;
  const std::string ps = detail::str(p);
  r.steps = {{"fiber_sum", odd ? "R(" + detail::str(2 * p - 4) + ") # S'(" + ps + ")"
                               : "R(" + detail::str(2 * p - 3) + ") # S(" + ps + ")"},
             {"rational_blowdown", detail::str(k) + " assembled (-4)-spheres as C_2"}};
  r.expected_chi_h = odd ? 2 * p - 5 : 2 * p - 4;
  r.expected_c1sq = (odd ? 2 * p - 8 : 2 * p - 7) + k;
  return r;
}

// Names the violated inequality of 0 < x-3 <= c <= (5x-4)/2.
inline GeographyPlan geography_recipe(long x, long c) {
  const std::string at = " at (x, c) = (" + detail::str(x) + ", " + detail::str(c) + ")";
  if (x - 3 <= 0) throw DomainError("geography: violates 0 < x-3" + at);
  if (c < x - 3) throw DomainError("geography: violates x-3 <= c" + at);
  if (2 * c > 5 * x - 4) throw DomainError("geography: violates c <= (5x-4)/2" + at);
  GeographyPlan plan;
  const long k = c - x + 3;
  plan.canonical = construction2_recipe(x, k);
  const bool odd = x % 2 != 0;
  const long p = odd ? (x + 5) / 2 : (x + 4) / 2;
  const long kmax = odd ? 3 * p - 7 : 3 * p - 5;
  if (p >= (odd ? 5 : 4) && k <= kmax) plan.alternate = construction1_recipe(p, k, odd);
  return plan;
}

inline Construction execute(const Recipe& r) {
  Construction c = r.route == Route::construction2 ? construct_Z(r.a, r.k)
                                                   : construct_Xpk(r.a, r.k, r.route == Route::construction1_odd);
  c.report.verify("recipe reproduces (chi_h, c1^2)",
                  c.ledger.chi_h == r.expected_chi_h && c.ledger.c1sq == r.expected_c1sq,
                  "(" + c.ledger.chi_h.get_str() + ", " + c.ledger.c1sq.get_str() + ")");
  return c;
}

struct SweepRow {
  long x = 0;
  long c = 0;
  Route route = Route::construction2;
  long k = 0;
  bool theorem_T = false;  // c <= 2x - 6
  bool pass = false;
  std::string detail;
  std::vector<std::string> asserted;  // names of checks taken on trust
};

// All region points with x <= x_max in (x, c) order. threads = 0 picks hardware concurrency.
inline std::vector<SweepRow> geography_sweep(long x_max, unsigned threads = 1) {
  if (x_max < 4) throw DomainError("geography_sweep: x_max = " + detail::str(x_max) + " < 4");
  std::vector<SweepRow> rows;
  for (long x = 4; x <= x_max; ++x) {
    for (long c = x - 3; 2 * c <= 5 * x - 4; ++c) {
      SweepRow r;
      r.x = x;
      r.c = c;
      r.k = c - x + 3;
      r.theorem_T = c <= 2 * x - 6;
      rows.push_back(r);
    }
  }
  auto work = [&rows](std::size_t i) {
    SweepRow& r = rows[i];
    try {
      GeographyPlan plan = geography_recipe(r.x, r.c);
      r.route = plan.canonical.route;
      r.k = plan.canonical.k;
      Construction c = execute(plan.canonical);
      r.pass = c.report.passed() && c.ledger.simply_connected != Connectivity::no;
      for (const auto& ch : c.report.checks) {
        if (ch.status == CheckStatus::asserted) r.asserted.push_back(ch.name);
      }
      if (!r.pass) {
        auto f = c.report.failures();
        r.detail = f.empty() ? "not simply connected" : f.front();
      }
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) work(i);
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace blowdown
