#pragma once

/*
 * Lattice-level replays of the two rational blowdown identifications
 *
 *     R(2p-3) minus C_{2p-6}, rationally blown down  ~>  S(p)     (p >= 4)
 *     R(2p-4) minus C_{2p-7}, rationally blown down  ~>  S'(p)    (p >= 5)
 *
 * Each step of the chain (blowdowns, complement basis, Gram matrix, the
 * rational change of basis to CP2 # CP2bar, the final blowups) is
 * recomputed and recorded as one check.
 */

#include <string>
#include <utility>
#include <vector>

#include "blowdown/rational_surfaces.hpp"
#include "blowdown/report.hpp"
#include "blowdown/surgery_calculus.hpp"

namespace blowdown {

struct PropVerification {
  Report report;
  IntMatrix gram;            // complement Gram matrix in the expected basis order
  HomClass final_class;      // image of Sigma_R in CP2 # CP2bar (or # 2 CP2bar), labels H, E[, E1]
  ManifoldLedger blowdown;   // ledger of the rational blowdown before the final blowups
};

namespace detail {

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m;
  for (auto r : rows) {
    std::vector<Integer> row;
    for (long v : r) row.emplace_back(v);
    m.push_back(std::move(row));
  }
  return m;
}

// Chain of blowdowns applied to a ledger and to extra (non-surface) classes.
struct BlowDownChain {
  ManifoldLedger ledger;
  std::vector<HomClass> tracked;

  void down(const HomClass& exc_in_current) {
    BlowDownMap map(ledger.lattice, exc_in_current);
    ledger = blow_down(ledger, exc_in_current);
    for (auto& c : tracked) c = map.apply(c);
  }

  HomClass e(const std::string& label) const { return HomClass::basis(ledger.lattice, label); }
};

inline bool unimodular_basis(const std::vector<HomClass>& classes) {
  if (classes.empty()) return false;
  if (classes.size() != classes.front().rank()) return false;
  IntMatrix m;
  for (const auto& c : classes) m.push_back(c.coeffs());
  return abs(determinant(std::move(m))) == 1;
}

inline std::string coords_to_string(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out + ")";
}

// Blow up `count` points on the curve `cls` in the standard lattice of
// CP2 # k CP2bar (labels H, E, E1, ...) and return the ledger.
inline ManifoldLedger blow_up_curve(const HomClass& cls, long count, const std::string& label) {
  const LatticePtr& L = cls.lattice();
  std::vector<Integer> diag(L->rank(), -1);
  diag[0] = 1;
  Integer e = 2 + Integer(static_cast<unsigned long>(L->rank()));
  Integer sign = 1 - Integer(static_cast<unsigned long>(L->rank()) - 1);
  ManifoldLedger m = make_ledger("CP2#" + std::to_string(L->rank() - 1) + "CP2bar", e, sign);
  HomClass K = -3 * HomClass::basis(L, "H");
  for (std::size_t i = 1; i < L->rank(); ++i) K += HomClass::basis(L, L->label(i));
  m = with_lattice(std::move(m), L, K);
  EmbeddedSurface s;
  s.label = label;
  s.cls = cls;
  s.self_int = square(cls);
  s.genus = adjunction_genus(cls, K);
  m = with_surface(std::move(m), s);
  for (long i = 0; i < count; ++i) m = blow_up_on_surface(m, label);
  return m;
}

inline ManifoldLedger strip_lattice(ManifoldLedger m) {
  m.lattice.reset();
  m.K.reset();
  m.surfaces.clear();
  return m;
}

}  // namespace detail

inline PropVerification verify_prop_P(long p) {
  if (p < 4) throw DomainError("verify_prop_P: p = " + std::to_string(p) + " < 4");
  using detail::int_matrix;
  const std::string ps = std::to_string(p);
  PropVerification out{{"prop_P(p=" + ps + ")", {}}, {}, HomClass::zero(IntLattice::diagonal({"H"}, {1})), {}};
  Report& rep = out.report;

  RationalSurface R = build_R(2 * p - 3);
  const LatticePtr L0 = R.ledger.lattice;
  auto E = [&](long i) { return HomClass::basis(L0, "E" + std::to_string(i)); };
  const HomClass H = HomClass::basis(L0, "H");
  const HomClass Ex = HomClass::basis(L0, "E");

  HomClass sigma_expected = (2 * p - 3) * H - (2 * p - 5) * Ex - sum_basis(L0, "E", 1, 8 * p - 16);
  rep.verify("Sigma_R class", *R.sigma.cls == sigma_expected, R.sigma.cls->to_string());

  std::vector<HomClass> config{H - sum_basis(L0, "E", 1, 2 * p - 3)};
  for (long j = 1; j <= 2 * p - 8; ++j) config.push_back(E(2 * p - 4 + j) - E(2 * p - 3 + j));
  const long n = verify_config(config);
  rep.verify("configuration", n == 2 * p - 6, "C_" + std::to_string(n));

  bool sigma_disjoint = true;
  for (const auto& s : config) sigma_disjoint = sigma_disjoint && pair(s, *R.sigma.cls) == 0;
  rep.verify("Sigma_R disjoint from C", sigma_disjoint, "");

  std::vector<HomClass> excs;
  for (long j = 4 * p - 10; j <= 8 * p - 16; ++j) excs.push_back(E(j));
  for (long i = 1; i <= 2 * p - 4; ++i) excs.push_back(H - Ex - E(i));
  bool disjoint = true;
  for (std::size_t a = 0; a < excs.size(); ++a) {
    for (const auto& s : config) disjoint = disjoint && pair(excs[a], s) == 0;
    for (std::size_t b = a + 1; b < excs.size(); ++b) disjoint = disjoint && pair(excs[a], excs[b]) == 0;
  }
  rep.verify("exceptional curves disjoint from C and each other", disjoint,
             std::to_string(excs.size()) + " curves");

  // alpha, beta, eps and E_{2p-3} ride along; config spheres too.
  detail::BlowDownChain chain{R.ledger, {}};
  chain.tracked = config;
  chain.tracked.push_back(H - Ex);
  chain.tracked.push_back(H - sum_basis(L0, "E", 1, 2 * p - 4));
  chain.tracked.push_back(sum_basis(L0, "E", 2 * p - 3, 4 * p - 11));
  chain.tracked.push_back(E(2 * p - 3));
  for (long j = 4 * p - 10; j <= 8 * p - 16; ++j) chain.down(chain.e("E" + std::to_string(j)));
  const std::string sigma_label = R.sigma.label;
  const LatticePtr L1 = chain.ledger.lattice;
  HomClass sigma1 = *chain.ledger.surface(sigma_label).cls;
  {
    HomClass expected = (2 * p - 3) * HomClass::basis(L1, "H") - (2 * p - 5) * HomClass::basis(L1, "E") -
                        sum_basis(L1, "E", 1, 4 * p - 11);
    rep.verify("Sigma_R' after E-blowdowns", sigma1 == expected, sigma1.to_string());
  }
  // Lift of Sigma'' to the lattice before the H-E-E_i blowdowns.
  {
    HomClass H1 = HomClass::basis(L1, "H"), E1x = HomClass::basis(L1, "E");
    HomClass lift = sigma1;
    for (long i = 1; i <= 2 * p - 4; ++i) {
      HomClass x = H1 - E1x - HomClass::basis(L1, "E" + std::to_string(i));
      lift += pair(sigma1, x) * x;
    }
    HomClass alpha = H1 - E1x, beta = H1 - sum_basis(L1, "E", 1, 2 * p - 4);
    HomClass eps = sum_basis(L1, "E", 2 * p - 3, 4 * p - 11);
    HomClass expected = (4 * p - 7) * H1 - (4 * p - 9) * E1x - 2 * sum_basis(L1, "E", 1, 2 * p - 4) - eps;
    rep.verify("Sigma'' lift = (4p-7)H-(4p-9)E-2sum E_i-eps", lift == expected, lift.to_string());
    rep.verify("Sigma'' lift = (4p-9)alpha+2beta-eps", lift == (4 * p - 9) * alpha + 2 * beta - eps, "");
  }
  for (long i = 1; i <= 2 * p - 4; ++i) {
    HomClass x = chain.e("H") - chain.e("E") - chain.e("E" + std::to_string(i));
    chain.down(x);
  }
  const LatticePtr Q = chain.ledger.lattice;
  const std::size_t c = config.size();
  std::vector<HomClass> configQ(chain.tracked.begin(), chain.tracked.begin() + static_cast<std::ptrdiff_t>(c));
  const HomClass alpha = chain.tracked[c], beta = chain.tracked[c + 1], eps = chain.tracked[c + 2];
  const HomClass e2p3 = chain.tracked[c + 3];
  const HomClass sigma2 = *chain.ledger.surface(sigma_label).cls;

  {
    // Pushforwards of E_{2p-3}..E_{4p-11} are the surviving basis labels.
    std::vector<HomClass> basis{alpha, beta};
    for (long j = 2 * p - 3; j <= 4 * p - 11; ++j) basis.push_back(HomClass::basis(Q, "E" + std::to_string(j)));
    rep.verify("{alpha, beta, E_2p-3..E_4p-11} is a basis of H_2(Q)", detail::unimodular_basis(basis),
               "rank " + std::to_string(Q->rank()));
  }
  rep.verify("Sigma'' = (4p-9)alpha+2beta-eps in Q", sigma2 == (4 * p - 9) * alpha + 2 * beta - eps,
             sigma2.to_string());
  rep.verify("S0 = beta - E_2p-3 in Q", configQ.front() == beta - e2p3, configQ.front().to_string());

  const HomClass gamma1 = (2 * p - 5) * alpha + beta;
  const HomClass gamma2 = alpha - eps;
  std::vector<HomClass> perp = orthogonal_complement(Q, configQ);
  rep.verify("H_2(C)^perp = <gamma1, gamma2>", same_span(perp, {gamma1, gamma2}),
             "complement rank " + std::to_string(perp.size()));
  out.gram = gram_of({gamma1, gamma2});
  IntMatrix want = int_matrix({{2 * p - 5, 1}, {1, -(2 * p - 7)}});
  rep.verify("gram(gamma1, gamma2)", out.gram == want, matrix_to_string(out.gram));

  auto coords = express_in_basis(sigma2, {gamma1, gamma2});
  rep.verify("Sigma'' = 2gamma1 + gamma2", coords == std::vector<Rational>{2, 1}, detail::coords_to_string(coords));

  const RationalClass h = combine({gamma1, gamma2}, {Rational(1, 2), Rational(1, 2)});
  const RationalClass e = combine({gamma1, gamma2}, {Rational(p - 4, 2 * p - 6), Rational(p - 2, 2 * p - 6)});
  rep.verify("h^2 = 1", square(h) == 1, to_string(square(h)));
  rep.verify("e^2 = -1", square(e) == -1, to_string(square(e)));
  rep.verify("h.e = 0", pair(h, e) == 0, to_string(pair(h, e)));
  {
    RationalClass lhs(2 * gamma1 + gamma2);
    std::vector<Rational> rhs(Q->rank());
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      rhs[i] = Rational(p) * h.coeffs()[i] - Rational(p - 3) * e.coeffs()[i];
      rhs[i].canonicalize();
    }
    rep.verify("2gamma1 + gamma2 = p h - (p-3) e", lhs == RationalClass(Q, rhs), "");
  }

  // gamma1 = s+ + f, gamma2 = s- in F_{2p-7} = CP2 # CP2bar.
  auto Y = IntLattice::diagonal({"H", "E"}, {1, -1});
  const HomClass img1 = HomClass::of(Y, {{"H", p - 2}, {"E", -(p - 3)}});
  const HomClass img2 = HomClass::of(Y, {{"H", 4 - p}, {"E", p - 3}});
  rep.verify("s+ + f, s- realize gram(gamma1, gamma2)", gram_of({img1, img2}) == out.gram,
             matrix_to_string(gram_of({img1, img2})));
  auto hc = express_in_basis(HomClass::basis(Y, "H"), {img1, img2});
  auto ec = express_in_basis(HomClass::basis(Y, "E"), {img1, img2});
  rep.verify("h = (gamma1 + gamma2)/2", hc == std::vector<Rational>{Rational(1, 2), Rational(1, 2)},
             detail::coords_to_string(hc));
  std::vector<Rational> ew{Rational(p - 4, 2 * p - 6), Rational(p - 2, 2 * p - 6)};
  for (auto& v : ew) v.canonicalize();
  rep.verify("e = ((p-4)gamma1 + (p-2)gamma2)/(2p-6)", ec == ew, detail::coords_to_string(ec));
  out.final_class = 2 * img1 + img2;
  HomClass expected = HomClass::of(Y, {{"H", p}, {"E", -(p - 3)}});
  rep.verify("image of Sigma_R = p h - (p-3) e", out.final_class == expected, out.final_class.to_string());

  ManifoldLedger M = detail::blow_up_curve(out.final_class, 6 * p - 9, "Sigma");
  RationalSurface S = build_S(p);
  rep.verify("blown up 6p-9 times gives Sigma_S(p)", *M.surface("Sigma").cls == *S.sigma.cls &&
                                                          M.surface("Sigma").genus == S.sigma.genus,
             M.surface("Sigma").cls->to_string());

  out.blowdown = rational_blowdown(chain.ledger, ConfigCn::from(configQ));
  ManifoldLedger after = detail::strip_lattice(out.blowdown);
  rep.verify("blowdown ledger is CP2#CP2bar", after.e == 4 && after.sign == 0,
             "e=" + after.e.get_str() + " sign=" + after.sign.get_str());
  for (long i = 0; i < 6 * p - 9; ++i) after = blow_up(after);
  rep.verify("ledger matches S(p)", same_invariants(after, detail::strip_lattice(S.ledger)),
             "c1^2=" + after.c1sq.get_str() + " chi_h=" + after.chi_h.get_str());
  return out;
}

inline PropVerification verify_prop_Pprime(long p) {
  if (p < 5) throw DomainError("verify_prop_Pprime: p = " + std::to_string(p) + " < 5");
  using detail::int_matrix;
  const std::string ps = std::to_string(p);
  PropVerification out{{"prop_P'(p=" + ps + ")", {}}, {}, HomClass::zero(IntLattice::diagonal({"H"}, {1})), {}};
  Report& rep = out.report;

  RationalSurface R = build_R(2 * p - 4);
  const LatticePtr L0 = R.ledger.lattice;
  auto E = [&](long i) { return HomClass::basis(L0, "E" + std::to_string(i)); };
  const HomClass H = HomClass::basis(L0, "H");
  const HomClass Ex = HomClass::basis(L0, "E");

  std::vector<HomClass> config{H - sum_basis(L0, "E", 1, 2 * p - 4)};
  for (long j = 1; j <= 2 * p - 9; ++j) config.push_back(E(2 * p - 5 + j) - E(2 * p - 4 + j));
  const long n = verify_config(config);
  rep.verify("configuration", n == 2 * p - 7, "C_" + std::to_string(n));

  std::vector<HomClass> excs;
  for (long j = 4 * p - 12; j <= 8 * p - 20; ++j) excs.push_back(E(j));
  for (long i = 2; i <= 2 * p - 5; ++i) excs.push_back(H - Ex - E(i));
  bool disjoint = true;
  for (std::size_t a = 0; a < excs.size(); ++a) {
    for (const auto& s : config) disjoint = disjoint && pair(excs[a], s) == 0;
    for (std::size_t b = a + 1; b < excs.size(); ++b) disjoint = disjoint && pair(excs[a], excs[b]) == 0;
  }
  rep.verify("exceptional curves disjoint from C' and each other", disjoint,
             std::to_string(excs.size()) + " curves");

  detail::BlowDownChain chain{R.ledger, config};
  for (long j = 4 * p - 12; j <= 8 * p - 20; ++j) chain.down(chain.e("E" + std::to_string(j)));
  const LatticePtr L1 = chain.ledger.lattice;
  const std::string sigma_label = R.sigma.label;
  {
    HomClass sigma1 = *chain.ledger.surface(sigma_label).cls;
    HomClass H1 = HomClass::basis(L1, "H"), E1x = HomClass::basis(L1, "E");
    HomClass lift = sigma1;
    for (long i = 2; i <= 2 * p - 5; ++i) {
      HomClass x = H1 - E1x - HomClass::basis(L1, "E" + std::to_string(i));
      lift += pair(sigma1, x) * x;
    }
    HomClass alpha = H1 - E1x, beta = H1 - sum_basis(L1, "E", 2, 2 * p - 5);
    HomClass eps = sum_basis(L1, "E", 2 * p - 4, 4 * p - 13);
    HomClass zeta = alpha - HomClass::basis(L1, "E1");
    HomClass gamma = (2 * p - 7) * alpha + beta;
    rep.verify("Sigma'_R,U lift = zeta + (alpha-eps) + 2((2p-7)alpha+beta)",
               lift == zeta + (alpha - eps) + 2 * gamma, lift.to_string());
  }
  // beta's E_i labels are the pivots of the next blowdowns, so track it.
  chain.tracked.push_back(HomClass::basis(L1, "H") - sum_basis(L1, "E", 2, 2 * p - 5));
  for (long i = 2; i <= 2 * p - 5; ++i) {
    chain.down(chain.e("H") - chain.e("E") - chain.e("E" + std::to_string(i)));
  }
  const LatticePtr U = chain.ledger.lattice;
  const std::vector<HomClass> configU(chain.tracked.begin(), chain.tracked.end() - 1);
  auto B = [&](const std::string& l) { return HomClass::basis(U, l); };
  const HomClass alpha = B("H") - B("E");
  const HomClass beta = chain.tracked.back();
  const HomClass eps = sum_basis(U, "E", 2 * p - 4, 4 * p - 13);
  const HomClass zeta = alpha - B("E1");
  const HomClass gamma = (2 * p - 7) * alpha + beta;
  {
    std::vector<HomClass> basis{alpha, beta, B("E1")};
    for (long j = 2 * p - 4; j <= 4 * p - 13; ++j) basis.push_back(B("E" + std::to_string(j)));
    rep.verify("{alpha, beta, E1, E_2p-4..E_4p-13} is a basis of H_2(U)", detail::unimodular_basis(basis),
               "rank " + std::to_string(U->rank()));
  }
  rep.verify("U = CP2 # (2p-6) CP2bar", chain.ledger.b_plus == 1 && chain.ledger.b_minus == 2 * p - 6,
             "b+=" + chain.ledger.b_plus.get_str() + " b-=" + chain.ledger.b_minus.get_str());
  std::vector<HomClass> perp = orthogonal_complement(U, configU);
  rep.verify("H_2(C')^perp = <zeta, alpha-eps, (2p-7)alpha+beta>", same_span(perp, {zeta, alpha - eps, gamma}),
             "complement rank " + std::to_string(perp.size()));
  const HomClass sigmaU = *chain.ledger.surface(sigma_label).cls;
  auto coords = express_in_basis(sigmaU, {zeta, alpha - eps, gamma});
  rep.verify("Sigma'_R,U = zeta + (alpha-eps) + 2((2p-7)alpha+beta)", coords == std::vector<Rational>{1, 1, 2},
             detail::coords_to_string(coords));
  rep.verify("((2p-7)alpha+beta)^2 = 2p-7 > 0", square(gamma) == 2 * p - 7, square(gamma).get_str());
  rep.verify("zeta is exceptional", square(zeta) == -1, square(zeta).get_str());

  // Rational homology of W, in the basis {zeta, alpha-eps, gamma}.
  auto Wc = IntLattice::make({"zeta", "alpha-eps", "gamma"}, gram_of({zeta, alpha - eps, gamma}));
  BlowDownMap down_zeta(Wc, HomClass::basis(Wc, "zeta"));
  const HomClass g_y = down_zeta.apply(HomClass::basis(Wc, "gamma"));
  const HomClass ae_y = down_zeta.apply(HomClass::basis(Wc, "alpha-eps"));
  rep.verify("pushforward of gamma is gamma + zeta",
             down_zeta.project(HomClass::basis(Wc, "gamma")) ==
                 HomClass::basis(Wc, "gamma") + HomClass::basis(Wc, "zeta"),
             "");
  out.gram = gram_of({g_y, ae_y});
  IntMatrix want = int_matrix({{2 * p - 6, 1}, {1, -(2 * p - 8)}});
  rep.verify("gram((2p-7)alpha+beta+zeta, alpha-eps)", out.gram == want, matrix_to_string(out.gram));

  // W = CP2 # 2 CP2bar with A = h - e1, B = h - e, zeta = h - e - e1.
  auto Wstd = IntLattice::diagonal({"H", "E", "E1"}, {1, -1, -1});
  const HomClass A = HomClass::of(Wstd, {{"H", 1}, {"E1", -1}});
  const HomClass Bf = HomClass::of(Wstd, {{"H", 1}, {"E", -1}});
  const HomClass zeta_img = HomClass::of(Wstd, {{"H", 1}, {"E", -1}, {"E1", -1}});
  const HomClass splus_f = A + (p - 3) * Bf;
  const HomClass sminus = A - (p - 4) * Bf;
  rep.verify("A^2 = B^2 = 0, A.B = 1", square(A) == 0 && square(Bf) == 0 && pair(A, Bf) == 1, "");
  rep.verify("s+ + f, s- realize the complement gram", gram_of({splus_f, sminus}) == out.gram,
             matrix_to_string(gram_of({splus_f, sminus})));
  const std::vector<HomClass> images{zeta_img, sminus, splus_f - zeta_img};
  rep.verify("identification of W is an isometry", gram_of(images) == Wc->gram(), matrix_to_string(gram_of(images)));
  out.final_class = images[0] + images[1] + 2 * images[2];
  rep.verify("2(s+ + f) + s- - zeta = p h - (p-3) e - 2 e1",
             out.final_class == 2 * splus_f + sminus - zeta_img &&
                 out.final_class == HomClass::of(Wstd, {{"H", p}, {"E", -(p - 3)}, {"E1", -2}}),
             out.final_class.to_string());

  ManifoldLedger M = detail::blow_up_curve(out.final_class, 6 * p - 13, "Sigma");
  RationalSurface S = build_Sprime(p);
  rep.verify("blown up 6p-13 times gives Sigma_S'(p)", *M.surface("Sigma").cls == *S.sigma.cls &&
                                                           M.surface("Sigma").genus == S.sigma.genus,
             M.surface("Sigma").cls->to_string());

  out.blowdown = rational_blowdown(chain.ledger, ConfigCn::from(configU));
  ManifoldLedger after = detail::strip_lattice(out.blowdown);
  rep.verify("blowdown ledger is CP2#2CP2bar", after.b_plus == 1 && after.b_minus == 2,
             "b+=" + after.b_plus.get_str() + " b-=" + after.b_minus.get_str());
  for (long i = 0; i < 6 * p - 13; ++i) after = blow_up(after);
  rep.verify("ledger matches S'(p)", same_invariants(after, detail::strip_lattice(S.ledger)),
             "c1^2=" + after.c1sq.get_str() + " chi_h=" + after.chi_h.get_str());
  return out;
}

}  // namespace blowdown
