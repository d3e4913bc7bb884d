#pragma once

/*
 * Rational surfaces built from line arrangements, modelled homologically.
 *
 * Conventions: H is the line class, E the exceptional curve over the
 * multiple point, E1, E2, ... the later blowups. The proper transform of a
 * degree-d curve through a point of multiplicity m is dH - mE, and
 * K = -3H + E + sum E_i.
 *
 *   R(q)   : q-2 lines through a point + 2 general lines, blown up at the
 *            point and at 4q-4 points of the smoothed curve. Sigma_R(q) =
 *            qH - (q-2)E - sum_{1}^{4q-4} E_i, genus q-2, square 0.
 *   S(p)   : p-3 concurrent lines + 3 general lines, 6p-9 further points.
 *            Sigma_S(p) = pH - (p-3)E - sum_{1}^{6p-9} E_i, genus 2p-5.
 *   S'(p)  : as S(p), plus one double point blown up (E1, multiplicity 2)
 *            and 6p-13 further points on the curve. Genus 2p-6.
 */

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "blowdown/manifold_ledger.hpp"
#include "blowdown/surgery_calculus.hpp"

namespace blowdown {

struct RationalSurface {
  ManifoldLedger ledger;
  EmbeddedSurface sigma;
  // Auxiliary spheres also tracked in the ledger (A_1 for R; B_k, C_1 for S).
  std::vector<EmbeddedSurface> spheres;
};

struct ArrangementSpec {
  long pencil_size = 1;                  // lines through the common point
  long general_lines = 2;
  std::vector<long> double_point_blowups;  // multiplicities of extra singular points blown up
};

// Homological sum of the pieces and the adjunction genus of the smoothing.
inline std::pair<HomClass, Integer> smooth_double_points(const std::vector<HomClass>& classes, const HomClass& K) {
  if (classes.empty()) throw DomainError("smooth_double_points: no curves");
  HomClass sum = HomClass::zero(classes.front().lattice());
  for (const auto& c : classes) sum += c;
  Integer g = adjunction_genus(sum, K);
  return {sum, g};
}

namespace detail {

inline ManifoldLedger cp2() {
  ManifoldLedger m = make_ledger("CP2", 3, 1);
  auto L = IntLattice::diagonal({"H"}, {1});
  return with_lattice(std::move(m), L, -3 * HomClass::basis(L, "H"));
}

inline EmbeddedSurface sphere(std::string label, HomClass cls) {
  EmbeddedSurface s;
  s.label = std::move(label);
  s.self_int = square(cls);
  s.cls = std::move(cls);
  s.genus = 0;
  return s;
}

/*
 * Blow up the multiple point (and any listed double points), add the
 * smoothed arrangement curve, then blow up `along` points on it.
 */
inline RationalSurface arrangement_surface(const std::string& name, const std::string& sigma_label,
                                           const ArrangementSpec& spec, long along) {
  if (spec.pencil_size < 1) throw DomainError(name + ": pencil size must be >= 1");
  ManifoldLedger m = blow_up(cp2(), std::string("E"));
  for (std::size_t i = 0; i < spec.double_point_blowups.size(); ++i) m = blow_up(m);
  const LatticePtr& L = m.lattice;
  std::vector<HomClass> lines;
  for (long i = 0; i < spec.pencil_size; ++i) lines.push_back(HomClass::of(L, {{"H", 1}, {"E", -1}}));
  for (long i = 0; i < spec.general_lines; ++i) lines.push_back(HomClass::basis(L, "H"));
  auto [cls, genus] = smooth_double_points(lines, *m.K);
  // Blowing up a double point of the arrangement lowers the smoothed class
  // by the multiplicity there and uses up those double points.
  for (std::size_t i = 0; i < spec.double_point_blowups.size(); ++i) {
    cls -= Integer(spec.double_point_blowups[i]) * HomClass::basis(L, "E" + std::to_string(i + 1));
  }
  genus = adjunction_genus(cls, *m.K);
  EmbeddedSurface sigma;
  sigma.label = sigma_label;
  sigma.self_int = square(cls);
  sigma.cls = cls;
  sigma.genus = genus;
  m = with_surface(std::move(m), sigma);
  for (long i = 0; i < along; ++i) m = blow_up_on_surface(m, sigma_label);
  EmbeddedSurface final_sigma = m.surface(sigma_label);
  // An exceptional sphere meeting Sigma once kills its meridian.
  final_sigma.complement_simply_connected = along > 0;
  m = replace_surface(std::move(m), final_sigma);
  m.name = name;
  m.provenance.push_back("rename(" + name + ")");
  return {std::move(m), std::move(final_sigma), {}};
}

// R(q) for q >= 3. q = 3 is the degenerate arrangement (a cubic through
// nine points, i.e. E(1)); the public constructor starts at q = 4.
inline RationalSurface build_R_from(long q) {
  if (q < 3) throw DomainError("build_R: q = " + std::to_string(q) + " < 3");
  ArrangementSpec spec{q - 2, 2, {}};
  RationalSurface r = arrangement_surface("R(" + std::to_string(q) + ")", "Sigma_R(" + std::to_string(q) + ")", spec,
                                          4 * q - 4);
  EmbeddedSurface a = sphere("A1", HomClass::of(r.ledger.lattice, {{"H", 1}, {"E", -1}}));
  r.ledger = with_surface(std::move(r.ledger), a);
  r.spheres.push_back(std::move(a));
  return r;
}

}  // namespace detail

inline RationalSurface build_R(long q) {
  if (q < 4) throw DomainError("build_R: q = " + std::to_string(q) + " < 4");
  return detail::build_R_from(q);
}

// Also tracks B_k = H - E - E_{2k-1} - E_{2k} (k = 1..3p-5) and C1 = H - E.
inline RationalSurface build_S(long p) {
  if (p < 4) throw DomainError("build_S: p = " + std::to_string(p) + " < 4");
  ArrangementSpec spec{p - 3, 3, {}};
  std::string ps = std::to_string(p);
  RationalSurface r = detail::arrangement_surface("S(" + ps + ")", "Sigma_S(" + ps + ")", spec, 6 * p - 9);
  const LatticePtr& L = r.ledger.lattice;
  for (long k = 1; k <= 3 * p - 5; ++k) {
    HomClass b = HomClass::of(L, {{"H", 1}, {"E", -1}}) - HomClass::basis(L, "E" + std::to_string(2 * k - 1)) -
                 HomClass::basis(L, "E" + std::to_string(2 * k));
    r.spheres.push_back(detail::sphere("B" + std::to_string(k), std::move(b)));
  }
  r.spheres.push_back(detail::sphere("C1", HomClass::of(L, {{"H", 1}, {"E", -1}})));
  for (const auto& s : r.spheres) r.ledger = with_surface(std::move(r.ledger), s);
  return r;
}

// E1 is the blown-up double point; B_k = H - E - E_{2k} - E_{2k+1}
// (k = 1..3p-7) use the points on the curve, and C1 = H - E.
inline RationalSurface build_Sprime(long p) {
  if (p < 5) throw DomainError("build_Sprime: p = " + std::to_string(p) + " < 5");
  ArrangementSpec spec{p - 3, 3, {2}};
  std::string ps = std::to_string(p);
  RationalSurface r = detail::arrangement_surface("S'(" + ps + ")", "Sigma_S'(" + ps + ")", spec, 6 * p - 13);
  const LatticePtr& L = r.ledger.lattice;
  for (long k = 1; k <= 3 * p - 7; ++k) {
    HomClass b = HomClass::of(L, {{"H", 1}, {"E", -1}}) - HomClass::basis(L, "E" + std::to_string(2 * k)) -
                 HomClass::basis(L, "E" + std::to_string(2 * k + 1));
    r.spheres.push_back(detail::sphere("B" + std::to_string(k), std::move(b)));
  }
  r.spheres.push_back(detail::sphere("C1", HomClass::of(L, {{"H", 1}, {"E", -1}})));
  for (const auto& s : r.spheres) r.ledger = with_surface(std::move(r.ledger), s);
  return r;
}

struct HorizontalFiberSystem {
  LatticePtr lattice;
  std::vector<LinearConstraint> constraints;
  Integer square_target = 0;
};

/*
 * The linear system a horizontal fiber of R(q+1) satisfies: two points on a
 * vertical fiber H - E, and disjointness from the (-2)-spheres
 * E_{2i} - E_{2i-1} and H - E - E_{2i-1} - E_{2i} of the 2q singular
 * vertical fibers. Square 0.
 */
inline HorizontalFiberSystem horizontal_fiber_system(long q) {
  if (q < 3) throw DomainError("horizontal_fiber_class: q = " + std::to_string(q) + " < 3");
  HorizontalFiberSystem sys;
  sys.lattice = build_R(q + 1).ledger.lattice;
  const LatticePtr& L = sys.lattice;
  HomClass fiber = HomClass::of(L, {{"H", 1}, {"E", -1}});
  sys.constraints.push_back({fiber, 2});
  for (long i = 1; i <= 2 * q; ++i) {
    HomClass odd = HomClass::basis(L, "E" + std::to_string(2 * i - 1));
    HomClass even = HomClass::basis(L, "E" + std::to_string(2 * i));
    sys.constraints.push_back({even - odd, 0});
    sys.constraints.push_back({fiber - odd - even, 0});
  }
  return sys;
}

// Box half-width used by horizontal_fiber_class.
inline long horizontal_fiber_box(long q) { return std::max(8L, 2 * q); }

inline HomClass horizontal_fiber_class(long q) {
  HorizontalFiberSystem sys = horizontal_fiber_system(q);
  auto all = solve_class(sys.lattice, sys.constraints, sys.square_target, horizontal_fiber_box(q));
  std::vector<HomClass> positive;
  for (auto& c : all) {
    if (c.coeff("H") > 0) positive.push_back(std::move(c));
  }
  if (positive.size() != 1) {
    throw DomainError("horizontal_fiber_class: " + std::to_string(positive.size()) +
                      " positive-degree solutions in box " + std::to_string(horizontal_fiber_box(q)) + " for q = " +
                      std::to_string(q));
  }
  HomClass sigma = *build_R(q + 1).sigma.cls;
  if (!(positive.front() == sigma)) {
    throw ConsistencyError("horizontal_fiber_class: solution " + positive.front().to_string() + " differs from " +
                           sigma.to_string());
  }
  return positive.front();
}

struct EllipticRoutes {
  ManifoldLedger direct;
  ManifoldLedger fiber_sum;
};

// E(x) directly (e = 12x, sign = -8x) and as R(x+1) #_Sigma R(x+1).
inline EllipticRoutes build_E_routes(long x) {
  if (x < 2) throw DomainError("build_E: x = " + std::to_string(x) + " < 2");
  std::string name = "E(" + std::to_string(x) + ")";
  ManifoldLedger direct = make_ledger(name, 12 * Integer(x), -8 * Integer(x));
  RationalSurface r = detail::build_R_from(x + 1);
  ManifoldLedger sum = fiber_sum(r.ledger, r.sigma, r.ledger, r.sigma,
                                 r.sigma.complement_simply_connected);
  return {std::move(direct), std::move(sum)};
}

inline ManifoldLedger build_E(long x) {
  EllipticRoutes routes = build_E_routes(x);
  if (!same_invariants(routes.direct, routes.fiber_sum)) {
    throw ConsistencyError("build_E: direct and fiber-sum routes disagree for x = " + std::to_string(x));
  }
  ManifoldLedger out = routes.direct;
  out.provenance.push_back("agrees with " + routes.fiber_sum.provenance.back());
  return out;
}

}  // namespace blowdown
