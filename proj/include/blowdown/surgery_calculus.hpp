#pragma once

/*
 * C_n configurations, fiber sums and rational blowdowns.
 *
 * C_n is the linear plumbing of n-1 spheres S_0, ..., S_{n-2} with
 * S_0^2 = -(n+2), S_j^2 = -2 (j >= 1), S_j.S_{j+1} = +1 and all other
 * pairings 0. Replacing it by the rational ball B_n raises c1^2 by n-1 and
 * keeps chi_h.
 *
 * Fiber sums are invariant-level only; the glued lattice is not built.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blowdown/manifold_ledger.hpp"

namespace blowdown {

namespace detail {

inline std::string sphere_name(std::size_t i) { return "S" + std::to_string(i); }

}  // namespace detail

// Returns n = classes.size() + 1 when the classes form C_n in order.
// The error names the first failing index pair in (i, j), i <= j order.
inline long verify_config(const std::vector<HomClass>& classes) {
  if (classes.empty()) throw DomainError("verify_config: empty configuration");
  const LatticePtr& L = classes.front().lattice();
  for (const auto& c : classes) {
    if (!same_lattice(c.lattice(), L)) throw DomainError("verify_config: spheres in different lattices");
  }
  const long n = static_cast<long>(classes.size()) + 1;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i; j < classes.size(); ++j) {
      Integer expected;
      if (i == j) {
        expected = i == 0 ? Integer(-(n + 2)) : Integer(-2);
      } else {
        expected = j == i + 1 ? 1 : 0;
      }
      Integer got = pair(classes[i], classes[j]);
      if (got != expected) {
        throw DomainError("verify_config: pair(" + detail::sphere_name(i) + "," + detail::sphere_name(j) +
                          ") = " + got.get_str() + ", expected " + expected.get_str() + " for C_" +
                          std::to_string(n) + " (first failing pair (" + std::to_string(i) + "," +
                          std::to_string(j) + "))");
      }
    }
  }
  return n;
}

class ConfigCn {
 public:
  static ConfigCn from(std::vector<HomClass> spheres, bool symplectic = true) {
    long n = verify_config(spheres);
    return ConfigCn(n, std::move(spheres), symplectic);
  }

  long n() const { return n_; }
  const std::vector<HomClass>& spheres() const { return spheres_; }
  const HomClass& lead() const { return spheres_.front(); }
  const LatticePtr& lattice() const { return spheres_.front().lattice(); }
  bool symplectic() const { return symplectic_; }

  std::string to_string() const {
    std::string out = "C_" + std::to_string(n_) + "{";
    for (std::size_t i = 0; i < spheres_.size(); ++i) {
      if (i) out += ", ";
      out += spheres_[i].to_string();
    }
    return out + "}";
  }

  bool operator==(const ConfigCn& o) const { return n_ == o.n_ && spheres_ == o.spheres_; }

 private:
  ConfigCn(long n, std::vector<HomClass> spheres, bool symplectic)
      : n_(n), spheres_(std::move(spheres)), symplectic_(symplectic) {}

  long n_;
  std::vector<HomClass> spheres_;
  bool symplectic_;
};

/*
 * Every ordered chain of n-1 distinct pool elements forming C_n. Chains are
 * emitted in lexicographic order of their pool indices. A reversed chain is
 * never a second C_n for n >= 3 (the lead square differs), and for n = 2
 * the chain has one element, so no reversal duplicates arise.
 */
inline std::vector<ConfigCn> find_configs(const std::vector<HomClass>& pool, long n) {
  if (n < 2) throw DomainError("find_configs: n must be >= 2");
  std::vector<ConfigCn> out;
  if (pool.empty()) return out;
  const std::size_t len = static_cast<std::size_t>(n - 1);
  const std::size_t m = pool.size();
  std::vector<Integer> sq(m);
  for (std::size_t i = 0; i < m; ++i) sq[i] = square(pool[i]);
  std::vector<std::size_t> chain;
  std::vector<bool> used(m, false);
  auto recurse = [&](auto&& self) -> void {
    if (chain.size() == len) {
      std::vector<HomClass> spheres;
      for (std::size_t idx : chain) spheres.push_back(pool[idx]);
      out.push_back(ConfigCn::from(std::move(spheres)));
      return;
    }
    const std::size_t pos = chain.size();
    const Integer want = pos == 0 ? Integer(-(n + 2)) : Integer(-2);
    for (std::size_t c = 0; c < m; ++c) {
      if (used[c] || sq[c] != want) continue;
      bool ok = true;
      for (std::size_t k = 0; k < pos && ok; ++k) {
        Integer expected = k + 1 == pos ? 1 : 0;
        ok = pair(pool[chain[k]], pool[c]) == expected;
      }
      if (!ok) continue;
      used[c] = true;
      chain.push_back(c);
      self(self);
      chain.pop_back();
      used[c] = false;
    }
  };
  recurse(recurse);
  return out;
}

/*
 * A #_Sigma B along square-zero surfaces of equal genus g:
 *   c1^2 = c1^2(A) + c1^2(B) + 8g - 8,  chi_h = chi_h(A) + chi_h(B) + g - 1,
 * equivalently e = e(A) + e(B) + 4g - 4 and sign = sign(A) + sign(B).
 * `formal_surfaces` are caller-declared surfaces of the result (no classes).
 */
inline ManifoldLedger fiber_sum(const ManifoldLedger& A, const EmbeddedSurface& sigma_a, const ManifoldLedger& B,
                                const EmbeddedSurface& sigma_b, bool complements_simply_connected,
                                std::vector<EmbeddedSurface> formal_surfaces = {}) {
  if (sigma_a.genus != sigma_b.genus) {
    throw DomainError("fiber_sum: genus mismatch " + sigma_a.genus.get_str() + " vs " + sigma_b.genus.get_str());
  }
  if (sigma_a.self_int != 0 || sigma_b.self_int != 0) {
    throw DomainError("fiber_sum: surfaces must have self-intersection 0 (got " + sigma_a.self_int.get_str() +
                      ", " + sigma_b.self_int.get_str() + ")");
  }
  const Integer& g = sigma_a.genus;
  std::string name = A.name + "#_" + sigma_a.label + " " + B.name;
  LedgerFlags flags;
  flags.symplectic = A.symplectic && B.symplectic && sigma_a.symplectic && sigma_b.symplectic;
  flags.simply_connected = complements_simply_connected ? Connectivity::yes : Connectivity::unknown;
  ManifoldLedger out = make_ledger(name, A.e + B.e + 4 * g - 4, A.sign + B.sign, flags);
  out.provenance = {"fiber_sum(" + A.name + " along " + sigma_a.label + ", " + B.name + " along " +
                    sigma_b.label + "; genus " + g.get_str() + ")"};
  for (auto& s : formal_surfaces) {
    s.cls.reset();
    out = with_surface(std::move(out), std::move(s));
  }
  if (out.c1sq != A.c1sq + B.c1sq + 8 * g - 8 || out.chi_h != A.chi_h + B.chi_h + g - 1) {
    throw ConsistencyError("fiber_sum: e/sign bookkeeping disagrees with the c1^2/chi_h formulas");
  }
  return out;
}

struct BlowdownOptions {
  // A sphere pairing +-1 with some configuration sphere, if known.
  std::optional<HomClass> dual_sphere;
  // Caller vouches for a dual sphere that is not modelled in any lattice.
  bool dual_asserted = false;
};

namespace detail {

inline ManifoldLedger apply_blowdown_invariants(const ManifoldLedger& M, long n, bool config_symplectic,
                                                Connectivity connectivity, const std::string& what) {
  ManifoldLedger out = M;
  const Integer d = n - 1;
  out.e = M.e - d;
  out.sign = M.sign + d;
  out.b_minus = M.b_minus - d;
  out.c1sq = 2 * out.e + 3 * out.sign;
  out.chi_h = (out.e + out.sign) / 4;
  if (out.b_minus < 0) throw DomainError(M.name + ": rational blowdown of " + what + " would make b- negative");
  out.symplectic = M.symplectic && config_symplectic;
  out.simply_connected = connectivity;
  out.name = M.name + "/" + what;
  out.provenance.push_back("rational_blowdown(" + what + ")");
  return out;
}

inline void check_blowdown_deltas(const ManifoldLedger& before, const ManifoldLedger& after, long n) {
  validate(after);
  if (after.c1sq != before.c1sq + (n - 1) || after.chi_h != before.chi_h) {
    throw ConsistencyError("rational_blowdown: invariant update disagrees with c1^2 + (n-1), chi_h fixed");
  }
}

}  // namespace detail

/*
 * Rational blowdown of a verified C_n.
 *
 * With a lattice on M the configuration must live in it, and the result
 * carries the orthogonal complement (saturated) as its lattice: that
 * computes H_2 of the blowdown rationally, not integrally. Tracked classes
 * orthogonal to the configuration are re-expressed there, the others and K
 * are dropped. Without a lattice the configuration may live in an auxiliary
 * lattice fragment.
 *
 * simply_connected stays yes only with a dual sphere (given, asserted, or a
 * tracked sphere class pairing +-1 with a configuration sphere); otherwise
 * it becomes unknown.
 */
inline ManifoldLedger rational_blowdown(const ManifoldLedger& M, const ConfigCn& config,
                                        const BlowdownOptions& opts = {}) {
  const long n = verify_config(config.spheres());
  if (M.lattice && !same_lattice(config.lattice(), M.lattice)) {
    throw DomainError("rational_blowdown: configuration is not in the lattice of " + M.name);
  }
  auto pairs_dual = [&](const HomClass& d) {
    if (!same_lattice(d.lattice(), config.lattice())) return false;
    for (const auto& s : config.spheres()) {
      if (abs(pair(d, s)) == 1) return true;
    }
    return false;
  };
  bool dual = opts.dual_asserted;
  if (opts.dual_sphere) {
    if (!pairs_dual(*opts.dual_sphere)) {
      throw DomainError("rational_blowdown: " + opts.dual_sphere->to_string() +
                        " does not pair +-1 with any configuration sphere");
    }
    dual = true;
  }
  if (!dual && M.lattice) {
    for (const auto& s : M.surfaces) {
      if (s.cls && s.kind() == SurfaceKind::sphere && pairs_dual(*s.cls)) {
        dual = true;
        break;
      }
    }
  }
  Connectivity conn = (M.simply_connected == Connectivity::yes && dual) ? Connectivity::yes : Connectivity::unknown;
  ManifoldLedger out = detail::apply_blowdown_invariants(M, n, config.symplectic(), conn, "C_" + std::to_string(n));
  if (M.lattice) {
    std::vector<HomClass> perp = orthogonal_complement(M.lattice, config.spheres());
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < perp.size(); ++i) labels.push_back("perp" + std::to_string(i + 1));
    out.lattice = IntLattice::make(std::move(labels), gram_of(perp));
    out.K.reset();
    std::vector<EmbeddedSurface> kept;
    for (auto& s : out.surfaces) {
      if (!s.cls) {
        kept.push_back(s);
        continue;
      }
      bool orthogonal = true;
      for (const auto& c : config.spheres()) orthogonal = orthogonal && pair(*s.cls, c) == 0;
      if (!orthogonal) {
        out.provenance.push_back("dropped " + s.label + " (meets the configuration)");
        continue;
      }
      auto coords = express_in_basis(*s.cls, perp);
      std::vector<Integer> v;
      for (auto& q : coords) v.push_back(q.get_num());
      s.cls = HomClass(out.lattice, std::move(v));
      kept.push_back(s);
    }
    out.surfaces = std::move(kept);
    out.provenance.back() += "; lattice = orthogonal complement (rational homology)";
  }
  detail::check_blowdown_deltas(M, out, n);
  return out;
}

// Ledger-only variant: the configuration is a chain of formal tracked
// spheres of M (no classes). Squares are checked, pairings are taken as
// declared. The spheres are removed from the result.
inline ManifoldLedger rational_blowdown_formal(const ManifoldLedger& M, const std::vector<std::string>& sphere_labels,
                                               const BlowdownOptions& opts = {}) {
  if (sphere_labels.empty()) throw DomainError("rational_blowdown: empty configuration");
  const long n = static_cast<long>(sphere_labels.size()) + 1;
  bool symplectic = true;
  for (std::size_t i = 0; i < sphere_labels.size(); ++i) {
    const EmbeddedSurface& s = M.surface(sphere_labels[i]);
    Integer want = i == 0 ? Integer(-(n + 2)) : Integer(-2);
    if (s.kind() != SurfaceKind::sphere) throw DomainError("rational_blowdown: " + s.label + " is not a sphere");
    if (s.self_int != want) {
      throw DomainError("rational_blowdown: " + s.label + " has square " + s.self_int.get_str() + ", expected " +
                        want.get_str());
    }
    symplectic = symplectic && s.symplectic;
  }
  Connectivity conn = (M.simply_connected == Connectivity::yes && (opts.dual_asserted || opts.dual_sphere))
                          ? Connectivity::yes
                          : Connectivity::unknown;
  std::string what = "C_" + std::to_string(n) + "[" + sphere_labels.front() + "]";
  ManifoldLedger out = detail::apply_blowdown_invariants(M, n, symplectic, conn, what);
  std::erase_if(out.surfaces, [&](const EmbeddedSurface& s) {
    return std::find(sphere_labels.begin(), sphere_labels.end(), s.label) != sphere_labels.end();
  });
  detail::check_blowdown_deltas(M, out, n);
  return out;
}

enum class GluingSide { first, second };

struct SpherePiece {
  EmbeddedSurface surface;
  Integer sigma_hits = 0;  // punctures where the piece meets the fiber-sum surface
  GluingSide side = GluingSide::first;
};

/*
 * Glue punctured spheres from the two sides of a fiber sum into one formal
 * sphere. Punctures must balance across the sides; any matching is
 * accepted. The square of the result is the sum of the piece squares.
 */
inline EmbeddedSurface assemble_minus4_sphere(const std::vector<SpherePiece>& pieces, std::string label = {}) {
  if (pieces.empty()) throw DomainError("assemble: no pieces");
  Integer first = 0, second = 0, self_int = 0;
  bool symplectic = true;
  std::string joined;
  for (const auto& p : pieces) {
    if (p.surface.kind() != SurfaceKind::sphere) {
      throw DomainError("assemble: piece " + p.surface.label + " is not a sphere (genus " +
                        p.surface.genus.get_str() + ")");
    }
    if (p.sigma_hits < 0) throw DomainError("assemble: negative puncture count on " + p.surface.label);
    (p.side == GluingSide::first ? first : second) += p.sigma_hits;
    self_int += p.surface.self_int;
    symplectic = symplectic && p.surface.symplectic;
    if (!joined.empty()) joined += "u";
    joined += p.surface.label;
  }
  if (first != second) {
    throw DomainError("assemble: puncture mismatch, " + first.get_str() + " on the first side vs " +
                      second.get_str() + " on the second");
  }
  if (pieces.size() == 1 && first == 0) {
    EmbeddedSurface s = pieces.front().surface;
    if (!label.empty()) s.label = std::move(label);
    return s;
  }
  EmbeddedSurface out;
  out.label = label.empty() ? joined : std::move(label);
  out.genus = 0;
  out.self_int = self_int;
  out.symplectic = symplectic;
  return out;
}

}  // namespace blowdown
