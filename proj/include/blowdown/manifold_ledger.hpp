#pragma once

/*
 * Invariant ledgers for simply connected closed 4-manifolds.
 *
 * A ledger carries e, sign, b+, b-, chi_h and c1^2 together with the
 * identities tying them (b1 = 0 throughout):
 *
 *     e      = 2 + b+ + b-
 *     sign   = b+ - b-
 *     chi_h  = (e + sign) / 4      (exact)
 *     c1^2   = 2e + 3 sign
 *
 * Optionally it also holds an intersection lattice, a canonical class K and
 * a list of tracked embedded surfaces. Ledgers are values: every surgery
 * returns a new one and appends to its provenance.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blowdown/exact_lattice.hpp"

namespace blowdown {

enum class Connectivity { no, yes, unknown };

inline const char* to_string(Connectivity c) {
  switch (c) {
    case Connectivity::no: return "no";
    case Connectivity::yes: return "yes";
    case Connectivity::unknown: return "unknown";
  }
  return "unknown";
}

enum class SurfaceKind { sphere, higher_genus };

struct EmbeddedSurface {
  std::string label;
  std::optional<HomClass> cls;
  Integer genus = 0;
  Integer self_int = 0;
  bool symplectic = true;
  // Recorded, not derived: set where an exceptional sphere meets the
  // surface once (which kills the meridian in the complement).
  bool complement_simply_connected = false;

  SurfaceKind kind() const { return genus == 0 ? SurfaceKind::sphere : SurfaceKind::higher_genus; }
};

struct LedgerFlags {
  Connectivity simply_connected = Connectivity::yes;
  bool symplectic = true;
};

struct ManifoldLedger {
  std::string name;
  Integer e;
  Integer sign;
  Integer b_plus;
  Integer b_minus;
  Integer chi_h;
  Integer c1sq;
  Connectivity simply_connected = Connectivity::yes;
  bool symplectic = true;
  LatticePtr lattice;          // null in ledger-only mode
  std::optional<HomClass> K;   // canonical class, only with a lattice
  std::vector<EmbeddedSurface> surfaces;
  std::vector<std::string> provenance;

  const EmbeddedSurface* find_surface(std::string_view label) const {
    for (const auto& s : surfaces) {
      if (s.label == label) return &s;
    }
    return nullptr;
  }

  const EmbeddedSurface& surface(std::string_view label) const {
    const EmbeddedSurface* s = find_surface(label);
    if (!s) throw DomainError(name + ": no tracked surface '" + std::string(label) + "'");
    return *s;
  }
};

// Same invariants, flags, lattice and tracked classes; name and provenance ignored.
inline bool same_invariants(const ManifoldLedger& a, const ManifoldLedger& b) {
  return a.e == b.e && a.sign == b.sign && a.b_plus == b.b_plus && a.b_minus == b.b_minus &&
         a.chi_h == b.chi_h && a.c1sq == b.c1sq && a.symplectic == b.symplectic &&
         a.simply_connected == b.simply_connected;
}

inline Integer adjunction_genus(const HomClass& cls, const HomClass& K) {
  Integer twice = square(cls) + pair(K, cls);
  if (twice % 2 != 0) {
    throw DomainError("adjunction_genus: S.S + K.S = " + twice.get_str() + " is odd for " + cls.to_string());
  }
  Integer g = 1 + twice / 2;
  if (g < 0) {
    throw DomainError("adjunction_genus: negative genus " + g.get_str() + " for " + cls.to_string());
  }
  return g;
}

inline void validate_surface(const EmbeddedSurface& s, const std::optional<HomClass>& K,
                             const std::string& owner) {
  if (s.genus < 0) throw ConsistencyError(owner + ": surface " + s.label + " has negative genus");
  if (!s.cls) return;
  if (square(*s.cls) != s.self_int) {
    throw ConsistencyError(owner + ": surface " + s.label + " records self-intersection " +
                           s.self_int.get_str() + " but its class squares to " +
                           square(*s.cls).get_str());
  }
  if (K && s.symplectic) {
    Integer lhs = 2 * s.genus - 2;
    Integer rhs = s.self_int + pair(*K, *s.cls);
    if (lhs != rhs) {
      throw ConsistencyError(owner + ": surface " + s.label + " violates adjunction: 2g-2 = " +
                             lhs.get_str() + ", S.S + K.S = " + rhs.get_str());
    }
  }
}

// Throws ConsistencyError on any broken ledger identity.
inline void validate(const ManifoldLedger& m) {
  auto fail = [&](const std::string& what) { throw ConsistencyError(m.name + ": " + what); };
  if (m.e != 2 + m.b_plus + m.b_minus) fail("e != 2 + b+ + b-");
  if (m.sign != m.b_plus - m.b_minus) fail("sign != b+ - b-");
  if ((m.e + m.sign) % 4 != 0 || m.chi_h * 4 != m.e + m.sign) fail("chi_h != (e + sign)/4");
  if (m.c1sq != 2 * m.e + 3 * m.sign) fail("c1^2 != 2e + 3 sign");
  if (m.b_plus < 0 || m.b_minus < 0) fail("negative Betti number");
  if (m.lattice) {
    if (Integer(static_cast<unsigned long>(m.lattice->rank())) != m.b_plus + m.b_minus) {
      fail("lattice rank != b+ + b-");
    }
    if (m.K) {
      if (!same_lattice(m.K->lattice(), m.lattice)) fail("K lives in another lattice");
      if (square(*m.K) != m.c1sq) fail("K.K != c1^2");
    }
    for (const auto& s : m.surfaces) {
      if (s.cls && !same_lattice(s.cls->lattice(), m.lattice)) {
        fail("surface " + s.label + " lives in another lattice");
      }
    }
  } else if (m.K) {
    fail("canonical class without a lattice");
  }
  for (const auto& s : m.surfaces) validate_surface(s, m.K, m.name);
}

inline ManifoldLedger make_ledger(std::string name, const Integer& e, const Integer& sign,
                                  LedgerFlags flags = {}) {
  Integer sum = e + sign;
  if (sum % 4 != 0) {
    throw DomainError(name + ": e + sign = " + sum.get_str() + " is not divisible by 4");
  }
  ManifoldLedger m;
  m.name = std::move(name);
  m.e = e;
  m.sign = sign;
  m.b_plus = sum / 2 - 1;
  m.b_minus = e - 2 - m.b_plus;
  if (m.b_plus < 0) throw DomainError(m.name + ": b+ = " + m.b_plus.get_str() + " < 0");
  if (m.b_minus < 0) throw DomainError(m.name + ": b- = " + m.b_minus.get_str() + " < 0");
  m.chi_h = sum / 4;
  m.c1sq = 2 * e + 3 * sign;
  m.simply_connected = flags.simply_connected;
  m.symplectic = flags.symplectic;
  m.provenance.push_back("make_ledger(" + m.name + ", e=" + e.get_str() + ", sign=" + sign.get_str() + ")");
  validate(m);
  return m;
}

// Attach a lattice and canonical class; checks rank and K^2.
inline ManifoldLedger with_lattice(ManifoldLedger m, LatticePtr lattice, std::optional<HomClass> K) {
  m.lattice = std::move(lattice);
  m.K = std::move(K);
  validate(m);
  return m;
}

inline ManifoldLedger with_surface(ManifoldLedger m, EmbeddedSurface s) {
  if (m.find_surface(s.label)) throw DomainError(m.name + ": surface label '" + s.label + "' already tracked");
  m.surfaces.push_back(std::move(s));
  validate(m);
  return m;
}

inline ManifoldLedger replace_surface(ManifoldLedger m, EmbeddedSurface s) {
  for (auto& t : m.surfaces) {
    if (t.label == s.label) {
      t = std::move(s);
      validate(m);
      return m;
    }
  }
  throw DomainError(m.name + ": no tracked surface '" + s.label + "'");
}

// First "E<k>", k >= 1, not already used as a label.
inline std::string fresh_exceptional_label(const IntLattice& lattice) {
  for (long k = 1;; ++k) {
    std::string l = "E" + std::to_string(k);
    if (!lattice.index_of(l)) return l;
  }
}

/*
 * Blow up one point. Lattice mode: append a <-1> generator, K' = K + E_new,
 * tracked classes keep their coefficients. Ledger-only mode: invariants only.
 */
inline ManifoldLedger blow_up(const ManifoldLedger& M, std::optional<std::string> label = std::nullopt) {
  if (static_cast<bool>(M.lattice) != static_cast<bool>(M.K)) {
    throw DomainError(M.name + ": blow_up needs both a lattice and K, or neither");
  }
  ManifoldLedger out = M;
  out.e = M.e + 1;
  out.sign = M.sign - 1;
  out.b_minus = M.b_minus + 1;
  out.c1sq = M.c1sq - 1;
  out.name = M.name + "#CP2bar";
  std::string new_label;
  if (M.lattice) {
    new_label = label ? *label : fresh_exceptional_label(*M.lattice);
    if (M.lattice->index_of(new_label)) throw DomainError("blow_up: label '" + new_label + "' already used");
    std::vector<std::string> labels = M.lattice->labels();
    labels.push_back(new_label);
    IntMatrix g = M.lattice->gram();
    for (auto& row : g) row.push_back(0);
    g.emplace_back(labels.size(), 0);
    g.back().back() = -1;
    out.lattice = IntLattice::make(std::move(labels), std::move(g));
    auto extend = [&](const HomClass& c) {
      std::vector<Integer> v = c.coeffs();
      v.push_back(0);
      return HomClass(out.lattice, std::move(v));
    };
    out.K = extend(*M.K) + HomClass::basis(out.lattice, new_label);
    for (auto& s : out.surfaces) {
      if (s.cls) s.cls = extend(*s.cls);
    }
  }
  out.provenance.push_back(new_label.empty() ? "blow_up" : "blow_up(" + new_label + ")");
  validate(out);
  return out;
}

// Blow up a point on a tracked surface: its class loses the new generator once.
inline ManifoldLedger blow_up_on_surface(const ManifoldLedger& M, std::string_view surface_label,
                                         std::optional<std::string> label = std::nullopt) {
  if (!M.lattice) throw DomainError("blow_up_on_surface: ledger has no lattice");
  M.surface(surface_label);
  ManifoldLedger out = blow_up(M, std::move(label));
  const std::string& fresh = out.lattice->labels().back();
  for (auto& s : out.surfaces) {
    if (s.label != surface_label) continue;
    s.cls = *s.cls - HomClass::basis(out.lattice, fresh);
    s.self_int -= 1;
  }
  out.provenance.back() += " on " + std::string(surface_label);
  validate(out);
  return out;
}

/*
 * Pushforward for blowing down an exceptional class x (x.x = -1).
 *
 * On classes, pi(S) = S + (S.x) x, which kills x and is the orthogonal
 * projection onto x^perp. If x has a coordinate j with x_j = +-1 then
 * {b_i : i != j} together with x is a basis, so {pi(b_i) : i != j} is a
 * basis of x^perp; the target lattice keeps the old labels for those (read
 * them as pushforwards). Otherwise the saturated complement basis is used
 * with fresh labels P1, P2, ...
 */
class BlowDownMap {
 public:
  BlowDownMap(LatticePtr source, HomClass exc) : source_(std::move(source)), exc_(std::move(exc)) {
    if (!same_lattice(exc_.lattice(), source_)) throw DomainError("blow_down: class in another lattice");
    if (square(exc_) != -1) {
      throw DomainError("blow_down: " + exc_.to_string() + " has square " + square(exc_).get_str() + ", not -1");
    }
    const std::size_t r = source_->rank();
    for (std::size_t i = r; i-- > 0;) {
      if (abs(exc_[i]) == 1) {
        pivot_ = i;
        break;
      }
    }
    if (pivot_) {
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < r; ++i) {
        if (i != *pivot_) labels.push_back(source_->label(i));
      }
      std::vector<Integer> t(r);
      for (std::size_t i = 0; i < r; ++i) t[i] = pair(HomClass::basis(source_, source_->label(i)), exc_);
      IntMatrix g;
      for (std::size_t i = 0; i < r; ++i) {
        if (i == *pivot_) continue;
        std::vector<Integer> row;
        for (std::size_t k = 0; k < r; ++k) {
          if (k == *pivot_) continue;
          row.push_back(source_->entry(i, k) + t[i] * t[k]);
        }
        g.push_back(std::move(row));
      }
      target_ = IntLattice::make(std::move(labels), std::move(g));
    } else {
      basis_ = orthogonal_complement(source_, {exc_});
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < basis_.size(); ++i) labels.push_back("P" + std::to_string(i + 1));
      target_ = IntLattice::make(std::move(labels), gram_of(basis_));
    }
  }

  const LatticePtr& source() const { return source_; }
  const LatticePtr& target() const { return target_; }
  const HomClass& exceptional() const { return exc_; }

  // pi(S) expressed in the source lattice.
  HomClass project(const HomClass& s) const { return s + pair(s, exc_) * exc_; }

  // pi(S) in target coordinates.
  HomClass apply(const HomClass& s) const {
    if (!same_lattice(s.lattice(), source_)) throw DomainError("blow_down: class in another lattice");
    if (pivot_) {
      const std::size_t j = *pivot_;
      std::vector<Integer> out;
      const Integer sx = s[j] * exc_[j];
      for (std::size_t i = 0; i < s.rank(); ++i) {
        if (i != j) out.push_back(s[i] - sx * exc_[i]);
      }
      return HomClass(target_, std::move(out));
    }
    auto c = express_in_basis(project(s), basis_);
    std::vector<Integer> out;
    for (auto& v : c) out.push_back(v.get_num());
    return HomClass(target_, std::move(out));
  }

 private:
  LatticePtr source_;
  HomClass exc_;
  std::optional<std::size_t> pivot_;
  std::vector<HomClass> basis_;
  LatticePtr target_;
};

inline ManifoldLedger blow_down(const ManifoldLedger& M, const HomClass& exc) {
  if (!M.lattice || !M.K) throw DomainError(M.name + ": blow_down needs a lattice and K");
  if (!same_lattice(exc.lattice(), M.lattice)) throw DomainError("blow_down: class in another lattice");
  if (pair(*M.K, exc) != -1) {
    throw DomainError("blow_down: K." + exc.to_string() + " = " + pair(*M.K, exc).get_str() + ", not -1");
  }
  BlowDownMap map(M.lattice, exc);
  ManifoldLedger out = M;
  out.e = M.e - 1;
  out.sign = M.sign + 1;
  out.b_minus = M.b_minus - 1;
  out.c1sq = M.c1sq + 1;
  if (out.b_minus < 0) throw DomainError(M.name + ": blow_down would make b- negative");
  out.lattice = map.target();
  out.K = map.apply(*M.K);
  for (auto& s : out.surfaces) {
    if (!s.cls) continue;
    Integer t = pair(*s.cls, exc);
    s.cls = map.apply(*s.cls);
    s.self_int += t * t;
    if (s.symplectic) {
      // Image of a smooth curve through a point of multiplicity t: the
      // adjunction value becomes an upper bound for the genus.
      s.genus = adjunction_genus(*s.cls, *out.K);
    }
  }
  out.name = M.name + "/" + exc.to_string();
  out.provenance.push_back("blow_down(" + exc.to_string() + ")");
  validate(out);
  return out;
}

struct NoetherPosition {
  bool on_half_noether = false;
  bool on_noether = false;
  bool in_region_T = false;
  bool in_region_TT = false;
};

// x = chi_h, c = c1^2. Region T: 0 < x-3 <= c <= 2x-6; region TT: 0 < x-3 <= c, 2c <= 5x-4.
inline NoetherPosition noether_position(const Integer& x, const Integer& c) {
  NoetherPosition p;
  p.on_half_noether = c == x - 3;
  p.on_noether = c == 2 * x - 6;
  const bool base = x - 3 > 0 && x - 3 <= c;
  p.in_region_T = base && c <= 2 * x - 6;
  p.in_region_TT = base && 2 * c <= 5 * x - 4;
  return p;
}

inline NoetherPosition noether_position(const ManifoldLedger& m) { return noether_position(m.chi_h, m.c1sq); }

}  // namespace blowdown
