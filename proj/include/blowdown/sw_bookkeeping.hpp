#pragma once

/*
 * Seiberg-Witten basic-class sets for E(x) # k CP2bar and the rational
 * blowdown filter.
 *
 * Everything lives on a lattice fragment of E(x) # k CP2bar spanned by
 *   f       elliptic fiber, f.f = 0
 *   S       section, S.S = -x, S.f = 1
 *   t1..t_{4x-2}   the (-2)-chain across the top of the Brieskorn
 *           resolution; t_i.t_{i+1} = 1, S.t1 = 1, f.t_i = 0
 *   E1..Ek  exceptional classes, E_j.E_j = -1, orthogonal to the rest
 *
 * Basic classes are m f + sum_j eps_j E_j with |m| <= x-2, m = x (mod 2),
 * eps_j = +-1. Sets are kept in product form (base classes times sign
 * choices on the exceptional generators), so a set of (x-1) 2^k classes is
 * never materialized unless asked for.
 */

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blowdown/report.hpp"
#include "blowdown/surgery_calculus.hpp"

namespace blowdown {

inline LatticePtr sw_fragment(long x, long k) {
  if (x < 2) throw DomainError("sw_fragment: x = " + std::to_string(x) + " < 2");
  if (k < 0) throw DomainError("sw_fragment: k = " + std::to_string(k) + " < 0");
  static std::mutex mu;
  static std::map<std::pair<long, long>, LatticePtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({x, k});
  if (it != cache.end()) return it->second;

  const long chain = 4 * x - 2;
  std::vector<std::string> labels{"f", "S"};
  for (long i = 1; i <= chain; ++i) labels.push_back("t" + std::to_string(i));
  for (long j = 1; j <= k; ++j) labels.push_back("E" + std::to_string(j));
  const std::size_t r = labels.size();
  IntMatrix g(r, std::vector<Integer>(r, 0));
  g[1][1] = -x;
  g[0][1] = g[1][0] = 1;
  g[1][2] = g[2][1] = 1;
  for (long i = 0; i < chain; ++i) {
    const std::size_t a = 2 + static_cast<std::size_t>(i);
    g[a][a] = -2;
    if (i + 1 < chain) g[a][a + 1] = g[a + 1][a] = 1;
  }
  for (long j = 0; j < k; ++j) {
    const std::size_t a = 2 + static_cast<std::size_t>(chain + j);
    g[a][a] = -1;
  }
  auto L = IntLattice::make(std::move(labels), std::move(g));
  cache.emplace(std::make_pair(x, k), L);
  return L;
}

// Index of the lattice fragment generators: number of E_j in a fragment.
inline long fragment_blowups(const IntLattice& L, long x) {
  return static_cast<long>(L.rank()) - 2 - (4 * x - 2);
}

class BasicClassSet {
 public:
  BasicClassSet(LatticePtr fragment, long x, std::vector<HomClass> base, std::vector<HomClass> exceptional,
                std::string label)
      : fragment_(std::move(fragment)),
        x_(x),
        base_(std::move(base)),
        exceptional_(std::move(exceptional)),
        label_(std::move(label)) {
    for (const auto& c : base_) {
      if (!same_lattice(c.lattice(), fragment_)) throw DomainError("basic classes: base class in another lattice");
    }
    for (const auto& c : exceptional_) {
      if (!same_lattice(c.lattice(), fragment_)) throw DomainError("basic classes: generator in another lattice");
    }
  }

  const LatticePtr& fragment() const { return fragment_; }
  long x() const { return x_; }
  const std::vector<HomClass>& base() const { return base_; }
  const std::vector<HomClass>& exceptional() const { return exceptional_; }
  const std::string& label() const { return label_; }

  Integer size() const {
    Integer n = static_cast<unsigned long>(base_.size());
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), exceptional_.size());
    return n;
  }

  bool empty() const { return base_.empty(); }

  // All classes: base order, then sign vectors in lexicographic order with -1 before +1.
  std::vector<HomClass> enumerate(std::size_t limit = std::size_t{1} << 20) const {
    if (size() > Integer(static_cast<unsigned long>(limit))) {
      throw DomainError("basic classes: refusing to materialize " + size().get_str() + " classes");
    }
    std::vector<HomClass> out;
    const std::size_t k = exceptional_.size();
    for (const auto& b : base_) {
      for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
        HomClass c = b;
        for (std::size_t j = 0; j < k; ++j) {
          const bool plus = (mask >> (k - 1 - j)) & 1UL;
          c += (plus ? 1 : -1) * exceptional_[j];
        }
        out.push_back(std::move(c));
      }
    }
    return out;
  }

 private:
  LatticePtr fragment_;
  long x_;
  std::vector<HomClass> base_;
  std::vector<HomClass> exceptional_;
  std::string label_;
};

// "beta(2;+1,-1)" for 2f + E1 - E2 on a fragment.
inline std::string describe_basic_class(const HomClass& c) {
  const IntLattice& L = *c.lattice();
  std::string out = "beta(" + c.coeff("f").get_str();
  std::string eps;
  for (std::size_t i = 0; i < L.rank(); ++i) {
    const std::string& l = L.label(i);
    if (l.size() < 2 || l[0] != 'E') continue;
    eps += eps.empty() ? ";" : ",";
    eps += c[i] > 0 ? "+" + c[i].get_str() : c[i].get_str();
  }
  return out + eps + ")";
}

inline BasicClassSet basic_classes_E(long x) {
  if (x < 2) throw DomainError("basic_classes_E: x = " + std::to_string(x) + " < 2");
  LatticePtr L = sw_fragment(x, 0);
  std::vector<HomClass> base;
  for (long m = -(x - 2); m <= x - 2; m += 2) base.push_back(m * HomClass::basis(L, "f"));
  return BasicClassSet(L, x, std::move(base), {}, "E(" + std::to_string(x) + ")");
}

// Blowup formula: each class b becomes b + sum_j (+-E_j) over k new generators.
inline BasicClassSet blowup_formula(const BasicClassSet& base, long k) {
  if (k < 0) throw DomainError("blowup_formula: k = " + std::to_string(k) + " < 0");
  if (k == 0) return base;
  const long k0 = fragment_blowups(*base.fragment(), base.x());
  LatticePtr L = sw_fragment(base.x(), k0 + k);
  std::vector<HomClass> b, ex;
  for (const auto& c : base.base()) b.push_back(embed(c, L));
  for (const auto& c : base.exceptional()) ex.push_back(embed(c, L));
  for (long j = k0 + 1; j <= k0 + k; ++j) ex.push_back(HomClass::basis(L, "E" + std::to_string(j)));
  return BasicClassSet(L, base.x(), std::move(b), std::move(ex), base.label() + "#" + std::to_string(k) + "CP2bar");
}

// K = (x-2) f + sum E_j on the fragment.
inline HomClass canonical_class_E_blowup(long x, long k) {
  LatticePtr L = sw_fragment(x, k);
  HomClass K = (x - 2) * HomClass::basis(L, "f");
  for (long j = 1; j <= k; ++j) K += HomClass::basis(L, "E" + std::to_string(j));
  return K;
}

// Resolving S with each cusp sphere f - 2E_j: S_0 = S + sum_j (f - 2E_j), square -(x+2k).
inline HomClass lead_sphere_class(long x, long k) {
  LatticePtr L = sw_fragment(x, k);
  HomClass s = HomClass::basis(L, "S");
  for (long j = 1; j <= k; ++j) s += HomClass::basis(L, "f") - 2 * HomClass::basis(L, "E" + std::to_string(j));
  return s;
}

/*
 * C_{x+2k-2} in E(x) # k CP2bar: the lead sphere followed by
 * t1..t_{x+2k-4}. Needs x+2k-4 <= 4x-2 spheres in the chain and n >= 2.
 */
inline ConfigCn config_in_E_blowup(long x, long k) {
  if (x < 2) throw DomainError("config_in_E_blowup: x = " + std::to_string(x) + " < 2");
  if (k < 0) throw DomainError("config_in_E_blowup: k = " + std::to_string(k) + " < 0");
  const long n = x + 2 * k - 2;
  if (x + 2 * k - 4 > 4 * x - 2) {
    throw DomainError("config_in_E_blowup: needs x+2k-4 <= 4x-2 (-2)-spheres, i.e. 2k <= 3x+2; got x=" +
                      std::to_string(x) + ", k=" + std::to_string(k));
  }
  if (n < 2) {
    throw DomainError("config_in_E_blowup: C_" + std::to_string(n) + " is degenerate (need x+2k >= 4)");
  }
  LatticePtr L = sw_fragment(x, k);
  std::vector<HomClass> spheres{lead_sphere_class(x, k)};
  for (long i = 1; i <= x + 2 * k - 4; ++i) spheres.push_back(HomClass::basis(L, "t" + std::to_string(i)));
  return ConfigCn::from(std::move(spheres));
}

// The chain sphere right after the configuration, a dual sphere when it exists.
inline std::optional<HomClass> next_chain_sphere(long x, long k) {
  const long idx = x + 2 * k - 3;
  if (idx < 1 || idx > 4 * x - 2) return std::nullopt;
  return HomClass::basis(sw_fragment(x, k), "t" + std::to_string(idx));
}

namespace detail {

inline Integer sign_of(const Integer& v) { return v < 0 ? Integer(-1) : Integer(1); }

}  // namespace detail

/*
 * Keep the basic classes k with |k.S_0| = n, after checking that every
 * class satisfies k.S_i = 0 (i >= 1) and |k.S_0| <= n.
 *
 * On a product set the pairing with a sphere s is b.s + sum_j eps_j (E_j.s).
 * It vanishes identically iff b.s = 0 for every base class and E_j.s = 0
 * for every j, and its largest magnitude is max_b |b.s| + sum_j |E_j.s|.
 * Survivors are found by depth-first search over the signs, cutting a
 * branch once the target magnitude is out of reach.
 */
inline BasicClassSet taut_filter(const BasicClassSet& basic, const ConfigCn& config) {
  if (!same_lattice(basic.fragment(), config.lattice())) {
    throw DomainError("taut_filter: basic classes and configuration live in different lattices");
  }
  const long n = config.n();
  const std::string out_label = "rational blowdown of " + config.to_string() + " in " + basic.label();
  if (basic.empty()) return BasicClassSet(basic.fragment(), basic.x(), {}, {}, out_label);
  const auto& ex = basic.exceptional();
  const std::size_t k = ex.size();

  auto class_with = [&](const HomClass& b, const std::vector<Integer>& eps) {
    HomClass c = b;
    for (std::size_t j = 0; j < k; ++j) c += eps[j] * ex[j];
    return c;
  };

  for (std::size_t i = 1; i < config.spheres().size(); ++i) {
    const HomClass& s = config.spheres()[i];
    std::vector<Integer> e(k);
    std::optional<std::size_t> moving;
    for (std::size_t j = 0; j < k; ++j) {
      e[j] = pair(ex[j], s);
      if (e[j] != 0 && !moving) moving = j;
    }
    for (const auto& b : basic.base()) {
      std::vector<Integer> eps(k, 1);
      Integer v = pair(b, s);
      for (std::size_t j = 0; j < k; ++j) v += e[j];
      if (v == 0 && moving) {
        eps[*moving] = -1;
        v -= 2 * e[*moving];
      }
      if (v != 0) {
        throw DomainError("taut_filter: basic class " + class_with(b, eps).to_string() + " has k.S" +
                          std::to_string(i) + " = " + v.get_str() + ", hypothesis needs 0");
      }
    }
  }

  const HomClass& lead = config.lead();
  std::vector<Integer> e(k);
  std::vector<Integer> reach(k + 1, 0);  // reach[j] = sum_{l >= j} |e_l|
  for (std::size_t j = 0; j < k; ++j) e[j] = pair(ex[j], lead);
  for (std::size_t j = k; j-- > 0;) reach[j] = reach[j + 1] + abs(e[j]);
  std::vector<Integer> bvals;
  for (const auto& b : basic.base()) {
    Integer bv = pair(b, lead);
    if (abs(bv) + reach[0] > n) {
      std::vector<Integer> eps(k);
      for (std::size_t j = 0; j < k; ++j) eps[j] = e[j] == 0 ? Integer(1) : detail::sign_of(bv) * detail::sign_of(e[j]);
      Integer v = abs(bv) + reach[0];
      throw DomainError("taut_filter: basic class " + class_with(b, eps).to_string() + " has |k.S0| = " +
                        v.get_str() + " > n = " + std::to_string(n));
    }
    bvals.push_back(std::move(bv));
  }

  std::vector<HomClass> survivors;
  std::vector<Integer> eps(k, 0);
  for (std::size_t bi = 0; bi < basic.base().size(); ++bi) {
    for (long target : {-n, n}) {
      auto recurse = [&](auto&& self, std::size_t j, const Integer& partial) -> void {
        if (abs(Integer(target) - partial) > reach[j]) return;
        if (j == k) {
          survivors.push_back(class_with(basic.base()[bi], eps));
          return;
        }
        for (long s : {-1, 1}) {
          eps[j] = s;
          self(self, j + 1, partial + s * e[j]);
        }
        eps[j] = 0;
      };
      recurse(recurse, 0, bvals[bi]);
    }
  }
  return BasicClassSet(basic.fragment(), basic.x(), std::move(survivors), {}, out_label);
}

// K, f and every E_j pair to zero with t_1..t_{x+2k-4}, hence so does every basic class.
inline Report adjunction_zero_check(long x, long k) {
  Report rep{"adjunction_zero(x=" + std::to_string(x) + ",k=" + std::to_string(k) + ")", {}};
  const long count = x + 2 * k - 4;
  if (count > 4 * x - 2) {
    throw DomainError("adjunction_zero_check: only 4x-2 = " + std::to_string(4 * x - 2) + " chain spheres, need " +
                      std::to_string(count));
  }
  LatticePtr L = sw_fragment(x, k);
  const HomClass K = canonical_class_E_blowup(x, k);
  const HomClass f = HomClass::basis(L, "f");
  bool k_ok = true, f_ok = true, e_ok = true;
  std::string first_bad;
  for (long i = 1; i <= count; ++i) {
    const HomClass t = HomClass::basis(L, "t" + std::to_string(i));
    if (pair(K, t) != 0) {
      k_ok = false;
      if (first_bad.empty()) first_bad = "K.t" + std::to_string(i);
    }
    if (pair(f, t) != 0) {
      f_ok = false;
      if (first_bad.empty()) first_bad = "f.t" + std::to_string(i);
    }
    for (long j = 1; j <= k; ++j) {
      if (pair(HomClass::basis(L, "E" + std::to_string(j)), t) != 0) {
        e_ok = false;
        if (first_bad.empty()) first_bad = "E" + std::to_string(j) + ".t" + std::to_string(i);
      }
    }
  }
  const std::string range = "t1..t" + std::to_string(count);
  rep.verify("K.t_i = 0", k_ok, count > 0 ? range : "no chain spheres");
  rep.verify("f.t_i = 0", f_ok, count > 0 ? range : "no chain spheres");
  rep.verify("E_j.t_i = 0", e_ok, count > 0 ? range : "no chain spheres");
  rep.verify("beta.t_i = 0 for every basic class", k_ok && f_ok && e_ok, first_bad);
  return rep;
}

}  // namespace blowdown
