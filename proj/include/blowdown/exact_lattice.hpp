#pragma once

/*
 * Exact integer lattices with a symmetric pairing.
 *
 * An IntLattice is a free abelian group Z^r with a symmetric integer Gram
 * matrix and one string label per basis vector. A HomClass is an integer
 * coefficient vector in a given lattice; a RationalClass is the same with
 * rational coefficients (used where a computation needs denominators, such
 * as a basis of rational homology after a rational blowdown).
 *
 * Lattices are immutable and shared through LatticePtr. Two classes are
 * compatible when they point at the same lattice object, or at lattices
 * with identical labels and Gram matrix.
 *
 * Everything here is exact: GMP integers and rationals only.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "blowdown/errors.hpp"

namespace blowdown {

using Integer = mpz_class;
using Rational = mpq_class;
using IntMatrix = std::vector<std::vector<Integer>>;
using RatMatrix = std::vector<std::vector<Rational>>;

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  return c.get_str();
}

// "[[3,1],[1,-1]]"
template <class M>
std::string matrix_to_string(const M& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) out += ",";
      out += to_string(m[i][j]);
    }
    out += "]";
  }
  return out + "]";
}

class IntLattice {
 public:
  IntLattice(std::vector<std::string> labels, IntMatrix gram)
      : labels_(std::move(labels)), gram_(std::move(gram)) {
    const std::size_t r = labels_.size();
    if (gram_.size() != r) {
      throw DomainError("lattice: gram has " + std::to_string(gram_.size()) + " rows, expected " +
                        std::to_string(r));
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (gram_[i].size() != r) {
        throw DomainError("lattice: gram row " + std::to_string(i) + " has wrong length");
      }
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        if (gram_[i][j] != gram_[j][i]) {
          throw DomainError("lattice: gram not symmetric at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
        }
      }
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw DomainError("lattice: empty basis label");
      if (!seen.insert(l).second) throw DomainError("lattice: duplicate basis label '" + l + "'");
    }
  }

  // <d_1> + <d_2> + ... with the given labels.
  static std::shared_ptr<const IntLattice> diagonal(std::vector<std::string> labels,
                                                    const std::vector<Integer>& diag) {
    if (labels.size() != diag.size()) throw DomainError("lattice: label/diagonal length mismatch");
    IntMatrix g(diag.size(), std::vector<Integer>(diag.size(), 0));
    for (std::size_t i = 0; i < diag.size(); ++i) g[i][i] = diag[i];
    return std::make_shared<const IntLattice>(std::move(labels), std::move(g));
  }

  static std::shared_ptr<const IntLattice> make(std::vector<std::string> labels, IntMatrix gram) {
    return std::make_shared<const IntLattice>(std::move(labels), std::move(gram));
  }

  std::size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const IntMatrix& gram() const { return gram_; }
  const Integer& entry(std::size_t i, std::size_t j) const { return gram_[i][j]; }

  std::optional<std::size_t> index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return i;
    }
    return std::nullopt;
  }

  std::size_t require_index(std::string_view label) const {
    auto i = index_of(label);
    if (!i) throw DomainError("lattice: no basis element labelled '" + std::string(label) + "'");
    return *i;
  }

  bool operator==(const IntLattice& o) const { return labels_ == o.labels_ && gram_ == o.gram_; }

 private:
  std::vector<std::string> labels_;
  IntMatrix gram_;
};

using LatticePtr = std::shared_ptr<const IntLattice>;

inline bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

class HomClass {
 public:
  HomClass(LatticePtr lattice, std::vector<Integer> coeffs)
      : lattice_(std::move(lattice)), coeffs_(std::move(coeffs)) {
    if (!lattice_) throw DomainError("class: null lattice");
    if (coeffs_.size() != lattice_->rank()) {
      throw DomainError("class: " + std::to_string(coeffs_.size()) +
                        " coefficients for a lattice of rank " + std::to_string(lattice_->rank()));
    }
  }

  static HomClass zero(const LatticePtr& lattice) {
    return HomClass(lattice, std::vector<Integer>(lattice->rank(), 0));
  }

  static HomClass basis(const LatticePtr& lattice, std::string_view label) {
    HomClass c = zero(lattice);
    c.coeffs_[lattice->require_index(label)] = 1;
    return c;
  }

  // Sparse constructor: of(L, {{"H", 5}, {"E", -3}}).
  static HomClass of(const LatticePtr& lattice,
                     std::initializer_list<std::pair<std::string_view, long>> terms) {
    HomClass c = zero(lattice);
    for (const auto& [label, v] : terms) c.coeffs_[lattice->require_index(label)] += v;
    return c;
  }

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  std::size_t rank() const { return coeffs_.size(); }
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }
  const Integer& coeff(std::string_view label) const {
    return coeffs_[lattice_->require_index(label)];
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& v) { return v == 0; });
  }

  HomClass operator-() const {
    HomClass r = *this;
    for (auto& v : r.coeffs_) v = -v;
    return r;
  }

  HomClass& operator+=(const HomClass& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }

  HomClass& operator-=(const HomClass& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }

  friend HomClass operator+(HomClass a, const HomClass& b) { return a += b; }
  friend HomClass operator-(HomClass a, const HomClass& b) { return a -= b; }

  friend HomClass operator*(const Integer& s, HomClass a) {
    for (auto& v : a.coeffs_) v *= s;
    return a;
  }
  friend HomClass operator*(long s, const HomClass& a) { return Integer(s) * a; }

  bool operator==(const HomClass& o) const {
    return same_lattice(lattice_, o.lattice_) && coeffs_ == o.coeffs_;
  }

  // "5H-3E-E1-E2"; "0" for the zero class.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Integer& c = coeffs_[i];
      if (c == 0) continue;
      if (c < 0) {
        out += "-";
      } else if (!out.empty()) {
        out += "+";
      }
      Integer mag = abs(c);
      if (mag != 1) out += mag.get_str();
      out += lattice_->label(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check_compatible(const HomClass& o) const {
    if (!same_lattice(lattice_, o.lattice_)) throw DomainError("class arithmetic: lattice mismatch");
  }

  LatticePtr lattice_;
  std::vector<Integer> coeffs_;
};

// Sum of basis elements prefix{from}..prefix{to}, inclusive; zero when from > to.
inline HomClass sum_basis(const LatticePtr& lattice, std::string_view prefix, long from, long to) {
  HomClass c = HomClass::zero(lattice);
  for (long i = from; i <= to; ++i) {
    c += HomClass::basis(lattice, std::string(prefix) + std::to_string(i));
  }
  return c;
}

inline Integer pair(const HomClass& a, const HomClass& b) {
  if (!same_lattice(a.lattice(), b.lattice())) throw DomainError("pair: lattice mismatch");
  const IntMatrix& g = a.lattice()->gram();
  Integer acc = 0;
  const std::size_t r = a.rank();
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (b[j] == 0 || g[i][j] == 0) continue;
      row += g[i][j] * b[j];
    }
    acc += a[i] * row;
  }
  return acc;
}

inline Integer square(const HomClass& a) { return pair(a, a); }

inline IntMatrix gram_of(const std::vector<HomClass>& classes) {
  IntMatrix m(classes.size(), std::vector<Integer>(classes.size()));
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i; j < classes.size(); ++j) {
      m[i][j] = pair(classes[i], classes[j]);
      m[j][i] = m[i][j];
    }
  }
  return m;
}

// Copy a class into another lattice by matching labels. Every label with a
// nonzero coefficient must exist in the target, and the pairings among the
// labels involved must agree.
inline HomClass embed(const HomClass& c, const LatticePtr& target) {
  if (same_lattice(c.lattice(), target)) return HomClass(target, c.coeffs());
  const IntLattice& src = *c.lattice();
  std::vector<std::size_t> map(src.rank(), 0);
  std::vector<Integer> out(target->rank(), 0);
  for (std::size_t i = 0; i < src.rank(); ++i) {
    if (c[i] == 0) continue;
    map[i] = target->require_index(src.label(i));
    out[map[i]] += c[i];
  }
  for (std::size_t i = 0; i < src.rank(); ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < src.rank(); ++j) {
      if (c[j] == 0) continue;
      if (src.entry(i, j) != target->entry(map[i], map[j])) {
        throw DomainError("embed: pairing of " + src.label(i) + " and " + src.label(j) +
                          " differs in target lattice");
      }
    }
  }
  return HomClass(target, std::move(out));
}

class RationalClass {
 public:
  RationalClass(LatticePtr lattice, std::vector<Rational> coeffs)
      : lattice_(std::move(lattice)), coeffs_(std::move(coeffs)) {
    if (!lattice_) throw DomainError("rational class: null lattice");
    if (coeffs_.size() != lattice_->rank()) throw DomainError("rational class: wrong length");
    for (auto& v : coeffs_) v.canonicalize();
  }

  explicit RationalClass(const HomClass& c) : lattice_(c.lattice()) {
    coeffs_.reserve(c.rank());
    for (const auto& v : c.coeffs()) coeffs_.emplace_back(v);
  }

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& v) { return v.get_den() == 1; });
  }

  std::optional<HomClass> to_integral() const {
    if (!is_integral()) return std::nullopt;
    std::vector<Integer> out;
    out.reserve(coeffs_.size());
    for (const auto& v : coeffs_) out.push_back(v.get_num());
    return HomClass(lattice_, std::move(out));
  }

  bool operator==(const RationalClass& o) const {
    return same_lattice(lattice_, o.lattice_) && coeffs_ == o.coeffs_;
  }

 private:
  LatticePtr lattice_;
  std::vector<Rational> coeffs_;
};

inline Rational pair(const RationalClass& a, const RationalClass& b) {
  if (!same_lattice(a.lattice(), b.lattice())) throw DomainError("pair: lattice mismatch");
  const IntMatrix& g = a.lattice()->gram();
  Rational acc = 0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      if (g[i][j] == 0) continue;
      acc += a.coeffs()[i] * Rational(g[i][j]) * b.coeffs()[j];
    }
  }
  acc.canonicalize();
  return acc;
}

inline Rational square(const RationalClass& a) { return pair(a, a); }

// sum_i coords[i] * basis[i]
inline RationalClass combine(const std::vector<HomClass>& basis, const std::vector<Rational>& coords) {
  if (basis.empty()) throw DomainError("combine: empty basis");
  if (basis.size() != coords.size()) throw DomainError("combine: length mismatch");
  const LatticePtr& L = basis.front().lattice();
  std::vector<Rational> out(L->rank(), 0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (!same_lattice(basis[k].lattice(), L)) throw DomainError("combine: lattice mismatch");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coords[k] * Rational(basis[k][i]);
  }
  return RationalClass(L, std::move(out));
}

namespace detail {

inline void check_common(const LatticePtr& lattice, const std::vector<HomClass>& classes,
                         const char* op) {
  for (const auto& c : classes) {
    if (!same_lattice(c.lattice(), lattice)) throw DomainError(std::string(op) + ": lattice mismatch");
  }
}

// Row-style Hermite normal form of an integer row basis: positive pivots,
// entries above each pivot reduced into [0, pivot). Zero rows dropped.
inline std::vector<std::vector<Integer>> hermite_rows(std::vector<std::vector<Integer>> rows,
                                                      std::size_t ncols) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
    // Euclid on column `col` among rows pivot_row..end.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[pivot_row][col].get_mpz_t());
        for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= q * rows[pivot_row][c];
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[pivot_row][col] == 0) continue;
    if (rows[pivot_row][col] < 0) {
      for (auto& v : rows[pivot_row]) v = -v;
    }
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[pivot_row][col].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= q * rows[pivot_row][c];
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

}  // namespace detail

/*
 * Saturated integer basis of {x : pair(x, c) = 0 for all c in classes}.
 *
 * Row-reduce [A^T | I] with unimodular integer operations, where the rows of
 * A are the linear forms pair(., c). Rows whose A^T part vanishes carry
 * kernel vectors in their identity part, and because the transformation is
 * unimodular they form a basis of the full integer kernel, not a finite
 * index subgroup. The result is put in Hermite normal form so the basis is
 * canonical.
 */
inline std::vector<HomClass> orthogonal_complement(const LatticePtr& lattice,
                                                   const std::vector<HomClass>& classes) {
  detail::check_common(lattice, classes, "orthogonal_complement");
  const std::size_t r = lattice->rank();
  const std::size_t m = classes.size();
  // forms[k][i] = pair(e_i, classes[k])
  std::vector<std::vector<Integer>> forms(m, std::vector<Integer>(r, 0));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        if (classes[k][j] != 0) forms[k][i] += lattice->entry(i, j) * classes[k][j];
      }
    }
  }
  // Augmented rows: [forms column i | e_i].
  std::vector<std::vector<Integer>> aug(r, std::vector<Integer>(m + r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < m; ++k) aug[i][k] = forms[k][i];
    aug[i][m + i] = 1;
  }
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m && pivot_row < r; ++col) {
    for (;;) {
      std::size_t best = r;
      for (std::size_t row = pivot_row; row < r; ++row) {
        if (aug[row][col] == 0) continue;
        if (best == r || abs(aug[row][col]) < abs(aug[best][col])) best = row;
      }
      if (best == r) break;
      std::swap(aug[pivot_row], aug[best]);
      bool done = true;
      for (std::size_t row = pivot_row + 1; row < r; ++row) {
        if (aug[row][col] == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), aug[row][col].get_mpz_t(), aug[pivot_row][col].get_mpz_t());
        for (std::size_t c = 0; c < m + r; ++c) aug[row][c] -= q * aug[pivot_row][c];
        if (aug[row][col] != 0) done = false;
      }
      if (done) break;
    }
    if (aug[pivot_row][col] != 0) ++pivot_row;
  }
  std::vector<std::vector<Integer>> kernel;
  for (std::size_t row = pivot_row; row < r; ++row) {
    kernel.emplace_back(aug[row].begin() + static_cast<std::ptrdiff_t>(m), aug[row].end());
  }
  kernel = detail::hermite_rows(std::move(kernel), r);
  std::vector<HomClass> out;
  out.reserve(kernel.size());
  for (auto& v : kernel) out.emplace_back(lattice, std::move(v));
  return out;
}

// Rank of the Z-span of the given classes (as coefficient vectors).
inline std::size_t span_rank(const std::vector<HomClass>& classes) {
  if (classes.empty()) return 0;
  std::vector<std::vector<Integer>> rows;
  for (const auto& c : classes) rows.push_back(c.coeffs());
  return detail::hermite_rows(std::move(rows), classes.front().rank()).size();
}

/*
 * Rational coordinates c with sum_i c[i] * basis[i] == target, by exact
 * Gaussian elimination on coefficient vectors. Throws when the basis is
 * dependent or the target is outside its rational span.
 */
inline std::vector<Rational> express_in_basis(const HomClass& target, const std::vector<HomClass>& basis) {
  detail::check_common(target.lattice(), basis, "express_in_basis");
  const std::size_t r = target.rank();
  const std::size_t n = basis.size();
  // Augmented r x (n+1) system.
  RatMatrix a(r, std::vector<Rational>(n + 1, 0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < n; ++k) a[i][k] = basis[k][i];
    a[i][n] = target[i];
  }
  std::vector<std::size_t> pivot_col_of_row;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = row;
    while (p < r && a[p][col] == 0) ++p;
    if (p == r) throw DomainError("express_in_basis: basis vectors are linearly dependent");
    std::swap(a[row], a[p]);
    Rational inv = 1 / a[row][col];
    for (std::size_t c = col; c <= n; ++c) a[row][c] *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t c = col; c <= n; ++c) a[i][c] -= f * a[row][c];
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < r; ++i) {
    if (a[i][n] != 0) {
      throw DomainError("express_in_basis: " + target.to_string() + " is not in the span of the basis");
    }
  }
  std::vector<Rational> coords(n, 0);
  for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) {
    coords[pivot_col_of_row[i]] = a[i][n];
    coords[pivot_col_of_row[i]].canonicalize();
  }
  return coords;
}

inline Integer determinant(IntMatrix m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// True when the two families span the same sublattice of Z^r.
inline bool same_span(const std::vector<HomClass>& a, const std::vector<HomClass>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  std::vector<std::vector<Integer>> ra, rb;
  for (const auto& c : a) ra.push_back(c.coeffs());
  for (const auto& c : b) rb.push_back(c.coeffs());
  const std::size_t r = a.front().rank();
  return detail::hermite_rows(std::move(ra), r) == detail::hermite_rows(std::move(rb), r);
}

struct LinearConstraint {
  HomClass against;
  Integer value;
};

struct SolveOptions {
  bool dedupe_up_to_sign = false;
};

/*
 * All x in the box [-bound, bound]^rank with pair(x, v_i) = k_i for every
 * constraint and square(x) = square_target.
 *
 * Depth-first over coordinates in basis order. Each constraint keeps a
 * running residual, and a branch is cut as soon as some residual can no
 * longer be reached by the still-unassigned coordinates inside the box.
 * Only constraints touching the coordinate just assigned are rechecked.
 * Results come out in lexicographic order of coefficient vectors.
 */
inline std::vector<HomClass> solve_class(const LatticePtr& lattice,
                                         const std::vector<LinearConstraint>& constraints,
                                         const Integer& square_target, const Integer& coeff_bound,
                                         SolveOptions options = {}) {
  if (coeff_bound < 0) throw DomainError("solve_class: coeff_bound must be >= 0");
  const std::size_t r = lattice->rank();
  const std::size_t m = constraints.size();
  std::vector<std::vector<Integer>> w(m, std::vector<Integer>(r, 0));
  std::vector<Integer> residual(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (!same_lattice(constraints[k].against.lattice(), lattice)) {
      throw DomainError("solve_class: constraint class in a different lattice");
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        if (constraints[k].against[j] != 0) w[k][i] += lattice->entry(i, j) * constraints[k].against[j];
      }
    }
    residual[k] = constraints[k].value;
  }
  // reach[k][i] = bound * sum_{j >= i} |w[k][j]|
  std::vector<std::vector<Integer>> reach(m, std::vector<Integer>(r + 1, 0));
  std::vector<std::vector<std::size_t>> touching(r);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = r; i-- > 0;) {
      reach[k][i] = reach[k][i + 1] + coeff_bound * abs(w[k][i]);
      if (w[k][i] != 0) touching[i].push_back(k);
    }
  }
  std::vector<HomClass> out;
  for (std::size_t k = 0; k < m; ++k) {
    if (abs(residual[k]) > reach[k][0]) return out;
  }

  std::vector<Integer> x(r, 0);
  const long b = coeff_bound.get_si();
  if (!coeff_bound.fits_slong_p()) throw DomainError("solve_class: coeff_bound too large to enumerate");

  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (pos == r) {
      HomClass c(lattice, x);
      if (square(c) == square_target) out.push_back(std::move(c));
      return;
    }
    for (long v = -b; v <= b; ++v) {
      x[pos] = v;
      bool ok = true;
      for (std::size_t k : touching[pos]) residual[k] -= w[k][pos] * v;
      for (std::size_t k : touching[pos]) {
        if (abs(residual[k]) > reach[k][pos + 1]) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, pos + 1);
      for (std::size_t k : touching[pos]) residual[k] += w[k][pos] * v;
    }
    x[pos] = 0;
  };
  recurse(recurse, 0);

  if (options.dedupe_up_to_sign) {
    std::vector<HomClass> kept;
    for (auto& c : out) {
      HomClass neg = -c;
      bool dup = std::any_of(kept.begin(), kept.end(), [&](const HomClass& k) { return k == neg; });
      if (!dup) kept.push_back(std::move(c));
    }
    out = std::move(kept);
  }
  return out;
}

}  // namespace blowdown
