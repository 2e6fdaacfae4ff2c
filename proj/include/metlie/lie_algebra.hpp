#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "metlie/errors.hpp"
#include "metlie/matrix.hpp"
#include "metlie/rational.hpp"

namespace metlie {

/// One nonzero structure constant: [e_i, e_j] has `value` as its e_k coefficient.
template <class T>
struct BracketEntry {
  std::size_t i, j, k;
  T value;
};

/// Finite-dimensional Lie algebra given by structure constants
/// [e_i, e_j] = Σ_k c[i][j][k] e_k over an exact field. Immutable.
template <class T>
class BasicLieAlgebra {
 public:
  BasicLieAlgebra() = default;

  /// `constants` has dim³ entries indexed (i·dim + j)·dim + k. Throws
  /// InputError unless c[i][j][k] = −c[j][i][k].
  BasicLieAlgebra(std::size_t dim, std::vector<T> constants, std::string name = {})
      : dim_(dim), c_(std::move(constants)), name_(std::move(name)) {
    if (dim_ == 0) throw InputError("Lie algebra dimension must be positive");
    if (c_.size() != dim_ * dim_ * dim_) throw InputError("structure constant array has the wrong size");
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (!(c_[index(i, j, k)] == -c_[index(j, i, k)]))
            throw InputError("structure constants are not antisymmetric at (" + std::to_string(i) +
                             ", " + std::to_string(j) + ", " + std::to_string(k) + ")");
  }

  /// Builds the algebra from the brackets [e_i, e_j] with i ≠ j; the
  /// antisymmetric partner entries are filled in. Repeated entries add up.
  static BasicLieAlgebra from_brackets(std::size_t dim, const std::vector<BracketEntry<T>>& entries,
                                       std::string name = {}) {
    std::vector<T> c(dim * dim * dim, T(0));
    for (const auto& e : entries) {
      if (e.i >= dim || e.j >= dim || e.k >= dim) throw InputError("bracket index out of range");
      if (e.i == e.j) {
        if (!is_zero(e.value)) throw InputError("[e_i, e_i] must vanish");
        continue;
      }
      c[(e.i * dim + e.j) * dim + e.k] += e.value;
      c[(e.j * dim + e.i) * dim + e.k] -= e.value;
    }
    return BasicLieAlgebra(dim, std::move(c), std::move(name));
  }

  static BasicLieAlgebra abelian(std::size_t dim, std::string name = {}) {
    return BasicLieAlgebra(dim, std::vector<T>(dim * dim * dim, T(0)), std::move(name));
  }

  std::size_t dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const T& structure(std::size_t i, std::size_t j, std::size_t k) const { return c_[index(i, j, k)]; }
  const std::vector<T>& constants() const { return c_; }

  BasicLieAlgebra renamed(std::string name) const {
    BasicLieAlgebra g = *this;
    g.name_ = std::move(name);
    return g;
  }

  /// [e_i, e_j] as a coordinate vector.
  Vec<T> bracket_basis(std::size_t i, std::size_t j) const {
    Vec<T> v(dim_);
    for (std::size_t k = 0; k < dim_; ++k) v[k] = c_[index(i, j, k)];
    return v;
  }

  Vec<T> bracket(const Vec<T>& x, const Vec<T>& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw InputError("bracket operands have the wrong dimension");
    Vec<T> out(dim_, T(0));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (is_zero(y[j])) continue;
        const T xy = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k) out[k] += xy * c_[index(i, j, k)];
      }
    }
    return out;
  }

  /// Matrix of ad(x); column j is [x, e_j].
  Matrix<T> ad(const Vec<T>& x) const {
    if (x.size() != dim_) throw InputError("ad operand has the wrong dimension");
    Matrix<T> m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) m(k, j) += x[i] * c_[index(i, j, k)];
    }
    return m;
  }

  Matrix<T> ad_basis(std::size_t i) const { return ad(unit_vector<T>(dim_, i)); }

  bool is_abelian() const {
    for (const T& v : c_)
      if (!is_zero(v)) return false;
    return true;
  }

  friend bool operator==(const BasicLieAlgebra& a, const BasicLieAlgebra& b) {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * dim_ + j) * dim_ + k; }

  std::size_t dim_ = 0;
  std::vector<T> c_;
  std::string name_;
};

using LieAlgebra = BasicLieAlgebra<Rational>;

/// Direct sum a ⊕ b; basis of a first.
template <class T>
BasicLieAlgebra<T> direct_sum(const BasicLieAlgebra<T>& a, const BasicLieAlgebra<T>& b, std::string name = {}) {
  const std::size_t n = a.dim() + b.dim();
  std::vector<BracketEntry<T>> entries;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (!is_zero(a.structure(i, j, k))) entries.push_back({i, j, k, a.structure(i, j, k)});
  const std::size_t o = a.dim();
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = i + 1; j < b.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k)
        if (!is_zero(b.structure(i, j, k))) entries.push_back({o + i, o + j, o + k, b.structure(i, j, k)});
  return BasicLieAlgebra<T>::from_brackets(n, entries, std::move(name));
}

// ---------------------------------------------------------------------------
// Subspaces.

/// Linear subspace of T^n stored by its reduced row echelon basis, so two
/// subspaces are equal exactly when their bases are equal.
template <class T>
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient) { return Subspace(ambient, {}); }
  static Subspace full(std::size_t ambient) {
    std::vector<Vec<T>> b;
    for (std::size_t i = 0; i < ambient; ++i) b.push_back(unit_vector<T>(ambient, i));
    return Subspace(ambient, std::move(b));
  }
  static Subspace span(std::size_t ambient, const std::vector<Vec<T>>& vectors) {
    for (const auto& v : vectors)
      if (v.size() != ambient) throw InputError("spanning vector has the wrong dimension");
    if (vectors.empty()) return zero(ambient);
    const RowEchelon<T> e = row_reduce(Matrix<T>::from_rows(vectors, ambient));
    std::vector<Vec<T>> basis;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis.push_back(e.reduced.row(r));
    return Subspace(ambient, std::move(basis));
  }
  /// span{e_i : i ∈ indices}.
  static Subspace coordinate(std::size_t ambient, const std::vector<std::size_t>& indices) {
    std::vector<Vec<T>> v;
    for (std::size_t i : indices) v.push_back(unit_vector<T>(ambient, i));
    return span(ambient, v);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec<T>>& basis() const { return basis_; }
  bool is_zero() const { return basis_.empty(); }

  /// Pivot column of each basis row.
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    for (const auto& b : basis_) {
      std::size_t c = 0;
      while (detail::scalar_is_zero(b[c])) ++c;
      p.push_back(c);
    }
    return p;
  }

  /// Canonical remainder of v modulo this subspace (pivot coordinates zeroed).
  Vec<T> reduce(Vec<T> v) const {
    const auto piv = pivots();
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const T f = v[piv[r]];
      if (detail::scalar_is_zero(f)) continue;
      for (std::size_t j = 0; j < ambient_; ++j) v[j] -= f * basis_[r][j];
    }
    return v;
  }

  bool contains(const Vec<T>& v) const { return is_zero_vector(reduce(v)); }
  bool contains(const Subspace& s) const {
    for (const auto& b : s.basis_)
      if (!contains(b)) return false;
    return true;
  }

  Subspace sum(const Subspace& o) const {
    std::vector<Vec<T>> v = basis_;
    v.insert(v.end(), o.basis_.begin(), o.basis_.end());
    return span(ambient_, v);
  }

  Subspace intersection(const Subspace& o) const {
    // Solve Σ a_i b_i − Σ c_j o_j = 0 and map back through the a-part.
    const std::size_t p = basis_.size();
    const std::size_t q = o.basis_.size();
    if (p == 0 || q == 0) return zero(ambient_);
    Matrix<T> m(ambient_, p + q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t k = 0; k < ambient_; ++k) m(k, i) = basis_[i][k];
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t k = 0; k < ambient_; ++k) m(k, p + j) = -o.basis_[j][k];
    std::vector<Vec<T>> vecs;
    for (const auto& n : nullspace(m)) {
      Vec<T> v(ambient_, T(0));
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t k = 0; k < ambient_; ++k) v[k] += n[i] * basis_[i][k];
      vecs.push_back(std::move(v));
    }
    return span(ambient_, vecs);
  }

  /// Coordinates of v in the stored basis; nullopt if v is not in the subspace.
  std::optional<Vec<T>> coordinates(const Vec<T>& v) const {
    if (!contains(v)) return std::nullopt;
    const auto piv = pivots();
    Vec<T> c(basis_.size());
    for (std::size_t r = 0; r < basis_.size(); ++r) c[r] = v[piv[r]];
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_ || a.basis_.size() != b.basis_.size()) return false;
    for (std::size_t i = 0; i < a.basis_.size(); ++i)
      if (!equal(a.basis_[i], b.basis_[i])) return false;
    return true;
  }

  std::string str() const {
    std::string s = "span{";
    for (std::size_t i = 0; i < basis_.size(); ++i) s += (i ? ", " : "") + vector_str(basis_[i]);
    return s + "}";
  }

 private:
  Subspace(std::size_t ambient, std::vector<Vec<T>> basis) : ambient_(ambient), basis_(std::move(basis)) {}

  std::size_t ambient_ = 0;
  std::vector<Vec<T>> basis_;
};

// ---------------------------------------------------------------------------
// Structure checks and series.

/// Outcome of an identity checked on basis triples.
struct TripleCheck {
  bool ok = true;
  std::array<std::size_t, 3> triple{};  // first failing triple when !ok
  explicit operator bool() const { return ok; }
};

/// Jacobi identity on basis triples i < j < k.
template <class T>
TripleCheck jacobi_check(const BasicLieAlgebra<T>& g) {
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Vec<T> ei = unit_vector<T>(n, i), ej = unit_vector<T>(n, j), ek = unit_vector<T>(n, k);
        Vec<T> s = g.bracket(ei, g.bracket(ej, ek));
        s = add(std::move(s), g.bracket(ej, g.bracket(ek, ei)));
        s = add(std::move(s), g.bracket(ek, g.bracket(ei, ej)));
        if (!is_zero_vector(s)) return {false, {i, j, k}};
      }
  return {};
}

/// [a, b] as a subspace.
template <class T>
Subspace<T> bracket_subspaces(const BasicLieAlgebra<T>& g, const Subspace<T>& a, const Subspace<T>& b) {
  std::vector<Vec<T>> v;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) v.push_back(g.bracket(x, y));
  return Subspace<T>::span(g.dim(), v);
}

/// C^r(g): C^0 = g, C^r = [g, C^{r−1}].
template <class T>
Subspace<T> lower_central(const BasicLieAlgebra<T>& g, std::size_t r) {
  const auto full = Subspace<T>::full(g.dim());
  Subspace<T> s = full;
  for (std::size_t step = 0; step < r; ++step) {
    Subspace<T> next = bracket_subspaces(g, full, s);
    if (next == s) break;
    s = std::move(next);
  }
  return s;
}

/// C_r(g): C_0 = 0, C_r = {X : [X, g] ⊆ C_{r−1}}.
template <class T>
Subspace<T> upper_central(const BasicLieAlgebra<T>& g, std::size_t r) {
  const std::size_t n = g.dim();
  Subspace<T> s = Subspace<T>::zero(n);
  for (std::size_t step = 0; step < r; ++step) {
    // Rows: coefficient of X_i in reduce([X, e_j])_k, stacked over (j, k).
    Matrix<T> m(n * n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Vec<T> rem = s.reduce(g.bracket_basis(i, j));
        for (std::size_t k = 0; k < n; ++k) m(j * n + k, i) = rem[k];
      }
    Subspace<T> next = Subspace<T>::span(n, nullspace(m));
    if (next == s) break;
    s = std::move(next);
  }
  return s;
}

template <class T>
Subspace<T> center(const BasicLieAlgebra<T>& g) {
  return upper_central(g, 1);
}

template <class T>
Subspace<T> commutator(const BasicLieAlgebra<T>& g) {
  return lower_central(g, 1);
}

/// Derived series g^(0) = g, g^(r) = [g^(r−1), g^(r−1)].
template <class T>
Subspace<T> derived(const BasicLieAlgebra<T>& g, std::size_t r) {
  Subspace<T> s = Subspace<T>::full(g.dim());
  for (std::size_t step = 0; step < r && !s.is_zero(); ++step) s = bracket_subspaces(g, s, s);
  return s;
}

template <class T>
bool is_solvable(const BasicLieAlgebra<T>& g) {
  return derived(g, g.dim()).is_zero();
}

template <class T>
bool is_nilpotent(const BasicLieAlgebra<T>& g) {
  return lower_central(g, g.dim()).is_zero();
}

/// [g, s] ⊆ s.
template <class T>
bool is_ideal(const BasicLieAlgebra<T>& g, const Subspace<T>& s) {
  if (s.ambient_dim() != g.dim()) throw InputError("subspace lives in a different space");
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (const auto& b : s.basis())
      if (!s.contains(g.bracket(unit_vector<T>(g.dim(), i), b))) return false;
  return true;
}

template <class T>
bool is_subalgebra(const BasicLieAlgebra<T>& g, const Subspace<T>& s) {
  for (const auto& a : s.basis())
    for (const auto& b : s.basis())
      if (!s.contains(g.bracket(a, b))) return false;
  return true;
}

/// Structure constants in the basis f_j = Σ_i P(i, j) e_i, i.e.
/// new_bracket(u, v) = P⁻¹[Pu, Pv]. Throws InputError for singular P.
template <class T>
BasicLieAlgebra<T> change_of_basis(const BasicLieAlgebra<T>& g, const Matrix<T>& p) {
  const std::size_t n = g.dim();
  if (p.rows() != n || p.cols() != n) throw InputError("basis change matrix has the wrong size");
  const auto p_inv = try_inverse(p);
  if (!p_inv) throw InputError("basis change matrix is singular");
  std::vector<T> c(n * n * n, T(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Vec<T> nb = (*p_inv) * g.bracket(p.column(a), p.column(b));
      for (std::size_t k = 0; k < n; ++k) c[(a * n + b) * n + k] = nb[k];
    }
  return BasicLieAlgebra<T>(n, std::move(c), g.name());
}

enum class H3Subalgebra { kNotH3, kStandard, kNonstandard };

inline const char* to_string(H3Subalgebra h) {
  switch (h) {
    case H3Subalgebra::kNotH3: return "not_h3";
    case H3Subalgebra::kStandard: return "standard";
    case H3Subalgebra::kNonstandard: return "nonstandard";
  }
  return "?";
}

/// Whether (v1, v2, v3) spans a Heisenberg subalgebra with [v1, v2] = v3
/// central in it, and whether that copy is span{e1, e2, e3}.
template <class T>
H3Subalgebra check_h3_subalgebra(const BasicLieAlgebra<T>& g, const Vec<T>& v1, const Vec<T>& v2,
                                 const Vec<T>& v3) {
  const std::size_t n = g.dim();
  if (n != 4) throw InputError("check_h3_subalgebra expects a 4-dimensional algebra");
  const auto s = Subspace<T>::span(n, {v1, v2, v3});
  if (s.dim() != 3) return H3Subalgebra::kNotH3;
  if (!equal(g.bracket(v1, v2), v3)) return H3Subalgebra::kNotH3;
  if (!is_zero_vector(g.bracket(v1, v3)) || !is_zero_vector(g.bracket(v2, v3))) return H3Subalgebra::kNotH3;
  return s == Subspace<T>::coordinate(n, {1, 2, 3}) ? H3Subalgebra::kStandard : H3Subalgebra::kNonstandard;
}

}  // namespace metlie
