#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "metlie/errors.hpp"
#include "metlie/lie_algebra.hpp"
#include "metlie/matrix.hpp"

namespace metlie {

/// Symmetric bilinear form, entry (i, j) = ⟨e_i, e_j⟩. Degenerate forms are
/// ordinary values.
template <class T>
class BasicSymBilinearForm {
 public:
  BasicSymBilinearForm() = default;
  explicit BasicSymBilinearForm(Matrix<T> m) : m_(std::move(m)) {
    if (!m_.is_symmetric()) throw InputError("bilinear form matrix is not symmetric");
  }

  static BasicSymBilinearForm zero(std::size_t n) { return BasicSymBilinearForm(Matrix<T>(n, n)); }
  static BasicSymBilinearForm identity(std::size_t n) { return BasicSymBilinearForm(Matrix<T>::identity(n)); }
  static BasicSymBilinearForm diagonal(const Vec<T>& d) {
    Matrix<T> m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return BasicSymBilinearForm(std::move(m));
  }
  /// Form from upper-triangle entries (i, j, value); the mirror entry is implied.
  static BasicSymBilinearForm from_entries(std::size_t n,
                                           const std::vector<std::tuple<std::size_t, std::size_t, T>>& entries) {
    Matrix<T> m(n, n);
    for (const auto& [i, j, v] : entries) {
      if (i >= n || j >= n) throw InputError("form index out of range");
      m(i, j) = v;
      m(j, i) = v;
    }
    return BasicSymBilinearForm(std::move(m));
  }

  std::size_t dim() const { return m_.rows(); }
  const Matrix<T>& matrix() const { return m_; }
  const T& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  T evaluate(const Vec<T>& x, const Vec<T>& y) const {
    T s(0);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim(); ++j) s += x[i] * m_(i, j) * y[j];
    }
    return s;
  }

  /// Pᵀ B P: the same form written in the basis given by the columns of P.
  BasicSymBilinearForm congruent(const Matrix<T>& p) const { return BasicSymBilinearForm(p.transpose() * m_ * p); }

  /// Restriction to the span of `basis`, in those coordinates.
  BasicSymBilinearForm restricted(const std::vector<Vec<T>>& basis) const {
    Matrix<T> m(basis.size(), basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = 0; b < basis.size(); ++b) m(a, b) = evaluate(basis[a], basis[b]);
    return BasicSymBilinearForm(std::move(m));
  }

  BasicSymBilinearForm& operator+=(const BasicSymBilinearForm& o) {
    m_ += o.m_;
    return *this;
  }
  friend BasicSymBilinearForm operator+(BasicSymBilinearForm a, const BasicSymBilinearForm& b) { return a += b; }
  friend BasicSymBilinearForm operator*(const T& s, const BasicSymBilinearForm& f) {
    return BasicSymBilinearForm(s * f.m_);
  }
  friend bool operator==(const BasicSymBilinearForm& a, const BasicSymBilinearForm& b) { return a.m_ == b.m_; }

  std::string str() const { return m_.str(); }

 private:
  Matrix<T> m_;
};

using SymBilinearForm = BasicSymBilinearForm<Rational>;

/// Sylvester inertia: numbers of positive and negative squares and the
/// dimension of the radical.
struct Signature {
  std::size_t plus = 0;
  std::size_t minus = 0;
  std::size_t null = 0;

  std::size_t dim() const { return plus + minus + null; }
  bool nondegenerate() const { return null == 0; }
  /// One timelike or one spacelike direction; both sign conventions count.
  bool lorentzian() const { return null == 0 && dim() >= 2 && (minus == 1 || plus == 1); }
  friend bool operator==(const Signature&, const Signature&) = default;
  std::string str() const {
    return "(" + std::to_string(plus) + "," + std::to_string(minus) + "," + std::to_string(null) + ")";
  }
};

/// Inertia by symmetric congruence: diagonal pivots where available, 2×2
/// hyperbolic blocks [[0, a], [a, 0]] when every remaining diagonal entry is 0.
template <class T>
Signature signature(const BasicSymBilinearForm<T>& form) {
  Matrix<T> a = form.matrix();
  const std::size_t n = a.rows();
  Signature sig;
  std::vector<std::size_t> live(n);
  for (std::size_t i = 0; i < n; ++i) live[i] = i;

  auto eliminate = [&](const std::vector<std::size_t>& block) {
    // Schur complement of the pivot block on the remaining indices.
    std::vector<std::size_t> rest;
    for (std::size_t i : live)
      if (std::find(block.begin(), block.end(), i) == block.end()) rest.push_back(i);
    const std::size_t b = block.size();
    Matrix<T> p(b, b);
    for (std::size_t x = 0; x < b; ++x)
      for (std::size_t y = 0; y < b; ++y) p(x, y) = a(block[x], block[y]);
    const Matrix<T> pinv = inverse(p);
    Matrix<T> updated = a;
    for (std::size_t i : rest)
      for (std::size_t j : rest) {
        T s(0);
        for (std::size_t x = 0; x < b; ++x)
          for (std::size_t y = 0; y < b; ++y) s += a(i, block[x]) * pinv(x, y) * a(block[y], j);
        updated(i, j) = a(i, j) - s;
      }
    a = std::move(updated);
    live = std::move(rest);
  };

  while (!live.empty()) {
    std::optional<std::size_t> diag;
    for (std::size_t i : live)
      if (!is_zero(a(i, i))) {
        diag = i;
        break;
      }
    if (diag) {
      (sign(a(*diag, *diag)) > 0 ? sig.plus : sig.minus) += 1;
      eliminate({*diag});
      continue;
    }
    std::optional<std::pair<std::size_t, std::size_t>> off;
    for (std::size_t x = 0; x < live.size() && !off; ++x)
      for (std::size_t y = x + 1; y < live.size(); ++y)
        if (!is_zero(a(live[x], live[y]))) {
          off = std::make_pair(live[x], live[y]);
          break;
        }
    if (!off) {
      sig.null += live.size();
      break;
    }
    // A hyperbolic plane contributes one square of each sign.
    sig.plus += 1;
    sig.minus += 1;
    eliminate({off->first, off->second});
  }
  return sig;
}

template <class T>
Subspace<T> radical(const BasicSymBilinearForm<T>& form) {
  return Subspace<T>::span(form.dim(), nullspace(form.matrix()));
}

template <class T>
bool is_nondegenerate(const BasicSymBilinearForm<T>& form) {
  return rank(form.matrix()) == form.dim();
}

/// m^⊥ = {x : ⟨x, y⟩ = 0 for all y ∈ m}.
template <class T>
Subspace<T> orthogonal_complement(const BasicSymBilinearForm<T>& form, const Subspace<T>& m) {
  if (m.ambient_dim() != form.dim()) throw InputError("subspace and form have different dimensions");
  if (m.is_zero()) return Subspace<T>::full(form.dim());
  Matrix<T> rows(m.dim(), form.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    const Vec<T> bm = form.matrix() * m.basis()[r];
    for (std::size_t j = 0; j < form.dim(); ++j) rows(r, j) = bm[j];
  }
  return Subspace<T>::span(form.dim(), nullspace(rows));
}

/// ⟨[e_a, e_b], e_c⟩ + ⟨e_b, [e_a, e_c]⟩ = 0 on all basis triples.
template <class T>
TripleCheck is_ad_invariant(const BasicLieAlgebra<T>& g, const BasicSymBilinearForm<T>& form) {
  const std::size_t n = g.dim();
  if (form.dim() != n) throw InputError("form and algebra have different dimensions");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        T s(0);
        for (std::size_t l = 0; l < n; ++l) {
          s += g.structure(a, b, l) * form(l, c);
          s += g.structure(a, c, l) * form(b, l);
        }
        if (!is_zero(s)) return {false, {a, b, c}};
      }
  return {};
}

namespace detail {

inline std::size_t sym_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  // Row-major upper triangle: (0,0), (0,1), ..., (0,n−1), (1,1), ...
  return i * n - i * (i - 1) / 2 + (j - i);
}

template <class T>
BasicSymBilinearForm<T> form_from_unknowns(std::size_t n, const Vec<T>& u) {
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = u[sym_index(n, i, j)];
      m(j, i) = m(i, j);
    }
  return BasicSymBilinearForm<T>(std::move(m));
}

}  // namespace detail

/// Basis of the space of ad-invariant symmetric forms, from the homogeneous
/// linear system in the n(n+1)/2 unknowns b_ij (i ≤ j).
template <class T>
std::vector<BasicSymBilinearForm<T>> invariant_form_space(const BasicLieAlgebra<T>& g) {
  const std::size_t n = g.dim();
  const std::size_t unknowns = n * (n + 1) / 2;
  Matrix<T> sys(n * n * n, unknowns);
  std::size_t row = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c, ++row)
        for (std::size_t l = 0; l < n; ++l) {
          sys(row, detail::sym_index(n, l, c)) += g.structure(a, b, l);
          sys(row, detail::sym_index(n, b, l)) += g.structure(a, c, l);
        }
  std::vector<BasicSymBilinearForm<T>> basis;
  for (const auto& v : nullspace(sys)) basis.push_back(detail::form_from_unknowns(n, v));
  return basis;
}

template <class T>
BasicSymBilinearForm<T> combine(const std::vector<BasicSymBilinearForm<T>>& forms, const Vec<T>& coeffs,
                                std::size_t n) {
  BasicSymBilinearForm<T> f = BasicSymBilinearForm<T>::zero(n);
  for (std::size_t i = 0; i < forms.size(); ++i)
    if (!is_zero(coeffs[i])) f += coeffs[i] * forms[i];
  return f;
}

/// Identity test for a polynomial of degree ≤ `degree` in each of `vars`
/// variables: it vanishes identically iff it vanishes on {0..degree}^vars.
/// `evaluate` returns true when the polynomial is zero at the point. Returns
/// the first point where it is nonzero, or nullopt.
inline std::optional<std::vector<std::int64_t>> find_nonvanishing_grid_point(
    std::size_t vars, std::size_t degree, const std::function<bool(const std::vector<std::int64_t>&)>& evaluate) {
  std::vector<std::int64_t> pt(vars, 0);
  while (true) {
    if (!evaluate(pt)) return pt;
    std::size_t k = 0;
    while (k < vars && pt[k] == static_cast<std::int64_t>(degree)) pt[k++] = 0;
    if (k == vars) return std::nullopt;
    ++pt[k];
  }
}

template <class T>
struct NondegeneracyResult {
  bool exists = false;
  std::optional<BasicSymBilinearForm<T>> witness;
  std::size_t form_space_dim = 0;
  std::size_t grid_points_checked = 0;  // > 0 only when "no" was certified
};

/// Searches span(invariant_form_space(g)) for a nondegenerate form. A "no" is
/// certified by the determinant polynomial vanishing on the full grid
/// {0..n}^k, which proves it is identically zero.
template <class T>
NondegeneracyResult<T> has_nondegenerate_invariant_form(const BasicLieAlgebra<T>& g) {
  const std::size_t n = g.dim();
  const auto space = invariant_form_space(g);
  const std::size_t k = space.size();
  NondegeneracyResult<T> out;
  out.form_space_dim = k;
  if (k == 0) return out;

  auto try_coeffs = [&](const Vec<T>& c) -> bool {
    auto f = combine(space, c, n);
    if (is_zero(determinant(f.matrix()))) return false;
    out.exists = true;
    out.witness = std::move(f);
    return true;
  };

  // Cheap candidates first: single basis forms, then a few deterministic
  // integer mixes.
  for (std::size_t i = 0; i < k; ++i)
    if (try_coeffs(unit_vector<T>(k, i))) return out;
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (int attempt = 0; attempt < 32; ++attempt) {
    Vec<T> c(k);
    for (std::size_t i = 0; i < k; ++i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      c[i] = T(static_cast<int>((state >> 33) % 7) - 3);
    }
    if (try_coeffs(c)) return out;
  }

  std::size_t checked = 0;
  const auto point = find_nonvanishing_grid_point(k, n, [&](const std::vector<std::int64_t>& pt) {
    ++checked;
    Vec<T> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = T(static_cast<int>(pt[i]));
    return is_zero(determinant(combine(space, c, n).matrix()));
  });
  if (point) {
    Vec<T> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = T(static_cast<int>((*point)[i]));
    try_coeffs(c);
    return out;
  }
  out.grid_points_checked = checked;
  return out;
}

/// K(x, y) = trace(ad x ∘ ad y).
template <class T>
BasicSymBilinearForm<T> killing_form(const BasicLieAlgebra<T>& g) {
  const std::size_t n = g.dim();
  std::vector<Matrix<T>> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(g.ad_basis(i));
  Matrix<T> k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      T tr(0);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) tr += ads[i](a, b) * ads[j](b, a);
      k(i, j) = tr;
      k(j, i) = tr;
    }
  return BasicSymBilinearForm<T>(std::move(k));
}

struct DualityReport {
  bool ok = true;
  std::size_t failing_r = 0;
  std::vector<std::size_t> lower_dims;  // dim C^r, r = 0..dim
  std::vector<std::size_t> upper_dims;  // dim C_r, r = 0..dim
};

/// C^r = (C_r)^⊥ and dim C^r + dim C_r = dim g for r = 0..dim g. Throws
/// InputError unless the form is nondegenerate and ad-invariant.
template <class T>
DualityReport series_duality_check(const BasicLieAlgebra<T>& g, const BasicSymBilinearForm<T>& form) {
  if (!is_nondegenerate(form)) throw InputError("series duality needs a nondegenerate form");
  if (!is_ad_invariant(g, form)) throw InputError("series duality needs an ad-invariant form");
  DualityReport rep;
  for (std::size_t r = 0; r <= g.dim(); ++r) {
    const auto lo = lower_central(g, r);
    const auto up = upper_central(g, r);
    rep.lower_dims.push_back(lo.dim());
    rep.upper_dims.push_back(up.dim());
    if (rep.ok && (!(lo == orthogonal_complement(form, up)) || lo.dim() + up.dim() != g.dim())) {
      rep.ok = false;
      rep.failing_r = r;
    }
  }
  return rep;
}

template <class T>
struct SplitResult {
  bool split = false;
  Subspace<T> ideal;
  Subspace<T> complement;     // j^⊥ when split
  Subspace<T> radical;        // radical of the restriction when not split
};

/// g = j ⊕ j^⊥ as ideals when the restriction of the form to j is
/// nondegenerate. Throws InputError if j is not an ideal.
template <class T>
SplitResult<T> split_nondegenerate_ideal(const BasicLieAlgebra<T>& g, const BasicSymBilinearForm<T>& form,
                                         const Subspace<T>& j) {
  if (!is_ideal(g, j)) throw InputError("subspace is not an ideal");
  SplitResult<T> out;
  out.ideal = j;
  const auto restricted = form.restricted(j.basis());
  if (!is_nondegenerate(restricted)) {
    std::vector<Vec<T>> rad;
    for (const auto& c : nullspace(restricted.matrix())) {
      Vec<T> v(g.dim(), T(0));
      for (std::size_t i = 0; i < c.size(); ++i) v = add(std::move(v), scale(j.basis()[i], c[i]));
      rad.push_back(std::move(v));
    }
    out.radical = Subspace<T>::span(g.dim(), rad);
    return out;
  }
  const auto perp = orthogonal_complement(form, j);
  if (!is_ideal(g, perp) || !j.intersection(perp).is_zero() || j.dim() + perp.dim() != g.dim()) return out;
  // Both pieces must carry invariant restrictions of their own.
  auto restricted_invariant = [&](const Subspace<T>& s) {
    for (const auto& x : s.basis())
      for (const auto& y : s.basis())
        for (const auto& z : s.basis())
          if (!is_zero(form.evaluate(g.bracket(x, y), z) + form.evaluate(y, g.bracket(x, z)))) return false;
    return true;
  };
  if (!restricted_invariant(j) || !restricted_invariant(perp)) return out;
  out.split = true;
  out.complement = perp;
  out.radical = Subspace<T>::zero(g.dim());
  return out;
}

}  // namespace metlie
