#include "metlie/connection.hpp"

#include <functional>
#include <utility>

#include "metlie/catalog.hpp"
#include "metlie/errors.hpp"

namespace metlie {

namespace {

using Q = Rational;
using Mat = Matrix<Q>;

Mat matrix_unit(std::size_t n, std::size_t r, std::size_t c) {
  Mat m(n, n);
  m(r, c) = 1;
  return m;
}

/// Basis of {S : residual(S) = 0} for a residual that is linear in S.
std::vector<Mat> solve_linear_in_matrix(std::size_t n, const std::function<Vec<Q>(const Mat&)>& residual) {
  std::vector<Vec<Q>> columns;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) columns.push_back(residual(matrix_unit(n, r, c)));
  const Mat system = Mat::from_columns(columns, columns.front().size());
  std::vector<Mat> out;
  for (const auto& v : nullspace(system)) {
    Mat s(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) s(r, c) = v[r * n + c];
    out.push_back(std::move(s));
  }
  return out;
}

void append(Vec<Q>& out, const Vec<Q>& v) { out.insert(out.end(), v.begin(), v.end()); }

void append(Vec<Q>& out, const Mat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
}

Vec<Q> skew_residual(const SymBilinearForm& metric, const Mat& s) {
  Vec<Q> out;
  append(out, s.transpose() * metric.matrix() + metric.matrix() * s);
  return out;
}

Vec<Q> derivation_residual(const LieAlgebra& g, const Mat& d) {
  const std::size_t n = g.dim();
  Vec<Q> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec<Q> ei = unit_vector<Q>(n, i), ej = unit_vector<Q>(n, j);
      Vec<Q> r = d * g.bracket(ei, ej);
      r = subtract(std::move(r), g.bracket(d * ei, ej));
      r = subtract(std::move(r), g.bracket(ei, d * ej));
      append(out, r);
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Connection::Connection(LieAlgebra g, SymBilinearForm metric, std::vector<Rational> gamma)
    : g_(std::move(g)), metric_(std::move(metric)), gamma_(std::move(gamma)) {
  if (metric_.dim() != g_.dim() || gamma_.size() != g_.dim() * g_.dim() * g_.dim())
    throw InputError("connection data has inconsistent dimensions");
}

Mat Connection::nabla(std::size_t i) const {
  const std::size_t n = dim();
  Mat m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, j) = gamma(i, j, k);
  return m;
}

Mat Connection::nabla(const Vec<Q>& x) const {
  Mat m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (!is_zero(x[i])) m += x[i] * nabla(i);
  return m;
}

Vec<Q> Connection::apply(const Vec<Q>& x, const Vec<Q>& y) const { return nabla(x) * y; }

CurvatureTensor::CurvatureTensor(std::size_t dim, std::vector<Rational> components, CurvatureConvention convention)
    : n_(dim), r_(std::move(components)), convention_(convention) {
  if (r_.size() != n_ * n_ * n_ * n_) throw InputError("curvature tensor has the wrong size");
}

Mat CurvatureTensor::op(std::size_t i, std::size_t j) const {
  Mat m(n_, n_);
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t l = 0; l < n_; ++l) m(l, k) = (*this)(i, j, k, l);
  return m;
}

Vec<Q> CurvatureTensor::apply(const Vec<Q>& x, const Vec<Q>& y, const Vec<Q>& z) const {
  Vec<Q> out(n_, Q(0));
  for (std::size_t i = 0; i < n_; ++i) {
    if (metlie::is_zero(x[i])) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (metlie::is_zero(y[j])) continue;
      const Q xy = x[i] * y[j];
      for (std::size_t k = 0; k < n_; ++k) {
        if (metlie::is_zero(z[k])) continue;
        const Q f = xy * z[k];
        for (std::size_t l = 0; l < n_; ++l) out[l] += f * (*this)(i, j, k, l);
      }
    }
  }
  return out;
}

bool CurvatureTensor::is_zero() const {
  for (const Q& v : r_)
    if (!metlie::is_zero(v)) return false;
  return true;
}

// ---------------------------------------------------------------------------

Connection levi_civita(const LieAlgebra& g, const SymBilinearForm& metric) {
  const std::size_t n = g.dim();
  if (metric.dim() != n) throw InputError("metric and algebra have different dimensions");
  const auto b_inv = try_inverse(metric.matrix());
  if (!b_inv) throw DegenerateMetricError("metric is degenerate; radical " + radical(metric).str());
  // ⟨[e_i, e_j], e_k⟩
  auto pairing = [&](std::size_t i, std::size_t j, std::size_t k) {
    Q s(0);
    for (std::size_t l = 0; l < n; ++l) s += g.structure(i, j, l) * metric(l, k);
    return s;
  };
  std::vector<Q> gamma(n * n * n, Q(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<Q> rhs(n);
      for (std::size_t k = 0; k < n; ++k) rhs[k] = Q(pairing(i, j, k) - pairing(j, k, i) + pairing(k, i, j)) / 2;
      const Vec<Q> v = (*b_inv) * rhs;
      for (std::size_t k = 0; k < n; ++k) gamma[(i * n + j) * n + k] = v[k];
    }
  return Connection(g, metric, std::move(gamma));
}

TripleCheck is_metric_compatible(const Connection& conn) {
  const std::size_t n = conn.dim();
  for (std::size_t x = 0; x < n; ++x) {
    const Mat nx = conn.nabla(x);
    const Mat s = nx.transpose() * conn.metric().matrix() + conn.metric().matrix() * nx;
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (!is_zero(s(y, z))) return {false, {x, y, z}};
  }
  return {};
}

TripleCheck is_torsion_free(const Connection& conn) {
  const std::size_t n = conn.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!(conn.gamma(i, j, k) - conn.gamma(j, i, k) == conn.algebra().structure(i, j, k))) return {false, {i, j, 0}};
  return {};
}

CurvatureTensor curvature(const Connection& conn, CurvatureConvention convention) {
  const std::size_t n = conn.dim();
  std::vector<Mat> nab;
  for (std::size_t i = 0; i < n; ++i) nab.push_back(conn.nabla(i));
  std::vector<Q> r(n * n * n * n, Q(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat op = nab[i] * nab[j] - nab[j] * nab[i];
      for (std::size_t l = 0; l < n; ++l) {
        const Q& c = conn.algebra().structure(i, j, l);
        if (!is_zero(c)) op -= c * nab[l];
      }
      if (convention == CurvatureConvention::kBracketMinusCommutator) op = -op;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) r[((i * n + j) * n + k) * n + l] = op(l, k);
    }
  return CurvatureTensor(n, std::move(r), convention);
}

TripleCheck first_bianchi(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (!is_zero(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l))) return {false, {i, j, k}};
  return {};
}

TripleCheck matches_bi_invariant_curvature(const LieAlgebra& g, const CurvatureTensor& r) {
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Mat expected = Q(-1, 4) * g.ad(g.bracket_basis(i, j));
      if (r.op(i, j) != expected) return {false, {i, j, 0}};
    }
  return {};
}

Mat ricci_tensor(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  Mat ric(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) ric(x, y) += r(z, x, y, z);
  return ric;
}

Mat ricci_operator(const Connection& conn, CurvatureConvention convention) {
  return inverse(conn.metric().matrix()) * ricci_tensor(curvature(conn, convention));
}

bool is_flat(const Connection& conn) { return curvature(conn).is_zero(); }

std::vector<Q> nabla_R(const Connection& conn, const CurvatureTensor& r) {
  const std::size_t n = conn.dim();
  std::vector<Mat> ops(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ops[i * n + j] = r.op(i, j);
  auto r_of = [&](const Vec<Q>& x, const Vec<Q>& y) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!is_zero(y[j])) m += (x[i] * y[j]) * ops[i * n + j];
    }
    return m;
  };
  std::vector<Q> out(n * n * n * n * n, Q(0));
  for (std::size_t a = 0; a < n; ++a) {
    const Mat na = conn.nabla(a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Mat& rij = ops[i * n + j];
        Mat d = na * rij - rij * na;
        d -= r_of(na.column(i), unit_vector<Q>(n, j));
        d -= r_of(unit_vector<Q>(n, i), na.column(j));
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) out[(((a * n + i) * n + j) * n + k) * n + l] = d(l, k);
      }
  }
  return out;
}

bool nabla_R_vanishes(const Connection& conn, CurvatureConvention convention) {
  for (const Q& v : nabla_R(conn, curvature(conn, convention)))
    if (!is_zero(v)) return false;
  return true;
}

bool is_derivation(const LieAlgebra& g, const Mat& d) { return is_zero_vector(derivation_residual(g, d)); }

SolitonCertificate soliton_solve(const LieAlgebra& g, const SymBilinearForm& metric, CurvatureConvention convention) {
  const std::size_t n = g.dim();
  const Mat rc = ricci_operator(levi_civita(g, metric), convention);
  // Unknowns: c, then D(r, s) at 1 + r·n + s.
  const std::size_t unknowns = 1 + n * n;
  std::vector<Vec<Q>> rows;
  Vec<Q> rhs;
  // Derivation identities, homogeneous.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      const Vec<Q> col = derivation_residual(g, matrix_unit(n, r, s));
      if (rows.empty()) rows.assign(col.size(), Vec<Q>(unknowns, Q(0)));
      for (std::size_t e = 0; e < col.size(); ++e) rows[e][1 + r * n + s] = col[e];
    }
  rhs.assign(rows.size(), Q(0));
  // c·δ_rs + D(r, s) = Rc(r, s).
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      Vec<Q> row(unknowns, Q(0));
      if (r == s) row[0] = 1;
      row[1 + r * n + s] = 1;
      rows.push_back(std::move(row));
      rhs.push_back(rc(r, s));
    }
  const auto sol = solve_linear(Mat::from_rows(rows, unknowns), rhs);
  SolitonCertificate cert;
  cert.derivation = Mat(n, n);
  cert.residual = rc;
  if (!sol.consistent) {
    cert.inconsistent_row = sol.inconsistent_row;
    return cert;
  }
  cert.feasible = true;
  cert.c = sol.particular[0];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) cert.derivation(r, s) = sol.particular[1 + r * n + s];
  cert.residual = rc - cert.c * Mat::identity(n) - cert.derivation;
  cert.solution_space_dim = sol.free_dimension;
  return cert;
}

ReductiveCheck naturally_reductive_check(const LieAlgebra& g, const Subspace<Q>& h, const Subspace<Q>& m,
                                         const SymBilinearForm& form_on_m) {
  const std::size_t n = g.dim();
  if (h.ambient_dim() != n || m.ambient_dim() != n) throw InputError("subspaces live in a different space");
  if (!h.intersection(m).is_zero()) throw InputError("h and m intersect nontrivially");
  if (h.dim() + m.dim() != n) throw InputError("h + m is not the whole algebra");
  if (form_on_m.dim() != m.dim()) throw InputError("form on m has the wrong dimension");
  if (!is_nondegenerate(form_on_m)) throw InputError("form on m is degenerate");

  std::vector<Vec<Q>> cols = h.basis();
  cols.insert(cols.end(), m.basis().begin(), m.basis().end());
  const Mat to_adapted = inverse(Mat::from_columns(cols, n));
  const std::size_t hd = h.dim();
  auto m_part = [&](const Vec<Q>& v) {
    const Vec<Q> c = to_adapted * v;
    return Vec<Q>(c.begin() + static_cast<std::ptrdiff_t>(hd), c.end());
  };

  ReductiveCheck out;
  for (std::size_t a = 0; a < h.dim(); ++a)
    for (std::size_t b = 0; b < m.dim(); ++b)
      if (!m.contains(g.bracket(h.basis()[a], m.basis()[b]))) {
        out.ok = false;
        out.reductive = false;
        out.failing = {a, b, 0};
        out.detail = "[h_" + std::to_string(a) + ", m_" + std::to_string(b) + "] = " +
                     vector_str(g.bracket(h.basis()[a], m.basis()[b])) + " is not in m";
        return out;
      }

  const std::size_t md = m.dim();
  for (std::size_t x = 0; x < md; ++x)
    for (std::size_t y = 0; y < md; ++y)
      for (std::size_t z = 0; z < md; ++z) {
        const Vec<Q> xy = m_part(g.bracket(m.basis()[x], m.basis()[y]));
        const Vec<Q> xz = m_part(g.bracket(m.basis()[x], m.basis()[z]));
        const Q s = form_on_m.evaluate(xy, unit_vector<Q>(md, z)) + form_on_m.evaluate(unit_vector<Q>(md, y), xz);
        if (!is_zero(s)) {
          out.ok = false;
          out.failing = {x, y, z};
          out.detail = "<[x,y]_m, z> + <y, [x,z]_m> = " + to_string(s) + " for m-basis indices (" +
                       std::to_string(x) + ", " + std::to_string(y) + ", " + std::to_string(z) + ")";
          return out;
        }
      }
  return out;
}

AhcCheck ahc_isometry_check(const LieAlgebra& g, const SymBilinearForm& metric, const Mat& a) {
  const std::size_t n = g.dim();
  if (a.rows() != n || a.cols() != n) throw InputError("isometry candidate has the wrong size");
  const Mat pulled = a.transpose() * metric.matrix() * a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(pulled(i, j) == metric(i, j))) return {false, AhcFailure::kMetric, {i, j, 0}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vec<Q> x = unit_vector<Q>(n, i), y = unit_vector<Q>(n, j), z = unit_vector<Q>(n, k);
        const Vec<Q> lhs = a * g.bracket(g.bracket(x, y), z);
        const Vec<Q> rhs = g.bracket(g.bracket(a * x, a * y), a * z);
        if (!equal(lhs, rhs)) return {false, AhcFailure::kDoubleBracket, {i, j, k}};
      }
  return {};
}

TripleCheck curvature_equivariance(const CurvatureTensor& r, const Mat& a) {
  const std::size_t n = r.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vec<Q> lhs = r.apply(a.column(i), a.column(j), a.column(k));
        const Vec<Q> rhs = a * r.apply(unit_vector<Q>(n, i), unit_vector<Q>(n, j), unit_vector<Q>(n, k));
        if (!equal(lhs, rhs)) return {false, {i, j, k}};
      }
  return {};
}

namespace {

Mat j_tilde() {
  Mat j(2, 2);
  j(0, 1) = 1;
  j(1, 0) = 1;
  return j;
}

bool in_required_group(SolvableModel which, const Mat& a) {
  if (a.rows() != 2 || a.cols() != 2) return false;
  if (which == SolvableModel::kG0) return a.transpose() * a == Mat::identity(2);
  return a.transpose() * j_tilde() * a == j_tilde();
}

}  // namespace

Mat isometry_family(SolvableModel which, const FamilyParameters& p) {
  if (p.sign != 1 && p.sign != -1) throw InputError("family sign must be +1 or -1");
  if (p.w.size() != 2) throw InputError("w must have two entries");
  if (!in_required_group(which, p.a_tilde))
    throw InputError(which == SolvableModel::kG0 ? "A~ is not in O(2)" : "A~ is not in O(1,1)");
  const Q s(p.sign);
  const Q norm2 = which == SolvableModel::kG0 ? Q(p.w[0] * p.w[0] + p.w[1] * p.w[1]) : Q(2 * p.w[0] * p.w[1]);
  const Mat m = which == SolvableModel::kG0 ? Mat::identity(2) : j_tilde();
  const Mat wt = Mat::from_rows({p.w}, 2);
  const Mat bottom = wt * m * p.a_tilde;
  Mat a(4, 4);
  a(0, 0) = s;
  a(1, 0) = p.w[0];
  a(2, 0) = p.w[1];
  a(3, 0) = -s * norm2 / 2;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) a(1 + r, 1 + c) = p.a_tilde(r, c);
  a(3, 1) = -s * bottom(0, 0);
  a(3, 2) = -s * bottom(0, 1);
  a(3, 3) = s;
  return a;
}

std::optional<FamilyParameters> extract_family_parameters(SolvableModel which, const Mat& a) {
  if (a.rows() != 4 || a.cols() != 4) return std::nullopt;
  FamilyParameters p;
  if (a(0, 0) == Q(1)) {
    p.sign = 1;
  } else if (a(0, 0) == Q(-1)) {
    p.sign = -1;
  } else {
    return std::nullopt;
  }
  p.w = {a(1, 0), a(2, 0)};
  p.a_tilde = Mat(2, 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) p.a_tilde(r, c) = a(1 + r, 1 + c);
  if (!in_required_group(which, p.a_tilde)) return std::nullopt;
  if (isometry_family(which, p) != a) return std::nullopt;
  return p;
}

FamilyParameters sample_family_parameters(SolvableModel which, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1), pick(0, 3), num(-4, 4), den(1, 4);
  auto small = [&] {
    Q r(num(rng), den(rng));
    r.canonicalize();
    return r;
  };
  FamilyParameters p;
  p.sign = coin(rng) ? 1 : -1;
  p.w = {small(), small()};
  if (which == SolvableModel::kG0) {
    const Q t = small();
    const Q d = 1 + t * t;
    const Q c = (1 - t * t) / d, sn = 2 * t / d;
    p.a_tilde = Mat::from_rows({{c, -sn}, {sn, c}}, 2);
    if (coin(rng)) p.a_tilde = p.a_tilde * Mat::from_rows({{Q(1), Q(0)}, {Q(0), Q(-1)}}, 2);
    return p;
  }
  Q lam = small();
  if (is_zero(lam)) lam = 2;
  const Q inv = 1 / lam;
  switch (pick(rng)) {
    case 0: p.a_tilde = Mat::from_rows({{lam, Q(0)}, {Q(0), inv}}, 2); break;
    case 1: p.a_tilde = Mat::from_rows({{Q(0), lam}, {inv, Q(0)}}, 2); break;
    case 2: p.a_tilde = Mat::from_rows({{Q(-lam), Q(0)}, {Q(0), Q(-inv)}}, 2); break;
    default: p.a_tilde = Mat::from_rows({{Q(0), Q(-lam)}, {Q(-inv), Q(0)}}, 2); break;
  }
  return p;
}

FamilyVerification verify_isometry_family(SolvableModel which, std::size_t samples, std::uint64_t seed) {
  const LieAlgebra g = which == SolvableModel::kG0 ? catalog::oscillator_g0() : catalog::solvable_g1();
  const SymBilinearForm b = which == SolvableModel::kG0 ? catalog::gmatrix0_g0() : catalog::gmatrix0_g1();
  const CurvatureTensor r = curvature(levi_civita(g, b));
  std::mt19937_64 rng(seed);
  FamilyVerification out;
  out.samples = samples;
  for (std::size_t n = 0; n < samples; ++n) {
    const Mat a = isometry_family(which, sample_family_parameters(which, rng));
    const Mat a2 = isometry_family(which, sample_family_parameters(which, rng));
    if (ahc_isometry_check(g, b, a)) ++out.isometry_pass;
    if (extract_family_parameters(which, a * a2)) ++out.product_pass;
    if (curvature_equivariance(r, a)) ++out.curvature_pass;
  }
  return out;
}

std::size_t linearized_isotropy_dim(const LieAlgebra& g, const SymBilinearForm& metric) {
  const std::size_t n = g.dim();
  auto residual = [&](const Mat& s) {
    Vec<Q> out = skew_residual(metric, s);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Vec<Q> x = unit_vector<Q>(n, i), y = unit_vector<Q>(n, j), z = unit_vector<Q>(n, k);
          Vec<Q> r = s * g.bracket(g.bracket(x, y), z);
          r = subtract(std::move(r), g.bracket(g.bracket(s * x, y), z));
          r = subtract(std::move(r), g.bracket(g.bracket(x, s * y), z));
          r = subtract(std::move(r), g.bracket(g.bracket(x, y), s * z));
          append(out, r);
        }
    return out;
  };
  return solve_linear_in_matrix(n, residual).size();
}

std::vector<SymBilinearForm> skew_adjoint_form_space(SolvableModel which, const Q& alpha, const Q& beta,
                                                     const Q& gamma) {
  const LieAlgebra g = which == SolvableModel::kG0 ? catalog::oscillator_g0() : catalog::solvable_g1();
  const Vec<Q> v = {Q(1), alpha, beta, gamma};
  const Mat ad_full = g.ad(v);
  // Restriction of ad(v) to span{e1, e2, e3}; [v, h3] ⊆ h3 because C¹ ⊆ h3.
  Mat a(3, 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) a(r, c) = ad_full(1 + r, 1 + c);
  for (std::size_t c = 1; c < 4; ++c)
    if (!is_zero(ad_full(0, c))) throw InputError("ad(v) does not preserve h3");

  // Unknowns b11, b12, b13, b22, b23, b33.
  std::vector<Vec<Q>> columns;
  std::vector<SymBilinearForm> unit_forms;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) {
      Mat q(3, 3);
      q(i, j) = 1;
      q(j, i) = 1;
      const Mat r = a.transpose() * q + q * a;
      Vec<Q> col;
      append(col, r);
      columns.push_back(std::move(col));
      unit_forms.emplace_back(std::move(q));
    }
  std::vector<SymBilinearForm> out;
  for (const auto& sol : nullspace(Mat::from_columns(columns, 9))) out.push_back(combine(unit_forms, sol, 3));
  return out;
}

CenterDegeneracyCertificate center_nondegeneracy_forced(SolvableModel which, const Q& alpha, const Q& beta,
                                                        const Q& gamma) {
  const auto space = skew_adjoint_form_space(which, alpha, beta, gamma);
  CenterDegeneracyCertificate cert;
  cert.solution_dim = space.size();
  if (space.empty()) return cert;
  Mat constraint(1, space.size());
  for (std::size_t i = 0; i < space.size(); ++i) constraint(0, i) = space[i](2, 2);
  std::vector<SymBilinearForm> sub;
  for (const auto& c : nullspace(constraint)) sub.push_back(combine(space, c, 3));
  cert.b33_zero_dim = sub.size();
  if (sub.empty()) return cert;
  const auto point = find_nonvanishing_grid_point(sub.size(), 3, [&](const std::vector<std::int64_t>& pt) {
    Vec<Q> c(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) c[i] = Q(static_cast<long>(pt[i]));
    return is_zero(determinant(combine(sub, c, 3).matrix()));
  });
  if (point) {
    Vec<Q> c(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) c[i] = Q(static_cast<long>((*point)[i]));
    cert.holds = false;
    cert.counterexample = combine(sub, c, 3);
  }
  return cert;
}

std::vector<Mat> skew_derivations(const LieAlgebra& g, const SymBilinearForm& metric) {
  return solve_linear_in_matrix(g.dim(), [&](const Mat& s) {
    Vec<Q> out = skew_residual(metric, s);
    append(out, derivation_residual(g, s));
    return out;
  });
}

std::vector<Mat> curvature_preserving_skew_maps(const Connection& conn, CurvatureConvention convention) {
  const std::size_t n = conn.dim();
  const CurvatureTensor r = curvature(conn, convention);
  return solve_linear_in_matrix(n, [&](const Mat& s) {
    Vec<Q> out = skew_residual(conn.metric(), s);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Vec<Q> x = unit_vector<Q>(n, i), y = unit_vector<Q>(n, j), z = unit_vector<Q>(n, k);
          Vec<Q> v = s * r.apply(x, y, z);
          v = subtract(std::move(v), r.apply(s * x, y, z));
          v = subtract(std::move(v), r.apply(x, s * y, z));
          v = subtract(std::move(v), r.apply(x, y, s * z));
          append(out, v);
        }
    return out;
  });
}

IsotropyReport isometric_automorphism_isotropy(std::string_view metric_name) {
  if (metric_name != "h0" && metric_name != "h1" && metric_name != "h2")
    throw LookupError("isotropy is available for h0, h1, h2; got '" + std::string(metric_name) + "'");
  const CatalogEntry& h3 = catalog::get("h3");
  const SymBilinearForm metric = catalog::metric(h3, metric_name);
  const Connection conn = levi_civita(h3.algebra, metric);

  IsotropyReport rep;
  rep.metric_name = std::string(metric_name);
  rep.flat = is_flat(conn);
  rep.skew_derivation_dim = skew_derivations(h3.algebra, metric).size();
  if (rep.flat) {
    rep.method = "ambrose-hicks-cartan";
    rep.isotropy_dim = curvature_preserving_skew_maps(conn).size();
    const Signature s = signature(metric);
    rep.group_type = "O(" + std::to_string(std::max(s.plus, s.minus)) + "," + std::to_string(std::min(s.plus, s.minus)) + ")";
  } else {
    rep.method = "isometric automorphisms";
    rep.isotropy_dim = rep.skew_derivation_dim;
    const Signature s = signature(metric.restricted({unit_vector<Q>(3, 0), unit_vector<Q>(3, 1)}));
    rep.group_type = s.minus == 0 || s.plus == 0 ? "O(2)" : "O(1,1)";
  }

  // Finite-order elements expected in the isotropy group.
  std::vector<std::pair<std::string, Mat>> elements;
  {
    Mat refl(3, 3);
    refl(0, 0) = 1;
    refl(1, 1) = -1;
    refl(2, 2) = -1;
    if (metric_name != "h2") elements.emplace_back("diag(1,-1,-1)", refl);
    Mat swap(3, 3);
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    swap(2, 2) = -1;
    if (metric_name == "h2") elements.emplace_back("X1<->X2, X3->-X3", swap);
  }
  const CurvatureTensor r = curvature(conn);
  for (const auto& [label, a] : elements) {
    bool ok = a.transpose() * metric.matrix() * a == metric.matrix();
    if (rep.flat) {
      ok = ok && curvature_equivariance(r, a);
    } else {
      for (std::size_t i = 0; i < 3 && ok; ++i)
        for (std::size_t j = 0; j < 3 && ok; ++j) {
          const Vec<Q> x = unit_vector<Q>(3, i), y = unit_vector<Q>(3, j);
          ok = equal(a * h3.algebra.bracket(x, y), h3.algebra.bracket(a * x, a * y));
        }
    }
    rep.verified_elements.push_back(label + (ok ? ": PASS" : ": FAIL"));
    rep.elements_ok = rep.elements_ok && ok;
  }
  return rep;
}

}  // namespace metlie
