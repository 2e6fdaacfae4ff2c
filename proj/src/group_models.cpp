#include "metlie/group_models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "metlie/errors.hpp"

namespace metlie {

namespace {

using Q = Rational;
using Tensor3 = std::vector<std::vector<std::vector<double>>>;

Tensor3 zeros3(std::size_t a, std::size_t b, std::size_t c) {
  return Tensor3(a, std::vector<std::vector<double>>(b, std::vector<double>(c, 0.0)));
}

void set_sym(std::vector<std::vector<double>>& g, std::size_t i, std::size_t j, double v) {
  g[i][j] = v;
  g[j][i] = v;
}

void require_group(Model m, const char* what) {
  if (m == Model::kH3) throw InputError(std::string(what) + " is defined for G0 and G1 only");
}

}  // namespace

const char* to_string(Model m) {
  switch (m) {
    case Model::kH3: return "H3";
    case Model::kG0: return "G0";
    case Model::kG1: return "G1";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (up == "H3") return Model::kH3;
  if (up == "G0") return Model::kG0;
  if (up == "G1") return Model::kG1;
  throw LookupError("unknown group model '" + std::string(name) + "'; valid models: H3, G0, G1");
}

std::size_t chart_dim(Model m) { return m == Model::kH3 ? 3 : 4; }

std::vector<double> GroupElement::coords() const {
  if (model == Model::kH3) return {c[1], c[2], c[3]};
  return {c[0], c[1], c[2], c[3]};
}

GroupElement GroupElement::from_coords(Model m, const std::vector<double>& p) {
  if (p.size() != chart_dim(m)) throw InputError("point has the wrong number of coordinates");
  GroupElement g{m, {}};
  if (m == Model::kH3) {
    g.c = {0.0, p[0], p[1], p[2]};
  } else {
    g.c = {p[0], p[1], p[2], p[3]};
  }
  return g;
}

GroupElement identity(Model m) { return GroupElement{m, {0.0, 0.0, 0.0, 0.0}}; }

Mat2d rotation(Model m, double t) {
  switch (m) {
    case Model::kG0: return {{{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}}};
    case Model::kG1: return {{{std::exp(t), 0.0}, {0.0, std::exp(-t)}}};
    case Model::kH3: break;
  }
  return {{{1.0, 0.0}, {0.0, 1.0}}};
}

Mat3d rho(Model m, double t) {
  const Mat2d r = rotation(m, t);
  return {{{r[0][0], r[0][1], 0.0}, {r[1][0], r[1][1], 0.0}, {0.0, 0.0, 1.0}}};
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (a.model != b.model) throw InputError("cannot multiply elements of different groups");
  const Mat2d r = rotation(a.model, a.t());
  const double rv0 = r[0][0] * b.x() + r[0][1] * b.y();
  const double rv1 = r[1][0] * b.x() + r[1][1] * b.y();
  // vᵀ J w with J = [[0,1],[-1,0]].
  const double twist = a.x() * rv1 - a.y() * rv0;
  GroupElement out{a.model, {a.t() + b.t(), a.x() + rv0, a.y() + rv1, a.z() + b.z() + 0.5 * twist}};
  if (a.model == Model::kH3) out.c[0] = 0.0;
  return out;
}

GroupElement inverse(const GroupElement& g) {
  const Mat2d r = rotation(g.model, -g.t());
  return GroupElement{g.model,
                      {-g.t(), -(r[0][0] * g.x() + r[0][1] * g.y()), -(r[1][0] * g.x() + r[1][1] * g.y()), -g.z()}};
}

Mat4d ad_matrix(Model m, double t, double x, double y) {
  require_group(m, "Ad");
  const Mat2d r = rotation(m, t);
  Mat4d a{};
  a[0][0] = 1.0;
  a[3][3] = 1.0;
  double w0, w1, norm2;
  Mat2d mr{};  // M·R with M = I (G0) or J̃ (G1)
  if (m == Model::kG0) {
    w0 = y;
    w1 = -x;
    norm2 = w0 * w0 + w1 * w1;
    mr = r;
  } else {
    w0 = -x;
    w1 = y;
    norm2 = 2.0 * w0 * w1;
    mr = {{{r[1][0], r[1][1]}, {r[0][0], r[0][1]}}};
  }
  a[1][0] = w0;
  a[2][0] = w1;
  a[3][0] = -0.5 * norm2;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) a[1 + i][1 + j] = r[i][j];
  a[3][1] = -(w0 * mr[0][0] + w1 * mr[1][0]);
  a[3][2] = -(w0 * mr[0][1] + w1 * mr[1][1]);
  return a;
}

Matrix<Q> circle_rotation(const Q& s) {
  const Q den = 1 + s * s;
  const Q c = (1 - s * s) / den, sn = 2 * s / den;
  return Matrix<Q>::from_rows({{c, -sn}, {sn, c}}, 2);
}

Matrix<Q> boost(const Q& lambda) {
  if (sign(lambda) <= 0) throw InputError("boost parameter must be positive");
  return Matrix<Q>::from_rows({{lambda, Q(0)}, {Q(0), Q(1 / lambda)}}, 2);
}

ExactElement exact_multiply(const ExactElement& a, const ExactElement& b) {
  if (a.model != b.model) throw InputError("cannot multiply elements of different groups");
  const Vec<Q> rv = a.r * b.v;
  ExactElement out;
  out.model = a.model;
  out.r = a.r * b.r;
  out.v = {a.v[0] + rv[0], a.v[1] + rv[1]};
  out.z = a.z + b.z + Q(a.v[0] * rv[1] - a.v[1] * rv[0]) / 2;
  return out;
}

ExactElement exact_inverse(const ExactElement& g) {
  ExactElement out;
  out.model = g.model;
  out.r = inverse(g.r);
  const Vec<Q> rv = out.r * g.v;
  out.v = {-rv[0], -rv[1]};
  out.z = -g.z;
  return out;
}

Matrix<Q> ad_matrix_exact(const ExactElement& g) {
  require_group(g.model, "Ad");
  const Q& x = g.v[0];
  const Q& y = g.v[1];
  Vec<Q> w;
  Q norm2;
  Matrix<Q> mr = g.r;
  if (g.model == Model::kG0) {
    w = {y, -x};
    norm2 = w[0] * w[0] + w[1] * w[1];
  } else {
    w = {-x, y};
    norm2 = 2 * w[0] * w[1];
    mr = Matrix<Q>::from_rows({g.r.row(1), g.r.row(0)}, 2);
  }
  Matrix<Q> a(4, 4);
  a(0, 0) = 1;
  a(3, 3) = 1;
  a(1, 0) = w[0];
  a(2, 0) = w[1];
  a(3, 0) = -norm2 / 2;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) a(1 + i, 1 + j) = g.r(i, j);
  a(3, 1) = -(w[0] * mr(0, 0) + w[1] * mr(1, 0));
  a(3, 2) = -(w[0] * mr(0, 1) + w[1] * mr(1, 1));
  return a;
}

std::vector<std::vector<double>> frame(Model m, const GroupElement& p) {
  const double t = p.t(), x = p.x(), y = p.y();
  if (m == Model::kH3) return {{1.0, 0.0, -0.5 * y}, {0.0, 1.0, 0.5 * x}, {0.0, 0.0, 1.0}};
  std::vector<std::vector<double>> f(4, std::vector<double>(4, 0.0));
  f[0][0] = 1.0;
  f[3][3] = 1.0;
  if (m == Model::kG0) {
    const double c = std::cos(t), s = std::sin(t);
    f[1] = {0.0, c, s, 0.5 * (x * s - y * c)};
    f[2] = {0.0, -s, c, 0.5 * (x * c + y * s)};
  } else {
    const double ep = std::exp(t), em = std::exp(-t);
    f[1] = {0.0, ep, 0.0, -0.5 * y * ep};
    f[2] = {0.0, 0.0, em, 0.5 * x * em};
  }
  return f;
}

std::vector<std::vector<std::vector<double>>> frame_jacobian(Model m, const GroupElement& p) {
  const double t = p.t(), x = p.x(), y = p.y();
  if (m == Model::kH3) {
    Tensor3 j = zeros3(3, 3, 3);
    j[0][2][1] = -0.5;
    j[1][2][0] = 0.5;
    return j;
  }
  Tensor3 j = zeros3(4, 4, 4);
  if (m == Model::kG0) {
    const double c = std::cos(t), s = std::sin(t);
    j[1][1][0] = -s;
    j[1][2][0] = c;
    j[1][3][0] = 0.5 * (x * c + y * s);
    j[1][3][1] = 0.5 * s;
    j[1][3][2] = -0.5 * c;
    j[2][1][0] = -c;
    j[2][2][0] = -s;
    j[2][3][0] = 0.5 * (-x * s + y * c);
    j[2][3][1] = 0.5 * c;
    j[2][3][2] = 0.5 * s;
  } else {
    const double ep = std::exp(t), em = std::exp(-t);
    j[1][1][0] = ep;
    j[1][3][0] = -0.5 * y * ep;
    j[1][3][2] = -0.5 * ep;
    j[2][2][0] = -em;
    j[2][3][0] = -0.5 * x * em;
    j[2][3][1] = 0.5 * em;
  }
  return j;
}

std::vector<double> frame_bracket(Model m, const GroupElement& p, std::size_t i, std::size_t j) {
  const auto f = frame(m, p);
  const auto jac = frame_jacobian(m, p);
  const std::size_t n = chart_dim(m);
  if (i >= f.size() || j >= f.size()) throw InputError("frame index out of range");
  std::vector<double> out(n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out[a] += f[i][b] * jac[j][a][b] - f[j][b] * jac[i][a][b];
  return out;
}

Model metric_model(std::string_view metric) {
  if (metric == "g0") return Model::kG0;
  if (metric == "g1") return Model::kG1;
  if (metric == "h1" || metric == "h2") return Model::kH3;
  throw LookupError("unknown coordinate metric '" + std::string(metric) + "'; valid: g0, g1, h1, h2");
}

std::vector<std::vector<double>> coordinate_metric(std::string_view metric, const std::vector<double>& p) {
  const Model m = metric_model(metric);
  if (p.size() != chart_dim(m)) throw InputError("point has the wrong number of coordinates");
  if (m != Model::kH3) {
    const double x = p[1], y = p[2];
    std::vector<std::vector<double>> g(4, std::vector<double>(4, 0.0));
    set_sym(g, 0, 3, 1.0);
    set_sym(g, 0, 1, 0.5 * y);
    set_sym(g, 0, 2, -0.5 * x);
    if (m == Model::kG0) {
      g[1][1] = 1.0;
      g[2][2] = 1.0;
    } else {
      set_sym(g, 1, 2, 1.0);
    }
    return g;
  }
  const double x = p[0], y = p[1];
  std::vector<std::vector<double>> g(3, std::vector<double>(3, 0.0));
  if (metric == "h1") {
    g[0][0] = 1.0 - y * y / 4.0;
    g[1][1] = 1.0 - x * x / 4.0;
    g[2][2] = -1.0;
    set_sym(g, 0, 1, x * y / 4.0);
    set_sym(g, 0, 2, -y / 2.0);
    set_sym(g, 1, 2, x / 2.0);
  } else {
    g[0][0] = y * y / 4.0;
    g[1][1] = x * x / 4.0;
    g[2][2] = 1.0;
    set_sym(g, 0, 1, 1.0 - x * y / 4.0);
    set_sym(g, 0, 2, y / 2.0);
    set_sym(g, 1, 2, -x / 2.0);
  }
  return g;
}

std::vector<std::vector<std::vector<double>>> coordinate_metric_partials(std::string_view metric,
                                                                         const std::vector<double>& p) {
  const Model m = metric_model(metric);
  if (p.size() != chart_dim(m)) throw InputError("point has the wrong number of coordinates");
  if (m != Model::kH3) {
    Tensor3 d = zeros3(4, 4, 4);
    set_sym(d[2], 0, 1, 0.5);
    set_sym(d[1], 0, 2, -0.5);
    return d;
  }
  const double x = p[0], y = p[1];
  Tensor3 d = zeros3(3, 3, 3);
  const double s = metric == "h1" ? 1.0 : -1.0;
  // h2 differs from h1 in sign on every non-constant coefficient.
  d[1][0][0] = -s * y / 2.0;
  d[0][1][1] = -s * x / 2.0;
  set_sym(d[0], 0, 1, s * y / 4.0);
  set_sym(d[1], 0, 1, s * x / 4.0);
  set_sym(d[1], 0, 2, -s * 0.5);
  set_sym(d[0], 1, 2, s * 0.5);
  return d;
}

GroupElement exp_map(Model m, const std::array<double, 4>& a) {
  const double a0 = a[0], a1 = a[1], a2 = a[2], a3 = a[3];
  if (m == Model::kH3) return GroupElement{m, {0.0, a1, a2, a3}};
  if (a0 == 0.0) return GroupElement{m, {0.0, a1, a2, a3}};
  if (m == Model::kG0) {
    // (1/a0)(R0(a0)J − J)(a1, a2)
    const double c = std::cos(a0), s = std::sin(a0);
    const double x = (a1 * s + a2 * (c - 1.0)) / a0;
    const double y = (a2 * s - a1 * (c - 1.0)) / a0;
    const double z = a3 + 0.5 * (a1 * a1 + a2 * a2) / a0 * (1.0 - s / a0);
    return GroupElement{m, {a0, x, y, z}};
  }
  const double x = a1 / a0 * std::expm1(a0);
  const double y = -a2 / a0 * std::expm1(-a0);
  const double z = a1 * a2 / a0 + a3 - a1 * a2 / (a0 * a0) * std::sinh(a0);
  return GroupElement{m, {a0, x, y, z}};
}

GroupElement geodesic_closed_form(const GeodesicSpec& spec, double s) {
  require_group(spec.model, "closed-form geodesics");
  if (spec.base.model != spec.model) throw InputError("base point lies in a different group");
  const std::array<double, 4> sa = {s * spec.a[0], s * spec.a[1], s * spec.a[2], s * spec.a[3]};
  return multiply(spec.base, exp_map(spec.model, sa));
}

std::vector<double> geodesic_closed_form_velocity(const GeodesicSpec& spec, double s) {
  const auto f = frame(spec.model, geodesic_closed_form(spec, s));
  std::vector<double> v(4, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t a = 0; a < 4; ++a) v[a] += spec.a[i] * f[i][a];
  return v;
}

}  // namespace metlie
