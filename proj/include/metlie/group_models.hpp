#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "metlie/matrix.hpp"
#include "metlie/rational.hpp"

namespace metlie {

enum class Model { kH3, kG0, kG1 };

const char* to_string(Model m);
/// "H3", "G0", "G1" (case-insensitive). Throws LookupError.
Model parse_model(std::string_view name);

/// Number of chart coordinates: 3 for H3 (x, y, z), 4 otherwise (t, x, y, z).
std::size_t chart_dim(Model m);

/// Point of H3, G0 or G1. `c` is always (t, x, y, z); t stays 0 for H3.
struct GroupElement {
  Model model = Model::kG0;
  std::array<double, 4> c{};

  double t() const { return c[0]; }
  double x() const { return c[1]; }
  double y() const { return c[2]; }
  double z() const { return c[3]; }
  /// Chart coordinates, dropping t for H3.
  std::vector<double> coords() const;
  static GroupElement from_coords(Model m, const std::vector<double>& p);
};

using Mat2d = std::array<std::array<double, 2>, 2>;
using Mat3d = std::array<std::array<double, 3>, 3>;
using Mat4d = std::array<std::array<double, 4>, 4>;

GroupElement identity(Model m);
/// (t,v,z)·(t',v',z') = (t+t', v + R(t)v', z + z' + ½ vᵀJR(t)v'), J = [[0,1],[-1,0]].
/// Throws InputError if the models differ.
GroupElement multiply(const GroupElement& a, const GroupElement& b);
/// (−t, −R(−t)v, −z).
GroupElement inverse(const GroupElement& g);

/// R_0(t) rotation for G0, diag(e^t, e^−t) for G1, identity for H3.
Mat2d rotation(Model m, double t);
/// ρ(t) = diag(R(t), 1) acting on (v, z).
Mat3d rho(Model m, double t);
/// Matrix of Ad(t, v, z) on span{e0..e3} (independent of z). G0 and G1 only.
Mat4d ad_matrix(Model m, double t, double x, double y);

// Exact arithmetic at rational points: R(t) is supplied as a rational
// matrix (a rational point on the circle for G0, diag(λ, 1/λ) for G1).

/// (cos, sin) = ((1−s²)/(1+s²), 2s/(1+s²)) as the rotation matrix.
Matrix<Rational> circle_rotation(const Rational& s);
/// diag(λ, 1/λ), standing for R_1(log λ). Throws InputError if λ ≤ 0.
Matrix<Rational> boost(const Rational& lambda);

/// Group element with t replaced by its exact rotation block R(t).
struct ExactElement {
  Model model = Model::kH3;
  Matrix<Rational> r = Matrix<Rational>::identity(2);
  Vec<Rational> v = {Rational(0), Rational(0)};
  Rational z;

  friend bool operator==(const ExactElement& a, const ExactElement& b) {
    return a.model == b.model && a.r == b.r && a.v == b.v && a.z == b.z;
  }
};

ExactElement exact_multiply(const ExactElement& a, const ExactElement& b);
ExactElement exact_inverse(const ExactElement& g);
/// Ad matrix at an exact element of G0 or G1.
Matrix<Rational> ad_matrix_exact(const ExactElement& g);

/// Left-invariant frame at p as coordinate vectors: X0..X3 for G0/G1
/// (components in t, x, y, z), X1..X3 for H3 (components in x, y, z).
std::vector<std::vector<double>> frame(Model m, const GroupElement& p);
/// ∂(X_k)^a/∂p^b as jac[k][a][b], differentiated analytically.
std::vector<std::vector<std::vector<double>>> frame_jacobian(Model m, const GroupElement& p);
/// Coordinate components of [X_i, X_j] at p.
std::vector<double> frame_bracket(Model m, const GroupElement& p, std::size_t i, std::size_t j);

/// Chart metrics "g0", "g1" (on G0, G1) and "h1", "h2" (on H3).
Model metric_model(std::string_view metric);
/// Matrix of the coordinate metric at p. A displayed coefficient of dx dy is
/// the entry g_xy.
std::vector<std::vector<double>> coordinate_metric(std::string_view metric, const std::vector<double>& p);
/// ∂g_ij/∂p^k as d[k][i][j].
std::vector<std::vector<std::vector<double>>> coordinate_metric_partials(std::string_view metric,
                                                                         const std::vector<double>& p);

/// exp(Σ a_i X_i) for frame coefficients a (length 4; a0 ignored for H3).
GroupElement exp_map(Model m, const std::array<double, 4>& a);

struct GeodesicSpec {
  Model model = Model::kG0;
  GroupElement base = identity(Model::kG0);
  std::array<double, 4> a{};
};

/// γ(s) = base · exp(s·a). G0 and G1 only.
GroupElement geodesic_closed_form(const GeodesicSpec& spec, double s);
/// γ'(s) in chart coordinates.
std::vector<double> geodesic_closed_form_velocity(const GeodesicSpec& spec, double s);

}  // namespace metlie
