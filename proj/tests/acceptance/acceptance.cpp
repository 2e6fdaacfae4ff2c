// Acceptance run: one PASS/FAIL line per criterion.
//
//   metlie_acceptance          run all twelve
//   metlie_acceptance 3 11     run a selection
//
// Exit status is 0 iff every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "metlie/catalog.hpp"
#include "metlie/connection.hpp"
#include "metlie/forms.hpp"
#include "metlie/group_models.hpp"
#include "metlie/integrator.hpp"
#include "metlie/lie_algebra.hpp"

using namespace metlie;

namespace {

using Q = Rational;
using M = Matrix<Q>;
using S = Subspace<Q>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Accumulates a verdict and a short human-readable trail.
class Verdict {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failures_ += (failures_.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  Outcome done() const {
    Outcome o;
    o.pass = pass_;
    o.detail = notes_;
    if (!failures_.empty()) o.detail += (o.detail.empty() ? "" : " | ") + std::string("failed: ") + failures_;
    return o;
  }

 private:
  bool pass_ = true;
  std::string notes_, failures_;
};

Q q(long n, long d = 1) {
  Q r(n, d);
  r.canonicalize();
  return r;
}

Vec<Q> unit(std::size_t n, std::size_t i) { return unit_vector<Q>(n, i); }

Vec<Q> plus(const Vec<Q>& a, const Vec<Q>& b, const Q& s = Q(1)) {
  Vec<Q> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
  return out;
}

M random_invertible(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  while (true) {
    M p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = q(num(rng), den(rng));
    if (!is_zero(determinant(p))) return p;
  }
}

Vec<Q> random_vec(std::mt19937_64& rng, std::size_t n, int lim, int den) {
  std::uniform_int_distribution<int> nu(-lim, lim), de(1, den);
  Vec<Q> v(n);
  for (auto& x : v) x = q(nu(rng), de(rng));
  return v;
}

std::string sci(double x) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << x;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1 -------------------------------------------------------------------------

Outcome invariant_form_spaces() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();

  const auto s0 = invariant_form_space(catalog::oscillator_g0());
  v.check(s0.size() == 2, "dim for g0");
  for (const auto& f : s0) {
    // b11 = b22 = b03, everything else except b00 zero.
    bool ok = f(1, 1) == f(2, 2) && f(1, 1) == f(0, 3);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        const bool pattern = (i == 0 && j == 0) || (i == 1 && j == 1) || (i == 2 && j == 2) || (i == 0 && j == 3);
        if (!pattern && !is_zero(f(i, j))) ok = false;
      }
    v.check(ok, "g0 pattern");
  }
  const auto s1 = invariant_form_space(catalog::solvable_g1());
  v.check(s1.size() == 2, "dim for g1");
  for (const auto& f : s1) {
    bool ok = f(1, 2) == f(0, 3);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        const bool pattern = (i == 0 && j == 0) || (i == 1 && j == 2) || (i == 0 && j == 3);
        if (!pattern && !is_zero(f(i, j))) ok = false;
      }
    v.check(ok, "g1 pattern");
  }
  const auto h3 = has_nondegenerate_invariant_form(catalog::heisenberg());
  v.check(h3.form_space_dim == 3 && !h3.exists, "h3: dim 3, all degenerate");
  for (const auto& [name, g] : {std::pair{"sl2", catalog::sl2()}, std::pair{"so3", catalog::so3()}}) {
    const auto s = invariant_form_space(g);
    const auto k = killing_form(g);
    bool multiple = s.size() == 1;
    if (multiple) {
      // The single basis form is a nonzero multiple of the Killing form.
      Q ratio;
      bool have = false;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          if (is_zero(k(i, j))) {
            if (!is_zero(s[0](i, j))) multiple = false;
            continue;
          }
          const Q r = s[0](i, j) / k(i, j);
          if (!have) {
            ratio = r;
            have = true;
          } else if (r != ratio) {
            multiple = false;
          }
        }
      multiple = multiple && have && !is_zero(ratio);
    }
    v.check(multiple, std::string(name) + " Killing multiples");
  }
  v.check(!has_nondegenerate_invariant_form(catalog::get("aff").algebra).exists, "aff has no nondegenerate form");
  const double t = seconds_since(t0);
  v.check(t < 1.0, "runtime");
  v.note("g0 2, g1 2, h3 3 degenerate, sl2 1, so3 1, aff none; " + sci(t) + " s");
  return v.done();
}

// 2 -------------------------------------------------------------------------

Outcome classification() {
  Verdict v;
  const std::pair<const char*, Dim4Class> cases[] = {{"r4", Dim4Class::kR4},
                                                     {"r+sl2", Dim4Class::kRPlusSl2},
                                                     {"r+so3", Dim4Class::kRPlusSo3},
                                                     {"g0", Dim4Class::kOscillatorG0},
                                                     {"g1", Dim4Class::kG1}};
  std::mt19937_64 rng(2);
  std::size_t total = 0, good = 0;
  for (const auto& [name, expect] : cases) {
    const LieAlgebra& g = catalog::get(name).algebra;
    v.check(classify_dim4_metric(g) == expect, std::string(name) + " label");
    for (int k = 0; k < 100; ++k) {
      ++total;
      if (classify_dim4_metric(change_of_basis(g, random_invertible(rng, 4))) == expect) ++good;
    }
  }
  v.check(good == total, "basis-change invariance");
  v.note("5 labels correct, " + std::to_string(good) + "/" + std::to_string(total) + " random bases agree");
  return v.done();
}

// 3 -------------------------------------------------------------------------

Outcome bi_invariant_identities() {
  Verdict v;
  for (const auto& [name, g, b] : {std::tuple{"g0", catalog::oscillator_g0(), catalog::gmatrix0_g0()},
                                   std::tuple{"g1", catalog::solvable_g1(), catalog::gmatrix0_g1()}}) {
    const std::string n(name);
    const Connection conn = levi_civita(g, b);
    bool half = true;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
          if (conn.gamma(i, j, k) != g.structure(i, j, k) / 2) half = false;
    v.check(half, n + " nabla = 1/2 bracket");
    const CurvatureTensor r = curvature(conn);
    v.check(static_cast<bool>(matches_bi_invariant_curvature(g, r)), n + " R = -1/4 ad");
    v.check(nabla_R_vanishes(conn), n + " nabla R");
    v.check(static_cast<bool>(first_bianchi(r)), n + " Bianchi");
    const DualityReport d = series_duality_check(g, b);
    v.check(d.ok, n + " series duality");
    for (std::size_t r2 = 0; r2 < d.lower_dims.size(); ++r2)
      v.check(d.lower_dims[r2] + d.upper_dims[r2] == 4, n + " dim sum");
  }
  v.note("g0 and g1 with gmatrix0: connection, curvature, nabla R, Bianchi, duality");
  return v.done();
}

// 4 -------------------------------------------------------------------------

Outcome flatness() {
  Verdict v;
  const LieAlgebra h = catalog::heisenberg();
  v.check(curvature(levi_civita(h, catalog::h3_metric_h0())).is_zero(), "h0 flat");
  v.check(!curvature(levi_civita(h, catalog::h3_metric_h1())).is_zero(), "h1 not flat");
  v.check(!curvature(levi_civita(h, catalog::h3_metric_h2())).is_zero(), "h2 not flat");
  v.note("h0 R = 0, h1 R != 0, h2 R != 0");
  return v.done();
}

// 5 -------------------------------------------------------------------------

std::string diag_str(const M& d) {
  bool diagonal = true;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && !is_zero(d(i, j))) diagonal = false;
  if (!diagonal) return d.str();
  std::string s = "diag(";
  for (std::size_t i = 0; i < d.rows(); ++i) s += (i ? "," : "") + to_string(d(i, i));
  return s + ")";
}

Outcome solitons() {
  Verdict v;
  const LieAlgebra h = catalog::heisenberg();
  const auto s1 = soliton_solve(h, catalog::h3_metric_h1());
  const auto s2 = soliton_solve(h, catalog::h3_metric_h2());
  v.check(s1.feasible && s2.feasible, "feasibility");
  v.check(s1.c == s2.c && s1.derivation == s2.derivation, "same (c, D) for h1 and h2");
  v.check(is_derivation(h, s1.derivation), "D is a derivation");
  const auto flipped = soliton_solve(h, catalog::h3_metric_h1(), CurvatureConvention::kBracketMinusCommutator);
  v.check(flipped.feasible, "feasible in the opposite curvature sign");
  v.note("computed c = " + to_string(s1.c) + ", D = " + diag_str(s1.derivation) +
         " (published: 3/2, diag(-1,-1,-2)); with R(X,Y) = nabla_[X,Y] - [nabla_X, nabla_Y]: c = " +
         to_string(flipped.c) + ", D = " + diag_str(flipped.derivation));
  return v.done();
}

// 6 -------------------------------------------------------------------------

Outcome naturally_reductive() {
  Verdict v;
  const LieAlgebra g = catalog::oscillator_g0();
  const SymBilinearForm b = catalog::gmatrix0_g0();
  v.check(naturally_reductive_check(g, S::zero(4), S::full(4), b).ok, "(g0, 0, g0)");

  const S h = S::span(4, {plus(unit(4, 0), unit(4, 3))});
  const S m = S::span(4, {unit(4, 1), unit(4, 2), plus(unit(4, 0), unit(4, 3), Q(-1))});
  const auto derived_pair = naturally_reductive_check(g, h, m, b.restricted(m.basis()));
  v.check(derived_pair.reductive && derived_pair.ok, "derived pair");

  const S hb = S::span(4, {unit(4, 0)});
  const S mb = S::span(4, {unit(4, 1), plus(unit(4, 2), unit(4, 3)), plus(unit(4, 0), unit(4, 3))});
  const auto broken = naturally_reductive_check(g, hb, mb, SymBilinearForm::identity(3));
  v.check(!broken.ok && !broken.detail.empty(), "broken decomposition rejected with a witness");
  v.note("broken decomposition: " + broken.detail);
  return v.done();
}

// 7 -------------------------------------------------------------------------

Outcome center_forced() {
  Verdict v;
  const Q ab[] = {q(-1), q(-1, 2), q(0), q(1, 2), q(1)};
  const Q gam[] = {q(-1), q(0), q(1)};
  std::size_t points = 0, held = 0;
  for (SolvableModel which : {SolvableModel::kG0, SolvableModel::kG1})
    for (const Q& a : ab)
      for (const Q& bb : ab)
        for (const Q& c : gam) {
          ++points;
          if (center_nondegeneracy_forced(which, a, bb, c).holds) ++held;
        }
  v.check(held == points, "b33 = 0 forces degeneracy at every grid point");
  v.note(std::to_string(held) + "/" + std::to_string(points) + " grid points (g0 and g1)");
  return v.done();
}

// 8 -------------------------------------------------------------------------

Outcome heisenberg_rigidity() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(8);
  std::bernoulli_distribution in_ideal(0.5);
  std::size_t standard = 0, not_h3 = 0, nonstandard = 0;
  for (const LieAlgebra& g : {catalog::oscillator_g0(), catalog::solvable_g1()}) {
    for (int k = 0; k < 10000; ++k) {
      Vec<Q> v1 = random_vec(rng, 4, 3, 3), v2 = random_vec(rng, 4, 3, 3);
      if (in_ideal(rng)) {
        v1[0] = 0;
        v2[0] = 0;
      }
      switch (check_h3_subalgebra(g, v1, v2, g.bracket(v1, v2))) {
        case H3Subalgebra::kStandard: ++standard; break;
        case H3Subalgebra::kNotH3: ++not_h3; break;
        case H3Subalgebra::kNonstandard: ++nonstandard; break;
      }
    }
  }
  const double t = seconds_since(t0);
  v.check(nonstandard == 0, "nonstandard results");
  v.check(t < 5.0, "runtime");
  v.note("20000 trials: " + std::to_string(standard) + " standard, " + std::to_string(not_h3) + " not h3, " +
         std::to_string(nonstandard) + " nonstandard; " + sci(t) + " s");
  return v.done();
}

// 9 -------------------------------------------------------------------------

Outcome isometry_families() {
  Verdict v;
  std::string notes;
  for (const auto& [name, which, g, b] :
       {std::tuple{"G0", SolvableModel::kG0, catalog::oscillator_g0(), catalog::gmatrix0_g0()},
        std::tuple{"G1", SolvableModel::kG1, catalog::solvable_g1(), catalog::gmatrix0_g1()}}) {
    const std::string n(name);
    const FamilyVerification f = verify_isometry_family(which, 200, 9);
    v.check(f.isometry_pass == 200, n + " family members are isometries");
    v.check(f.product_pass == 200, n + " products re-extract");
    v.check(f.curvature_pass >= 50, n + " curvature equivariance");
    const std::size_t dim = linearized_isotropy_dim(g, b);
    v.check(dim == 3, n + " isotropy dim");
    v.note(n + ": " + std::to_string(f.isometry_pass) + "/200 isometries, " + std::to_string(f.product_pass) +
           "/200 products, " + std::to_string(f.curvature_pass) + "/200 curvature, isotropy dim " +
           std::to_string(dim));
  }
  return v.done();
}

// 10 ------------------------------------------------------------------------

Outcome h3_isotropy() {
  Verdict v;
  const LieAlgebra h = catalog::heisenberg();
  const std::size_t d1 = skew_derivations(h, catalog::h3_metric_h1()).size();
  const std::size_t d2 = skew_derivations(h, catalog::h3_metric_h2()).size();
  const std::size_t d0 = skew_derivations(h, catalog::h3_metric_h0()).size();
  v.check(d1 == 1, "h1 skew-derivation dim");
  v.check(d2 == 1, "h2 skew-derivation dim");
  v.check(d0 == 3, "h0 skew-derivation dim (expected 3)");
  const IsotropyReport r0 = isometric_automorphism_isotropy("h0");
  v.note("skew derivations: h1 " + std::to_string(d1) + ", h2 " + std::to_string(d2) + ", h0 " + std::to_string(d0) +
         "; the flat h0 has a " + std::to_string(r0.isotropy_dim) + "-dim " + r0.group_type +
         " isotropy algebra (Ambrose-Hicks-Cartan), but only " + std::to_string(d0) +
         " dimension of it consists of automorphisms");
  return v.done();
}

// 11 ------------------------------------------------------------------------

Outcome geodesics() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5), mag(0.5, 2.0), base(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  double worst = 0.0, drift = 0.0, hom = 0.0, cont = 0.0;
  double min_factor = 1e300, max_factor = 0.0;
  for (Model m : {Model::kG0, Model::kG1}) {
    for (int k = 0; k < 20; ++k) {
      const double a0 = k < 4 ? 0.0 : (coin(rng) ? mag(rng) : -mag(rng));
      const std::array<double, 4> a = {a0, u(rng), u(rng), u(rng)};
      const GroupElement g{m, {base(rng), base(rng), base(rng), base(rng)}};
      const GeodesicSpec spec{m, g, a};
      const ClosedFormReport rep = compare_to_closed_form(spec, 2.0, 1e-3);
      v.check(rep.trajectory.complete, "trajectory complete");
      worst = std::max(worst, rep.max_error);
      drift = std::max(drift, rep.max_energy_drift);
      if (a0 != 0.0) {
        const double e1 = compare_to_closed_form(spec, 2.0, 0.04).max_error;
        const double e2 = compare_to_closed_form(spec, 2.0, 0.02).max_error;
        min_factor = std::min(min_factor, e1 / e2);
        max_factor = std::max(max_factor, e1 / e2);
      }
      // One-parameter subgroup and the a0 -> 0 branch.
      const double s = u(rng), w = u(rng);
      const auto at = [&](double x) { return std::array<double, 4>{x * a[0], x * a[1], x * a[2], x * a[3]}; };
      const GroupElement lhs = exp_map(m, at(s + w)), rhs = multiply(exp_map(m, at(s)), exp_map(m, at(w)));
      for (std::size_t i = 0; i < 4; ++i) hom = std::max(hom, std::abs(lhs.c[i] - rhs.c[i]));
      std::array<double, 4> flat = {0.0, a[1], a[2], a[3]}, near = {1e-8, a[1], a[2], a[3]};
      const GroupElement e0 = exp_map(m, flat), e1 = exp_map(m, near);
      for (std::size_t i = 0; i < 4; ++i) cont = std::max(cont, std::abs(e0.c[i] - e1.c[i]));
    }
  }
  const double t = seconds_since(t0);
  v.check(worst <= 1e-8, "max error");
  v.check(min_factor >= 12.0 && max_factor <= 20.0, "order-4 factor");
  v.check(drift <= 1e-8, "energy drift");
  v.check(hom <= 1e-10, "exp homomorphism");
  v.check(cont <= 1e-6, "a0 -> 0 continuity");
  v.check(t < 10.0, "runtime");
  std::ostringstream os;
  os.precision(3);
  os << "40 geodesics: max error " << sci(worst) << ", halving factor [" << min_factor << ", " << max_factor
     << "], energy drift " << sci(drift) << ", homomorphism " << sci(hom) << ", continuity " << sci(cont) << "; "
     << sci(t) << " s";
  v.note(os.str());
  return v.done();
}

// 12 ------------------------------------------------------------------------

Outcome christoffel_cross_check() {
  Verdict v;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double ode = 0.0, frames = 0.0;
  for (Model m : {Model::kG0, Model::kG1}) {
    const MetricChart ch = chart(m == Model::kG0 ? "g0" : "g1");
    for (int k = 0; k < 100; ++k) {
      const Point p = {u(rng), u(rng), u(rng), u(rng)}, vel = {u(rng), u(rng), u(rng), u(rng)};
      const Point a = geodesic_acceleration(ch, p, vel), b = explicit_acceleration(m, p, vel);
      for (std::size_t i = 0; i < 4; ++i) ode = std::max(ode, std::abs(a[i] - b[i]));
    }
  }
  const std::pair<const char*, SymBilinearForm> forms[] = {{"g0", catalog::gmatrix0_g0()},
                                                           {"g1", catalog::gmatrix0_g1()},
                                                           {"h1", catalog::h3_metric_h1()},
                                                           {"h2", catalog::h3_metric_h2()}};
  for (const auto& [name, form] : forms) {
    const Model m = metric_model(name);
    for (int k = 0; k < 100; ++k) {
      GroupElement p{m, {u(rng), u(rng), u(rng), u(rng)}};
      if (m == Model::kH3) p.c[0] = 0.0;
      const auto g = coordinate_metric(name, p.coords());
      const auto f = frame(m, p);
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j) {
          double s = 0.0;
          for (std::size_t x = 0; x < f[i].size(); ++x)
            for (std::size_t y = 0; y < f[j].size(); ++y) s += f[i][x] * g[x][y] * f[j][y];
          frames = std::max(frames, std::abs(s - form(i, j).get_d()));
        }
    }
  }
  v.check(ode <= 1e-10, "ODE systems");
  v.check(frames <= 1e-12, "frame evaluation");
  v.note("ODE mismatch " + sci(ode) + " over 200 points; frame mismatch " + sci(frames) + " over 400 points");
  return v.done();
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "invariant form spaces", invariant_form_spaces},
      {2, "classification under basis change", classification},
      {3, "bi-invariant identities", bi_invariant_identities},
      {4, "flatness dichotomy on H3", flatness},
      {5, "Ricci solitons", solitons},
      {6, "naturally reductive checks", naturally_reductive},
      {7, "center nondegeneracy grid", center_forced},
      {8, "Heisenberg rigidity", heisenberg_rigidity},
      {9, "isometry families", isometry_families},
      {10, "H3 isotropy dimensions", h3_isotropy},
      {11, "geodesics against closed forms", geodesics},
      {12, "Christoffel cross-check", christoffel_cross_check},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  bool ok = true;
  for (const auto& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    ok = ok && o.pass;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << o.detail
              << "]" << std::endl;
  }
  return ok ? 0 : 1;
}
