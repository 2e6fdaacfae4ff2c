#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "metlie/catalog.hpp"
#include "metlie/connection.hpp"
#include "metlie/errors.hpp"

using namespace metlie;
using metlie::testing::e;
using metlie::testing::q;

namespace {

using M = Matrix<Rational>;
using S = Subspace<Rational>;

M diag(std::initializer_list<Rational> d) {
  M m(d.size(), d.size());
  std::size_t i = 0;
  for (const auto& x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

M m2(Rational a, Rational b, Rational c, Rational d) { return M::from_rows({{a, b}, {c, d}}, 2); }

/// Rational point (cos, sin) on the unit circle.
M rotation(const Rational& s) {
  const Rational den = 1 + s * s;
  const Rational c = (1 - s * s) / den, sn = 2 * s / den;
  return m2(c, -sn, sn, c);
}

FamilyParameters sample_params(SolvableModel which, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1), pick(0, 3);
  FamilyParameters p;
  p.sign = coin(rng) ? 1 : -1;
  p.w = testing::random_vector(rng, 2);
  if (which == SolvableModel::kG0) {
    M r = rotation(testing::small_rational(rng, 4, 3));
    if (coin(rng)) r = r * diag({q(1), q(-1)});
    p.a_tilde = r;
  } else {
    Rational lam = testing::small_rational(rng, 4, 3);
    if (is_zero(lam)) lam = 2;
    switch (pick(rng)) {
      case 0: p.a_tilde = m2(lam, 0, 0, 1 / lam); break;
      case 1: p.a_tilde = m2(0, lam, 1 / lam, 0); break;
      case 2: p.a_tilde = m2(-lam, 0, 0, -1 / lam); break;
      default: p.a_tilde = m2(0, -lam, -1 / lam, 0); break;
    }
  }
  return p;
}

}  // namespace

TEST_CASE("levi_civita") {
  const auto g0 = catalog::oscillator_g0();
  const auto c0 = levi_civita(g0, catalog::gmatrix0_g0());
  CHECK(equal(c0.apply(e(4, 0), e(4, 1)), scale(e(4, 2), q(1, 2))));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) CHECK(c0.gamma(i, j, k) == g0.structure(i, j, k) / 2);

  const auto flat = levi_civita(LieAlgebra::abelian(3), SymBilinearForm::identity(3));
  for (std::size_t i = 0; i < 3; ++i) CHECK(flat.nabla(i).is_zero());

  const auto h = levi_civita(catalog::heisenberg(), catalog::h3_metric_h1());
  CHECK(equal(h.apply(e(3, 0), e(3, 1)), scale(e(3, 2), q(1, 2))));
  CHECK(equal(h.apply(e(3, 0), e(3, 2)), scale(e(3, 1), q(1, 2))));
  CHECK(equal(h.apply(e(3, 2), e(3, 0)), scale(e(3, 1), q(1, 2))));
  CHECK(equal(h.apply(e(3, 1), e(3, 2)), scale(e(3, 0), q(-1, 2))));
  CHECK(equal(h.apply(e(3, 2), e(3, 1)), scale(e(3, 0), q(-1, 2))));
  CHECK(is_zero_vector(h.apply(e(3, 0), e(3, 0))));
  CHECK(is_zero_vector(h.apply(e(3, 2), e(3, 2))));

  CHECK_THROWS_AS(levi_civita(g0, SymBilinearForm::diagonal({q(1), q(1), q(1), q(0)})), DegenerateMetricError);

  std::mt19937_64 rng(17);
  for (const auto& name : {"h1", "h2", "h0"}) {
    const auto c = levi_civita(catalog::heisenberg(), catalog::metric(catalog::get("h3"), name));
    CHECK(is_metric_compatible(c));
    CHECK(is_torsion_free(c));
    CHECK(first_bianchi(curvature(c)));
  }
  // Random nondegenerate metrics on g0.
  for (int i = 0; i < 10; ++i) {
    const auto p = testing::random_invertible(rng, 4);
    const auto c = levi_civita(g0, SymBilinearForm(p.transpose() * diag({q(1), q(-1), q(2), q(3)}) * p));
    CHECK(is_metric_compatible(c));
    CHECK(is_torsion_free(c));
    CHECK(first_bianchi(curvature(c)));
    CHECK(first_bianchi(curvature(c, CurvatureConvention::kBracketMinusCommutator)));
  }
}

TEST_CASE("curvature of bi-invariant metrics") {
  const auto g0 = catalog::oscillator_g0();
  const auto r = curvature(levi_civita(g0, catalog::gmatrix0_g0()));
  CHECK(r.op(1, 2).is_zero());
  CHECK(equal(r.apply(e(4, 0), e(4, 1), e(4, 0)), scale(e(4, 1), q(-1, 4))));
  CHECK(equal(r.apply(e(4, 0), e(4, 1), e(4, 1)), scale(e(4, 3), q(1, 4))));
  CHECK(matches_bi_invariant_curvature(g0, r));
  CHECK(curvature(levi_civita(LieAlgebra::abelian(4), SymBilinearForm::identity(4))).is_zero());

  const auto flipped = curvature(levi_civita(g0, catalog::gmatrix0_g0()), CurvatureConvention::kBracketMinusCommutator);
  CHECK_FALSE(matches_bi_invariant_curvature(g0, flipped));

  for (const auto& [g, b] : {std::pair{catalog::oscillator_g0(), catalog::gmatrix0_g0()},
                             std::pair{catalog::solvable_g1(), catalog::gmatrix0_g1()},
                             std::pair{catalog::get("r+sl2").algebra, catalog::get("r+sl2").forms[0].form},
                             std::pair{catalog::get("r+so3").algebra, catalog::get("r+so3").forms[0].form}}) {
    const auto c = levi_civita(g, b);
    CHECK(matches_bi_invariant_curvature(g, curvature(c)));
    CHECK(nabla_R_vanishes(c));
    CHECK(first_bianchi(curvature(c)));
  }
}

TEST_CASE("ricci and flatness on h3") {
  const auto& h3 = catalog::get("h3");
  const auto c0 = levi_civita(h3.algebra, catalog::h3_metric_h0());
  CHECK(is_flat(c0));
  CHECK(nabla_R_vanishes(c0));
  for (const auto& name : {"h1", "h2"}) {
    const auto c = levi_civita(h3.algebra, catalog::metric(h3, name));
    CHECK_FALSE(is_flat(c));
    CHECK_FALSE(nabla_R_vanishes(c));
  }
  const auto rc1 = ricci_operator(levi_civita(h3.algebra, catalog::h3_metric_h1()));
  CHECK(rc1 == diag({q(1, 2), q(1, 2), q(-1, 2)}));
  const auto rc2 = ricci_operator(levi_civita(h3.algebra, catalog::h3_metric_h2()));
  CHECK(rc2 == diag({q(1, 2), q(1, 2), q(-1, 2)}));
  CHECK(ricci_operator(levi_civita(h3.algebra, catalog::h3_metric_h1()), CurvatureConvention::kBracketMinusCommutator) ==
        diag({q(-1, 2), q(-1, 2), q(1, 2)}));
}

TEST_CASE("soliton_solve") {
  const auto h3 = catalog::heisenberg();
  const auto s1 = soliton_solve(h3, catalog::h3_metric_h1());
  const auto s2 = soliton_solve(h3, catalog::h3_metric_h2());
  REQUIRE(s1.feasible);
  REQUIRE(s2.feasible);
  CHECK(s1.residual.is_zero());
  CHECK(is_derivation(h3, s1.derivation));
  CHECK(is_derivation(h3, s2.derivation));
  CHECK(s1.c == s2.c);
  CHECK(s1.derivation == s2.derivation);
  CHECK(s1.c == q(3, 2));
  CHECK(s1.derivation == diag({q(-1), q(-1), q(-2)}));

  const auto flipped = soliton_solve(h3, catalog::h3_metric_h1(), CurvatureConvention::kBracketMinusCommutator);
  REQUIRE(flipped.feasible);
  CHECK(flipped.c == q(-3, 2));
  CHECK(flipped.derivation == diag({q(1), q(1), q(2)}));

  const auto ab = soliton_solve(LieAlgebra::abelian(3), SymBilinearForm::identity(3));
  REQUIRE(ab.feasible);
  CHECK(is_zero(ab.c));
  CHECK(ab.derivation.is_zero());
}

TEST_CASE("soliton_solve reports infeasibility") {
  // Non-unimodular 3-dim algebra [e0,e1] = e1, [e0,e2] = e1 + e2 with the
  // identity metric is not an algebraic soliton.
  const auto g = LieAlgebra::from_brackets(3, {{0, 1, 1, q(1)}, {0, 2, 1, q(1)}, {0, 2, 2, q(1)}});
  REQUIRE(jacobi_check(g));
  const auto s = soliton_solve(g, SymBilinearForm::identity(3));
  CHECK_FALSE(s.feasible);
  CHECK_FALSE(s.residual.is_zero());
}

TEST_CASE("naturally_reductive_check") {
  const auto g0 = catalog::oscillator_g0();
  const auto b = catalog::gmatrix0_g0();
  CHECK(naturally_reductive_check(g0, S::zero(4), S::full(4), b).ok);

  const auto h = S::span(4, {add(e(4, 0), e(4, 3))});
  const auto m = S::span(4, {e(4, 1), e(4, 2), subtract(e(4, 0), e(4, 3))});
  const auto bm = b.restricted(m.basis());
  CHECK(signature(bm).lorentzian());
  const auto nr = naturally_reductive_check(g0, h, m, bm);
  CHECK(nr.ok);
  CHECK(nr.reductive);

  const auto broken = naturally_reductive_check(g0, S::span(4, {e(4, 0)}),
                                                S::span(4, {e(4, 1), add(e(4, 2), e(4, 3)), add(e(4, 0), e(4, 3))}),
                                                SymBilinearForm::identity(3));
  CHECK_FALSE(broken.ok);
  CHECK_FALSE(broken.reductive);

  const auto wrong_form = naturally_reductive_check(g0, h, m, SymBilinearForm::identity(3));
  CHECK_FALSE(wrong_form.ok);
  CHECK(wrong_form.reductive);
  CHECK_FALSE(wrong_form.detail.empty());

  CHECK_THROWS_AS(naturally_reductive_check(g0, S::span(4, {e(4, 1)}), S::full(4), b), InputError);
  CHECK_THROWS_AS(naturally_reductive_check(g0, S::zero(4), S::span(4, {e(4, 1)}), SymBilinearForm::identity(1)),
                  InputError);
}

TEST_CASE("ahc_isometry_check") {
  const auto g0 = catalog::oscillator_g0();
  const auto b = catalog::gmatrix0_g0();
  CHECK(ahc_isometry_check(g0, b, M::identity(4)));
  const auto bad = ahc_isometry_check(g0, b, diag({q(1), q(1), q(1), q(-1)}));
  CHECK_FALSE(bad);
  CHECK(bad.failure == AhcFailure::kMetric);
  CHECK(bad.indices[0] == 0);
  CHECK(bad.indices[1] == 3);
  // Isometry of the form that is not compatible with the double bracket.
  M swap = M::identity(4);
  swap(0, 0) = 0;
  swap(3, 3) = 0;
  swap(0, 3) = 1;
  swap(3, 0) = 1;
  const auto sw = ahc_isometry_check(g0, b, swap);
  CHECK_FALSE(sw);
  CHECK(sw.failure == AhcFailure::kDoubleBracket);
}

TEST_CASE("isometry families") {
  FamilyParameters id{1, {q(0), q(0)}, M::identity(2)};
  CHECK(isometry_family(SolvableModel::kG0, id) == M::identity(4));
  CHECK(isometry_family(SolvableModel::kG1, id) == M::identity(4));

  FamilyParameters rot{1, {q(2), q(-1, 3)}, m2(q(3, 5), q(-4, 5), q(4, 5), q(3, 5))};
  CHECK(ahc_isometry_check(catalog::oscillator_g0(), catalog::gmatrix0_g0(),
                           isometry_family(SolvableModel::kG0, rot)));

  FamilyParameters g1p{-1, {q(1), q(1)}, m2(q(2), 0, 0, q(1, 2))};
  const auto a1 = isometry_family(SolvableModel::kG1, g1p);
  CHECK(a1(3, 0) == q(1));
  CHECK(ahc_isometry_check(catalog::solvable_g1(), catalog::gmatrix0_g1(), a1));

  CHECK_THROWS_AS(isometry_family(SolvableModel::kG0, FamilyParameters{1, {q(0), q(0)}, m2(q(2), 0, 0, q(1, 2))}),
                  InputError);
  CHECK_THROWS_AS(isometry_family(SolvableModel::kG1, FamilyParameters{1, {q(0), q(0)}, rotation(q(1, 2))}),
                  InputError);
  CHECK_THROWS_AS(isometry_family(SolvableModel::kG0, FamilyParameters{2, {q(0), q(0)}, M::identity(2)}), InputError);

  std::mt19937_64 rng(19);
  for (auto which : {SolvableModel::kG0, SolvableModel::kG1}) {
    const auto g = which == SolvableModel::kG0 ? catalog::oscillator_g0() : catalog::solvable_g1();
    const auto b = which == SolvableModel::kG0 ? catalog::gmatrix0_g0() : catalog::gmatrix0_g1();
    const auto r = curvature(levi_civita(g, b));
    for (int i = 0; i < 30; ++i) {
      const auto pa = sample_params(which, rng), pb = sample_params(which, rng);
      const auto a = isometry_family(which, pa), bb = isometry_family(which, pb);
      CHECK(ahc_isometry_check(g, b, a));
      CHECK(curvature_equivariance(r, a));
      const auto back = extract_family_parameters(which, a);
      REQUIRE(back.has_value());
      CHECK(back->sign == pa.sign);
      CHECK(back->a_tilde == pa.a_tilde);
      CHECK(extract_family_parameters(which, a * bb).has_value());
    }
  }
}

TEST_CASE("linearized_isotropy_dim") {
  CHECK(linearized_isotropy_dim(catalog::oscillator_g0(), catalog::gmatrix0_g0()) == 3);
  CHECK(linearized_isotropy_dim(LieAlgebra::abelian(4), SymBilinearForm::identity(4)) == 6);
  CHECK(linearized_isotropy_dim(catalog::solvable_g1(), catalog::gmatrix0_g1()) == 3);
}

TEST_CASE("skew_adjoint_form_space") {
  const auto base = skew_adjoint_form_space(SolvableModel::kG0, 0, 0, 0);
  CHECK_FALSE(base.empty());
  bool b33_free = false;
  for (const auto& f : base) {
    CHECK(is_zero(f(0, 1)));
    CHECK(f(0, 0) == f(1, 1));
    CHECK(is_zero(f(0, 2)));
    CHECK(is_zero(f(1, 2)));
    b33_free = b33_free || !is_zero(f(2, 2));
  }
  CHECK(b33_free);

  for (const auto& f : skew_adjoint_form_space(SolvableModel::kG0, 1, 0, 0)) {
    CHECK(f(0, 2) == f(2, 2));
    CHECK(is_zero(f(0, 1)));
  }
  for (const auto& f : skew_adjoint_form_space(SolvableModel::kG1, 0, 1, 0)) {
    CHECK(f(0, 2) == f(2, 2));
    CHECK(f(0, 0) == f(0, 2));
  }
}

TEST_CASE("nondegenerate skew-adjoint forms force a nondegenerate center") {
  const std::vector<Rational> ab = {q(-1), q(-1, 2), q(0), q(1, 2), q(1)};
  const std::vector<Rational> cs = {q(-1), q(0), q(1)};
  for (auto which : {SolvableModel::kG0, SolvableModel::kG1})
    for (const auto& a : ab)
      for (const auto& b : ab)
        for (const auto& c : cs) CHECK(center_nondegeneracy_forced(which, a, b, c).holds);
}

TEST_CASE("isotropy of h3 metrics") {
  const auto h1 = isometric_automorphism_isotropy("h1");
  CHECK_FALSE(h1.flat);
  CHECK(h1.isotropy_dim == 1);
  CHECK(h1.skew_derivation_dim == 1);
  CHECK(h1.group_type == "O(2)");
  CHECK(h1.elements_ok);

  const auto h2 = isometric_automorphism_isotropy("h2");
  CHECK(h2.isotropy_dim == 1);
  CHECK(h2.group_type == "O(1,1)");
  CHECK(h2.elements_ok);

  const auto h0 = isometric_automorphism_isotropy("h0");
  CHECK(h0.flat);
  CHECK(h0.isotropy_dim == 3);
  CHECK(h0.skew_derivation_dim == 1);
  CHECK(h0.group_type == "O(2,1)");
  CHECK(h0.elements_ok);

  CHECK_THROWS_AS(isometric_automorphism_isotropy("gmatrix0"), LookupError);
}

TEST_CASE("seeded family verification") {
  for (SolvableModel which : {SolvableModel::kG0, SolvableModel::kG1}) {
    const FamilyVerification v = verify_isometry_family(which, 40, 7);
    CHECK(v.samples == 40);
    CHECK(v.all_pass());
    std::mt19937_64 a(3), b(3);
    CHECK(isometry_family(which, sample_family_parameters(which, a)) ==
          isometry_family(which, sample_family_parameters(which, b)));
  }
}
