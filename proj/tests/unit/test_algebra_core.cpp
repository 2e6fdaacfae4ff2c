#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "metlie/catalog.hpp"
#include "metlie/errors.hpp"
#include "metlie/lie_algebra.hpp"
#include "metlie/quadratic_number.hpp"

using namespace metlie;
using metlie::testing::e;
using metlie::testing::q;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3") == q(3));
  CHECK(parse_rational("-6/4") == q(-3, 2));
  CHECK(parse_rational("+2/6") == q(1, 3));
  CHECK(to_string(q(-6, 4)) == "-3/2");
  CHECK(to_string(q(4, 2)) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK_THROWS_AS(parse_rational("1/"), InputError);
}

TEST_CASE("quadratic numbers") {
  const auto r2 = QuadraticNumber::sqrt(q(2));
  CHECK(r2 * r2 == QuadraticNumber(q(2)));
  CHECK(QuadraticNumber::sqrt(q(9, 4)) == QuadraticNumber(q(3, 2)));
  CHECK(sign(r2 - QuadraticNumber(q(3, 2))) < 0);
  CHECK(sign(r2 - QuadraticNumber(q(7, 5))) > 0);
  const QuadraticNumber x = QuadraticNumber(q(1)) + r2;
  CHECK((QuadraticNumber(q(1)) / x) * x == QuadraticNumber(q(1)));
  CHECK_THROWS(r2 + QuadraticNumber::sqrt(q(3)));
}

TEST_CASE("bracket") {
  const auto h3 = catalog::heisenberg();
  CHECK(equal(h3.bracket(e(3, 0), e(3, 1)), e(3, 2)));
  const auto g0 = catalog::oscillator_g0();
  CHECK(equal(g0.bracket(e(4, 0), e(4, 2)), scale(e(4, 1), q(-1))));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto x = testing::random_vector(rng, 4);
    CHECK(is_zero_vector(g0.bracket(x, x)));
  }
  CHECK_THROWS_AS(g0.bracket(e(3, 0), e(4, 1)), InputError);
}

TEST_CASE("jacobi_check") {
  CHECK(jacobi_check(catalog::oscillator_g0()));
  CHECK(jacobi_check(LieAlgebra::abelian(4)));
  const auto g0 = catalog::oscillator_g0();
  std::vector<BracketEntry<Rational>> tampered = {{0, 1, 2, q(1)}, {0, 2, 1, q(-1)}, {1, 2, 3, q(2)}};
  // [e1,e2] = 2e3 still satisfies Jacobi; an extra [e0,e3] = e1 does not.
  const auto ok_scaled = LieAlgebra::from_brackets(4, tampered);
  CHECK(jacobi_check(ok_scaled));
  tampered.push_back({0, 3, 1, q(1)});
  const auto bad = LieAlgebra::from_brackets(4, tampered);
  const auto res = jacobi_check(bad);
  CHECK_FALSE(res);
  CHECK(res.triple[0] == 0);
}

TEST_CASE("central series") {
  const auto g0 = catalog::oscillator_g0();
  CHECK(lower_central(g0, 1) == Subspace<Rational>::coordinate(4, {1, 2, 3}));
  CHECK(lower_central(LieAlgebra::abelian(3), 1).is_zero());
  CHECK(lower_central(catalog::heisenberg(), 2).is_zero());
  CHECK(upper_central(g0, 1) == Subspace<Rational>::coordinate(4, {3}));
  CHECK(upper_central(LieAlgebra::abelian(3), 1).dim() == 3);
  CHECK(upper_central(catalog::heisenberg(), 2).dim() == 3);

  const auto g1 = catalog::solvable_g1();
  CHECK(center(g1) == Subspace<Rational>::coordinate(4, {3}));
  CHECK(commutator(g1) == Subspace<Rational>::coordinate(4, {1, 2, 3}));
  const auto& aff = catalog::get("aff").algebra;
  CHECK(center(aff).is_zero());
  CHECK(commutator(aff) == Subspace<Rational>::coordinate(2, {1}));

  for (const auto& name : catalog::algebra_names()) {
    const auto& g = catalog::get(name).algebra;
    for (std::size_t r = 0; r < g.dim(); ++r) {
      CHECK(lower_central(g, r).contains(lower_central(g, r + 1)));
      CHECK(upper_central(g, r + 1).contains(upper_central(g, r)));
    }
  }
}

TEST_CASE("is_ideal") {
  const auto g0 = catalog::oscillator_g0();
  CHECK(is_ideal(g0, Subspace<Rational>::coordinate(4, {3})));
  CHECK_FALSE(is_ideal(g0, Subspace<Rational>::coordinate(4, {1})));
  CHECK(is_ideal(g0, Subspace<Rational>::coordinate(4, {1, 2, 3})));
}

TEST_CASE("change_of_basis") {
  const auto g0 = catalog::oscillator_g0();
  CHECK(change_of_basis(g0, Matrix<Rational>::identity(4)) == g0);

  // ad(e0) scaled by λ and [e1,e2] = λe3, in the basis {(1/λ)e0, e1, e2, λe3}.
  const Rational lam = 2;
  const auto scaled = LieAlgebra::from_brackets(4, {{0, 1, 2, lam}, {0, 2, 1, -lam}, {1, 2, 3, lam}});
  Matrix<Rational> p = Matrix<Rational>::identity(4);
  p(0, 0) = 1 / lam;
  p(3, 3) = lam;
  const auto back = change_of_basis(scaled, p);
  CHECK(back.structure(0, 1, 2) == q(1));
  CHECK(back.structure(0, 2, 1) == q(-1));
  CHECK(back == g0);

  const auto h3 = catalog::heisenberg();
  Matrix<Rational> swap(3, 3);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  swap(2, 2) = 1;
  CHECK(change_of_basis(h3, swap).structure(0, 1, 2) == q(-1));

  CHECK_THROWS_AS(change_of_basis(h3, Matrix<Rational>(3, 3)), InputError);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto pp = testing::random_invertible(rng, 4);
    const auto there = change_of_basis(g0, pp);
    CHECK(jacobi_check(there));
    CHECK(change_of_basis(there, inverse(pp)) == g0);
  }
}

TEST_CASE("change_of_basis over a quadratic extension") {
  // g0 with <e0,e0> = μ; e0 -> √(2/μ) e0 − e3 and the rational shear.
  using QN = QuadraticNumber;
  const Rational mu = 3;
  const auto g0q = BasicLieAlgebra<QN>::from_brackets(4, {{0, 1, 2, QN(1)}, {0, 2, 1, QN(-1)}, {1, 2, 3, QN(1)}});
  auto form = BasicSymBilinearForm<QN>::from_entries(4, {{0, 0, QN(mu)}, {0, 3, QN(1)}, {1, 1, QN(1)}, {2, 2, QN(1)}});
  CHECK(is_ad_invariant(g0q, form));

  const QN s = QN::sqrt(Rational(2) / mu);
  Matrix<QN> p = Matrix<QN>::identity(4);
  p(0, 0) = s;
  p(3, 0) = QN(-1);
  const auto changed = change_of_basis(g0q, p);
  CHECK(jacobi_check(changed));
  const auto moved = form.congruent(p);
  // <e0', e0'> = 2 − 2√(2/μ), not zero unless μ = 2.
  CHECK(moved(0, 0) == QN(2) - QN(2) * s);
  CHECK_FALSE(is_zero(moved(0, 0)));

  Matrix<QN> shear = Matrix<QN>::identity(4);
  shear(3, 0) = QN(-mu / 2);
  const auto normalized = form.congruent(shear);
  CHECK(is_zero(normalized(0, 0)));
  CHECK(normalized(0, 3) == QN(1));
  CHECK(change_of_basis(g0q, shear) == g0q);
}

TEST_CASE("check_h3_subalgebra") {
  const auto g0 = catalog::oscillator_g0();
  CHECK(check_h3_subalgebra(g0, e(4, 1), e(4, 2), e(4, 3)) == H3Subalgebra::kStandard);
  CHECK(check_h3_subalgebra(g0, add(e(4, 1), e(4, 3)), e(4, 2), e(4, 3)) == H3Subalgebra::kStandard);
  CHECK(check_h3_subalgebra(g0, e(4, 0), e(4, 1), e(4, 2)) == H3Subalgebra::kNotH3);

  std::mt19937_64 rng(11);
  std::size_t nonstandard = 0;
  for (const auto* g : {&g0, &catalog::get("g1").algebra}) {
    for (int i = 0; i < 2000; ++i) {
      const auto v1 = testing::random_vector(rng, 4, 2, 2);
      const auto v2 = testing::random_vector(rng, 4, 2, 2);
      if (check_h3_subalgebra(*g, v1, v2, g->bracket(v1, v2)) == H3Subalgebra::kNonstandard) ++nonstandard;
    }
  }
  CHECK(nonstandard == 0);
}
