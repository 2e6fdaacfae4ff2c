#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "metlie/forms.hpp"
#include "metlie/lie_algebra.hpp"
#include "metlie/matrix.hpp"

namespace metlie {

/// Sign convention for the curvature operator.
enum class CurvatureConvention {
  /// R(X,Y) = [∇_X, ∇_Y] − ∇_[X,Y]. Default: gives R = −¼ ad([X,Y]) for
  /// bi-invariant metrics.
  kCommutatorMinusBracket,
  /// R(X,Y) = ∇_[X,Y] − [∇_X, ∇_Y].
  kBracketMinusCommutator,
};

/// Levi-Civita connection of a left-invariant metric, on the Lie algebra:
/// ∇_{e_i} e_j = Σ_k Γ[i][j][k] e_k.
class Connection {
 public:
  Connection(LieAlgebra g, SymBilinearForm metric, std::vector<Rational> gamma);

  const LieAlgebra& algebra() const { return g_; }
  const SymBilinearForm& metric() const { return metric_; }
  std::size_t dim() const { return g_.dim(); }
  const Rational& gamma(std::size_t i, std::size_t j, std::size_t k) const { return gamma_[(i * dim() + j) * dim() + k]; }

  /// Matrix of ∇_{e_i}; column j is ∇_{e_i} e_j.
  Matrix<Rational> nabla(std::size_t i) const;
  /// Matrix of ∇_x.
  Matrix<Rational> nabla(const Vec<Rational>& x) const;
  Vec<Rational> apply(const Vec<Rational>& x, const Vec<Rational>& y) const;

 private:
  LieAlgebra g_;
  SymBilinearForm metric_;
  std::vector<Rational> gamma_;
};

/// R(e_i, e_j) e_k = Σ_l R[i][j][k][l] e_l.
class CurvatureTensor {
 public:
  CurvatureTensor(std::size_t dim, std::vector<Rational> components, CurvatureConvention convention);

  std::size_t dim() const { return n_; }
  CurvatureConvention convention() const { return convention_; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return r_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  /// Matrix of the operator R(e_i, e_j).
  Matrix<Rational> op(std::size_t i, std::size_t j) const;
  /// R(x, y) z for arbitrary vectors.
  Vec<Rational> apply(const Vec<Rational>& x, const Vec<Rational>& y, const Vec<Rational>& z) const;
  bool is_zero() const;

 private:
  std::size_t n_;
  std::vector<Rational> r_;
  CurvatureConvention convention_;
};

/// Koszul formula 2⟨∇_X Y, Z⟩ = ⟨[X,Y],Z⟩ − ⟨[Y,Z],X⟩ + ⟨[Z,X],Y⟩. Throws
/// DegenerateMetricError naming the radical when the metric is degenerate.
Connection levi_civita(const LieAlgebra& g, const SymBilinearForm& metric);

TripleCheck is_metric_compatible(const Connection& conn);
TripleCheck is_torsion_free(const Connection& conn);  // triple = (i, j, 0)

CurvatureTensor curvature(const Connection& conn,
                          CurvatureConvention convention = CurvatureConvention::kCommutatorMinusBracket);

/// R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0 on basis triples.
TripleCheck first_bianchi(const CurvatureTensor& r);

/// R(e_i, e_j) = −¼ ad([e_i, e_j]) on all basis pairs (triple = (i, j, 0)).
TripleCheck matches_bi_invariant_curvature(const LieAlgebra& g, const CurvatureTensor& r);

/// Ric(x, y) = trace(z ↦ R(z, x) y).
Matrix<Rational> ricci_tensor(const CurvatureTensor& r);
/// Ricci operator: ⟨Rc x, y⟩ = Ric(x, y), i.e. Rc = B⁻¹ Ric.
Matrix<Rational> ricci_operator(const Connection& conn,
                                CurvatureConvention convention = CurvatureConvention::kCommutatorMinusBracket);

bool is_flat(const Connection& conn);

/// (∇_{e_a} R)(e_i, e_j) e_k, flattened as [a][i][j][k][l].
std::vector<Rational> nabla_R(const Connection& conn, const CurvatureTensor& r);
bool nabla_R_vanishes(const Connection& conn,
                      CurvatureConvention convention = CurvatureConvention::kCommutatorMinusBracket);

struct SolitonCertificate {
  bool feasible = false;
  Rational c;
  Matrix<Rational> derivation;  // D
  Matrix<Rational> residual;    // Rc − c·Id − D, zero when feasible
  std::size_t inconsistent_row = 0;
  std::size_t solution_space_dim = 0;  // dimension of the (c, D) solution set
};

/// Linear feasibility of Rc = c·Id + D with D a derivation, treating (c, D)
/// as one unknown vector.
SolitonCertificate soliton_solve(const LieAlgebra& g, const SymBilinearForm& metric,
                                 CurvatureConvention convention = CurvatureConvention::kCommutatorMinusBracket);

/// True iff D[x, y] = [Dx, y] + [x, Dy] on basis pairs.
bool is_derivation(const LieAlgebra& g, const Matrix<Rational>& d);

struct ReductiveCheck {
  bool ok = true;
  bool reductive = true;  // [h, m] ⊆ m
  /// For a reductivity failure (h basis index, m basis index, unused); for an
  /// identity failure the (x, y, z) indices into the m basis.
  std::array<std::size_t, 3> failing{};
  std::string detail;
};

/// Reductivity [h, m] ⊆ m and ⟨[x,y]_m, z⟩ + ⟨y, [x,z]_m⟩ = 0 on m, where
/// [x,y]_m projects along h. `form_on_m` is in the coordinates of m.basis().
/// Throws InputError unless g = h ⊕ m and the form on m is nondegenerate.
ReductiveCheck naturally_reductive_check(const LieAlgebra& g, const Subspace<Rational>& h,
                                         const Subspace<Rational>& m, const SymBilinearForm& form_on_m);

enum class AhcFailure { kNone, kMetric, kDoubleBracket };

struct AhcCheck {
  bool ok = true;
  AhcFailure failure = AhcFailure::kNone;
  std::array<std::size_t, 3> indices{};  // (i, j, 0) for the metric, (i, j, k) for brackets
  explicit operator bool() const { return ok; }
};

/// ⟨AX, AY⟩ = ⟨X, Y⟩ and A[[X,Y],Z] = [[AX,AY],AZ] on basis triples.
AhcCheck ahc_isometry_check(const LieAlgebra& g, const SymBilinearForm& metric, const Matrix<Rational>& a);

/// R(Au, Av)Aw = A R(u, v)w on basis triples.
TripleCheck curvature_equivariance(const CurvatureTensor& r, const Matrix<Rational>& a);

enum class SolvableModel { kG0, kG1 };

/// Parameters of one member of the isotropy families: sign ±1, w ∈ ℚ², and
/// Ã ∈ O(2) (G0) or O(1,1) for J̃ = [[0,1],[1,0]] (G1).
struct FamilyParameters {
  int sign = 1;
  Vec<Rational> w;          // length 2
  Matrix<Rational> a_tilde;  // 2×2
};

/// Assembles the 4×4 block matrix
///   [ ±1       0           0 ]
///   [ w        Ã           0 ]
///   [ ∓½‖w‖²  ∓wᵀ M Ã     ±1 ]
/// with ‖w‖² = w·w and M = I for G0, ‖w‖² = 2 w₀w₁ and M = J̃ for G1.
/// Throws InputError if Ã is not in the required group or sign ∉ {±1}.
Matrix<Rational> isometry_family(SolvableModel which, const FamilyParameters& params);

/// Inverse of isometry_family: reads (sign, w, Ã) off a matrix and succeeds
/// only if re-assembling reproduces it exactly.
std::optional<FamilyParameters> extract_family_parameters(SolvableModel which, const Matrix<Rational>& a);

/// Random family member: rational circle points, possibly reflected, for
/// O(2); diag(λ, 1/λ), its swap, and their negatives for O(1,1).
FamilyParameters sample_family_parameters(SolvableModel which, std::mt19937_64& rng);

struct FamilyVerification {
  std::size_t samples = 0;
  std::size_t isometry_pass = 0;   // ahc_isometry_check against gmatrix0
  std::size_t product_pass = 0;    // A·A' re-extracts as a family member
  std::size_t curvature_pass = 0;  // R(Au, Av)Aw = A R(u, v)w
  bool all_pass() const {
    return isometry_pass == samples && product_pass == samples && curvature_pass == samples;
  }
};

/// Samples `samples` members with a seeded generator and checks each one.
FamilyVerification verify_isometry_family(SolvableModel which, std::size_t samples, std::uint64_t seed);

/// dim{S : ⟨Sx,y⟩ + ⟨x,Sy⟩ = 0, S[[x,y],z] = [[Sx,y],z] + [[x,Sy],z] + [[x,y],Sz]}.
std::size_t linearized_isotropy_dim(const LieAlgebra& g, const SymBilinearForm& metric);

/// Symmetric Q on h3 = span{e1,e2,e3} with ad(v) skew-adjoint, for
/// v = e0 + αe1 + βe2 + γe3 in g0 or g1. Basis of 3×3 forms in the
/// coordinates (e1, e2, e3).
std::vector<SymBilinearForm> skew_adjoint_form_space(SolvableModel which, const Rational& alpha,
                                                     const Rational& beta, const Rational& gamma);

struct CenterDegeneracyCertificate {
  bool holds = true;  // every solution with b33 = 0 is degenerate
  std::size_t solution_dim = 0;
  std::size_t b33_zero_dim = 0;
  std::optional<SymBilinearForm> counterexample;
};

/// Exact check that a nondegenerate skew-adjoint Q forces b33 ≠ 0: the
/// determinant vanishes identically on {Q : b33 = 0} (grid identity test).
CenterDegeneracyCertificate center_nondegeneracy_forced(SolvableModel which, const Rational& alpha,
                                                        const Rational& beta, const Rational& gamma);

/// Derivations of g skew-adjoint for the metric (not necessarily ad-invariant).
std::vector<Matrix<Rational>> skew_derivations(const LieAlgebra& g, const SymBilinearForm& metric);

/// Skew S with S·R(u,v)w = R(Su,v)w + R(u,Sv)w + R(u,v)Sw: the
/// infinitesimal isotropy of a locally symmetric metric.
std::vector<Matrix<Rational>> curvature_preserving_skew_maps(const Connection& conn,
                                                             CurvatureConvention convention =
                                                                 CurvatureConvention::kCommutatorMinusBracket);

struct IsotropyReport {
  std::string metric_name;
  bool flat = false;
  std::size_t skew_derivation_dim = 0;
  /// Dimension of the isotropy algebra at the identity: infinitesimal
  /// Ambrose–Hicks–Cartan isotropy for flat metrics, skew derivations otherwise.
  std::size_t isotropy_dim = 0;
  std::string method;       // "ambrose-hicks-cartan" or "isometric automorphisms"
  std::string group_type;   // "O(2,1)", "O(2)", "O(1,1)"
  std::vector<std::string> verified_elements;
  bool elements_ok = true;
};

/// Isotropy of the left-invariant metrics h0, h1, h2 on H3. Throws
/// LookupError for any other name.
IsotropyReport isometric_automorphism_isotropy(std::string_view metric_name);

}  // namespace metlie
