// metlie: command-line front end.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "metlie/algebra_file.hpp"
#include "metlie/catalog.hpp"
#include "metlie/connection.hpp"
#include "metlie/errors.hpp"
#include "metlie/forms.hpp"
#include "metlie/group_models.hpp"
#include "metlie/integrator.hpp"

using namespace metlie;

namespace {

enum Exit : int { kOk = 0, kParse = 2, kJacobi = 3, kDegenerate = 4, kNumeric = 5 };

struct Loaded {
  std::string name;
  std::string source;  // "catalog" or the file path
  LieAlgebra algebra;
  std::vector<std::pair<std::string, SymBilinearForm>> metrics;
};

bool g_force_file = false;

Loaded load(const std::string& target) {
  if (!g_force_file && catalog::contains(target)) {
    const CatalogEntry& e = catalog::get(target);
    Loaded out{e.name, "catalog", e.algebra, {}};
    for (const auto& f : e.forms) out.metrics.emplace_back(f.name, f.form);
    return out;
  }
  std::ifstream probe(target);
  if (!probe) {
    std::string names;
    for (const auto& n : catalog::algebra_names()) names += (names.empty() ? "" : ", ") + n;
    throw LookupError("'" + target + "' is neither a catalog name nor a readable file; catalog: " + names);
  }
  AlgebraFile f = load_algebra_file(target);
  return Loaded{f.name, target, std::move(f.algebra), std::move(f.metrics)};
}

const SymBilinearForm& pick_metric(const Loaded& l, const std::string& name) {
  if (name.empty()) {
    if (l.metrics.size() == 1) return l.metrics.front().second;
    if (l.metrics.empty()) throw LookupError("'" + l.name + "' defines no metrics");
  }
  std::string names;
  for (const auto& [n, f] : l.metrics) {
    if (n == name) return f;
    names += (names.empty() ? "" : ", ") + n;
  }
  throw LookupError((name.empty() ? std::string("several metrics defined") : "unknown metric '" + name + "'") +
                    " for '" + l.name + "'; choose one of: " + names);
}

std::string dims(const std::vector<std::size_t>& d) {
  std::string s;
  for (std::size_t x : d) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

const char* pass(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

double parse_real(const std::string& text) {
  try {
    return parse_rational(text).get_d();
  } catch (const InputError&) {
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) throw InputError("not a number: '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
  return out;
}

// ---------------------------------------------------------------------------
// report

int cmd_report(const std::string& target) {
  const Loaded l = load(target);
  const LieAlgebra& g = l.algebra;
  const std::size_t n = g.dim();
  std::cout << "algebra: " << l.name << " (" << l.source << ")\n";
  std::cout << "dim: " << n << "\n";
  std::cout << "jacobi: PASS\n";
  std::cout << "type: "
            << (g.is_abelian() ? "abelian" : is_nilpotent(g) ? "nilpotent" : is_solvable(g) ? "solvable" : "not solvable")
            << "\n";
  std::vector<std::size_t> lower, upper, derived_dims;
  for (std::size_t r = 0; r <= n; ++r) {
    lower.push_back(lower_central(g, r).dim());
    upper.push_back(upper_central(g, r).dim());
    derived_dims.push_back(derived(g, r).dim());
  }
  std::cout << "lower central series dims (C^0..C^" << n << "): " << dims(lower) << "\n";
  std::cout << "upper central series dims (C_0..C_" << n << "): " << dims(upper) << "\n";
  std::cout << "derived series dims: " << dims(derived_dims) << "\n";
  std::cout << "center dim: " << center(g).dim() << "\n";
  std::cout << "C1 dim: " << lower_central(g, 1).dim() << "\n";
  std::cout << "commutator dim: " << commutator(g).dim() << "\n";
  const auto nd = has_nondegenerate_invariant_form(g);
  std::cout << "invariant form space: " << nd.form_space_dim << "\n";
  if (nd.exists) {
    std::cout << "nondegenerate ad-invariant form: " << nd.witness->matrix().str() << "\n";
    std::cout << "witness signature: " << signature(*nd.witness).str() << "\n";
    const DualityReport d = series_duality_check(g, *nd.witness);
    std::cout << "series duality: " << pass(d.ok);
    if (!d.ok) std::cout << " (r = " << d.failing_r << ")";
    std::cout << "\n";
  } else {
    std::cout << "no nondegenerate ad-invariant form\n";
  }
  if (n == 4) std::cout << "class: " << to_string(classify_dim4_metric(g)) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// geometry

int cmd_geometry(const std::string& target, const std::string& metric_name) {
  const Loaded l = load(target);
  const LieAlgebra& g = l.algebra;
  const SymBilinearForm& b = pick_metric(l, metric_name);
  if (!is_nondegenerate(b)) {
    std::cerr << "error: metric is degenerate; radical " << radical(b).str() << "\n";
    return kDegenerate;
  }
  const std::size_t n = g.dim();
  const Connection conn = levi_civita(g, b);
  const CurvatureTensor r = curvature(conn);
  const bool ad_inv = static_cast<bool>(is_ad_invariant(g, b));
  std::cout << "algebra: " << l.name << "\n";
  std::cout << "metric: " << b.matrix().str() << "\n";
  std::cout << "signature: " << signature(b).str() << "\n";
  std::cout << "ad-invariant: " << (ad_inv ? "YES" : "NO") << "\n";
  if (ad_inv) {
    bool half = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (conn.gamma(i, j, k) != g.structure(i, j, k) / 2) half = false;
    std::cout << "nabla = 1/2 [X,Y]: " << pass(half) << "\n";
    std::cout << "R = -1/4 ad([X,Y]): " << pass(static_cast<bool>(matches_bi_invariant_curvature(g, r))) << "\n";
  }
  std::cout << "first Bianchi: " << pass(static_cast<bool>(first_bianchi(r))) << "\n";
  std::cout << "flat: " << (r.is_zero() ? "YES" : "NO") << "\n";
  std::cout << "Ricci operator: " << ricci_operator(conn).str() << "\n";
  const SolitonCertificate sol = soliton_solve(g, b);
  if (sol.feasible) {
    std::cout << "soliton: FEASIBLE (c = " << to_string(sol.c) << ", D = " << sol.derivation.str() << ")\n";
  } else {
    std::cout << "soliton: INFEASIBLE (inconsistent equation " << sol.inconsistent_row << ")\n";
  }
  const bool sym = nabla_R_vanishes(conn);
  std::cout << "nabla R = 0: " << pass(sym) << "\n";
  if (ad_inv) {
    std::cout << "isotropy dim: " << linearized_isotropy_dim(g, b) << "\n";
  } else if (sym) {
    std::cout << "isotropy dim: " << curvature_preserving_skew_maps(conn).size() << " (curvature-preserving skew maps)\n";
  } else {
    std::cout << "isotropy dim: " << skew_derivations(g, b).size() << " (skew derivations)\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// geodesic

struct GeodesicArgs {
  std::string model;
  std::string coeffs;
  std::string metric;
  std::string base;
  std::string out;
  std::string kernel;
  double s_end = 1.0;
  double step = 1e-3;
  std::size_t batch = 0;
  std::uint64_t seed = 0;
};

int run_batch(Model m, const GeodesicArgs& a) {
  if (m == Model::kH3) throw InputError("--batch supports G0 and G1 only");
  BatchKernel kernel = default_batch_kernel();
  if (a.kernel == "scalar") kernel = BatchKernel::kScalar;
  if (a.kernel == "avx2") kernel = BatchKernel::kAvx2;
  if (!a.kernel.empty() && a.kernel != "scalar" && a.kernel != "avx2")
    throw InputError("unknown kernel '" + a.kernel + "'; valid: scalar, avx2");
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  GeodesicBatch batch;
  batch.model = m;
  batch.resize(a.batch);
  std::vector<GeodesicSpec> specs;
  for (std::size_t k = 0; k < a.batch; ++k) {
    GeodesicSpec s{m, GroupElement{m, {u(rng), u(rng), u(rng), u(rng)}}, {u(rng), u(rng), u(rng), u(rng)}};
    const Point v = frame_velocity(m, s.base, s.a);
    for (std::size_t i = 0; i < 4; ++i) {
      batch.p[i][k] = s.base.c[i];
      batch.v[i][k] = v[i];
    }
    specs.push_back(s);
  }
  integrate_batch(batch, a.s_end, a.step, kernel);
  double err = 0.0;
  for (std::size_t k = 0; k < a.batch; ++k) {
    const GroupElement exact = geodesic_closed_form(specs[k], a.s_end);
    for (std::size_t i = 0; i < 4; ++i) {
      if (!std::isfinite(batch.p[i][k])) throw NumericError("non-finite state in batch member " + std::to_string(k));
      err = std::max(err, std::abs(batch.p[i][k] - exact.c[i]));
    }
  }
  std::cout << "batch: " << a.batch << " geodesics, kernel " << to_string(kernel) << "\n";
  std::cout << "max error vs closed form: " << sci(err) << "\n";
  return kOk;
}

int cmd_geodesic(const GeodesicArgs& a) {
  std::string model_name = a.model, metric = a.metric;
  if (const auto colon = model_name.find(':'); colon != std::string::npos) {
    metric = model_name.substr(colon + 1);
    model_name = model_name.substr(0, colon);
  }
  const Model m = parse_model(model_name);
  if (a.batch > 0) return run_batch(m, a);
  if (m == Model::kH3) {
    if (metric.empty()) throw InputError("H3 geodesics need a metric: H3:h1 or H3:h2");
    if (metric != "h1" && metric != "h2") throw LookupError("unknown H3 metric '" + metric + "'; valid: h1, h2");
  } else {
    if (!metric.empty() && metric != "gmatrix0") throw LookupError("G0 and G1 carry the metric gmatrix0 only");
    metric = m == Model::kG0 ? "g0" : "g1";
  }
  if (a.coeffs.empty()) throw InputError("frame coefficients a0,a1,a2,a3 are required");
  std::vector<double> c = parse_list(a.coeffs);
  std::array<double, 4> coeff{};
  if (m == Model::kH3 && c.size() == 3) c.insert(c.begin(), 0.0);
  if (c.size() != 4) throw InputError("expected four frame coefficients a0,a1,a2,a3");
  if (m == Model::kH3 && c[0] != 0.0) throw InputError("H3 has no X0 direction; a0 must be 0");
  std::copy(c.begin(), c.end(), coeff.begin());

  GroupElement base = identity(m);
  if (!a.base.empty()) base = GroupElement::from_coords(m, parse_list(a.base));

  const MetricChart ch = chart(metric);
  const Point p0 = base.coords();
  const Point v0 = frame_velocity(m, base, coeff);
  const Trajectory tr = integrate_geodesic(ch, p0, v0, a.s_end, a.step);

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw InputError("cannot write '" + a.out + "'");
  }
  std::ostream& csv = a.out.empty() ? std::cout : static_cast<std::ostream&>(file);
  std::ostream& info = a.out.empty() ? std::cerr : std::cout;
  write_csv(csv, tr);

  info << "model: " << to_string(m) << " metric " << metric << "\n";
  info << "samples: " << tr.samples.size() << " (rk4, step " << a.step << ")\n";
  if (!tr.complete) {
    info << "error: integration stopped: " << tr.error << "\n";
    return kNumeric;
  }
  const double e0 = energy(ch, p0, v0);
  double drift = 0.0;
  for (const auto& s : tr.samples) drift = std::max(drift, std::abs(energy(ch, s.p, s.v) - e0));
  info << "energy drift: " << sci(drift) << "\n";
  if (m == Model::kH3) {
    info << "closed form: not available for H3\n";
    return kOk;
  }
  double err = 0.0;
  const GeodesicSpec spec{m, base, coeff};
  for (const auto& s : tr.samples) {
    const Point exact = geodesic_closed_form(spec, s.s).coords();
    for (std::size_t i = 0; i < 4; ++i) err = std::max(err, std::abs(s.p[i] - exact[i]));
  }
  info << "max error vs closed form: " << sci(err) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// isometry

int cmd_isometry(const std::string& model, std::size_t samples, std::uint64_t seed) {
  std::string up = model;
  for (auto& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (up == "G0" || up == "G1") {
    const bool g0 = up == "G0";
    const SolvableModel which = g0 ? SolvableModel::kG0 : SolvableModel::kG1;
    const FamilyVerification v = verify_isometry_family(which, samples, seed);
    const std::size_t dim = linearized_isotropy_dim(g0 ? catalog::oscillator_g0() : catalog::solvable_g1(),
                                                    g0 ? catalog::gmatrix0_g0() : catalog::gmatrix0_g1());
    std::cout << "model: " << up << " with the bi-invariant metric gmatrix0\n";
    std::cout << "isotropy group: ({1,-1} x " << (g0 ? "O(2)" : "O(1,1)") << ") semidirect R^2\n";
    std::cout << "family (isom): " << v.isometry_pass << "/" << v.samples << " samples " << pass(v.all_pass())
              << "; isotropy dim " << dim << "\n";
    std::cout << "products in family: " << v.product_pass << "/" << v.samples << "\n";
    std::cout << "curvature equivariance: " << v.curvature_pass << "/" << v.samples << "\n";
    return kOk;
  }
  if (up.rfind("H3:", 0) == 0) {
    const IsotropyReport rep = isometric_automorphism_isotropy(model.substr(3));
    std::cout << "model: H3 with metric " << rep.metric_name << "\n";
    std::cout << "flat: " << (rep.flat ? "YES" : "NO") << "\n";
    std::cout << "skew derivations dim: " << rep.skew_derivation_dim << "\n";
    std::cout << "isotropy algebra dim " << rep.isotropy_dim << " (" << rep.group_type << " type)\n";
    std::cout << "method: " << rep.method << "\n";
    for (const auto& e : rep.verified_elements) std::cout << "verified isometry: " << e << "\n";
    std::cout << "elements: " << pass(rep.elements_ok) << "\n";
    return kOk;
  }
  throw LookupError("unknown model '" + model + "'; valid: G0, G1, H3:h0, H3:h1, H3:h2");
}

// ---------------------------------------------------------------------------
// classify

Matrix<Rational> random_invertible(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  while (true) {
    Matrix<Rational> p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        p(i, j) = Rational(num(rng), den(rng));
        p(i, j).canonicalize();
      }
    if (!is_zero(determinant(p))) return p;
  }
}

int cmd_classify(const std::string& target, std::size_t samples, std::uint64_t seed) {
  const Loaded l = load(target);
  const Dim4Class c = classify_dim4_metric(l.algebra);
  std::cout << "class: " << to_string(c) << "\n";
  if (samples > 0) {
    std::mt19937_64 rng(seed);
    std::size_t same = 0;
    for (std::size_t k = 0; k < samples; ++k)
      if (classify_dim4_metric(change_of_basis(l.algebra, random_invertible(rng, 4))) == c) ++same;
    std::cout << "basis-change invariance: " << same << "/" << samples << " " << pass(same == samples) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--") g_force_file = true;

  CLI::App app{"Exact and numeric geometry of Lie algebras with invariant metrics"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string target, metric;
  std::size_t samples = 200;
  std::uint64_t seed = 0;

  auto* report = app.add_subcommand("report", "structure report for a catalog algebra or JSON file");
  report->add_option("algebra", target, "catalog name or JSON path")->required();

  auto* geometry = app.add_subcommand("geometry", "curvature, Ricci, soliton and isotropy for a metric");
  geometry->add_option("algebra", target, "catalog name or JSON path")->required();
  geometry->add_option("metric,--metric", metric, "metric name");

  GeodesicArgs ga;
  auto* geodesic = app.add_subcommand("geodesic", "RK4 geodesic in coordinates, written as CSV");
  geodesic->add_option("model", ga.model, "G0, G1, H3:h1 or H3:h2")->required();
  geodesic->add_option("coefficients", ga.coeffs, "frame coefficients a0,a1,a2,a3");
  geodesic->add_option("--metric", ga.metric, "h1 or h2 for H3");
  geodesic->add_option("--base", ga.base, "base point t,x,y,z (x,y,z for H3)");
  geodesic->add_option("--s-end", ga.s_end, "final parameter value")->capture_default_str();
  geodesic->add_option("--step", ga.step, "RK4 step")->capture_default_str();
  geodesic->add_option("--out", ga.out, "CSV output path (default stdout)");
  geodesic->add_option("--batch", ga.batch, "integrate N random geodesics with the batch kernel");
  geodesic->add_option("--kernel", ga.kernel, "batch kernel: scalar or avx2 (default: best available)");
  geodesic->add_option("--seed", ga.seed, "seed for --batch")->capture_default_str();

  auto* isometry = app.add_subcommand("isometry", "isotropy of G0, G1 and the H3 metrics");
  isometry->add_option("model", target, "G0, G1, H3:h0, H3:h1 or H3:h2")->required();
  isometry->add_option("--samples", samples, "family members to verify")->capture_default_str();
  isometry->add_option("--seed", seed, "sampling seed")->capture_default_str();

  std::size_t classify_samples = 0;
  auto* classify = app.add_subcommand("classify", "name a 4-dimensional algebra with an ad-invariant metric");
  classify->add_option("algebra", target, "catalog name or JSON path")->required();
  classify->add_option("--samples", classify_samples, "random basis changes to check invariance");
  classify->add_option("--seed", seed, "sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }

  try {
    if (*report) return cmd_report(target);
    if (*geometry) return cmd_geometry(target, metric);
    if (*geodesic) return cmd_geodesic(ga);
    if (*isometry) return cmd_isometry(target, samples, seed);
    if (*classify) return cmd_classify(target, classify_samples, seed);
  } catch (const JacobiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kJacobi;
  } catch (const DegenerateMetricError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDegenerate;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}
