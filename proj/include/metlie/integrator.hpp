#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "metlie/group_models.hpp"

namespace metlie {

using Point = std::vector<double>;
using SymMatrix = std::vector<std::vector<double>>;
using Tensor3d = std::vector<std::vector<std::vector<double>>>;

/// Coordinate chart with an analytic metric and analytic first partials.
struct MetricChart {
  std::string name;
  std::size_t dim = 0;
  std::function<SymMatrix(const Point&)> metric_at;
  std::function<Tensor3d(const Point&)> partials_at;  // d[k][i][j] = ∂_k g_ij
};

/// Charts "g0", "g1", "h1", "h2" built from the coordinate metrics.
MetricChart chart(std::string_view metric);
/// Constant metric on ℝⁿ.
MetricChart constant_chart(const SymMatrix& g);

/// Γ[k][i][j] = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij). Throws NumericError
/// when the metric is singular at p.
Tensor3d christoffel(const MetricChart& chart, const Point& p);

/// −Γ^k_ij v^i v^j.
Point geodesic_acceleration(const MetricChart& chart, const Point& p, const Point& v);

/// Right-hand side of the explicit second-order systems for G0 and G1 in
/// coordinates (t, x, y, z).
Point explicit_acceleration(Model m, const Point& p, const Point& v);

double energy(const MetricChart& chart, const Point& p, const Point& v);

struct Sample {
  double s = 0.0;
  Point p;
  Point v;
};

struct Trajectory {
  std::vector<Sample> samples;
  double step = 0.0;
  std::string method = "rk4";
  bool complete = true;   // false if integration stopped on a non-finite state
  std::string error;
};

/// Classical RK4 for (p, v)' = (v, −Γ(v, v)). Samples at s = k·step; a final
/// shorter step lands exactly on s_end. Throws InputError unless step > 0
/// and s_end ≥ 0.
Trajectory integrate_geodesic(const MetricChart& chart, const Point& p0, const Point& v0, double s_end, double step);

struct ClosedFormReport {
  double max_error = 0.0;          // sup-norm over samples and coordinates
  double max_velocity_error = 0.0;
  double max_energy_drift = 0.0;
  Trajectory trajectory;
};

/// Integrates the geodesic of `spec` in the chart g0/g1 and compares with
/// geodesic_closed_form on every sample. G0 and G1 only.
ClosedFormReport compare_to_closed_form(const GeodesicSpec& spec, double s_end, double step);

/// Initial chart velocity Σ a_i X_i(base).
Point frame_velocity(Model m, const GroupElement& base, const std::array<double, 4>& a);

/// RK4 integral curve of p ↦ Σ a_i X_i(p) from the identity up to s_end.
GroupElement flow_left_invariant_field(Model m, const std::array<double, 4>& a, double s_end, double step);

/// Writes `s,t,x,y,z,vt,vx,vy,vz` rows with 17 significant digits. H3
/// trajectories get t = vt = 0.
void write_csv(std::ostream& out, const Trajectory& traj);

// Batched RK4 on the explicit G0/G1 systems, structure-of-arrays layout.

enum class BatchKernel { kScalar, kAvx2 };

const char* to_string(BatchKernel k);
bool avx2_available();
/// kAvx2 when compiled in and supported by the running CPU.
BatchKernel default_batch_kernel();

struct GeodesicBatch {
  Model model = Model::kG0;
  std::array<std::vector<double>, 4> p;  // t, x, y, z
  std::array<std::vector<double>, 4> v;

  std::size_t size() const { return p[0].size(); }
  void resize(std::size_t n);
};

/// Advances every state from s = 0 to s_end in place. Throws InputError for
/// H3, a bad step, or when kAvx2 is requested but unavailable.
void integrate_batch(GeodesicBatch& batch, double s_end, double step, BatchKernel kernel);
void integrate_batch(GeodesicBatch& batch, double s_end, double step);

}  // namespace metlie
