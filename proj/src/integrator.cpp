#include "metlie/integrator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <iomanip>
#include <ostream>

#include "kernels/geodesic_batch.hpp"
#include "metlie/errors.hpp"

namespace metlie {

namespace {

struct StepPlan {
  std::size_t full = 0;
  double last = 0.0;  // 0 when s_end is a whole number of steps
};

StepPlan plan_steps(double s_end, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InputError("step must be a positive finite number");
  if (!(s_end >= 0.0) || !std::isfinite(s_end)) throw InputError("s_end must be a nonnegative finite number");
  StepPlan plan;
  plan.full = static_cast<std::size_t>(std::floor(s_end / step + 1e-9));
  const double rest = s_end - static_cast<double>(plan.full) * step;
  if (rest > 1e-12 * std::max(1.0, s_end)) plan.last = rest;
  return plan;
}

bool finite(const Point& x) {
  for (double d : x)
    if (!std::isfinite(d)) return false;
  return true;
}

Point axpy(const Point& x, double h, const Point& y) {
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + h * y[i];
  return out;
}

/// One RK4 step of (p, v)' = (v, acc(p, v)).
template <class Acc>
void rk4_step(Point& p, Point& v, double h, const Acc& acc) {
  const Point k1p = v;
  const Point k1v = acc(p, v);
  const Point p2 = axpy(p, h / 2, k1p), v2 = axpy(v, h / 2, k1v);
  const Point k2p = v2;
  const Point k2v = acc(p2, v2);
  const Point p3 = axpy(p, h / 2, k2p), v3 = axpy(v, h / 2, k2v);
  const Point k3p = v3;
  const Point k3v = acc(p3, v3);
  const Point p4 = axpy(p, h, k3p), v4 = axpy(v, h, k3v);
  const Point k4p = v4;
  const Point k4v = acc(p4, v4);
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] += h / 6 * (k1p[i] + 2 * k2p[i] + 2 * k3p[i] + k4p[i]);
    v[i] += h / 6 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
  }
}

}  // namespace

MetricChart chart(std::string_view metric) {
  const Model m = metric_model(metric);
  const std::string name(metric);
  return MetricChart{name, chart_dim(m), [name](const Point& p) { return coordinate_metric(name, p); },
                     [name](const Point& p) { return coordinate_metric_partials(name, p); }};
}

MetricChart constant_chart(const SymMatrix& g) {
  const std::size_t n = g.size();
  return MetricChart{"constant", n, [g](const Point&) { return g; },
                     [n](const Point&) {
                       return Tensor3d(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
                     }};
}

Tensor3d christoffel(const MetricChart& chart, const Point& p) {
  const std::size_t n = chart.dim;
  if (p.size() != n) throw InputError("point has the wrong number of coordinates");
  const SymMatrix g = chart.metric_at(p);
  const Tensor3d d = chart.partials_at(p);
  Eigen::MatrixXd gm(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gm(i, j) = g[i][j];
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(gm);
  if (!lu.isInvertible()) throw NumericError("metric '" + chart.name + "' is singular at the requested point");
  const Eigen::MatrixXd ginv = lu.inverse();

  Tensor3d gamma(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += ginv(k, l) * (d[i][j][l] + d[j][i][l] - d[l][i][j]);
        gamma[k][i][j] = gamma[k][j][i] = 0.5 * s;
      }
  return gamma;
}

Point geodesic_acceleration(const MetricChart& chart, const Point& p, const Point& v) {
  const Tensor3d gamma = christoffel(chart, p);
  const std::size_t n = chart.dim;
  Point a(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[k] -= gamma[k][i][j] * v[i] * v[j];
  return a;
}

Point explicit_acceleration(Model m, const Point& p, const Point& v) {
  if (m == Model::kH3) throw InputError("explicit geodesic systems exist for G0 and G1 only");
  if (p.size() != 4 || v.size() != 4) throw InputError("G0/G1 states have four coordinates");
  const double x = p[1], y = p[2];
  const double dt = v[0], dx = v[1], dy = v[2];
  if (m == Model::kG0) return {0.0, -dt * dy, dt * dx, 0.5 * dt * (x * dx + y * dy)};
  return {0.0, dt * dx, -dt * dy, -0.5 * dt * (x * dy + y * dx)};
}

double energy(const MetricChart& chart, const Point& p, const Point& v) {
  const SymMatrix g = chart.metric_at(p);
  double e = 0.0;
  for (std::size_t i = 0; i < chart.dim; ++i)
    for (std::size_t j = 0; j < chart.dim; ++j) e += g[i][j] * v[i] * v[j];
  return e;
}

Trajectory integrate_geodesic(const MetricChart& chart, const Point& p0, const Point& v0, double s_end, double step) {
  if (p0.size() != chart.dim || v0.size() != chart.dim) throw InputError("initial data has the wrong dimension");
  const StepPlan plan = plan_steps(s_end, step);
  Trajectory traj;
  traj.step = step;
  Point p = p0, v = v0;
  traj.samples.push_back({0.0, p, v});
  auto acc = [&chart](const Point& x, const Point& dx) { return geodesic_acceleration(chart, x, dx); };
  const std::size_t total = plan.full + (plan.last > 0.0 ? 1 : 0);
  for (std::size_t k = 0; k < total; ++k) {
    const double h = k < plan.full ? step : plan.last;
    try {
      rk4_step(p, v, h, acc);
    } catch (const NumericError& err) {
      traj.complete = false;
      traj.error = err.what();
      return traj;
    }
    if (!finite(p) || !finite(v)) {
      traj.complete = false;
      traj.error = "non-finite state after s = " + std::to_string(traj.samples.back().s);
      return traj;
    }
    const double s = k < plan.full ? static_cast<double>(k + 1) * step : s_end;
    traj.samples.push_back({s, p, v});
  }
  return traj;
}

Point frame_velocity(Model m, const GroupElement& base, const std::array<double, 4>& a) {
  const auto f = frame(m, base);
  const std::size_t n = chart_dim(m);
  Point v(n, 0.0);
  // H3 frames are X1..X3, matched with a1..a3.
  const std::size_t offset = m == Model::kH3 ? 1 : 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t c = 0; c < n; ++c) v[c] += a[i + offset] * f[i][c];
  return v;
}

ClosedFormReport compare_to_closed_form(const GeodesicSpec& spec, double s_end, double step) {
  if (spec.model == Model::kH3) throw InputError("closed-form geodesics exist for G0 and G1 only");
  const MetricChart ch = chart(spec.model == Model::kG0 ? "g0" : "g1");
  ClosedFormReport rep;
  const Point p0 = spec.base.coords();
  const Point v0 = frame_velocity(spec.model, spec.base, spec.a);
  rep.trajectory = integrate_geodesic(ch, p0, v0, s_end, step);
  const double e0 = energy(ch, p0, v0);
  for (const auto& smp : rep.trajectory.samples) {
    const Point exact = geodesic_closed_form(spec, smp.s).coords();
    const Point exact_v = geodesic_closed_form_velocity(spec, smp.s);
    for (std::size_t i = 0; i < 4; ++i) {
      rep.max_error = std::max(rep.max_error, std::abs(smp.p[i] - exact[i]));
      rep.max_velocity_error = std::max(rep.max_velocity_error, std::abs(smp.v[i] - exact_v[i]));
    }
    rep.max_energy_drift = std::max(rep.max_energy_drift, std::abs(energy(ch, smp.p, smp.v) - e0));
  }
  return rep;
}

GroupElement flow_left_invariant_field(Model m, const std::array<double, 4>& a, double s_end, double step) {
  const StepPlan plan = plan_steps(s_end, step);
  auto field = [&](const Point& p) { return frame_velocity(m, GroupElement::from_coords(m, p), a); };
  Point p = identity(m).coords();
  const std::size_t total = plan.full + (plan.last > 0.0 ? 1 : 0);
  for (std::size_t k = 0; k < total; ++k) {
    const double h = k < plan.full ? step : plan.last;
    const Point k1 = field(p);
    const Point k2 = field(axpy(p, h / 2, k1));
    const Point k3 = field(axpy(p, h / 2, k2));
    const Point k4 = field(axpy(p, h, k3));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    if (!finite(p)) throw NumericError("non-finite state while integrating the left-invariant field");
  }
  return GroupElement::from_coords(m, p);
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  const auto old_flags = out.flags();
  const auto old_prec = out.precision();
  out << "s,t,x,y,z,vt,vx,vy,vz\n";
  out << std::setprecision(17);
  for (const auto& smp : traj.samples) {
    const bool h3 = smp.p.size() == 3;
    out << smp.s;
    if (h3) out << ',' << 0.0;
    for (double c : smp.p) out << ',' << c;
    if (h3) out << ',' << 0.0;
    for (double c : smp.v) out << ',' << c;
    out << '\n';
  }
  out.flags(old_flags);
  out.precision(old_prec);
}

const char* to_string(BatchKernel k) { return k == BatchKernel::kAvx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(METLIE_HAVE_AVX2_KERNEL) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

BatchKernel default_batch_kernel() { return avx2_available() ? BatchKernel::kAvx2 : BatchKernel::kScalar; }

void GeodesicBatch::resize(std::size_t n) {
  for (auto& a : p) a.assign(n, 0.0);
  for (auto& a : v) a.assign(n, 0.0);
}

void integrate_batch(GeodesicBatch& batch, double s_end, double step, BatchKernel kernel) {
  if (batch.model == Model::kH3) throw InputError("batched integration supports G0 and G1 only");
  const std::size_t n = batch.size();
  for (std::size_t i = 0; i < 4; ++i)
    if (batch.p[i].size() != n || batch.v[i].size() != n) throw InputError("batch arrays have different lengths");
  const StepPlan plan = plan_steps(s_end, step);
  kernels::BatchView view{};
  for (std::size_t i = 0; i < 4; ++i) {
    view.p[i] = batch.p[i].data();
    view.v[i] = batch.v[i].data();
  }
  view.n = n;
  const int model = batch.model == Model::kG0 ? 0 : 1;
  if (kernel == BatchKernel::kAvx2) {
    if (!avx2_available()) throw InputError("the AVX2 kernel is not available on this machine");
#if defined(METLIE_HAVE_AVX2_KERNEL)
    kernels::rk4_batch_avx2(model, view, plan.full, step, plan.last);
#endif
    return;
  }
  kernels::rk4_batch_scalar(model, view, plan.full, step, plan.last);
}

void integrate_batch(GeodesicBatch& batch, double s_end, double step) {
  integrate_batch(batch, s_end, step, default_batch_kernel());
}

}  // namespace metlie
