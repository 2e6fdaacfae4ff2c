#include "kernels/geodesic_batch.hpp"

namespace metlie::kernels {

namespace {

struct State {
  double p[4];
  double v[4];
};

inline void accel(int model, const double* p, const double* v, double* a) {
  const double x = p[1], y = p[2];
  const double dt = v[0], dx = v[1], dy = v[2];
  a[0] = 0.0;
  if (model == 0) {
    a[1] = -dt * dy;
    a[2] = dt * dx;
    a[3] = (0.5 * dt) * (x * dx + y * dy);
  } else {
    a[1] = dt * dx;
    a[2] = -dt * dy;
    a[3] = (-0.5 * dt) * (x * dy + y * dx);
  }
}

void step(int model, State& s, double h) {
  const double hh = 0.5 * h, h6 = h / 6.0;
  double k1v[4], k2v[4], k3v[4], k4v[4];
  double p2[4], v2[4], p3[4], v3[4], p4[4], v4[4];
  accel(model, s.p, s.v, k1v);
  for (int i = 0; i < 4; ++i) {
    p2[i] = s.p[i] + hh * s.v[i];
    v2[i] = s.v[i] + hh * k1v[i];
  }
  accel(model, p2, v2, k2v);
  for (int i = 0; i < 4; ++i) {
    p3[i] = s.p[i] + hh * v2[i];
    v3[i] = s.v[i] + hh * k2v[i];
  }
  accel(model, p3, v3, k3v);
  for (int i = 0; i < 4; ++i) {
    p4[i] = s.p[i] + h * v3[i];
    v4[i] = s.v[i] + h * k3v[i];
  }
  accel(model, p4, v4, k4v);
  for (int i = 0; i < 4; ++i) {
    s.p[i] = s.p[i] + h6 * (((s.v[i] + 2.0 * v2[i]) + 2.0 * v3[i]) + v4[i]);
    s.v[i] = s.v[i] + h6 * (((k1v[i] + 2.0 * k2v[i]) + 2.0 * k3v[i]) + k4v[i]);
  }
}

}  // namespace

void rk4_batch_scalar_range(int model, const BatchView& b, std::size_t begin, std::size_t end, std::size_t full,
                            double h, double h_last) {
  for (std::size_t j = begin; j < end; ++j) {
    State s;
    for (int i = 0; i < 4; ++i) {
      s.p[i] = b.p[i][j];
      s.v[i] = b.v[i][j];
    }
    for (std::size_t k = 0; k < full; ++k) step(model, s, h);
    if (h_last > 0.0) step(model, s, h_last);
    for (int i = 0; i < 4; ++i) {
      b.p[i][j] = s.p[i];
      b.v[i][j] = s.v[i];
    }
  }
}

void rk4_batch_scalar(int model, const BatchView& b, std::size_t full, double h, double h_last) {
  rk4_batch_scalar_range(model, b, 0, b.n, full, h, h_last);
}

}  // namespace metlie::kernels
