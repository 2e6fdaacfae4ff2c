#pragma once

#include <cstddef>

namespace metlie::kernels {

/// Structure-of-arrays view of n geodesic states (t, x, y, z) and velocities.
struct BatchView {
  double* p[4];
  double* v[4];
  std::size_t n;
};

/// `full` RK4 steps of size h, then one of size h_last if h_last > 0.
/// model 0 = G0, 1 = G1.
void rk4_batch_scalar(int model, const BatchView& b, std::size_t full, double h, double h_last);
void rk4_batch_scalar_range(int model, const BatchView& b, std::size_t begin, std::size_t end, std::size_t full,
                            double h, double h_last);
void rk4_batch_avx2(int model, const BatchView& b, std::size_t full, double h, double h_last);

}  // namespace metlie::kernels
