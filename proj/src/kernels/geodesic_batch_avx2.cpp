#include <immintrin.h>

#include "kernels/geodesic_batch.hpp"

namespace metlie::kernels {

namespace {

struct Lanes {
  __m256d p[4];
  __m256d v[4];
};

inline void accel(int model, const __m256d* p, const __m256d* v, __m256d* a) {
  const __m256d x = p[1], y = p[2];
  const __m256d dt = v[0], dx = v[1], dy = v[2];
  const __m256d neg_dt = _mm256_sub_pd(_mm256_setzero_pd(), dt);
  a[0] = _mm256_setzero_pd();
  if (model == 0) {
    a[1] = _mm256_mul_pd(neg_dt, dy);
    a[2] = _mm256_mul_pd(dt, dx);
    a[3] = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(0.5), dt),
                         _mm256_add_pd(_mm256_mul_pd(x, dx), _mm256_mul_pd(y, dy)));
  } else {
    a[1] = _mm256_mul_pd(dt, dx);
    a[2] = _mm256_mul_pd(neg_dt, dy);
    a[3] = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(-0.5), dt),
                         _mm256_add_pd(_mm256_mul_pd(x, dy), _mm256_mul_pd(y, dx)));
  }
}

inline __m256d axpy(__m256d x, __m256d h, __m256d y) { return _mm256_add_pd(x, _mm256_mul_pd(h, y)); }

inline __m256d combine(__m256d k1, __m256d k2, __m256d k3, __m256d k4) {
  const __m256d two = _mm256_set1_pd(2.0);
  return _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(k1, _mm256_mul_pd(two, k2)), _mm256_mul_pd(two, k3)), k4);
}

void step(int model, Lanes& s, double h) {
  const __m256d hv = _mm256_set1_pd(h), hh = _mm256_set1_pd(0.5 * h), h6 = _mm256_set1_pd(h / 6.0);
  __m256d k1v[4], k2v[4], k3v[4], k4v[4];
  __m256d p2[4], v2[4], p3[4], v3[4], p4[4], v4[4];
  accel(model, s.p, s.v, k1v);
  for (int i = 0; i < 4; ++i) {
    p2[i] = axpy(s.p[i], hh, s.v[i]);
    v2[i] = axpy(s.v[i], hh, k1v[i]);
  }
  accel(model, p2, v2, k2v);
  for (int i = 0; i < 4; ++i) {
    p3[i] = axpy(s.p[i], hh, v2[i]);
    v3[i] = axpy(s.v[i], hh, k2v[i]);
  }
  accel(model, p3, v3, k3v);
  for (int i = 0; i < 4; ++i) {
    p4[i] = axpy(s.p[i], hv, v3[i]);
    v4[i] = axpy(s.v[i], hv, k3v[i]);
  }
  accel(model, p4, v4, k4v);
  for (int i = 0; i < 4; ++i) {
    s.p[i] = axpy(s.p[i], h6, combine(s.v[i], v2[i], v3[i], v4[i]));
    s.v[i] = axpy(s.v[i], h6, combine(k1v[i], k2v[i], k3v[i], k4v[i]));
  }
}

}  // namespace

void rk4_batch_avx2(int model, const BatchView& b, std::size_t full, double h, double h_last) {
  const std::size_t vec_end = b.n - b.n % 4;
  for (std::size_t j = 0; j < vec_end; j += 4) {
    Lanes s;
    for (int i = 0; i < 4; ++i) {
      s.p[i] = _mm256_loadu_pd(b.p[i] + j);
      s.v[i] = _mm256_loadu_pd(b.v[i] + j);
    }
    for (std::size_t k = 0; k < full; ++k) step(model, s, h);
    if (h_last > 0.0) step(model, s, h_last);
    for (int i = 0; i < 4; ++i) {
      _mm256_storeu_pd(b.p[i] + j, s.p[i]);
      _mm256_storeu_pd(b.v[i] + j, s.v[i]);
    }
  }
  rk4_batch_scalar_range(model, b, vec_end, b.n, full, h, h_last);
}

}  // namespace metlie::kernels
