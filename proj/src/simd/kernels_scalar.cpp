#include "tide/simd/kernels.hpp"

namespace tide::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double squared_norm(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

void reflect(const double* center, const double* v, double* out,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * center[i] - v[i];
}

void accumulate(double* acc, const double* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += v[i];
}

void scale(double* v, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) v[i] *= s;
}

}  // namespace tide::simd::scalar
