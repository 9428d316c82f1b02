#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tide::simd {

// Dense double-precision kernels behind the embedding geometry. Every
// kernel has a scalar reference implementation and, on x86-64 hardware
// that supports it, an AVX2 variant. The active variant is picked once at
// startup (CPU probe) and can be overridden with set_backend() or the
// TIDE_KERNELS environment variable ("scalar" or "avx2").
enum class Backend { kScalar, kAvx2 };

Backend active_backend();
// Returns false if the requested backend is unavailable on this CPU.
bool set_backend(Backend b);
std::vector<Backend> available_backends();
const char* backend_name(Backend b);

double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
double squared_norm(const double* a, std::size_t n);
// out[i] = 2 * center[i] - v[i]
void reflect(const double* center, const double* v, double* out,
             std::size_t n);
// acc[i] += v[i]
void accumulate(double* acc, const double* v, std::size_t n);
// v[i] *= s
void scale(double* v, double s, std::size_t n);

// Reference implementations, exposed so variant equivalence can be tested
// directly against them.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
double squared_norm(const double* a, std::size_t n);
void reflect(const double* center, const double* v, double* out,
             std::size_t n);
void accumulate(double* acc, const double* v, std::size_t n);
void scale(double* v, double s, std::size_t n);
}  // namespace scalar

#if defined(TIDE_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
double squared_norm(const double* a, std::size_t n);
void reflect(const double* center, const double* v, double* out,
             std::size_t n);
void accumulate(double* acc, const double* v, std::size_t n);
void scale(double* v, double s, std::size_t n);
}  // namespace avx2
#endif

}  // namespace tide::simd
