#include "tide/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace tide::simd {

namespace {

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*squared_distance)(const double*, const double*, std::size_t);
  double (*squared_norm)(const double*, std::size_t);
  void (*reflect)(const double*, const double*, double*, std::size_t);
  void (*accumulate)(double*, const double*, std::size_t);
  void (*scale)(double*, double, std::size_t);
};

constexpr KernelTable kScalarTable = {
    scalar::dot,      scalar::squared_distance, scalar::squared_norm,
    scalar::reflect,  scalar::accumulate,       scalar::scale};

#if defined(TIDE_HAVE_AVX2)
constexpr KernelTable kAvx2Table = {
    avx2::dot,      avx2::squared_distance, avx2::squared_norm,
    avx2::reflect,  avx2::accumulate,       avx2::scale};
#endif

bool cpu_has_avx2() {
#if defined(TIDE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

struct Dispatch {
  const KernelTable* table = &kScalarTable;
  Backend backend = Backend::kScalar;

  Dispatch() {
    Backend wanted = cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar;
    if (const char* env = std::getenv("TIDE_KERNELS")) {
      if (std::strcmp(env, "scalar") == 0) wanted = Backend::kScalar;
      if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2())
        wanted = Backend::kAvx2;
    }
    select(wanted);
  }

  bool select(Backend b) {
    switch (b) {
      case Backend::kScalar:
        table = &kScalarTable;
        backend = b;
        return true;
      case Backend::kAvx2:
#if defined(TIDE_HAVE_AVX2)
        if (cpu_has_avx2()) {
          table = &kAvx2Table;
          backend = b;
          return true;
        }
#endif
        return false;
    }
    return false;
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

bool set_backend(Backend b) { return dispatch().select(b); }

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::kScalar};
  if (cpu_has_avx2()) out.push_back(Backend::kAvx2);
  return out;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

double dot(const double* a, const double* b, std::size_t n) {
  return dispatch().table->dot(a, b, n);
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  return dispatch().table->squared_distance(a, b, n);
}

double squared_norm(const double* a, std::size_t n) {
  return dispatch().table->squared_norm(a, n);
}

void reflect(const double* center, const double* v, double* out,
             std::size_t n) {
  dispatch().table->reflect(center, v, out, n);
}

void accumulate(double* acc, const double* v, std::size_t n) {
  dispatch().table->accumulate(acc, v, n);
}

void scale(double* v, double s, std::size_t n) {
  dispatch().table->scale(v, s, n);
}

}  // namespace tide::simd
