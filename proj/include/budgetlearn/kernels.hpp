#pragma once

#include <cstddef>
#include <string>

namespace budgetlearn::kernels {

// Dispatch table for the arithmetic inner loops everything else is built on:
// classifier forward/backward passes, pairwise distances for graphs and
// clustering, and the PCA matvec. A scalar reference implementation always
// exists; an AVX2+FMA variant is selected once at process start when the CPU
// supports it. The environment variable BUDGETLEARN_KERNELS=scalar|avx2
// forces a backend (avx2 falls back to scalar when unavailable).
//
// SIMD variants may sum in a different association order than the scalar
// reference, so results agree to rounding error, not bit-for-bit. Within one
// process the selected backend never changes, which keeps repeated runs of
// the same configuration byte-identical.
struct Ops {
    const char* name;
    double (*dot)(const double* a, const double* b, std::size_t n);
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    void (*scale)(double* x, double alpha, std::size_t n);
};

const Ops& scalar_ops();

// Null when the binary was built without AVX2 support.
const Ops* avx2_ops();

bool cpu_supports_avx2();

// Backend picked at first use; stable for the process lifetime.
const Ops& active_ops();
std::string active_backend_name();

inline double dot(const double* a, const double* b, std::size_t n) {
    return active_ops().dot(a, b, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
    active_ops().axpy(alpha, x, y, n);
}
inline double squared_distance(const double* a, const double* b, std::size_t n) {
    return active_ops().squared_distance(a, b, n);
}
inline double sum(const double* x, std::size_t n) {
    return active_ops().sum(x, n);
}
inline void scale(double* x, double alpha, std::size_t n) {
    active_ops().scale(x, alpha, n);
}

} // namespace budgetlearn::kernels
