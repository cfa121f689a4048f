#include "budgetlearn/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace budgetlearn::kernels {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sqdist_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

void scale_scalar(double* x, double alpha, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

const Ops kScalarOps{
    "scalar", dot_scalar, axpy_scalar, sqdist_scalar, sum_scalar, scale_scalar,
};

const Ops& pick_backend() {
    const char* forced = std::getenv("BUDGETLEARN_KERNELS");
    if (forced != nullptr) {
        if (std::strcmp(forced, "scalar") == 0) return kScalarOps;
        if (std::strcmp(forced, "avx2") == 0) {
            const Ops* v = avx2_ops();
            if (v != nullptr && cpu_supports_avx2()) return *v;
            return kScalarOps;
        }
    }
    const Ops* v = avx2_ops();
    if (v != nullptr && cpu_supports_avx2()) return *v;
    return kScalarOps;
}

} // namespace

const Ops& scalar_ops() { return kScalarOps; }

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

#if !BUDGETLEARN_AVX2_COMPILED
const Ops* avx2_ops() { return nullptr; }
#endif

const Ops& active_ops() {
    static const Ops& ops = pick_backend();
    return ops;
}

std::string active_backend_name() { return active_ops().name; }

} // namespace budgetlearn::kernels
