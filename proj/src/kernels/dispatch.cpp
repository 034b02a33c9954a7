#include <atomic>
#include <cstdlib>
#include <string_view>

#include "molent/error.hpp"
#include "molent/kernels.hpp"

namespace molent::kernels {
namespace {

constexpr KernelTable kScalar{&scalar::matvec, &scalar::combine, &scalar::scaled_error_sq};
#if MOLENT_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2{&avx2::matvec, &avx2::combine, &avx2::scaled_error_sq};
#endif

bool cpu_has_avx2() {
#if MOLENT_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool avx2_usable() {
    static const bool usable = cpu_has_avx2();
    return usable;
}

// MOLENT_KERNELS=scalar|avx2 overrides the detected default; avx2 falls back
// to scalar on CPUs without it.
Backend initial_backend() {
    const char* env = std::getenv("MOLENT_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return Backend::scalar;
    return avx2_usable() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{initial_backend()};
    return b;
}

}  // namespace

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "unknown";
}

bool available(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2: return avx2_usable();
    }
    return false;
}

const KernelTable& table(Backend b) {
    if (!available(b)) {
        throw InvalidArgument("kernel backend not available: " + std::string(backend_name(b)));
    }
#if MOLENT_HAVE_AVX2_KERNELS
    if (b == Backend::avx2) return kAvx2;
#endif
    return kScalar;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

const KernelTable& active() { return table(active_backend()); }

void force_backend(Backend b) {
    (void)table(b);
    current().store(b, std::memory_order_relaxed);
}

void matvec(std::span<const double> a, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    if (n % 4 != 0 || n > kMaxLen || y.size() != n || a.size() != n * n) {
        throw InvalidArgument("matvec: size mismatch");
    }
    active().matvec(a.data(), x.data(), y.data(), n);
}

}  // namespace molent::kernels
