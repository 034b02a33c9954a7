#pragma once

// Data-parallel inner loops of the propagator.
//
// Every kernel has a scalar reference version and an AVX2 version. The two
// produce bit-identical results: the vector code performs the same IEEE
// operations in the same order per element (no FMA), and reductions use four
// lane-ordered partial sums in both variants. The active backend is picked
// once at startup from CPUID and can be forced for testing.

#include <cstddef>
#include <span>
#include <string_view>

namespace molent::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

/// Maximum vector length supported by the kernels (packed density matrix).
inline constexpr std::size_t kMaxLen = 32;

struct KernelTable {
    /// y = A x for an n x n column-major A. n % 4 == 0, n <= kMaxLen.
    void (*matvec)(const double* a, const double* x, double* y, std::size_t n);

    /// out = base + sum_k coeff[k] * stage[k] (terms accumulated in k order,
    /// the sum added to base last). n % 4 == 0.
    void (*combine)(double* out, const double* base, const double* coeff,
                    const double* const* stages, std::size_t n_stages, std::size_t n);

    /// sum_i (err_i / (atol + rtol * max(|y0_i|, |y1_i|)))^2 with lane-ordered
    /// partial sums. n % 4 == 0.
    double (*scaled_error_sq)(const double* err, const double* y0, const double* y1,
                              double atol, double rtol, std::size_t n);
};

/// Table for a specific backend. Throws InvalidArgument when not available.
const KernelTable& table(Backend b);

/// Whether the CPU and build support `b`.
bool available(Backend b);

/// Backend used by the propagator.
Backend active_backend();
const KernelTable& active();

/// Overrides the runtime choice (tests, benchmarks). Throws when unavailable.
void force_backend(Backend b);

// Span conveniences over the active table.
void matvec(std::span<const double> a, std::span<const double> x, std::span<double> y);

namespace scalar {
void matvec(const double* a, const double* x, double* y, std::size_t n);
void combine(double* out, const double* base, const double* coeff, const double* const* stages,
             std::size_t n_stages, std::size_t n);
double scaled_error_sq(const double* err, const double* y0, const double* y1, double atol,
                       double rtol, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define MOLENT_HAVE_AVX2_KERNELS 1
namespace avx2 {
void matvec(const double* a, const double* x, double* y, std::size_t n);
void combine(double* out, const double* base, const double* coeff, const double* const* stages,
             std::size_t n_stages, std::size_t n);
double scaled_error_sq(const double* err, const double* y0, const double* y1, double atol,
                       double rtol, std::size_t n);
}  // namespace avx2
#else
#define MOLENT_HAVE_AVX2_KERNELS 0
#endif

}  // namespace molent::kernels
