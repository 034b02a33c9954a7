#include <algorithm>
#include <cmath>

#include "molent/kernels.hpp"

namespace molent::kernels::scalar {

void matvec(const double* a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = x[j];
        const double* col = a + j * n;
        for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + col[i] * xj;
    }
}

void combine(double* out, const double* base, const double* coeff, const double* const* stages,
             std::size_t n_stages, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n_stages; ++k) acc = acc + coeff[k] * stages[k][i];
        out[i] = base[i] + acc;
    }
}

double scaled_error_sq(const double* err, const double* y0, const double* y1, double atol,
                       double rtol, std::size_t n) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double sk = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double q = err[i] / sk;
        lane[i % 4] = lane[i % 4] + q * q;
    }
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace molent::kernels::scalar
