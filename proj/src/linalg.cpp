#include "molent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "molent/error.hpp"

namespace molent::linalg {
namespace {

template <typename T>
std::complex<T>& at(CMatrix4<T>& m, int i, int j) {
    return m[static_cast<std::size_t>(i * 4 + j)];
}

template <typename T>
T abs1(const std::complex<T>& z) {
    return std::abs(z.real()) + std::abs(z.imag());
}

// Givens rotation G = [[c, s], [-conj(s), c]] with G * (x, y)^T = (r, 0)^T.
template <typename T>
struct Givens {
    T c;
    std::complex<T> s;
};

template <typename T>
Givens<T> make_givens(const std::complex<T>& x, const std::complex<T>& y) {
    const T ay = std::abs(y);
    if (ay == T(0)) return {T(1), {}};
    const T ax = std::abs(x);
    if (ax == T(0)) return {T(0), std::conj(y) / ay};
    const T r = std::hypot(ax, ay);
    return {ax / r, (x / ax) * std::conj(y) / r};
}

}  // namespace

template <typename T>
CMatrix4<T> hessenberg(CMatrix4<T> a) {
    using C = std::complex<T>;
    for (int k = 0; k < 2; ++k) {
        // Householder vector annihilating a(k+2.., k).
        T alpha_norm = 0;
        for (int i = k + 1; i < 4; ++i) alpha_norm += std::norm(at(a, i, k));
        alpha_norm = std::sqrt(alpha_norm);
        T tail = 0;
        for (int i = k + 2; i < 4; ++i) tail += std::norm(at(a, i, k));
        if (tail == T(0)) continue;

        const C x0 = at(a, k + 1, k);
        const T ax0 = std::abs(x0);
        const C phase = ax0 == T(0) ? C(1) : x0 / ax0;
        std::array<C, 4> v{};
        v[static_cast<std::size_t>(k + 1)] = x0 + phase * alpha_norm;
        for (int i = k + 2; i < 4; ++i) v[static_cast<std::size_t>(i)] = at(a, i, k);
        T vnorm2 = 0;
        for (int i = k + 1; i < 4; ++i) vnorm2 += std::norm(v[static_cast<std::size_t>(i)]);
        const T beta = T(2) / vnorm2;

        // A <- (I - beta v v^H) A
        for (int j = 0; j < 4; ++j) {
            C dot{};
            for (int i = k + 1; i < 4; ++i) dot += std::conj(v[static_cast<std::size_t>(i)]) * at(a, i, j);
            dot *= beta;
            for (int i = k + 1; i < 4; ++i) at(a, i, j) -= v[static_cast<std::size_t>(i)] * dot;
        }
        // A <- A (I - beta v v^H)
        for (int i = 0; i < 4; ++i) {
            C dot{};
            for (int j = k + 1; j < 4; ++j) dot += at(a, i, j) * v[static_cast<std::size_t>(j)];
            dot *= beta;
            for (int j = k + 1; j < 4; ++j) at(a, i, j) -= dot * std::conj(v[static_cast<std::size_t>(j)]);
        }
        for (int i = k + 2; i < 4; ++i) at(a, i, k) = C{};
    }
    return a;
}

template <typename T>
std::array<std::complex<T>, 4> eigenvalues(const CMatrix4<T>& input) {
    using C = std::complex<T>;
    constexpr T eps = std::numeric_limits<T>::epsilon();
    constexpr int kMaxIterPerEigenvalue = 60;

    CMatrix4<T> h = hessenberg(input);
    std::array<C, 4> eig{};

    T scale = 0;
    for (const auto& z : h) scale = std::max(scale, abs1(z));
    if (scale == T(0)) return eig;

    int hi = 3;
    int iter = 0;
    while (hi >= 0) {
        if (hi == 0) {
            eig[0] = at(h, 0, 0);
            break;
        }
        // Locate the start of the active unreduced block.
        int lo = hi;
        while (lo > 0) {
            const T sub = abs1(at(h, lo, lo - 1));
            T diag = abs1(at(h, lo, lo)) + abs1(at(h, lo - 1, lo - 1));
            if (diag == T(0)) diag = scale;
            if (sub <= eps * diag) {
                at(h, lo, lo - 1) = C{};
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig[static_cast<std::size_t>(hi)] = at(h, hi, hi);
            --hi;
            iter = 0;
            continue;
        }
        if (++iter > kMaxIterPerEigenvalue) {
            throw Error("QR eigenvalue iteration did not converge");
        }

        // Wilkinson shift: eigenvalue of the trailing 2x2 block closest to h(hi,hi).
        C mu;
        if (iter % 11 == 0) {
            mu = at(h, hi, hi) + C(T(0.75) * abs1(at(h, hi, hi - 1)), T(0));  // exceptional shift
        } else {
            const C a = at(h, hi - 1, hi - 1);
            const C b = at(h, hi - 1, hi);
            const C c = at(h, hi, hi - 1);
            const C d = at(h, hi, hi);
            const C half = (a - d) / T(2);
            const C disc = std::sqrt(half * half + b * c);
            const C m1 = (a + d) / T(2) + disc;
            const C m2 = (a + d) / T(2) - disc;
            mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
        }

        // One shifted QR sweep on rows/cols lo..hi: H - mu I = QR, H <- RQ + mu I.
        for (int k = lo; k <= hi; ++k) at(h, k, k) -= mu;
        std::array<Givens<T>, 3> rot{};
        for (int k = lo; k < hi; ++k) {
            const auto g = make_givens(at(h, k, k), at(h, k + 1, k));
            rot[static_cast<std::size_t>(k)] = g;
            for (int j = k; j <= hi; ++j) {
                const C x = at(h, k, j);
                const C y = at(h, k + 1, j);
                at(h, k, j) = g.c * x + g.s * y;
                at(h, k + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
        }
        for (int k = lo; k < hi; ++k) {
            const auto& g = rot[static_cast<std::size_t>(k)];
            const int row_end = std::min(k + 2, hi);
            for (int i = lo; i <= row_end; ++i) {
                const C x = at(h, i, k);
                const C y = at(h, i, k + 1);
                at(h, i, k) = x * g.c + y * std::conj(g.s);
                at(h, i, k + 1) = -x * g.s + y * g.c;
            }
        }
        for (int k = lo; k <= hi; ++k) at(h, k, k) += mu;
    }
    return eig;
}

template CMatrix4<double> hessenberg(CMatrix4<double>);
template CMatrix4<long double> hessenberg(CMatrix4<long double>);
template std::array<std::complex<double>, 4> eigenvalues(const CMatrix4<double>&);
template std::array<std::complex<long double>, 4> eigenvalues(const CMatrix4<long double>&);

}  // namespace molent::linalg
