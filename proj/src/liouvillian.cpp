#include "molent/liouvillian.hpp"

#include <string>

#include "molent/error.hpp"
#include "molent/kernels.hpp"

namespace molent {
namespace {

const cplx kI{0.0, 1.0};

// Bare basis |1> = g1g2, |2> = g1e2, |3> = e1g2, |4> = e1e2.
Matrix4 diag(double a, double b, double c, double d) {
    Matrix4 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    return m;
}

const Matrix4& sigma_z1() {
    static const Matrix4 m = diag(-1, -1, 1, 1);
    return m;
}

const Matrix4& sigma_z2() {
    static const Matrix4 m = diag(-1, 1, -1, 1);
    return m;
}

// Raising operators: molecule 1 maps |1> -> |3>, |2> -> |4>; molecule 2 maps |1> -> |2>, |3> -> |4>.
const Matrix4& sigma_plus1() {
    static const Matrix4 m = [] {
        Matrix4 r;
        r(2, 0) = 1.0;
        r(3, 1) = 1.0;
        return r;
    }();
    return m;
}

const Matrix4& sigma_plus2() {
    static const Matrix4 m = [] {
        Matrix4 r;
        r(1, 0) = 1.0;
        r(3, 2) = 1.0;
        return r;
    }();
    return m;
}

}  // namespace

std::string_view variant_name(RhsVariant v) {
    return v == RhsVariant::derived ? "derived" : "published";
}

RhsVariant parse_variant(std::string_view name) {
    if (name == "derived") return RhsVariant::derived;
    if (name == "published") return RhsVariant::published;
    throw InvalidArgument("unknown rhs variant '" + std::string(name) + "' (derived|published)");
}

Matrix4 hamiltonian(const SystemParams& params) {
    params.validate();
    const Matrix4& sp1 = sigma_plus1();
    const Matrix4& sp2 = sigma_plus2();
    const Matrix4 sm1 = sp1.adjoint();
    const Matrix4 sm2 = sp2.adjoint();

    Matrix4 h = (0.5 * params.splitting()) * (sigma_z1() + sigma_z2());
    h += params.J * (sp1 * sm2 + sp2 * sm1);
    h += params.Omega * (sp1 + sp2 + sm1 + sm2);
    return h;
}

Matrix4 dephasing(const Matrix4& rho, double gamma) {
    if (!(gamma >= 0.0)) throw InvalidArgument("gamma must be >= 0");
    Matrix4 out;
    for (const Matrix4* sz : {&sigma_z1(), &sigma_z2()}) {
        const Matrix4 s2 = *sz * *sz;
        out += s2 * rho + rho * s2 - 2.0 * (*sz * rho * *sz);
    }
    return (-gamma / 4.0) * out;
}

Matrix4 dephasing(const DensityMatrix& rho, double gamma) { return dephasing(rho.matrix(), gamma); }

Matrix4 derived_rhs(const Matrix4& rho, const SystemParams& params) {
    const Matrix4 h = hamiltonian(params);
    return (-kI) * (h * rho - rho * h) + dephasing(rho, params.gamma);
}

Matrix4 published_rhs(const Matrix4& rho, const SystemParams& params, Rho44Line line) {
    params.validate();
    const double W = params.Omega;
    const double J = params.J;
    const double D = params.splitting();
    const double g = params.gamma;
    // 1-based accessors so the lines below read like the element equations.
    const auto r = [&rho](int i, int j) { return rho(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)); };

    const cplx d11 = -kI * W * (r(3, 1) - r(1, 3) + r(2, 1) - r(1, 2));
    const cplx d22 = -kI * W * (r(1, 2) - r(2, 1) + r(4, 2) - r(2, 4)) - kI * J * (r(3, 2) - r(2, 3));
    const cplx d33 = -kI * W * (r(3, 1) - r(1, 3) + r(3, 4) - r(4, 3)) - kI * J * (r(3, 2) - r(2, 3));
    const cplx d44 = line == Rho44Line::closure
                         ? -d11 - d22 - d33
                         : -kI * W * (r(2, 4) + r(3, 4) - r(4, 2) - r(4, 3));
    const cplx d12 = kI * D * r(1, 2) - kI * W * (r(2, 2) - r(1, 1) + r(3, 2) - r(1, 4)) + kI * J * r(1, 3) - g * r(1, 2);
    const cplx d13 = kI * D * r(1, 3) - kI * W * (r(3, 3) - r(1, 1) + r(2, 3) - r(1, 4)) + kI * J * r(1, 2) - g * r(1, 3);
    const cplx d14 = kI * 2.0 * D * r(1, 4) - kI * W * (r(3, 4) + r(2, 4) - r(1, 2) - r(1, 3)) - 2.0 * g * r(1, 4);
    const cplx d23 = -kI * W * (r(1, 3) + r(4, 3) - r(2, 4) - r(2, 1)) - kI * J * (r(3, 3) - r(2, 2)) - 2.0 * g * r(2, 3);
    const cplx d24 = kI * D * r(2, 4) + kI * W * (r(2, 2) + r(2, 3) - r(4, 4) - r(1, 4)) - kI * J * r(3, 4) - g * r(2, 4);
    const cplx d34 = kI * D * r(3, 4) + kI * W * (r(3, 3) + r(3, 2) - r(4, 4) - r(1, 4)) - kI * J * r(2, 4) - g * r(3, 4);

    Matrix4 out;
    out(0, 0) = d11;
    out(1, 1) = d22;
    out(2, 2) = d33;
    out(3, 3) = d44;
    const std::array<std::pair<std::size_t, std::size_t>, 6> idx{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    const std::array<cplx, 6> val{d12, d13, d14, d23, d24, d34};
    for (std::size_t k = 0; k < 6; ++k) {
        out(idx[k].first, idx[k].second) = val[k];
        out(idx[k].second, idx[k].first) = std::conj(val[k]);
    }
    return out;
}

Matrix4 rhs(RhsVariant variant, const Matrix4& rho, const SystemParams& params) {
    return variant == RhsVariant::derived ? derived_rhs(rho, params) : published_rhs(rho, params);
}

Matrix4 rhs(RhsVariant variant, const DensityMatrix& rho, const SystemParams& params) {
    return rhs(variant, rho.matrix(), params);
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::pair<std::size_t, std::size_t>, 6> kUpper{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

}  // namespace

std::size_t packed_size(Layout layout) { return layout == Layout::full ? 32 : 16; }

std::vector<double> pack(const Matrix4& rho, Layout layout) {
    std::vector<double> x(packed_size(layout));
    if (layout == Layout::full) {
        for (std::size_t k = 0; k < 16; ++k) {
            x[k] = rho.a[k].real();
            x[16 + k] = rho.a[k].imag();
        }
    } else {
        for (std::size_t i = 0; i < 4; ++i) x[i] = rho(i, i).real();
        for (std::size_t k = 0; k < 6; ++k) {
            const cplx z = rho(kUpper[k].first, kUpper[k].second);
            x[4 + 2 * k] = z.real();
            x[5 + 2 * k] = z.imag();
        }
    }
    return x;
}

Matrix4 unpack(std::span<const double> x, Layout layout) {
    if (x.size() != packed_size(layout)) throw InvalidArgument("unpack: wrong packed size");
    Matrix4 m;
    if (layout == Layout::full) {
        for (std::size_t k = 0; k < 16; ++k) m.a[k] = cplx(x[k], x[16 + k]);
    } else {
        for (std::size_t i = 0; i < 4; ++i) m(i, i) = x[i];
        for (std::size_t k = 0; k < 6; ++k) {
            const cplx z(x[4 + 2 * k], x[5 + 2 * k]);
            m(kUpper[k].first, kUpper[k].second) = z;
            m(kUpper[k].second, kUpper[k].first) = std::conj(z);
        }
    }
    return m;
}

Generator::Generator(Layout layout, std::vector<double> column_major, double time_scale)
    : layout_(layout), n_(packed_size(layout)), a_(std::move(column_major)), time_scale_(time_scale) {
    if (a_.size() != n_ * n_) throw InvalidArgument("generator: matrix size mismatch");
    if (!(time_scale > 0.0)) throw InvalidArgument("generator: time scale must be > 0");
}

void Generator::apply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != n_ || y.size() != n_) throw InvalidArgument("generator: vector size mismatch");
    kernels::active().matvec(a_.data(), x.data(), y.data(), n_);
}

Generator make_generator(RhsVariant variant, const SystemParams& params, double time_scale,
                         Rho44Line line) {
    params.validate();
    if (!(time_scale > 0.0)) throw InvalidArgument("generator: time scale must be > 0");
    const Layout layout = variant == RhsVariant::derived ? Layout::full : Layout::hermitian;
    const std::size_t n = packed_size(layout);
    std::vector<double> a(n * n);
    std::vector<double> e(n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        e[col] = 1.0;
        const Matrix4 probe = unpack(e, layout);
        const Matrix4 d = variant == RhsVariant::derived ? derived_rhs(probe, params)
                                                         : published_rhs(probe, params, line);
        const auto packed = pack(d, layout);
        for (std::size_t row = 0; row < n; ++row) a[col * n + row] = packed[row] / time_scale;
        e[col] = 0.0;
    }
    return Generator(layout, std::move(a), time_scale);
}

}  // namespace molent
