#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "molent/integrator.hpp"
#include "molent/kernels.hpp"
#include "molent/liouvillian.hpp"
#include "molent/qcore.hpp"

using namespace molent;
namespace k = molent::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> randv(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("scalar backend always available") {
    CHECK(k::available(k::Backend::scalar));
    CHECK(k::backend_name(k::Backend::scalar) == "scalar");
}

TEST_CASE("backends are bit-identical") {
    if (!k::available(k::Backend::avx2)) {
        MESSAGE("avx2 not available, equivalence not exercised");
        return;
    }
    const auto& s = k::table(k::Backend::scalar);
    const auto& v = k::table(k::Backend::avx2);
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 200; ++rep) {
        for (std::size_t n = 4; n <= k::kMaxLen; n += 4) {
            const auto a = randv(rng, n * n, 1e3), x = randv(rng, n);
            std::vector<double> y1(n), y2(n);
            s.matvec(a.data(), x.data(), y1.data(), n);
            v.matvec(a.data(), x.data(), y2.data(), n);
            CHECK(same_bits(y1, y2));

            const std::size_t st = 1 + static_cast<std::size_t>(rep % 7);
            std::vector<std::vector<double>> stages;
            std::vector<const double*> ptrs;
            for (std::size_t i = 0; i < st; ++i) stages.push_back(randv(rng, n));
            for (auto& p : stages) ptrs.push_back(p.data());
            const auto coeff = randv(rng, st, 0.5), base = randv(rng, n);
            std::vector<double> o1(n), o2(n);
            s.combine(o1.data(), base.data(), coeff.data(), ptrs.data(), st, n);
            v.combine(o2.data(), base.data(), coeff.data(), ptrs.data(), st, n);
            CHECK(same_bits(o1, o2));

            const auto err = randv(rng, n, 1e-9), y0 = randv(rng, n), yy = randv(rng, n);
            const double e1 = s.scaled_error_sq(err.data(), y0.data(), yy.data(), 1e-12, 1e-10, n);
            const double e2 = v.scaled_error_sq(err.data(), y0.data(), yy.data(), 1e-12, 1e-10, n);
            CHECK(std::memcmp(&e1, &e2, sizeof e1) == 0);
        }
    }
}

TEST_CASE("scalar kernels match a plain reference") {
    const auto& s = k::table(k::Backend::scalar);
    std::mt19937_64 rng(9);
    const std::size_t n = 8;
    const auto a = randv(rng, n * n), x = randv(rng, n);
    std::vector<double> y(n);
    s.matvec(a.data(), x.data(), y.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0;
        for (std::size_t j = 0; j < n; ++j) r += a[j * n + i] * x[j];
        CHECK(y[i] == doctest::Approx(r).epsilon(1e-14));
    }
    const std::vector<double> err{1, 2, 3, 4}, y0{1, -1, 0, 0}, y1{0, 0, 2, 0};
    // scale_i = 1 + max(|y0|,|y1|): 2, 2, 3, 1
    CHECK(s.scaled_error_sq(err.data(), y0.data(), y1.data(), 1.0, 1.0, 4) ==
          doctest::Approx(0.25 + 1 + 1 + 16));
}

TEST_CASE("trajectories identical across backends") {
    if (!k::available(k::Backend::avx2)) return;
    const auto run = [] {
        IntegrationConfig c;
        c.sample_times = IntegrationConfig::uniform_samples(50e-9, 101);
        const auto tr = integrate(RhsVariant::derived, pure_density(named_state("e1e2")),
                                  SystemParams::driven_field(4e9, 4e9, 4e7, 1e6), c);
        std::vector<double> flat;
        for (const auto& s : tr.samples)
            for (const cplx& z : s.rho.matrix().a) {
                flat.push_back(z.real());
                flat.push_back(z.imag());
            }
        return flat;
    };
    const auto prev = k::active_backend();
    k::force_backend(k::Backend::scalar);
    const auto a = run();
    k::force_backend(k::Backend::avx2);
    const auto b = run();
    k::force_backend(prev);
    CHECK(same_bits(a, b));
}
