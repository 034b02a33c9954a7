#include <doctest.h>

#include <cmath>

#include "molent/error.hpp"
#include "molent/zeno.hpp"

using namespace molent;

namespace {

ZenoProtocol protocol(double tau, std::size_t n, double J = 4e9, double gamma = 0) {
    ZenoProtocol p;
    p.tau = tau;
    p.count = n;
    p.params = SystemParams::free(1.5e11, J, gamma);
    return p;
}

}  // namespace

TEST_CASE("single measurement") {
    for (const double tau : {1e-12, 0.05e-9, 0.2e-9}) {
        const auto s = run_zeno(protocol(tau, 1));
        REQUIRE(s.size() == 1);
        CHECK(std::abs(s[0].survival - std::pow(std::cos(4e9 * tau), 2)) < 1e-10);
        CHECK(s[0].t == tau);
    }
}

TEST_CASE("frequent measurement at T = 1 ns") {
    const auto s = run_zeno(protocol(0.01e-9, 100));
    // Exact product [cos^2(0.04)]^100, evaluated independently.
    CHECK(std::abs(s.back().survival - 0.8521074160871616) < 1e-9);
    CHECK(std::abs(s.back().survival / std::exp(-0.16) - 1) < 0.01);
    CHECK(std::abs(s.back().t - 1e-9) < 1e-21);
}

TEST_CASE("no exchange: target is stationary") {
    for (const auto& p : run_zeno(protocol(0.1e-9, 50, 0.0, 0.0))) CHECK(std::abs(p.survival - 1) < 1e-12);
}

TEST_CASE("analytic survival") {
    const auto a = analytic_survival(4e9, 0.1e-9, 10);
    CHECK(a.exact == doctest::Approx(0.19309357143080).epsilon(1e-10));
    CHECK(a.gaussian == doctest::Approx(std::exp(-1.6)).epsilon(1e-12));
    const auto z = analytic_survival(4e9, 0.0, 7);
    CHECK(z.exact == 1.0);
    CHECK(z.gaussian == 1.0);
    for (const double tau : {0.005e-9, 0.002e-9, 0.001e-9}) {  // J tau <= 0.02
        const auto n = static_cast<std::size_t>(std::llround(1e-9 / tau));
        const auto b = analytic_survival(4e9, tau, n);
        CHECK(std::abs(b.exact / b.gaussian - 1) < 0.01);
    }
}

TEST_CASE("protocol properties") {
    const double T = 1e-9;
    double previous_final = 0;
    for (const double tau : {0.1e-9, 0.01e-9, 0.005e-9}) {
        const auto n = static_cast<std::size_t>(std::llround(T / tau));
        const auto clean = run_zeno(protocol(tau, n));
        const auto noisy = run_zeno(protocol(tau, n, 4e9, 1e8));
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(clean[k].survival - analytic_survival(4e9, tau, k + 1).exact) < 1e-9);
            CHECK(noisy[k].survival <= clean[k].survival + 1e-15);
            if (k > 0) CHECK(clean[k].survival <= clean[k - 1].survival);
        }
        CHECK(clean.back().survival > previous_final);  // shorter interval, higher survival
        previous_final = clean.back().survival;
    }
}

TEST_CASE("protocol validation") {
    CHECK_THROWS_AS(run_zeno(protocol(0.0, 10)), InvalidArgument);
    CHECK_THROWS_AS(run_zeno(protocol(1e-11, 0)), InvalidArgument);
    CHECK_THROWS_AS(run_zeno(protocol(0.25e-9, 4)), InvalidArgument);  // tau J = 1
    ZenoProtocol p = protocol(1e-11, 10);
    p.params = SystemParams::driven_field(0, 4e9, 1e7, 0);
    CHECK_THROWS_AS(run_zeno(p), InvalidArgument);
}
