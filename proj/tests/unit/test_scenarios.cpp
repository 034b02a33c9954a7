#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "molent/error.hpp"
#include "molent/scenarios.hpp"

using namespace molent;

namespace {

IntegrationConfig quick() {
    IntegrationConfig c;
    c.rel_tol = 1e-9;
    c.abs_tol = 1e-11;
    return c;
}

double max_over(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST_CASE("catalog presets") {
    const auto& eg = find_scenario("free_eg");
    CHECK(eg.initial == "e1g2");
    CHECK(eg.params.omega0 == 1.5e11);
    CHECK(eg.params.J == 4e9);
    CHECK(eg.params.gamma == 1e6);
    CHECK(eg.horizon == 5e-9);
    CHECK(find_scenario("driven_resonant").params.Omega == 7e7);
    CHECK(find_scenario("driven_detuned_s").params.delta_l == 4e9);
    CHECK(find_scenario("driven_detuned_a").params.delta_l == -4e9);
    CHECK(find_scenario("switch_off").field_off_at_first_ss_max);
    CHECK(find_scenario("switch_off_g1e5").params.gamma == 1e5);
    CHECK(find_scenario("zeno_sweep").kind == ScenarioKind::zeno);
    for (const auto& s : catalog()) CHECK_NOTHROW(s.validate());
    CHECK_THROWS_AS(find_scenario("nope"), InvalidArgument);
}

TEST_CASE("apply_parameter") {
    Scenario s = find_scenario("free_eg");
    apply_parameter(s, "J", 1e9);
    apply_parameter(s, "horizon", 1e-9);
    CHECK(s.params.J == 1e9);
    CHECK(s.horizon == 1e-9);
    CHECK_THROWS_AS(apply_parameter(s, "mass", 1.0), InvalidArgument);
}

TEST_CASE("observable names round trip") {
    for (const auto o : all_observables()) CHECK(parse_observable(observable_name(o)) == o);
    CHECK_THROWS_AS(parse_observable("rho55"), InvalidArgument);
}

TEST_CASE("first maximum detection") {
    const double omega = 4e7;
    std::vector<double> t, v, flat, down;
    for (int i = 0; i <= 100; ++i) {
        t.push_back(i * 1e-9);
        v.push_back(std::pow(std::sin(std::sqrt(2.0) * omega * t.back()), 2));
        flat.push_back(0.5);
        down.push_back(std::pow(std::cos(1e8 * t.back()), 2));
    }
    const auto m = find_first_maximum(t, v);
    CHECK(std::abs(m.t - M_PI / (2 * std::sqrt(2.0) * omega)) < 1e-10);
    CHECK(m.value == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS_AS(find_first_maximum(t, flat), InvalidArgument);
    CHECK(find_first_maximum(t, down).t == 0.0);
    std::vector<double> rising(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) rising[i] = t[i];
    CHECK_FALSE(try_first_maximum(t, rising).has_value());
}

TEST_CASE("free_eg concurrence is |sin 2Jt| without dephasing") {
    Scenario s = find_scenario("free_eg");
    apply_parameter(s, "gamma", 0.0);
    s.samples = 501;
    const auto table = run_scenario(s, quick());
    const auto C = table.column(Observable::C);
    for (std::size_t i = 0; i < C.size(); ++i)
        CHECK(std::abs(C[i] - std::abs(std::sin(2 * 4e9 * table.times[i]))) < 1e-6);
}

TEST_CASE("symmetric and antisymmetric product states") {
    Scenario ll = find_scenario("free_LL");
    Scenario lr = find_scenario("free_LR");
    ll.samples = lr.samples = 501;
    const auto a = run_scenario(ll, quick());
    const auto b = run_scenario(lr, quick());
    // rho23 dephases at 2 gamma towards (rho22 + rho33) / 2 = 1/4.
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        const double leak = 0.25 * (1 - std::exp(-2 * 1e6 * a.times[i]));
        CHECK(std::abs(a.column(Observable::rho_ss)[i] - (0.5 - leak)) < 1e-9);
        CHECK(std::abs(a.column(Observable::rho_aa)[i] - leak) < 1e-9);
        CHECK(std::abs(b.column(Observable::rho_aa)[i] - (0.5 - leak)) < 1e-9);
        CHECK(std::abs(b.column(Observable::rho_ss)[i] - leak) < 1e-9);
    }
}

TEST_CASE("detuned drive: allowed and forbidden branches") {
    Scenario s = find_scenario("driven_detuned_s");
    s.samples = 401;
    const auto table = run_scenario(s, quick());
    const auto m = find_first_maximum(table.times, table.column(Observable::rho_ss));
    CHECK(std::abs(m.t / 0.028e-6 - 1) < 0.1);

    Scenario f = find_scenario("driven_detuned_a");
    f.samples = 401;
    CHECK(max_over(run_scenario(f, quick()).column(Observable::C)) < 0.05);
}

TEST_CASE("switch-off trigger and the coherence identity") {
    Scenario s = find_scenario("switch_off");
    apply_parameter(s, "horizon", 0.3e-6);
    s.samples = 301;
    const auto table = run_scenario(s, quick());
    REQUIRE(table.field_off_time.has_value());
    CHECK(std::abs(*table.field_off_time / 0.028e-6 - 1) < 0.1);
    const auto re23 = table.column(Observable::re_rho23);
    const auto ss = table.column(Observable::rho_ss);
    const auto p2 = table.column(Observable::rho22);
    const auto p3 = table.column(Observable::rho33);
    for (std::size_t i = 0; i < re23.size(); ++i) CHECK(std::abs(re23[i] - (ss[i] - (p2[i] + p3[i]) / 2)) < 1e-12);
}

TEST_CASE("ground and doubly excited starts are mirror images") {
    Scenario up = find_scenario("driven_resonant");
    apply_parameter(up, "horizon", 50e-9);
    up.zoom.reset();
    up.samples = 201;
    Scenario down = up;
    down.initial = "g1g2";
    const auto a = run_scenario(up, quick());
    const auto b = run_scenario(down, quick());
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        CHECK(std::abs(a.column(Observable::C)[i] - b.column(Observable::C)[i]) < 1e-9);
        CHECK(std::abs(a.column(Observable::rho44)[i] - b.column(Observable::rho11)[i]) < 1e-9);
        CHECK(std::abs(a.column(Observable::rho_ss)[i] - b.column(Observable::rho_ss)[i]) < 1e-9);
    }
}

TEST_CASE("concurrence maxima carry entangled-basis content") {
    Scenario s = find_scenario("free_eg");
    apply_parameter(s, "horizon", 2e-9);
    s.samples = 801;
    const auto maxima = concurrence_maxima(run_scenario(s, quick()));
    REQUIRE(!maxima.empty());
    for (const auto& m : maxima) {
        CHECK(m.C > 0.99);
        double total = 0;
        for (const double p : m.populations) total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("parallel runs match serial runs") {
    std::vector<Scenario> list{find_scenario("free_eg"), find_scenario("driven_detuned_a")};
    for (auto& s : list) s.samples = 101;
    apply_parameter(list[0], "horizon", 1e-9);
    const auto par = run_scenarios(list, quick(), RhsVariant::derived, 2);
    for (std::size_t k = 0; k < list.size(); ++k) CHECK(par[k].rows == run_scenario(list[k], quick()).rows);
}
