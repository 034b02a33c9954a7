#include "molent/zeno.hpp"

#include <cmath>
#include <string>

#include "molent/error.hpp"
#include "molent/integrator.hpp"

namespace molent {
namespace {

constexpr double kExtinct = 1e-15;

Matrix4 projector(const PureState& s) {
    Matrix4 p;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) p(i, j) = s[i] * std::conj(s[j]);
    return p;
}

}  // namespace

void ZenoProtocol::validate() const {
    params.validate();
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("zeno: tau must be > 0");
    if (count < 1) throw InvalidArgument("zeno: N must be >= 1");
    if (params.Omega != 0.0) throw InvalidArgument("zeno: protocol requires Omega = 0");
    if (!(tau * params.J < 1.0)) {
        throw InvalidArgument("zeno: tau * J = " + sci(tau * params.J) +
                              " violates tau < 1/J");
    }
}

std::vector<SurvivalPoint> run_zeno(const ZenoProtocol& protocol) {
    protocol.validate();
    const Matrix4 P = projector(protocol.target);
    Matrix4 rho = P;
    double survival = 1.0;

    std::vector<SurvivalPoint> out;
    out.reserve(protocol.count);
    for (std::size_t k = 1; k <= protocol.count; ++k) {
        const Matrix4 evolved = closed_form_free(rho, protocol.params, protocol.tau);
        const double p = expectation(evolved, protocol.target);
        if (!(p > kExtinct)) {
            throw Error("zeno: measurement chain extinguished at k = " + std::to_string(k) +
                        " (p = " + sci(p) + ")");
        }
        survival *= p;
        out.push_back({static_cast<double>(k) * protocol.tau, survival});
        rho = (1.0 / p) * (P * evolved * P);
    }
    return out;
}

AnalyticSurvival analytic_survival(double J, double tau, std::size_t count) {
    if (!(tau >= 0.0)) throw InvalidArgument("analytic_survival: tau must be >= 0");
    if (count < 1) throw InvalidArgument("analytic_survival: N must be >= 1");
    const double n = static_cast<double>(count);
    const double c = std::cos(J * tau);
    const double T = n * tau;
    return {std::pow(c * c, n), std::exp(-J * J * T * T / n)};
}

}  // namespace molent
