#include "molent/cli/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>

#include "molent/error.hpp"
#include "molent/physics.hpp"

namespace molent::cli {
namespace {

using Suffix = std::pair<std::string_view, double>;

constexpr std::array<Suffix, 2> kDipole{{{"D", physics::kDebye}, {"Cm", 1.0}}};
constexpr std::array<Suffix, 3> kLength{{{"nm", 1e-9}, {"um", 1e-6}, {"m", 1.0}}};
constexpr std::array<Suffix, 5> kTime{{{"ps", 1e-12}, {"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}}};
constexpr std::array<Suffix, 4> kRate{{{"/s", 1.0}, {"1/s", 1.0}, {"s^-1", 1.0}, {"rad/s", 1.0}}};
constexpr std::array<Suffix, 3> kField{{{"V/m", 1.0}, {"kV/m", 1e3}, {"kV/cm", 1e5}}};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

template <std::size_t N>
double lookup(std::string_view unit, const std::array<Suffix, N>& table, std::string_view text) {
    for (const auto& [name, factor] : table)
        if (unit == name) return factor;
    std::string valid;
    for (const auto& [name, factor] : table) valid += (valid.empty() ? "" : ", ") + std::string(name);
    throw InvalidArgument("bad unit in '" + std::string(text) + "' (valid: " + valid + ")");
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
    const std::string_view s = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr == s.data())
        throw InvalidArgument("not a number: '" + std::string(text) + "'");
    if (!std::isfinite(value)) throw InvalidArgument("not finite: '" + std::string(text) + "'");
    const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr)));

    if (dim == Dimension::count) {
        if (!unit.empty() || value < 0.0 || value != std::floor(value))
            throw InvalidArgument("expected a non-negative integer: '" + std::string(text) + "'");
        return value;
    }
    if (unit.empty()) return value;
    switch (dim) {
        case Dimension::dipole: return value * lookup(unit, kDipole, text);
        case Dimension::length: return value * lookup(unit, kLength, text);
        case Dimension::time: return value * lookup(unit, kTime, text);
        case Dimension::rate: return value * lookup(unit, kRate, text);
        case Dimension::field: return value * lookup(unit, kField, text);
        case Dimension::count: break;
    }
    throw InvalidArgument("bad quantity '" + std::string(text) + "'");
}

}  // namespace molent::cli
