#pragma once

#include <string_view>

namespace molent::cli {

enum class Dimension { dipole, length, time, rate, field, count };

/// Parses a number with an optional unit suffix and returns SI:
///   dipole  D, Cm          (bare number = C m)
///   length  nm, um, m      (bare = m)
///   time    ps, ns, us, ms, s (bare = s)
///   rate    /s, 1/s, s^-1, rad/s (bare = s^-1)
///   field   V/m, kV/m, kV/cm (bare = V/m)
///   count   plain non-negative integer
/// Throws InvalidArgument on malformed input or a suffix foreign to `dim`.
double parse_quantity(std::string_view text, Dimension dim);

}  // namespace molent::cli
