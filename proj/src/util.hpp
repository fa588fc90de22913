#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "lm/types.hpp"

namespace lm::util {

inline constexpr double eps = std::numeric_limits<double>::epsilon();

// sin(pi x), cos(pi x) with exact zeros at integers / half-integers.
inline double sinpi(double x)
{
    double n = std::round(2.0 * x);
    double r = x - 0.5 * n;
    long k = static_cast<long>(std::fmod(n, 4.0));
    if (k < 0) k += 4;
    double s = std::sin(std::numbers::pi * r), c = std::cos(std::numbers::pi * r);
    switch (k) {
    case 0: return s;
    case 1: return c;
    case 2: return -s;
    default: return -c;
    }
}

inline double cospi(double x) { return sinpi(x + 0.5); }

inline cplx sinpi(cplx z)
{
    double y = std::numbers::pi * z.imag();
    return {sinpi(z.real()) * std::cosh(y), cospi(z.real()) * std::sinh(y)};
}

inline cplx cospi(cplx z)
{
    double y = std::numbers::pi * z.imag();
    return {cospi(z.real()) * std::cosh(y), -sinpi(z.real()) * std::sinh(y)};
}

inline bool is_nonpositive_integer(cplx z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// Distance from z to the nearest integer, measured in the complex plane.
inline double distance_to_integer(cplx z)
{
    return std::abs(z - cplx(std::round(z.real()), 0.0));
}

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace lm::util
