#pragma once

#include <functional>

#include "lm/types.hpp"

namespace lm {

using Integrand = std::function<cplx(double)>;
// Receives the node together with its exact distances to both ends of the
// interval, so integrands singular at an endpoint can avoid computing
// 1 - x or x - a by cancellation.
using EndpointIntegrand = std::function<cplx(double x, double from_a, double to_b)>;

struct OscTailSpec {
    double start = 0.0;
    // Spacing between successive sign changes of the leading oscillation
    // (pi/2 for products of J0 and Y0, pi for sin x).
    double quarter_period = 0.0;
    int max_segments = 4096;
    // The non-oscillating part of the remainder is taken to be a power
    // series in X^-power_step (1 for Bessel products, 1/2 when a lone
    // Bessel factor leaves half-integer powers).
    double power_step = 1.0;
};

namespace quad_defaults {
inline constexpr double finite = 1e-10;
inline constexpr double pv = 1e-9;
inline constexpr double oscillatory = 1e-7;
inline constexpr double decaying = 1e-10;
} // namespace quad_defaults

// Tanh-sinh on [a, b] with adaptive bisection once the level cap is hit.
// Non-convergence is reported through converged = false.
QuadResult integrate_finite(const Integrand& f, double a, double b,
                            double tol = quad_defaults::finite);
QuadResult integrate_finite_ep(const EndpointIntegrand& f, double a, double b,
                               double tol = quad_defaults::finite);

// Principal value of int_a^b f(xi) / (pole - xi) dxi.
QuadResult integrate_pv(const Integrand& f, double a, double b, double pole,
                        double tol = quad_defaults::pv);

// lim_{M -> inf} int_start^M f(x) dx for oscillatory f with algebraically
// decaying envelope. segments_used, if given, receives the number of
// segments integrated.
QuadResult integrate_osc_tail(const Integrand& f, const OscTailSpec& spec,
                              double tol = quad_defaults::oscillatory,
                              int* segments_used = nullptr);

// int_a^inf f(x) dx for f decaying exponentially (exp-sinh) or like a power
// x^-p with p > 1 (finite part plus a fitted power-law tail).
QuadResult integrate_decaying(const Integrand& f, double a,
                              double tol = quad_defaults::decaying);

} // namespace lm
