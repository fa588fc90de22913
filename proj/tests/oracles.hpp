#pragma once

// Reference implementations used only by the tests. Each one takes a route
// unrelated to the library's own: direct sums instead of recurrences plus
// asymptotics, trapezoid rules on integral representations instead of
// continued fractions, hypergeometric series instead of the log-series.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using ld = long double;

inline constexpr ld pi_l = 3.141592653589793238462643383279502884L;
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr ld euler_l = 0.577215664901532860606512090082402431L;

// Frozen constants (mpmath, 30 digits).
inline constexpr double zeta3 = 1.2020569031595942853997381615;
inline constexpr double zeta5 = 1.0369277551433699263313654865;
inline constexpr double euler_gamma = 0.5772156649015328606065120901;

// psi^(m)(x) for real x > 0 by the defining sums, K terms plus an
// Euler-Maclaurin tail:
//   psi(x) = -gamma + sum_{k>=0} [1/(k+1) - 1/(k+x)]
//   psi^(m)(x) = (-1)^(m+1) m! sum_{k>=0} (k+x)^-(m+1)
inline double polygamma(int m, double x)
{
    const int K = 20000;
    if (m == 0) {
        ld s = -euler_l;
        for (int k = 0; k < K; ++k) s += 1.0L / (k + 1) - 1.0L / (k + x);
        // tail sum_{k>=K} [1/(k+1) - 1/(k+x)] = sum f(k), f(t) = 1/(t+1) - 1/(t+x)
        auto f = [&](ld t) { return 1.0L / (t + 1) - 1.0L / (t + x); };
        auto F = [&](ld t) { return std::log((t + 1) / (t + x)); }; // antiderivative
        auto f1 = [&](ld t) { return -1.0L / ((t + 1) * (t + 1)) + 1.0L / ((t + x) * (t + x)); };
        ld tail = -F(K) + 0.5L * f(K) - f1(K) / 12.0L;
        return static_cast<double>(s + tail);
    }
    ld s = 0.0L;
    for (int k = K - 1; k >= 0; --k) s += std::pow(static_cast<ld>(k) + x, -(m + 1));
    ld a = static_cast<ld>(K) + x;
    // sum_{k>=K} (k+x)^-(m+1) ~ a^-m/m + a^-(m+1)/2 + (m+1) a^-(m+2)/12
    ld tail = std::pow(a, -m) / m + 0.5L * std::pow(a, -(m + 1)) + (m + 1) * std::pow(a, -(m + 2)) / 12.0L;
    ld fact = (m == 1) ? 1.0L : 2.0L;
    ld sign = (m % 2 == 1) ? 1.0L : -1.0L;
    return static_cast<double>(sign * fact * (s + tail));
}

// Composite trapezoid on a periodic integrand: exponentially accurate.
template <class F>
ld periodic_trapezoid(F&& f, ld a, ld b, int n)
{
    ld h = (b - a) / n, s = 0.0L;
    for (int i = 0; i < n; ++i) s += f(a + i * h);
    return s * h;
}

// J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt, integer n.
inline double bessel_j_int(int n, double x)
{
    auto f = [&](ld t) { return std::cos(n * t - x * std::sin(t)); };
    // the integrand over [0, 2 pi] is periodic; halve
    return static_cast<double>(periodic_trapezoid(f, 0.0L, 2.0L * pi_l, 256) / (2.0L * pi_l));
}

// I_0(x) = (1/pi) int_0^pi exp(x cos t) dt.
inline double bessel_i0(double x)
{
    auto f = [&](ld t) { return std::exp(x * std::cos(t)); };
    return static_cast<double>(periodic_trapezoid(f, 0.0L, 2.0L * pi_l, 512) / (2.0L * pi_l));
}

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by the trapezoid rule,
// which converges geometrically for this doubly decaying integrand.
inline double bessel_k(double nu, double x)
{
    const ld h = 1.0L / 64;
    ld s = 0.5L * std::exp(-static_cast<ld>(x));
    for (int i = 1; i < 64 * 40; ++i) {
        ld t = i * h;
        ld v = std::exp(-x * std::cosh(t)) * std::cosh(nu * t);
        s += v;
        if (v < 1e-30L * s) break;
    }
    return static_cast<double>(s * h);
}

// Y_0 from its Neumann series; fine for x <= 8 in long double.
inline double bessel_y0(double x)
{
    ld q = static_cast<ld>(x) * x / 4.0L, term = 1.0L, H = 0.0L, j0 = 1.0L, rest = 0.0L;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<ld>(k) * k);
        H += 1.0L / k;
        j0 += term;
        rest -= term * H;
    }
    return static_cast<double>(2.0L / pi_l * ((std::log(x / 2.0L) + euler_l) * j0 + rest));
}

// P_nu(x) = 2F1(-nu, nu+1; 1; (1-x)/2); converges for x > -1, used for x >= -0.6.
inline cplx legendre_p_hyp(cplx nu, double x)
{
    std::complex<ld> n(nu.real(), nu.imag());
    ld z = (1.0L - x) / 2.0L;
    std::complex<ld> term = 1.0L, sum = 1.0L;
    for (int k = 0; k < 4000; ++k) {
        term *= (static_cast<ld>(k) - n) * (static_cast<ld>(k) + n + 1.0L) / ((k + 1.0L) * (k + 1.0L)) * z;
        sum += term;
        if (std::abs(term) < 1e-21L * std::abs(sum) && k > 4) break;
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Legendre polynomials and Q_n by the classical three-term recurrence from
// P_0 = 1, P_1 = x, Q_0 = artanh x, Q_1 = x artanh x - 1.
inline double legendre_poly(int n, double x)
{
    ld p0 = 1.0L, p1 = x;
    if (n == 0) return 1.0;
    for (int k = 1; k < n; ++k) {
        ld p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
    }
    return static_cast<double>(p1);
}

inline double legendre_q_int(int n, double x)
{
    ld q0 = std::atanh(static_cast<ld>(x)), q1 = x * q0 - 1.0L;
    if (n == 0) return static_cast<double>(q0);
    for (int k = 1; k < n; ++k) {
        ld q2 = ((2 * k + 1) * x * q1 - k * q0) / (k + 1);
        q0 = q1;
        q1 = q2;
    }
    return static_cast<double>(q1);
}

// Gauss-Legendre nodes on [-1, 1] by Newton on the recurrence.
inline void gauss_legendre(int n, std::vector<ld>& x, std::vector<ld>& w)
{
    x.assign(n, 0.0L);
    w.assign(n, 0.0L);
    for (int i = 0; i < n; ++i) {
        ld z = std::cos(pi_l * (i + 0.75L) / (n + 0.5L)), pp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            ld p0 = 1.0L, p1 = z;
            for (int k = 1; k < n; ++k) {
                ld p2 = ((2 * k + 1) * z * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            pp = n * (z * p1 - p0) / (z * z - 1.0L);
            ld dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-19L) break;
        }
        x[i] = z;
        w[i] = 2.0L / ((1.0L - z * z) * pp * pp);
    }
}

// int_a^b f for smooth f by composite Gauss-Legendre.
inline double gauss(const std::function<double(double)>& f, double a, double b, int panels = 16, int order = 20)
{
    std::vector<ld> x, w;
    gauss_legendre(order, x, w);
    ld h = (static_cast<ld>(b) - a) / panels, s = 0.0L;
    for (int p = 0; p < panels; ++p) {
        ld c = a + (p + 0.5L) * h;
        for (int i = 0; i < order; ++i) s += w[i] * f(static_cast<double>(c + 0.5L * h * x[i]));
    }
    return static_cast<double>(0.5L * h * s);
}

} // namespace oracle
