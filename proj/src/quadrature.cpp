#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lm/errors.hpp"
#include "lm/quadrature.hpp"
#include "util.hpp"

namespace lm {

namespace {

constexpr double half_pi = 0.5 * std::numbers::pi;
constexpr double t_max = 4.5;
constexpr int min_level = 3;
constexpr int max_level = 7;
constexpr int max_depth = 8;

struct Estimate {
    cplx value;
    double err = 0.0;
    double mag = 0.0; // sum of |w f|, for the roundoff floor
    long evals = 0;
    bool converged = false;
};

[[noreturn]] void non_finite(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << "integrand is not finite at interior point x = " << x;
    throw DomainError(os.str());
}

// Tanh-sinh on the subinterval [lo, hi] of [a, b]; distances handed to f
// are measured from a and b.
Estimate tanh_sinh(const EndpointIntegrand& f, double a, double b, double lo, double hi,
                   double abs_tol)
{
    const double half = 0.5 * (hi - lo);
    const double off_a = lo - a, off_b = b - hi;
    Estimate e;
    auto eval = [&](double from_lo, double to_hi) -> cplx {
        double x = from_lo <= to_hi ? lo + from_lo : hi - to_hi;
        cplx v = f(x, off_a + from_lo, off_b + to_hi);
        ++e.evals;
        if (!util::finite(v)) non_finite(x);
        return v;
    };
    // contribution of the node pair at +-t
    auto pair = [&](double t, double& mag) -> cplx {
        double u = half_pi * std::sinh(t);
        double q = std::exp(-2.0 * u);
        double d = half * 2.0 * q / (1.0 + q); // distance to the nearer endpoint
        if (d <= 0.0) return 0.0;
        double w = half * half_pi * std::cosh(t) * 4.0 * q / ((1.0 + q) * (1.0 + q));
        cplx s = eval(2.0 * half - d, d) + eval(d, 2.0 * half - d);
        mag += w * (std::abs(s));
        return w * s;
    };

    double mag = 0.0;
    cplx sum = half * half_pi * eval(half, half);
    mag += std::abs(sum);
    for (int k = 1; k <= static_cast<int>(t_max); ++k) sum += pair(k, mag);
    cplx prev = sum;
    double h = 1.0;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (double t = h; t <= t_max; t += 2.0 * h) sum += pair(t, mag);
        cplx cur = sum * h;
        e.value = cur;
        e.mag = mag * h;
        e.err = std::abs(cur - prev) + 4.0 * util::eps * e.mag;
        prev = cur;
        if (level >= min_level && e.err <= abs_tol) {
            e.converged = true;
            break;
        }
    }
    return e;
}

Estimate adaptive(const EndpointIntegrand& f, double a, double b, double lo, double hi,
                  double abs_tol, int depth)
{
    Estimate e = tanh_sinh(f, a, b, lo, hi, abs_tol);
    if (e.converged || depth >= max_depth) return e;
    // below the roundoff floor bisection cannot help
    if (abs_tol < 16.0 * util::eps * e.mag) return e;
    double mid = 0.5 * (lo + hi);
    Estimate l = adaptive(f, a, b, lo, mid, 0.5 * abs_tol, depth + 1);
    Estimate r = adaptive(f, a, b, mid, hi, 0.5 * abs_tol, depth + 1);
    Estimate s;
    s.value = l.value + r.value;
    s.err = l.err + r.err;
    s.mag = l.mag + r.mag;
    s.evals = e.evals + l.evals + r.evals;
    s.converged = l.converged && r.converged;
    return s;
}

} // namespace

QuadResult integrate_finite_ep(const EndpointIntegrand& f, double a, double b, double tol)
{
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("integrate_finite: need finite a < b");
    if (!(tol > 0.0)) throw DomainError("integrate_finite: tolerance must be positive");
    // first pass fixes the scale of the relative tolerance
    Estimate e = tanh_sinh(f, a, b, a, b, tol);
    double target = std::max(tol, tol * std::abs(e.value));
    if (!e.converged || e.err > target) {
        long first = e.evals;
        if (e.err > target && target >= 16.0 * util::eps * e.mag) {
            double mid = 0.5 * (a + b);
            Estimate l = adaptive(f, a, b, a, mid, 0.5 * target, 1);
            Estimate r = adaptive(f, a, b, mid, b, 0.5 * target, 1);
            e.value = l.value + r.value;
            e.err = l.err + r.err;
            e.mag = l.mag + r.mag;
            e.evals = first + l.evals + r.evals;
        }
        target = std::max(tol, tol * std::abs(e.value));
    }
    QuadResult q;
    q.value = e.value;
    q.err_est = e.err;
    q.n_evals = e.evals;
    q.converged = e.err <= target;
    return q;
}

namespace {

// The piece [e, x1] between an endpoint and its nearest interior double is
// invisible to an integrand of x alone. Model it as c u^-alpha with alpha
// read off samples at u1, 4 u1 and 16 u1. Nodes a few ulps out are also
// evaluated at rounded abscissae, which costs a few percent of the tail
// for inverse-square-root singularities; that goes into err too.
struct Tail {
    cplx value;
    double err = 0.0;
};

Tail endpoint_tail(const Integrand& f, double e, double inward)
{
    double u1 = std::abs(std::nextafter(e, inward) - e);
    Tail t;
    // endpoints at zero resolve down to the denormals
    if (u1 < 1e-200 || std::abs(inward - e) < 512.0 * u1) return t;
    double dir = inward > e ? 1.0 : -1.0;
    cplx f1 = f(e + dir * u1), f2 = f(e + dir * 4.0 * u1), f3 = f(e + dir * 16.0 * u1);
    if (!util::finite(f1) || !util::finite(f2) || !util::finite(f3)) return t;
    auto piece = [u1, f1](double alpha) { return f1 * u1 / (1.0 - alpha); };
    auto slope = [](cplx near, cplx far) {
        double n = std::abs(near), r = std::abs(far);
        if (!(n > 0.0) || !(r > 0.0)) return 0.0;
        return std::clamp(std::log(n / r) / std::log(4.0), 0.0, 0.95);
    };
    double a12 = slope(f1, f2), a23 = slope(f2, f3);
    t.value = piece(a12);
    t.err = std::abs(piece(a12) - piece(a23)) + 0.1 * std::abs(t.value);
    return t;
}

} // namespace

QuadResult integrate_finite(const Integrand& f, double a, double b, double tol)
{
    const double ua = std::nextafter(a, b) - a, ub = b - std::nextafter(b, a);
    auto g = [&](double x, double da, double db) -> cplx {
        // the stretch within one ulp of an endpoint goes to endpoint_tail
        if (da < ua || db < ub || x <= a || x >= b) return 0.0;
        return f(x);
    };
    QuadResult q = integrate_finite_ep(g, a, b, tol);
    for (Tail t : {endpoint_tail(f, a, b), endpoint_tail(f, b, a)}) {
        q.value += t.value;
        q.err_est += t.err;
    }
    q.n_evals += 6;
    q.converged = q.converged && q.err_est <= std::max(tol, tol * std::abs(q.value));
    return q;
}

QuadResult integrate_pv(const Integrand& f, double a, double b, double pole, double tol)
{
    if (!(a < pole && pole < b)) throw DomainError("integrate_pv: need a < pole < b");
    if (std::min(pole - a, b - pole) < 1e-6 * (b - a))
        throw DomainError("integrate_pv: pole too close to an endpoint");
    const cplx fp = f(pole);
    if (!util::finite(fp)) non_finite(pole);
    const bool left_short = pole - a <= b - pole;
    const double delta = left_short ? pole - a : b - pole;

    // symmetric part: int_0^delta (f(p - t) - f(p + t)) / t dt
    const double tiny = 1e-7 * delta;
    bool have_tiny = false;
    cplx g_tiny;
    std::function<cplx(double)> g_raw = [&](double t) -> cplx {
        return (f(pole - t) - f(pole + t)) / t;
    };
    auto sym = [&](double t, double, double to_end) -> cplx {
        if (t < tiny) {
            // the difference quotient is pure roundoff this close to the pole
            if (!have_tiny) {
                g_tiny = g_raw(tiny);
                have_tiny = true;
            }
            return g_tiny;
        }
        double xm = left_short ? a + to_end : pole - t;
        double xp = left_short ? pole + t : b - to_end;
        if (xm <= a || xp >= b) return 0.0;
        return (f(xm) - f(xp)) / t;
    };
    QuadResult s = integrate_finite_ep(sym, 0.0, delta, 0.5 * tol);

    QuadResult r;
    double lo = left_short ? pole + delta : a;
    double hi = left_short ? b : pole - delta;
    if (hi > lo) {
        auto rem = [&](double x) -> cplx { return (f(x) - fp) / (pole - x); };
        r = integrate_finite(rem, lo, hi, 0.5 * tol);
    } else {
        r.converged = true;
    }
    QuadResult q;
    q.value = fp * std::log((pole - a) / (b - pole)) + s.value + r.value;
    q.err_est = s.err_est + r.err_est;
    q.n_evals = 1 + s.n_evals + r.n_evals + (have_tiny ? 2 : 0);
    q.converged = s.converged && r.converged;
    return q;
}

} // namespace lm
