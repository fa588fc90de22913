#include <cmath>
#include <string>

#include "lm/constants.hpp"
#include "lm/errors.hpp"
#include "lm/quadrature.hpp"
#include "lm/special_functions.hpp"
#include "util.hpp"

// Ferrers functions P_nu, Q_nu on (-1, 1).
//
// For Re nu in [-1/2, 3/2] both come from the expansion about x = 1 in
// t = (1 - x)/2:
//   P = sum a_k t^k,  a_{k+1} = a_k (k - nu)(k + nu + 1) / (k + 1)^2
//   Q = -[gamma + psi(nu + 1) + log(t)/2] P - (1/2) sum b_k t^k
// where b_k is the derivative of a_k in its upper parameters, written as a
// recurrence that stays finite at integer nu. Larger Re nu is reached by the
// degree recurrence, Re nu < -1/2 by reflection, and x < 0 by the connection
// formulas that follow from the definition of Q_nu.

namespace lm {

namespace {

constexpr double pi = constants::pi;

struct PQ {
    cplx p, q;
    double ep = 0.0, eq = 0.0;
};

PQ log_series(cplx nu, double u)
{
    const double t = 0.5 * u;
    cplx a = 1.0, b = 0.0;
    cplx sp = 0.0, sb = 0.0;
    double mp = 0.0, mb = 0.0;
    double tk = 1.0;
    int k = 0;
    for (; k < 400; ++k) {
        cplx ta = a * tk, tb = b * tk;
        sp += ta;
        sb += tb;
        mp += std::abs(ta);
        mb += std::abs(tb);
        if (k > 2 && std::abs(ta) + std::abs(tb) <= 1e-17 * (std::abs(sp) + std::abs(sb)))
            break;
        const double kd = k, k1 = k + 1.0;
        cplx r = (kd - nu) * (kd + nu + 1.0) / (k1 * k1);
        cplx bn = r * b + a / (k1 * k1) * ((2.0 * kd + 1.0) - 2.0 * (kd - nu) * (kd + nu + 1.0) / k1);
        a *= r;
        b = bn;
        tk *= t;
    }
    if (k == 400) throw NonConvergenceError("legendre: series did not converge");
    SpecialValue psi = polygamma(0, nu + 1.0);
    cplx lead = constants::euler_gamma + psi.value + 0.5 * std::log(t);
    PQ r;
    r.p = sp;
    r.q = -lead * sp - 0.5 * sb;
    r.ep = 8.0 * util::eps * mp;
    r.eq = 8.0 * util::eps * (std::abs(lead) * mp + 0.5 * mb) + psi.abs_err * std::abs(sp);
    return r;
}

// P and Q at x = 1 - u >= 0, Re nu >= -1/2.
PQ positive_side(cplx nu, double u)
{
    long m = static_cast<long>(std::floor(nu.real() + 0.5));
    if (m <= 1) return log_series(nu, u);
    cplx nu0 = nu - static_cast<double>(m);
    PQ lo = log_series(nu0, u), hi = log_series(nu0 + 1.0, u);
    const double x = 1.0 - u;
    // (mu + 1) F_{mu+1} = (2 mu + 1) x F_mu - mu F_{mu-1}; both solutions
    // oscillate on (-1, 1), so rounding errors grow only linearly in m
    const double e0p = std::max(lo.ep, hi.ep), e0q = std::max(lo.eq, hi.eq);
    double mag_p = std::abs(hi.p), mag_q = std::abs(hi.q);
    for (long k = 1; k < m; ++k) {
        cplx mu = nu0 + static_cast<double>(k);
        cplx c1 = (2.0 * mu + 1.0) * x / (mu + 1.0), c0 = mu / (mu + 1.0);
        PQ nx;
        nx.p = c1 * hi.p - c0 * lo.p;
        nx.q = c1 * hi.q - c0 * lo.q;
        mag_p = std::max(mag_p, std::abs(nx.p));
        mag_q = std::max(mag_q, std::abs(nx.q));
        lo = hi;
        hi = nx;
    }
    hi.ep = m * (e0p + 4.0 * util::eps * mag_p);
    hi.eq = m * (e0q + 4.0 * util::eps * mag_q);
    return hi;
}

cplx cot_pi(cplx nu)
{
    cplx s = util::sinpi(nu);
    if (s == 0.0) throw PoleError("legendre_q: pole at negative integer degree");
    return util::cospi(nu) / s;
}

void check_degree(const Degree& nu)
{
    if (!nu.finite()) throw DomainError("legendre: non-finite degree");
}

void check_accuracy(const SpecialValue& v, const char* who)
{
    if (!util::finite(v.value))
        throw NonConvergenceError(std::string(who) + ": non-finite result");
    if (v.abs_err > 1e-11 * std::max(1.0, std::abs(v.value)))
        throw NonConvergenceError(std::string(who) + ": accuracy unreachable at this argument");
}

} // namespace

LegendreMirror legendre_mirror(const Degree& nu, double u)
{
    check_degree(nu);
    if (!(u > 0.0 && u <= 1.0)) throw DomainError("legendre_mirror: u must lie in (0, 1]");
    cplx v = nu.value();
    bool reflect = v.real() < -0.5;
    cplx w = reflect ? -v - 1.0 : v;
    PQ pos = positive_side(w, u);
    cplx s = util::sinpi(w), c = util::cospi(w);
    LegendreMirror r;
    r.p_plus = pos.p;
    r.q_plus = pos.q;
    // P(-y) = cos P(y) - (2/pi) sin Q(y),  Q(-y) = -(pi/2) sin P(y) - cos Q(y)
    r.p_minus = c * pos.p - 2.0 / pi * s * pos.q;
    r.q_minus = -0.5 * pi * s * pos.p - c * pos.q;
    double as = std::abs(s), ac = std::abs(c);
    double e_minus = ac * pos.ep + as * pos.eq + 2.0 * util::eps * (ac * std::abs(pos.p) + as * std::abs(pos.q));
    r.err = std::max({pos.ep, pos.eq, e_minus});
    if (reflect) {
        // Q_nu = Q_{-nu-1} + pi cot(nu pi) P_nu
        cplx k = pi * cot_pi(v);
        r.q_plus += k * r.p_plus;
        r.q_minus += k * r.p_minus;
        r.err += std::abs(k) * r.err;
    }
    return r;
}

SpecialValue legendre_p(const Degree& nu, double x)
{
    check_degree(nu);
    if (!(x > -1.0 && x <= 1.0)) throw DomainError("legendre_p: x must lie in (-1, 1]");
    if (x == 1.0) return {1.0, 0.0};
    Degree w = nu.re < -0.5 ? nu.reflected() : nu;
    SpecialValue r;
    if (x >= 0.0) {
        PQ pos = positive_side(w.value(), 1.0 - x);
        r = {pos.p, pos.ep};
    } else {
        LegendreMirror m = legendre_mirror(w, 1.0 + x);
        r = {m.p_minus, m.err};
    }
    check_accuracy(r, "legendre_p");
    return r;
}

SpecialValue legendre_q(const Degree& nu, double x)
{
    check_degree(nu);
    if (!(x > -1.0 && x < 1.0)) throw DomainError("legendre_q: x must lie in (-1, 1)");
    LegendreMirror m = legendre_mirror(nu, x >= 0.0 ? 1.0 - x : 1.0 + x);
    SpecialValue r = x >= 0.0 ? SpecialValue{m.q_plus, m.err} : SpecialValue{m.q_minus, m.err};
    check_accuracy(r, "legendre_q");
    return r;
}

SpecialValue legendre_p_md(const Degree& nu, double theta)
{
    check_degree(nu);
    if (!(theta > 0.0 && theta < pi)) throw DomainError("legendre_p_md: theta must lie in (0, pi)");
    const cplx k = 0.5 * (2.0 * nu.value() + 1.0);
    // cos(beta) - cos(theta) = 2 sin((theta + beta)/2) sin((theta - beta)/2)
    auto f = [&](double beta, double, double to_b) -> cplx {
        double d = 4.0 * std::sin(theta - 0.5 * to_b) * std::sin(0.5 * to_b);
        return std::cos(k * beta) / std::sqrt(d);
    };
    QuadResult q = integrate_finite_ep(f, 0.0, theta, 1e-13);
    if (!q.converged) throw NonConvergenceError("legendre_p_md: quadrature did not converge");
    return {2.0 / pi * q.value, 2.0 / pi * q.err_est + 1e-15};
}

SpecialValue legendre_nu_derivative(int n, int m, double x)
{
    if (n < 0) throw DomainError("legendre_nu_derivative: n must be nonnegative");
    if (m < 1 || m > 3) throw DomainError("legendre_nu_derivative: m must be 1, 2 or 3");
    if (!(x > -1.0 && x <= 1.0)) throw DomainError("legendre_nu_derivative: x must lie in (-1, 1]");
    if (x == 1.0) return {0.0, 0.0};

    auto P = [&](double nu) { return legendre_p(Degree(nu), x).value.real(); };
    const double p0 = P(n);
    // central stencils, all with leading error term proportional to h^2
    auto stencil = [&](double h) {
        switch (m) {
        case 1: return (P(n + h) - P(n - h)) / (2.0 * h);
        case 2: return (P(n + h) - 2.0 * p0 + P(n - h)) / (h * h);
        default: return (P(n + 2 * h) - 2.0 * P(n + h) + 2.0 * P(n - h) - P(n - 2 * h)) / (2.0 * h * h * h);
        }
    };
    constexpr double h0 = 1e-2;
    double t[3][3];
    for (int i = 0; i < 3; ++i) t[i][0] = stencil(h0 / (1 << i));
    for (int j = 1; j < 3; ++j) {
        double f = std::pow(4.0, j);
        for (int i = j; i < 3; ++i) t[i][j] = (f * t[i][j - 1] - t[i - 1][j - 1]) / (f - 1.0);
    }
    double hmin = h0 / 4.0;
    double noise = 8.0 * util::eps * std::max(1.0, std::abs(p0)) / std::pow(hmin, m);
    double err = std::abs(t[2][2] - t[2][1]) + noise;
    if (!std::isfinite(t[2][2])) throw NonConvergenceError("legendre_nu_derivative: non-finite stencil");
    return {t[2][2], err};
}

} // namespace lm
