#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "lm/errors.hpp"
#include "lm/quadrature.hpp"
#include "util.hpp"

namespace lm {

namespace {

constexpr double half_pi = 0.5 * std::numbers::pi;
constexpr double t_max = 4.5;
constexpr int max_level = 8;

// exp-sinh: x = a + exp(pi/2 sinh t)
QuadResult exp_sinh(const Integrand& f, double a, double tol)
{
    long evals = 0;
    double mag = 0.0; // sum of |w f|, for the roundoff floor
    auto node = [&](double t) -> cplx {
        double u = half_pi * std::sinh(t);
        double d = std::exp(u);
        double x = a + d;
        if (x <= a || !std::isfinite(x)) return 0.0;
        cplx v = f(x);
        ++evals;
        if (!util::finite(v)) throw DomainError("integrate_decaying: integrand is not finite");
        cplx wv = half_pi * std::cosh(t) * d * v;
        mag += std::abs(wv);
        return wv;
    };
    cplx sum = node(0.0);
    for (int k = 1; k <= static_cast<int>(t_max); ++k) sum += node(k) + node(-k);
    cplx prev = sum;
    double h = 1.0, err = std::numeric_limits<double>::infinity();
    cplx cur = sum;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (double t = h; t <= t_max; t += 2.0 * h) sum += node(t) + node(-t);
        cur = sum * h;
        err = std::abs(cur - prev) + 4.0 * util::eps * mag * h;
        prev = cur;
        if (level >= 3 && err <= std::max(tol, tol * std::abs(cur))) return {cur, err, evals, true};
    }
    return {cur, err, evals, false};
}

// Least-squares fit of f(x) ~ sum_j c_j (X/x)^{p_j} on [X, 4X]; returns the
// integral of the model over [X, inf).
cplx power_tail(const Integrand& f, double X, const std::array<double, 4>& powers, long& evals)
{
    constexpr int n = 24;
    Eigen::MatrixXd A(n, powers.size());
    Eigen::VectorXd yr(n), yi(n);
    for (int i = 0; i < n; ++i) {
        double x = X * std::pow(4.0, i / (n - 1.0));
        cplx v = f(x);
        ++evals;
        if (!util::finite(v)) throw DomainError("integrate_decaying: integrand is not finite");
        for (std::size_t j = 0; j < powers.size(); ++j) A(i, j) = std::pow(X / x, powers[j]);
        yr(i) = v.real();
        yi(i) = v.imag();
    }
    auto qr = A.colPivHouseholderQr();
    Eigen::VectorXd cr = qr.solve(yr), ci = qr.solve(yi);
    cplx tail = 0.0;
    for (std::size_t j = 0; j < powers.size(); ++j)
        tail += cplx(cr(j), ci(j)) * X / (powers[j] - 1.0);
    return tail;
}

} // namespace

QuadResult integrate_decaying(const Integrand& f, double a, double tol)
{
    if (!std::isfinite(a)) throw DomainError("integrate_decaying: start must be finite");
    if (!(tol > 0.0)) throw DomainError("integrate_decaying: tolerance must be positive");

    // envelope probes at a + 4, ..., a + 128
    std::array<double, 6> g{};
    long evals = 0;
    for (int j = 0; j < 6; ++j) {
        cplx v = f(a + std::ldexp(1.0, j + 2));
        ++evals;
        if (!util::finite(v)) throw DomainError("integrate_decaying: integrand is not finite");
        g[j] = std::abs(v);
    }
    if (g[5] == 0.0 || g[5] <= g[4] * std::ldexp(1.0, -10)) {
        QuadResult r = exp_sinh(f, a, tol);
        r.n_evals += evals;
        return r;
    }
    double p = std::log2(g[4] / g[5]);
    if (!(p > 1.05)) throw DomainError("integrate_decaying: tail not decaying fast enough to integrate");

    // algebraic tail: finite part on [a, X] plus a fitted power-law remainder
    double p0 = std::abs(p - std::round(p)) < 0.25 ? std::round(p) : p;
    if (p0 <= 1.05) p0 = p;
    std::array<double, 4> powers = {p0, p0 + 1.0, p0 + 2.0, p0 + 3.0};
    double X = std::max(a, 0.0) + 64.0;
    QuadResult head = integrate_finite(f, a, X, 0.25 * tol);
    evals += head.n_evals;
    bool ok = head.converged;
    cplx finite = head.value;
    cplx prev = finite + power_tail(f, X, powers, evals);
    double err = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 8; ++it) {
        QuadResult piece = integrate_finite(f, X, 2.0 * X, 0.25 * tol);
        evals += piece.n_evals;
        ok = ok && piece.converged;
        finite += piece.value;
        X *= 2.0;
        cplx cur = finite + power_tail(f, X, powers, evals);
        err = std::abs(cur - prev) + head.err_est;
        prev = cur;
        if (err <= std::max(tol, tol * std::abs(cur)) && ok) return {cur, err, evals, true};
    }
    return {prev, err, evals, false};
}

} // namespace lm
