#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lm/errors.hpp"
#include "lm/quadrature.hpp"
#include "util.hpp"

// Conditionally convergent tails. Partial integrals S_k = int_start^{start + k q}
// behave like I + (-1)^k g(k) + h(k) with g, h smooth in 1/X when q is the
// sign-change spacing. Repeated pairwise averaging removes the alternating
// part; Neville extrapolation in 1/X on a geometric index ladder removes h.

namespace lm {

namespace {

constexpr int averaging_passes = 12;
constexpr int first_index = 16;
constexpr int max_extrapolation_points = 7;

cplx neville_at_zero(const std::vector<double>& s, const std::vector<cplx>& v)
{
    std::vector<cplx> p(v);
    const std::size_t n = s.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            p[i] = (s[i + m] * p[i] - s[i] * p[i + 1]) / (s[i + m] - s[i]);
    return p[0];
}

} // namespace

QuadResult integrate_osc_tail(const Integrand& f, const OscTailSpec& spec, double tol,
                              int* segments_used)
{
    const double q = spec.quarter_period;
    if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("integrate_osc_tail: quarter_period must be positive");
    if (!(spec.power_step > 0.0)) throw DomainError("integrate_osc_tail: power_step must be positive");
    if (spec.max_segments < 8) throw DomainError("integrate_osc_tail: max_segments must be at least 8");
    if (!(spec.start >= 0.0) || !std::isfinite(spec.start))
        throw DomainError("integrate_osc_tail: start must be finite and nonnegative");
    if (!(tol > 0.0)) throw DomainError("integrate_osc_tail: tolerance must be positive");

    const double seg_tol = tol / spec.max_segments;
    std::vector<cplx> partial{0.0};
    std::vector<double> seg_abs;
    long evals = 0;
    bool segments_ok = true;
    auto ensure = [&](int k) {
        while (static_cast<int>(partial.size()) <= k) {
            int j = static_cast<int>(partial.size()) - 1;
            double lo = spec.start + j * q, hi = spec.start + (j + 1) * q;
            QuadResult r = integrate_finite(f, lo, hi, seg_tol);
            evals += r.n_evals;
            segments_ok = segments_ok && r.converged;
            partial.push_back(partial.back() + r.value);
            seg_abs.push_back(std::abs(r.value));
        }
    };
    auto finish = [&](QuadResult r) {
        if (segments_used) *segments_used = static_cast<int>(partial.size()) - 1;
        return r;
    };

    ensure(2);
    if (partial[1] == 0.0 && partial[2] == 0.0) {
        bool zero = true;
        for (double probe : {3.3, 17.1, 101.7, 1000.3}) {
            ++evals;
            if (f(spec.start + probe * q) != 0.0) {
                zero = false;
                break;
            }
        }
        if (zero) return finish({0.0, 0.0, evals, true});
    }

    auto averaged = [&](int k) {
        ensure(k + averaging_passes);
        // binomial weights 2^-M C(M, j)
        cplx sum = 0.0;
        double c = 1.0;
        for (int j = 0; j <= averaging_passes; ++j) {
            sum += c * partial[k + j];
            c = c * (averaging_passes - j) / (j + 1.0);
        }
        return sum / std::ldexp(1.0, averaging_passes);
    };

    std::vector<double> s;
    std::vector<cplx> v;
    cplx best = 0.0, prev = 0.0;
    double err = std::numeric_limits<double>::infinity();
    for (int k = first_index; k + averaging_passes <= spec.max_segments; k *= 2) {
        s.push_back(std::pow(spec.start + (k + 0.5 * averaging_passes) * q, -spec.power_step));
        v.push_back(averaged(k));
        if (static_cast<int>(s.size()) > max_extrapolation_points) {
            s.erase(s.begin());
            v.erase(v.begin());
        }
        // envelope growth: for an envelope x^-p the mean segment size falls
        // from one octave to the next; x^s lifts it by 2^s
        if (k >= 4 * first_index) {
            auto mean = [&](int lo, int hi) {
                double m = 0.0;
                for (int i = lo; i < hi; ++i) m += seg_abs[i];
                return m / (hi - lo);
            };
            double early = mean(k / 4, k / 2), late = mean(k / 2, k);
            if (late > 1.3 * early && late > 1e-300)
                throw DomainError("integrate_osc_tail: integrand envelope is growing");
        }
        best = neville_at_zero(s, v);
        if (s.size() >= 3) {
            err = std::abs(best - prev);
            if (err <= std::max(tol, tol * std::abs(best)) && segments_ok)
                return finish({best, err, evals, true});
        }
        prev = best;
    }
    return finish({best, err, evals, false});
}

} // namespace lm
