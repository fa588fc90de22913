#include <array>
#include <cmath>
#include <string>

#include "lm/constants.hpp"
#include "lm/errors.hpp"
#include "lm/special_functions.hpp"
#include "util.hpp"

namespace lm {

namespace {

// B_2, B_4, ..., B_20
constexpr std::array<double, 10> bernoulli = {
    1.0 / 6.0,         -1.0 / 30.0,   1.0 / 42.0,          -1.0 / 30.0,
    5.0 / 66.0,        -691.0 / 2730.0, 7.0 / 6.0,         -3617.0 / 510.0,
    43867.0 / 798.0,   -174611.0 / 330.0};

constexpr double asymptotic_re = 12.0;

// Bernoulli expansion, valid for Re z >= 12. Adds |terms| to mag.
cplx asymptotic(int m, cplx z, double& mag, double& tail)
{
    cplx zi = 1.0 / z, zi2 = zi * zi;
    cplx sum;
    cplx pw; // z^{-(2k + m)}
    switch (m) {
    case 0:
        sum = std::log(z) - 0.5 * zi;
        pw = zi2;
        break;
    case 1:
        sum = zi + 0.5 * zi2;
        pw = zi2 * zi;
        break;
    default:
        sum = -zi2 - zi2 * zi;
        pw = zi2 * zi2;
        break;
    }
    mag += std::abs(sum);
    for (std::size_t k = 1; k <= bernoulli.size(); ++k) {
        cplx term;
        if (m == 0)
            term = -bernoulli[k - 1] / (2.0 * k) * pw;
        else if (m == 1)
            term = bernoulli[k - 1] * pw;
        else
            term = -(2.0 * k + 1.0) * bernoulli[k - 1] * pw;
        sum += term;
        mag += std::abs(term);
        tail = std::abs(term);
        pw *= zi2;
    }
    return sum;
}

} // namespace

SpecialValue polygamma(int m, cplx z)
{
    if (m < 0 || m > 2)
        throw DomainError("polygamma: order must be 0, 1 or 2");
    if (!util::finite(z))
        throw DomainError("polygamma: non-finite argument");
    if (util::is_nonpositive_integer(z))
        throw PoleError("polygamma: pole at nonpositive integer " + std::to_string(z.real()));

    constexpr double pi = constants::pi;
    if (z.real() < -100.0) {
        // reflection into the right half plane
        SpecialValue r = polygamma(m, 1.0 - z);
        cplx s = util::sinpi(z), c = util::cospi(z);
        cplx extra;
        if (m == 0)
            extra = -pi * c / s;
        else if (m == 1)
            extra = pi * pi / (s * s);
        else
            extra = -2.0 * pi * pi * pi * c / (s * s * s);
        cplx v = (m == 1) ? extra - r.value : r.value + extra;
        double err = r.abs_err + 8.0 * util::eps * std::abs(extra) * (1.0 + std::abs(z));
        return {v, err};
    }

    // psi^(m)(z) = psi^(m)(z + 1) - (-1)^m m! / z^(m+1)
    double mag = 0.0;
    cplx shift;
    while (z.real() < asymptotic_re) {
        cplx zi = 1.0 / z;
        cplx term = (m == 0) ? -zi : (m == 1) ? zi * zi : -2.0 * zi * zi * zi;
        shift += term;
        mag += std::abs(term);
        z += 1.0;
    }
    double tail = 0.0;
    cplx v = shift + asymptotic(m, z, mag, tail);
    if (!util::finite(v))
        throw NonConvergenceError("polygamma: non-finite result");
    double err = 4.0 * util::eps * mag + tail;
    return {v, err};
}

} // namespace lm
