#include <cctype>
#include <cmath>
#include <string>

#include "lm/constants.hpp"
#include "lm/errors.hpp"
#include "lm/identities.hpp"
#include "lm/special_functions.hpp"
#include "util.hpp"

namespace lm {

namespace {

constexpr double pi = constants::pi;
constexpr double pi2 = pi * pi;
constexpr double pi4 = pi2 * pi2;
constexpr double zeta3 = constants::zeta3;
constexpr double gamma0 = constants::euler_gamma;
constexpr double ln2 = constants::ln2;
// samples for the limit at -1/2 sit at -1/2 + k h, k = 1..4
constexpr double half_fit_step = 4e-3;

// (2nu + 1)^2 A_R(nu) after folding psi''(-nu) into psi''(nu + 1) with the
// reflection formula; regular at every nu with Re nu >= -1/2.
SpecialValue a_scaled(cplx nu)
{
    if (nu.real() < -0.5) nu = -nu - 1.0;
    cplx s = util::sinpi(nu);
    cplx s4 = s * s * s * s;
    SpecialValue psi = polygamma(2, nu + 1.0);
    cplx br = 2.0 * psi.value + 28.0 * zeta3;
    cplx v = 2.0 / pi4 * s4 * br + 2.0 / pi * util::sinpi(2.0 * nu);
    double err = 2.0 / pi4 * std::abs(s4) * (2.0 * psi.abs_err + 4.0 * util::eps * std::abs(br)) +
                 4.0 * util::eps * (std::abs(v) + 1.0);
    return {v, err};
}

// (2nu + 1)^2 B_R(nu), same treatment with psi(-nu) = psi(nu + 1) + pi cot(nu pi).
SpecialValue b_scaled(cplx nu)
{
    if (nu.real() < -0.5) nu = -nu - 1.0;
    cplx s = util::sinpi(nu);
    SpecialValue psi = polygamma(0, nu + 1.0);
    cplx br = psi.value + gamma0 + 2.0 * ln2;
    cplx v = 4.0 / pi2 * s * s * br + 1.0 / pi * util::sinpi(2.0 * nu);
    double err = 4.0 / pi2 * std::abs(s * s) * (psi.abs_err + 4.0 * util::eps * std::abs(br)) +
                 4.0 * util::eps * (std::abs(v) + 1.0);
    return {v, err};
}

using Scaled = SpecialValue (*)(cplx);

// Both sides are even in d = nu + 1/2. Fit a cubic in d^2 through real
// samples at d = k h and evaluate it at the requested d. The nearest
// singularity sits at d = -1/2, so the d^8 remainder is ~ (2 d)^8.
cplx even_fit(Scaled g, cplx d, double h)
{
    constexpr int m = 4;
    double X[m];
    cplx Y[m];
    for (int k = 1; k <= m; ++k) {
        double dk = k * h;
        X[k - 1] = dk * dk;
        Y[k - 1] = g(cplx(-0.5 + dk, 0.0)).value / (4.0 * dk * dk);
    }
    cplx z = d * d, r = 0.0;
    for (int i = 0; i < m; ++i) {
        cplx l = 1.0;
        for (int j = 0; j < m; ++j)
            if (j != i) l *= (z - X[j]) / (X[i] - X[j]);
        r += l * Y[i];
    }
    return r;
}

SpecialValue limit_value(Scaled g, const Degree& nu)
{
    cplx v = nu.value();
    cplx d = v + 0.5;
    if (std::abs(d) < half_guard_band) {
        cplx coarse = even_fit(g, d, 1.5 * half_fit_step);
        cplx fine = even_fit(g, d, half_fit_step);
        return {fine, std::abs(fine - coarse)};
    }
    SpecialValue s = g(v);
    cplx w = 2.0 * v + 1.0;
    return {s.value / (w * w), s.abs_err / std::abs(w * w)};
}

} // namespace

ClosedFormContext classify_degree(const Degree& nu)
{
    cplx v = nu.value();
    if (std::abs(v + 0.5) < half_guard_band) return {nu, Branch::near_minus_half_limit};
    if (util::distance_to_integer(v) < guard_band) return {nu, Branch::near_integer_limit};
    return {nu, Branch::generic};
}

SpecialValue a_rhs_generic(const Degree& nu)
{
    cplx v = nu.value();
    cplx s = util::sinpi(v);
    SpecialValue p1 = polygamma(2, v + 1.0), p2 = polygamma(2, -v);
    cplx br = p1.value + p2.value + 28.0 * zeta3;
    cplx w = 2.0 * v + 1.0;
    cplx pre = 2.0 * s * s * s * s / (w * w * pi4);
    if (!util::finite(pre)) throw DomainError("A: closed form undefined at nu = -1/2");
    cplx val = pre * br;
    // the bracket cancels towards nu = -1/2; rounding scales with its terms
    double terms = std::abs(p1.value) + std::abs(p2.value) + 28.0 * zeta3;
    double err = std::abs(pre) * (p1.abs_err + p2.abs_err + 8.0 * util::eps * terms) + 4.0 * util::eps * std::abs(val);
    return {val, err};
}

SpecialValue b_rhs_generic(const Degree& nu)
{
    cplx v = nu.value();
    cplx s = util::sinpi(v);
    SpecialValue p1 = polygamma(0, v + 1.0), p2 = polygamma(0, -v);
    cplx br = 0.5 * (p1.value + p2.value) + gamma0 + 2.0 * ln2;
    cplx w = 2.0 * v + 1.0;
    cplx pre = 4.0 * s * s / (w * w * pi2);
    if (!util::finite(pre)) throw DomainError("B: closed form undefined at nu = -1/2");
    cplx val = pre * br;
    double terms = 0.5 * (std::abs(p1.value) + std::abs(p2.value)) + gamma0 + 2.0 * ln2;
    double err = std::abs(pre) * (p1.abs_err + p2.abs_err + 8.0 * util::eps * terms) + 4.0 * util::eps * std::abs(val);
    return {val, err};
}

SpecialValue closed_form_limit(std::string_view id, const Degree& nu)
{
    if (!nu.finite()) throw DomainError("closed_form_limit: non-finite degree");
    std::string key(id);
    for (auto& ch : key) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (key == "A") return limit_value(a_scaled, nu);
    if (key == "B") return limit_value(b_scaled, nu);
    throw UnknownIdentity("closed_form_limit: only A and B have a continuity-extended closed form");
}

SpecialValue a_rhs(const Degree& nu)
{
    if (classify_degree(nu).branch == Branch::generic) return a_rhs_generic(nu);
    return closed_form_limit("A", nu);
}

SpecialValue b_rhs(const Degree& nu)
{
    if (classify_degree(nu).branch == Branch::generic) return b_rhs_generic(nu);
    return closed_form_limit("B", nu);
}

double fit_cubic_coefficient(const std::function<double(double)>& g, double h)
{
    if (!(h > 0.0)) throw DomainError("fit_cubic_coefficient: step must be positive");
    // odd part O(e) = c1 e + c3 e^3 + c5 e^5 + ...
    auto odd = [&](double e) { return 0.5 * (g(e) - g(-e)); };
    // (O(2e) - 2 O(e)) / (6 e^3) = c3 + 5 c5 e^2 + ...
    auto d = [&](double e) { return (odd(2.0 * e) - 2.0 * odd(e)) / (6.0 * e * e * e); };
    double coarse = d(h), fine = d(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

} // namespace lm
