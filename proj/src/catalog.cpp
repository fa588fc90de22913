#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <charconv>

#include "lm/constants.hpp"
#include "lm/errors.hpp"
#include "lm/identities.hpp"
#include "lm/quadrature.hpp"
#include "lm/special_functions.hpp"
#include "util.hpp"

namespace lm {

namespace {

constexpr double pi = constants::pi;
constexpr double pi2 = pi * pi;
constexpr double pi4 = pi2 * pi2;
constexpr double zeta3 = constants::zeta3;
constexpr double zeta5 = constants::zeta5;

constexpr double tol_quartic = 1e-8;
constexpr double tol_poly = 1e-9;
constexpr double tol_pv = 1e-9;
constexpr double tol_osc = 1e-6;

SideValue from(const QuadResult& q) { return {q.value, q.err_est, q.n_evals, q.converged}; }
SideValue from(const SpecialValue& v) { return {v.value, v.abs_err, 1, true}; }
SideValue constant(cplx v) { return {v, 0.0, 0, true}; }

SideValue scaled(SideValue v, cplx k)
{
    v.value *= k;
    v.err *= std::abs(k);
    return v;
}

double get(const Params& p, const std::string& key)
{
    auto it = p.find(key);
    if (it == p.end()) throw DomainError("missing parameter '" + key + "'");
    if (!std::isfinite(it->second)) throw DomainError("parameter '" + key + "' is not finite");
    return it->second;
}

int get_int(const Params& p, const std::string& key)
{
    double v = get(p, key);
    if (v != std::round(v)) throw DomainError("parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
}

template <class T> T pow4(T z) { return z * z * z * z; }

// Domain predicates ------------------------------------------------------

void require(bool ok, const std::string& what)
{
    if (!ok) throw DomainError(what);
}

void quartic_degree(const Params& p)
{
    Degree nu = degree_of(p);
    require(nu.finite(), "nu must be finite");
    require(std::abs(nu.im) <= 2.0, "|Im nu| must not exceed 2");
    require(std::abs(nu.value()) <= 60.0, "|nu| must not exceed 60");
}

void complex_degree(const Params& p)
{
    Degree nu = degree_of(p);
    require(nu.finite(), "nu must be finite");
    require(std::abs(nu.im) <= 2.0 && std::abs(nu.value()) <= 60.0, "need |Im nu| <= 2 and |nu| <= 60");
}

void away_from_minus_half(const Params& p)
{
    complex_degree(p);
    require(std::abs(degree_of(p).value() + 0.5) > guard_band, "nu must stay away from -1/2");
}

void integer_degree(const Params& p)
{
    int n = get_int(p, "n");
    require(n >= 0 && n <= 20, "n must be an integer in [0, 20]");
}

void interior_point(const Params& p)
{
    double x = get(p, "x");
    require(std::abs(x) < 1.0 - 1e-5, "x must lie inside (-1, 1) away from the endpoints");
}

void no_params(const Params&) {}

// Legendre-product integrals ---------------------------------------------

// int_0^1 [g(x) + g(-x)] dx, with g seen through P, Q at +-x; u = 1 - x is
// the exact distance to x = 1.
template <class F>
SideValue mirror_integral(const Degree& nu, double tol, F&& g)
{
    auto f = [&](double, double u, double x) -> cplx {
        LegendreMirror m = legendre_mirror(nu, u);
        return g(x, m);
    };
    return from(integrate_finite_ep(f, 0.0, 1.0, tol));
}

SideValue pp_integral(const Params& p, double tol)
{
    return mirror_integral(degree_of(p), tol, [](double, const LegendreMirror& m) {
        return 2.0 * m.p_plus * m.p_minus;
    });
}

SideValue pnqn_integral(const Params& p, double tol)
{
    return mirror_integral(Degree(get_int(p, "n")), tol, [](double, const LegendreMirror& m) {
        return m.p_plus * m.q_plus + m.p_minus * m.q_minus;
    });
}

SideValue pqqq_integral(const Params& p, double tol)
{
    return mirror_integral(Degree(get_int(p, "n")), tol, [](double x, const LegendreMirror& m) {
        auto h = [](cplx P, cplx Q) { return P * Q * (4.0 / pi2 * Q * Q - P * P); };
        return x * (h(m.p_plus, m.q_plus) - h(m.p_minus, m.q_minus));
    });
}

// Principal values ---------------------------------------------------------

SideValue tricomi_pv(const Params& p, double tol, bool weighted)
{
    Degree nu = degree_of(p);
    double x = get(p, "x");
    auto f = [&](double xi) -> cplx {
        cplx v = legendre_p(nu, xi).value * legendre_p(nu, -xi).value;
        return weighted ? xi * v : v;
    };
    cplx k = 2.0 * util::sinpi(nu.value()) / pi;
    return scaled(from(integrate_pv(f, -1.0, 1.0, x, tol)), k);
}

cplx pp_difference(const Degree& nu, double x)
{
    cplx a = legendre_p(nu, x).value, b = legendre_p(nu, -x).value;
    return a * a - b * b;
}

SideValue pq_pv(const Params& p, double tol, bool weighted)
{
    Degree n(get_int(p, "n"));
    double x = get(p, "x");
    auto f = [&](double xi) -> cplx {
        cplx v = legendre_p(n, xi).value * legendre_q(n, xi).value;
        return weighted ? xi * v : v;
    };
    return scaled(from(integrate_pv(f, -1.0, 1.0, x, tol)), 4.0 / pi2);
}

cplx qq_minus_pp(int n, double x)
{
    cplx P = legendre_p(Degree(n), x).value, Q = legendre_q(Degree(n), x).value;
    return 4.0 / pi2 * Q * Q - P * P;
}

// Bessel moments -------------------------------------------------------------

OscTailSpec bessel_product_tail() { return {0.0, 0.5 * pi, 4096, 1.0}; }

template <class F>
SideValue jy_moment(double tol, F&& g)
{
    auto f = [&](double x) -> cplx {
        BesselPair p = bessel_jy(0.0, x);
        return x * g(p.first, p.second);
    };
    return from(integrate_osc_tail(f, bessel_product_tail(), tol));
}

long gcd_of(int a, int b) { return std::gcd(a, b); }

// closed form at the end of the sin^2 cot chain
SpecialValue sin2cot_closed(const Degree& d)
{
    cplx nu = d.value();
    SpecialValue p2 = polygamma(0, 2.0 * nu);
    SpecialValue a = polygamma(0, nu + 0.5), b = polygamma(0, nu + 1.0), c = polygamma(0, nu + 1.5);
    cplx v = (3.0 * nu + 1.0) / (2.0 * pi2 * nu * (2.0 * nu + 1.0)) +
             (p2.value + constants::euler_gamma + constants::ln2) / pi2 +
             util::cospi(2.0 * nu) / (4.0 * pi2) * (a.value - 2.0 * b.value + c.value);
    double err = (p2.abs_err + std::abs(util::cospi(2.0 * nu)) * (a.abs_err + 2.0 * b.abs_err + c.abs_err)) / pi2 +
                 8.0 * util::eps * (1.0 + std::abs(v));
    return {v, err};
}

std::vector<IdentitySpec> build()
{
    std::vector<IdentitySpec> c;
    auto add = [&](IdentitySpec s) { c.push_back(std::move(s)); };

    add({"A", "fourth moment of P_nu against x on [-1, 1]",
         "nu complex, |Im nu| <= 2", {"nu", "nu_im"}, {{"nu", 0.37}},
         "finite", "closed_form",
         "int_{-1}^1 x P_nu(x)^4 dx = 2 sin^4(nu pi) [psi''(nu+1) + psi''(-nu) + 28 zeta(3)] / ((2nu+1)^2 pi^4)",
         tol_quartic, quartic_degree,
         [](const Params& p, double tol) { return a_lhs(degree_of(p), tol); },
         [](const Params& p, double) { return from(a_rhs(degree_of(p))); }});

    add({"B", "mirrored fourth moment of P_nu on [0, 1]",
         "nu complex, |Im nu| <= 2", {"nu", "nu_im"}, {{"nu", 0.37}},
         "finite", "closed_form",
         "int_0^1 x P^2 (P^2 - P(-x)^2) dx = 4 sin^2(nu pi)/((2nu+1)^2 pi^2) [(psi(nu+1) + psi(-nu))/2 + gamma + 2 log 2]",
         tol_quartic, quartic_degree,
         [](const Params& p, double tol) { return b_lhs(degree_of(p), tol); },
         [](const Params& p, double) { return from(b_rhs(degree_of(p))); }});

    struct Special {
        const char* id;
        double nu;
        double factor;
        double value;
        bool quartic;
        const char* anchor;
    };
    const Special specials[] = {
        {"SC_Z3_6", -1.0 / 6.0, -2.0 * pi4 / 189.0, zeta3, true, "zeta(3) = -(2 pi^4/189) int_{-1}^1 x P_{-1/6}^4 dx"},
        {"SC_Z3_4", -0.25, -pi4 / 168.0, zeta3, true, "zeta(3) = -(pi^4/168) int_{-1}^1 x P_{-1/4}^4 dx"},
        {"SC_Z3_3", -1.0 / 3.0, -pi4 / 243.0, zeta3, true, "zeta(3) = -(pi^4/243) int_{-1}^1 x P_{-1/3}^4 dx"},
        {"SC_Z5", -0.5, -pi4 / 372.0, zeta5, true, "zeta(5) = -(pi^4/372) int_{-1}^1 x P_{-1/2}^4 dx"},
        {"SC_LOG3", -1.0 / 6.0, 8.0 * pi2 / 9.0, -3.0 * std::log(3.0), false,
         "(8 pi^2/9) int_0^1 x P^2 (P^2 - P(-x)^2) dx at nu = -1/6 equals -3 log 3"},
        {"SC_LOG2", -0.25, pi2 / 8.0, -constants::ln2, false,
         "(pi^2/8) int_0^1 x P^2 (P^2 - P(-x)^2) dx at nu = -1/4 equals -log 2"},
        {"SC_LOG23", -1.0 / 3.0, pi2 / 27.0, 2.0 * constants::ln2 - 1.5 * std::log(3.0), false,
         "(pi^2/27) int_0^1 x P^2 (P^2 - P(-x)^2) dx at nu = -1/3 equals 2 log 2 - (3/2) log 3"},
        {"SC_Z3H", -0.5, pi2 / 7.0, -zeta3, false,
         "(pi^2/7) int_0^1 x P^2 (P^2 - P(-x)^2) dx at nu = -1/2 equals -zeta(3)"},
    };
    for (const Special& s : specials) {
        double nu = s.nu, factor = s.factor, value = s.value;
        bool quartic = s.quartic;
        add({s.id, quartic ? "zeta value from the quartic moment at a fixed degree"
                           : "logarithmic or zeta value from the mirrored moment at a fixed degree",
             "no parameters", {}, {},
             "finite", "special", s.anchor, tol_quartic, no_params,
             [=](const Params&, double tol) {
                 SideValue v = quartic ? a_lhs(Degree(nu), tol) : b_lhs(Degree(nu), tol);
                 return scaled(v, factor);
             },
             [=](const Params&, double) { return constant(value); }});
    }

    add({"P3P", "cubic-linear mirrored moment",
         "nu complex, |Im nu| <= 2", {"nu", "nu_im"}, {{"nu", 0.3}},
         "finite", "closed_form",
         "(2nu+1)^2 int_{-1}^1 x P^3(x) P(-x) dx = sin(2 nu pi) cos(nu pi) / pi",
         tol_quartic, quartic_degree,
         [](const Params& p, double tol) { return p3p_lhs(degree_of(p), tol); },
         [](const Params& p, double) {
             cplx nu = degree_of(p).value();
             return constant(util::sinpi(2.0 * nu) * util::cospi(nu) / pi);
         }});

    add({"PQQQ0", "vanishing moment of P_n Q_n (4 Q_n^2/pi^2 - P_n^2)",
         "integer 0 <= n <= 20", {"n"}, {{"n", 2}},
         "finite", "special",
         "int_{-1}^1 x P_n Q_n (4 Q_n^2 / pi^2 - P_n^2) dx = 0",
         tol_quartic, integer_degree, pqqq_integral,
         [](const Params&, double) { return constant(0.0); }});

    add({"TRICOMI_PP", "finite Hilbert transform of P_nu(x) P_nu(-x)",
         "nu complex, |Im nu| <= 2; -1 < x < 1", {"nu", "nu_im", "x"}, {{"nu", 0.3}, {"x", 0.3}},
         "pv", "special",
         "(2 sin(nu pi)/pi) PV int_{-1}^1 P(xi) P(-xi) / (x - xi) dxi = P(x)^2 - P(-x)^2",
         tol_pv, [](const Params& p) { complex_degree(p); interior_point(p); },
         [](const Params& p, double tol) { return tricomi_pv(p, tol, false); },
         [](const Params& p, double) { return constant(pp_difference(degree_of(p), get(p, "x"))); }});

    add({"TRICOMI_XPP", "finite Hilbert transform of xi P_nu(xi) P_nu(-xi)",
         "nu complex away from -1/2, |Im nu| <= 2; -1 < x < 1", {"nu", "nu_im", "x"},
         {{"nu", 0.3}, {"x", -0.7}}, "pv", "special",
         "(2 sin(nu pi)/pi) PV int xi P(xi) P(-xi) / (x - xi) dxi = x (P(x)^2 - P(-x)^2) - 2 sin(2 nu pi)/((2nu+1) pi)",
         tol_pv, [](const Params& p) { away_from_minus_half(p); interior_point(p); },
         [](const Params& p, double tol) { return tricomi_pv(p, tol, true); },
         [](const Params& p, double) {
             Degree nu = degree_of(p);
             double x = get(p, "x");
             cplx v = nu.value();
             return constant(x * pp_difference(nu, x) - 2.0 * util::sinpi(2.0 * v) / ((2.0 * v + 1.0) * pi));
         }});

    add({"PP_INT", "integral of P_nu(x) P_nu(-x)",
         "nu complex away from -1/2, |Im nu| <= 2", {"nu", "nu_im"}, {{"nu", 0.25}},
         "finite", "closed_form",
         "int_{-1}^1 P(x) P(-x) dx = 2 cos(nu pi) / (2nu + 1)",
         tol_poly, away_from_minus_half, pp_integral,
         [](const Params& p, double) {
             cplx v = degree_of(p).value();
             return constant(2.0 * util::cospi(v) / (2.0 * v + 1.0));
         }});

    add({"PQ_T", "finite Hilbert transform of P_n Q_n",
         "integer 0 <= n <= 20; -1 < x < 1", {"n", "x"}, {{"n", 2}, {"x", 0.3}},
         "pv", "special",
         "(4/pi^2) PV int P_n(xi) Q_n(xi) / (x - xi) dxi = 4 Q_n(x)^2 / pi^2 - P_n(x)^2",
         tol_pv, [](const Params& p) { integer_degree(p); interior_point(p); },
         [](const Params& p, double tol) { return pq_pv(p, tol, false); },
         [](const Params& p, double) { return constant(qq_minus_pp(get_int(p, "n"), get(p, "x"))); }});

    add({"XPQ_T", "finite Hilbert transform of xi P_n Q_n",
         "integer 0 <= n <= 20; -1 < x < 1", {"n", "x"}, {{"n", 1}, {"x", -0.2}},
         "pv", "special",
         "(4/pi^2) PV int xi P_n(xi) Q_n(xi) / (x - xi) dxi = x (4 Q_n(x)^2 / pi^2 - P_n(x)^2)",
         tol_pv, [](const Params& p) { integer_degree(p); interior_point(p); },
         [](const Params& p, double tol) { return pq_pv(p, tol, true); },
         [](const Params& p, double) {
             double x = get(p, "x");
             return constant(x * qq_minus_pp(get_int(p, "n"), x));
         }});

    add({"NEUMANN", "Neumann integral for Q_n",
         "integer 0 <= n <= 20; -1 < x < 1", {"n", "x"}, {{"n", 3}, {"x", -0.6}},
         "pv", "special",
         "Q_n(x) = PV int_{-1}^1 P_n(xi) / (2 (x - xi)) dxi",
         tol_pv, [](const Params& p) { integer_degree(p); interior_point(p); },
         [](const Params& p, double tol) {
             Degree n(get_int(p, "n"));
             auto f = [&](double xi) -> cplx { return 0.5 * legendre_p(n, xi).value; };
             return from(integrate_pv(f, -1.0, 1.0, get(p, "x"), tol));
         },
         [](const Params& p, double) { return from(legendre_q(Degree(get_int(p, "n")), get(p, "x"))); }});

    add({"PNQN0", "orthogonality of P_n and Q_n",
         "integer 0 <= n <= 20", {"n"}, {{"n", 3}},
         "finite", "special", "int_{-1}^1 P_n(x) Q_n(x) dx = 0",
         tol_poly, integer_degree, pnqn_integral,
         [](const Params&, double) { return constant(0.0); }});

    add({"JY3", "Bessel moment x J0 Y0^3", "no parameters", {}, {},
         "oscillatory", "special", "int_0^inf x J0(x) Y0(x)^3 dx = -1/(4 pi)", tol_osc, no_params,
         [](const Params&, double tol) { return jy_moment(tol, [](double j, double y) { return j * y * y * y; }); },
         [](const Params&, double) { return constant(-0.25 / pi); }});

    add({"J3Y", "Bessel moment x J0^3 Y0", "no parameters", {}, {},
         "oscillatory", "special", "int_0^inf x J0(x)^3 Y0(x) dx = -1/(4 pi)", tol_osc, no_params,
         [](const Params&, double tol) { return jy_moment(tol, [](double j, double y) { return j * j * j * y; }); },
         [](const Params&, double) { return constant(-0.25 / pi); }});

    add({"J4_3J2Y2", "vanishing Bessel moment x J0^2 (J0^2 - 3 Y0^2)", "no parameters", {}, {},
         "oscillatory", "special", "int_0^inf x J0^2 (J0^2 - 3 Y0^2) dx = 0", tol_osc, no_params,
         [](const Params&, double tol) {
             return jy_moment(tol, [](double j, double y) { return j * j * (j * j - 3.0 * y * y); });
         },
         [](const Params&, double) { return constant(0.0); }});

    add({"J4_6J2Y2_Y4", "Bessel moment x (J0^4 - 6 J0^2 Y0^2 + Y0^4)", "no parameters", {}, {},
         "oscillatory", "special", "int_0^inf x (J0^4 - 6 J0^2 Y0^2 + Y0^4) dx = -14 zeta(3) / pi^4",
         tol_osc, no_params,
         [](const Params&, double tol) {
             return jy_moment(tol, [](double j, double y) {
                 return j * j * j * j - 6.0 * j * j * y * y + y * y * y * y;
             });
         },
         [](const Params&, double) { return constant(-14.0 * zeta3 / pi4); }});

    add({"K04", "Bessel moment t K0^4", "no parameters", {}, {},
         "decaying", "special", "int_0^inf t K0(t)^4 dt = 7 zeta(3) / 8", 1e-10, no_params,
         [](const Params&, double tol) {
             auto f = [](double t) -> cplx {
                 double k = bessel_ik(0.0, t, true).second * std::exp(-t);
                 return t * k * k * k * k;
             };
             return from(integrate_decaying(f, 0.0, tol));
         },
         [](const Params&, double) { return constant(7.0 * zeta3 / 8.0); }});

    add({"J2Y2_COS", "compensated Bessel moment x J0^2 (Y0^2 - J0^2) + (1 - cos 4x)/(pi^2 x)",
         "no parameters", {}, {}, "oscillatory", "special",
         "int_0^inf [x J0^2 (Y0^2 - J0^2) + (1 - cos 4x)/(pi^2 x)] dx = 0", tol_osc, no_params,
         [](const Params&, double tol) {
             auto f = [](double x) -> cplx {
                 BesselPair p = bessel_jy(0.0, x);
                 double j2 = p.first * p.first, y2 = p.second * p.second;
                 double s = std::sin(2.0 * x);
                 return x * j2 * (y2 - j2) + 2.0 * s * s / (pi2 * x);
             };
             return from(integrate_osc_tail(f, bessel_product_tail(), tol));
         },
         [](const Params&, double) { return constant(0.0); }});

    add({"IK_EXP", "vanishing modified-Bessel moment", "no parameters", {}, {},
         "decaying", "special", "int_0^inf [(1 - e^{-4y})/y - 4y I0(y)^2 K0(y)^2] dy = 0", 1e-9, no_params,
         [](const Params&, double tol) {
             auto f = [](double y) -> cplx {
                 BesselPair p = bessel_ik(0.0, y, true);
                 double ik = p.first * p.second;
                 return -std::expm1(-4.0 * y) / y - 4.0 * y * ik * ik;
             };
             return from(integrate_decaying(f, 0.0, tol));
         },
         [](const Params&, double) { return constant(0.0); }});

    add({"IIKK", "shifted-order modified-Bessel product moment",
         "real nu > -1/2", {"nu"}, {{"nu", 1.0}}, "decaying", "special",
         "int_0^inf y [I_{nu-1/2} I_{nu+1/2} K_{nu-1/2} K_{nu+1/2} - I_nu^2 K_nu^2] dy = 0", 1e-8,
         [](const Params& p) {
             double nu = get(p, "nu");
             require(get(p, "nu_im") == 0.0, "IIKK takes a real degree");
             require(nu > -0.5 && nu <= 20.0, "IIKK needs -1/2 < nu <= 20");
         },
         [](const Params& p, double tol) {
             double nu = get(p, "nu");
             auto f = [nu](double y) -> cplx {
                 BesselPair lo = bessel_ik(nu - 0.5, y, true), hi = bessel_ik(nu + 0.5, y, true);
                 BesselPair mid = bessel_ik(nu, y, true);
                 double ik = mid.first * mid.second;
                 return y * (lo.first * hi.first * lo.second * hi.second - ik * ik);
             };
             return from(integrate_decaying(f, 0.0, tol));
         },
         [](const Params&, double) { return constant(0.0); }});

    add({"WATSON_IK", "product formula for I_nu K_nu",
         "real nu >= 0, y > 0", {"nu", "y"}, {{"nu", 0.5}, {"y", 1.0}}, "special", "oscillatory",
         "I_nu(y) K_nu(y) = int_0^{pi/2} J_{2nu}(2y tan phi) / cos phi dphi = int_0^inf J_{2nu}(2yt) / sqrt(1 + t^2) dt",
         1e-8,
         [](const Params& p) {
             double nu = get(p, "nu"), y = get(p, "y");
             require(get(p, "nu_im") == 0.0, "WATSON_IK takes a real degree");
             require(nu >= 0.0 && nu <= 6.0, "WATSON_IK needs 0 <= nu <= 6");
             require(y >= 0.1 && y <= 50.0, "WATSON_IK needs 0.1 <= y <= 50");
         },
         [](const Params& p, double) {
             BesselPair b = bessel_ik(get(p, "nu"), get(p, "y"), true);
             return SideValue{b.first * b.second, 64.0 * util::eps * std::abs(b.first * b.second), 1, true};
         },
         [](const Params& p, double tol) {
             double nu = get(p, "nu"), y = get(p, "y");
             auto f = [=](double t) -> cplx { return bessel_j(2.0 * nu, 2.0 * y * t) / std::sqrt(1.0 + t * t); };
             OscTailSpec spec{0.0, 0.5 * pi / y, 8192, 0.5};
             return from(integrate_osc_tail(f, spec, tol));
         }});

    add({"WEBER", "discontinuous Weber-Schafheitlin integral",
         "mu >= 1; a, b distinct positive integers", {"mu", "a", "b"}, {{"mu", 1.5}, {"a", 2}, {"b", 1}},
         "oscillatory", "special",
         "int_0^inf J_mu(at) J_{mu-1}(bt) dt = b^{mu-1}/a^mu for a > b > 0, 0 for 0 < a < b", tol_osc,
         [](const Params& p) {
             double mu = get(p, "mu");
             int a = get_int(p, "a"), b = get_int(p, "b");
             require(mu >= 1.0 && mu <= 6.0, "WEBER needs 1 <= mu <= 6");
             require(a >= 1 && b >= 1 && a <= 16 && b <= 16 && a != b, "WEBER needs distinct integers a, b in [1, 16]");
         },
         [](const Params& p, double tol) {
             double mu = get(p, "mu");
             int a = get_int(p, "a"), b = get_int(p, "b");
             auto f = [=](double t) -> cplx { return bessel_j(mu, a * t) * bessel_j(mu - 1.0, b * t); };
             OscTailSpec spec{0.0, pi / static_cast<double>(gcd_of(a, b)), 8192, 1.0};
             return from(integrate_osc_tail(f, spec, tol));
         },
         [](const Params& p, double) {
             double mu = get(p, "mu");
             double a = get_int(p, "a"), b = get_int(p, "b");
             return constant(a > b ? std::pow(b, mu - 1.0) / std::pow(a, mu) : 0.0);
         }});

    add({"PRUD", "tabulated J^2 J Y moment",
         "real nu >= 0; b, c distinct positive integers", {"nu", "b", "c"}, {{"nu", 0.5}, {"b", 1}, {"c", 2}},
         "oscillatory", "special",
         "int_0^inf x J_nu(bx)^2 J_nu(cx) Y_nu(cx) dx = 0 for 0 < b < c, -1/(2 pi b c) for 0 < c < b", tol_osc,
         [](const Params& p) {
             double nu = get(p, "nu");
             int b = get_int(p, "b"), c = get_int(p, "c");
             require(get(p, "nu_im") == 0.0, "PRUD takes a real degree");
             require(nu >= 0.0 && nu <= 6.0, "PRUD needs 0 <= nu <= 6");
             require(b >= 1 && c >= 1 && b <= 16 && c <= 16 && b != c, "PRUD needs distinct integers b, c in [1, 16]");
         },
         [](const Params& p, double tol) {
             double nu = get(p, "nu");
             int b = get_int(p, "b"), c = get_int(p, "c");
             auto f = [=](double x) -> cplx {
                 double jb = bessel_j(nu, b * x);
                 BesselPair pc = bessel_jy(nu, c * x);
                 return x * jb * jb * pc.first * pc.second;
             };
             OscTailSpec spec{0.0, 0.5 * pi / static_cast<double>(gcd_of(b, c)), 8192, 1.0};
             return from(integrate_osc_tail(f, spec, tol));
         },
         [](const Params& p, double) {
             double b = get_int(p, "b"), c = get_int(p, "c");
             return constant(c < b ? -1.0 / (2.0 * pi * b * c) : 0.0);
         }});

    add({"SIN2COT", "sin^2 cot integral and its digamma closed form",
         "Re nu > 0, |Im nu| <= 2", {"nu", "nu_im"}, {{"nu", 0.3}},
         "finite", "closed_form",
         "(2/pi^2) int_0^{pi/2} sin^2((2nu+1) theta) cot(theta) dtheta = (3nu+1)/(2 pi^2 nu (2nu+1)) + "
         "(psi(2nu) + gamma + log 2)/pi^2 + cos(2 nu pi)/(4 pi^2) [psi(nu+1/2) - 2 psi(nu+1) + psi(nu+3/2)]",
         1e-9,
         [](const Params& p) {
             complex_degree(p);
             require(degree_of(p).re > 0.0, "SIN2COT needs Re nu > 0");
         },
         [](const Params& p, double tol) {
             cplx k = 2.0 * degree_of(p).value() + 1.0;
             auto f = [=](double th) -> cplx {
                 cplx s = std::sin(k * th);
                 return s * s / std::tan(th);
             };
             return scaled(from(integrate_finite(f, 0.0, 0.5 * pi, tol)), 2.0 / pi2);
         },
         [](const Params& p, double) { return from(sin2cot_closed(degree_of(p))); }});

    return c;
}

std::string upper(std::string_view s)
{
    std::string r(s);
    for (auto& ch : r) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return r;
}

} // namespace

Degree degree_of(const Params& p)
{
    auto re = p.find("nu");
    auto im = p.find("nu_im");
    if (re == p.end()) throw DomainError("missing parameter 'nu'");
    return {re->second, im == p.end() ? 0.0 : im->second};
}

void set_degree(Params& p, const Degree& nu)
{
    p["nu"] = nu.re;
    if (nu.im != 0.0)
        p["nu_im"] = nu.im;
    else
        p.erase("nu_im");
}

std::string format_params(const Params& p)
{
    std::string out;
    for (const auto& [k, v] : p) {
        if (!out.empty()) out += ';';
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, v); // shortest round-trip form
        out += k + '=' + std::string(buf, res.ptr);
    }
    return out;
}

SideValue a_lhs(const Degree& nu, double tol)
{
    return mirror_integral(nu, tol, [](double x, const LegendreMirror& m) {
        return x * (pow4(m.p_plus) - pow4(m.p_minus));
    });
}

SideValue b_lhs(const Degree& nu, double tol)
{
    return mirror_integral(nu, tol, [](double x, const LegendreMirror& m) {
        cplx a = m.p_plus * m.p_plus, b = m.p_minus * m.p_minus;
        return x * a * (a - b);
    });
}

SideValue p3p_lhs(const Degree& nu, double tol)
{
    cplx w = 2.0 * nu.value() + 1.0;
    SideValue v = mirror_integral(nu, tol, [](double x, const LegendreMirror& m) {
        cplx a = m.p_plus, b = m.p_minus;
        return x * a * b * (a * a - b * b);
    });
    return scaled(v, w * w);
}

const std::vector<IdentitySpec>& catalog()
{
    static const std::vector<IdentitySpec> c = build();
    return c;
}

const IdentitySpec& find_identity(std::string_view id)
{
    std::string key = upper(id);
    for (const auto& s : catalog())
        if (s.id == key) return s;
    throw UnknownIdentity("unknown identity '" + std::string(id) + "'");
}

SideValue eval_side(std::string_view id, Side side, const Params& params, double tol)
{
    const IdentitySpec& s = find_identity(id);
    Params p = s.defaults;
    for (const auto& [k, v] : params) p[k] = v;
    if (std::find(s.params.begin(), s.params.end(), "nu_im") != s.params.end() ||
        p.count("nu"))
        p.try_emplace("nu_im", 0.0);
    s.check_domain(p);
    return side == Side::LHS ? s.lhs(p, tol) : s.rhs(p, tol);
}

} // namespace lm
