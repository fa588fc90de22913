#include <doctest.h>

#include <cmath>
#include <random>

#include "lm/constants.hpp"
#include "lm/errors.hpp"
#include "lm/special_functions.hpp"
#include "oracles.hpp"

using namespace lm;
using doctest::Approx;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace

TEST_SUITE("special_functions") {

TEST_CASE("polygamma at one half")
{
    // -gamma - 2 log 2 and -14 zeta(3)
    CHECK(polygamma(0, 0.5).value.real() == Approx(-1.9635100260214235).epsilon(1e-14));
    CHECK(polygamma(2, 0.5).value.real() == Approx(-14.0 * oracle::zeta3).epsilon(1e-14));
    CHECK(std::abs(polygamma(0, 2.0).value - polygamma(0, 1.0).value - 1.0) <= 1e-13);
}

TEST_CASE("polygamma against the defining sums")
{
    for (double x : {0.07, 0.5, 1.3, 4.75, 11.9, 12.1, 37.0}) {
        for (int m = 0; m <= 2; ++m) {
            SpecialValue v = polygamma(m, x);
            double ref = oracle::polygamma(m, x);
            CHECK(std::abs(v.value.real() - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
            CHECK(v.abs_err <= 1e-13 * std::max(1.0, std::abs(v.value)));
        }
    }
}

TEST_CASE("polygamma reflection and complex argument")
{
    // psi(1 - z) - psi(z) = pi cot(pi z)
    for (cplx z : {cplx(0.3, 0.0), cplx(-2.7, 0.4), cplx(1.3, 0.7), cplx(-0.5, 2.0)}) {
        cplx lhs = polygamma(0, 1.0 - z).value - polygamma(0, z).value;
        cplx rhs = constants::pi / std::tan(constants::pi * z);
        CHECK(rel(lhs, rhs) <= 1e-12);
    }
    // psi''(z+1) = psi''(z) + 2/z^3
    cplx z(0.8, 0.4);
    CHECK(rel(polygamma(2, z + 1.0).value, polygamma(2, z).value + 2.0 / (z * z * z)) <= 1e-13);
    CHECK_THROWS_AS(polygamma(1, -3.0), PoleError);
    CHECK_THROWS_AS(polygamma(3, 1.0), DomainError);
}

TEST_CASE("Bessel J and Y against integral representations")
{
    for (double x : {0.01, 0.5, 1.9, 2.1, 7.3, 19.0, 24.9, 25.1, 60.0}) {
        for (int n : {0, 1, 3}) {
            double ref = oracle::bessel_j_int(n, x);
            CHECK(std::abs(bessel_j(n, x) - ref) <= 1e-13);
        }
    }
    for (double x : {0.02, 0.7, 1.99, 2.01, 5.5, 8.0})
        CHECK(std::abs(bessel_y(0.0, x) - oracle::bessel_y0(x)) <= 1e-13 * std::max(1.0, std::abs(oracle::bessel_y0(x))));
}

TEST_CASE("first zero of J0 by bisection")
{
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        double mid = 0.5 * (lo + hi);
        (bessel_j(0.0, lo) * bessel_j(0.0, mid) <= 0.0 ? hi : lo) = mid;
    }
    CHECK(lo == Approx(2.404825557695773).epsilon(1e-15));
}

TEST_CASE("Bessel derivative recurrence")
{
    double mu = 1.5, x = 3.7, h = 1e-3;
    auto j = [mu](double t) { return bessel_j(mu, t); };
    double d = (8.0 * (j(x + h) - j(x - h)) - j(x + 2 * h) + j(x - 2 * h)) / (12.0 * h);
    CHECK(std::abs(bessel_j(mu - 1.0, x) - bessel_j(mu + 1.0, x) - 2.0 * d) <= 1e-10);
}

TEST_CASE("Bessel small arguments and half-integer orders")
{
    CHECK(bessel_cyl({0.0, BesselKind::J}, 0.0).value.real() == 1.0);
    CHECK(bessel_cyl({0.0, BesselKind::J}, 1e-12).value.real() == Approx(1.0));
    CHECK(bessel_mod({0.0, BesselKind::I}, 1e-12).value.real() == Approx(1.0));
    // J_{1/2}(x) = sqrt(2/(pi x)) sin x, also far below any crossover
    for (double x : {1e-30, 1e-8, 0.3, 3.0, 40.0}) {
        double ref = std::sqrt(2.0 / (oracle::pi * x)) * std::sin(x);
        CHECK(std::abs(bessel_j(0.5, x) - ref) <= 1e-14 * std::max(1e-300, std::abs(ref)) + 1e-300);
    }
    CHECK(bessel_mod({0.5, BesselKind::K}, 1.0).value.real() == Approx(std::sqrt(oracle::pi / 2.0) * std::exp(-1.0)).epsilon(1e-14));
    // I_{-1/2}(x) = sqrt(2/(pi x)) cosh x
    CHECK(bessel_ik(-0.5, 0.8, false).first == Approx(std::sqrt(2.0 / (oracle::pi * 0.8)) * std::cosh(0.8)).epsilon(1e-14));
}

TEST_CASE("modified Bessel against integral representations")
{
    for (double x : {0.05, 0.9, 1.99, 2.0, 6.0, 24.0, 26.0, 40.0}) {
        CHECK(std::abs(bessel_ik(0.0, x, false).first / oracle::bessel_i0(x) - 1.0) <= 1e-13);
        for (double nu : {0.0, 0.25, 1.0, 2.5}) {
            double ref = oracle::bessel_k(nu, x);
            CHECK(std::abs(bessel_ik(nu, x, false).second / ref - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("scaled modified Bessel at large argument")
{
    BesselPair p = bessel_ik(0.0, 700.0, true);
    CHECK(std::isfinite(p.first));
    CHECK(std::isfinite(p.second));
    CHECK_THROWS_AS(bessel_ik(0.0, 800.0, false), OverflowError);
    // y I0 K0 -> 1/2
    BesselPair q = bessel_ik(0.0, 200.0, true);
    CHECK(std::abs(200.0 * q.first * q.second - 0.5) < 1e-5);
    CHECK_THROWS_AS(bessel_mod({0.0, BesselKind::J}, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_cyl({0.0, BesselKind::J, true}, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_cyl({0.0, BesselKind::Y}, 0.0), DomainError);
}

TEST_CASE("Legendre P at special points")
{
    for (Degree nu : {Degree(0.3), Degree(-2.7), Degree(1.3, 0.7)}) CHECK(rel(legendre_p(nu, 1.0).value, 1.0) <= 1e-15);
    for (double x : {-0.5, 0.0, 0.7}) CHECK(legendre_p(Degree(1.0), x).value.real() == Approx(x).epsilon(1e-15));
    CHECK(rel(legendre_p(Degree(-0.5), 0.0).value, legendre_p_md(Degree(-0.5), oracle::pi / 2).value) <= 1e-10);
    CHECK(legendre_p_md(Degree(2.0), oracle::pi / 3).value.real() == Approx(-0.125).epsilon(1e-12));
    for (double t : {0.3, 1.0, 2.0}) CHECK(legendre_p_md(Degree(0.0), t).value.real() == Approx(1.0).epsilon(1e-12));
    CHECK(legendre_p_md(Degree(3.3), 1e-9).value.real() == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Legendre P against the hypergeometric series")
{
    for (cplx nu : {cplx(0.37), cplx(-1.0 / 6.0), cplx(2.6), cplx(1.3, 0.7), cplx(-0.5, 1.5), cplx(7.25, 0.0)}) {
        for (double x : {-0.6, -0.2, 0.0, 0.45, 0.9, 0.999}) {
            cplx ref = oracle::legendre_p_hyp(nu, x);
            SpecialValue v = legendre_p(Degree(nu), x);
            CHECK(rel(v.value, ref) <= 1e-12);
            CHECK(v.abs_err <= 1e-11 * std::max(1.0, std::abs(v.value)));
        }
    }
}

TEST_CASE("Legendre P near x = -1 via the connection formula")
{
    // P_nu(-x) = cos(nu pi) P_nu(x) - (2/pi) sin(nu pi) Q_nu(x), which ties the
    // left end to the hypergeometric series on the right half
    Degree nu(0.3);
    for (double x : {0.6, 0.9, 0.99, 0.999}) {
        cplx p = oracle::legendre_p_hyp(0.3, x);
        cplx q = legendre_q(nu, x).value;
        cplx ref = std::cos(0.3 * oracle::pi) * p - 2.0 / oracle::pi * std::sin(0.3 * oracle::pi) * q;
        CHECK(rel(legendre_p(nu, -x).value, ref) <= 1e-11);
    }
    CHECK_THROWS_AS(legendre_p(nu, -1.0), DomainError);
}

TEST_CASE("Q_n closed forms and the Neumann oracle")
{
    CHECK(legendre_q(Degree(0.0), 0.5).value.real() == Approx(std::atanh(0.5)).epsilon(1e-14));
    for (int n = 0; n <= 8; ++n)
        for (double x : {-0.9, -0.3, 0.0, 0.4, 0.95})
            CHECK(std::abs(legendre_q(Degree(n), x).value.real() - oracle::legendre_q_int(n, x)) <= 1e-13);
    // Q_nu(x) - Q_{-nu-1}(x) = pi cot(nu pi) P_nu(x)
    Degree nu(0.3);
    cplx d = legendre_q(nu, 0.4).value - legendre_q(nu.reflected(), 0.4).value;
    CHECK(rel(d, oracle::pi / std::tan(0.3 * oracle::pi) * legendre_p(nu, 0.4).value) <= 1e-12);
    CHECK_THROWS_AS(legendre_q(Degree(-2.0), 0.1), PoleError);
}

TEST_CASE("Q near integer degree")
{
    // inside and just outside the 1e-6 band the value is continuous in nu
    for (double off : {0.0, 1e-9, 5e-7, 2e-6, 1e-4}) {
        double nu = 2.0 + off;
        cplx q = legendre_q(Degree(nu), 0.35).value;
        double ref = oracle::legendre_q_int(2, 0.35);
        CHECK(std::abs(q.real() - ref) <= 2.0 * off * 10.0 + 1e-12);
    }
}

TEST_CASE("degree derivatives")
{
    for (auto [n, x] : {std::pair{0, 0.5}, {2, -0.3}}) {
        double d1p = legendre_nu_derivative(n, 1, x).value.real();
        double d1m = legendre_nu_derivative(n, 1, -x).value.real();
        double sgn = n % 2 ? -1.0 : 1.0;
        CHECK(std::abs(2.0 * oracle::legendre_q_int(n, x) - (d1p - sgn * d1m)) <= 1e-7);
    }
    for (int n = 0; n <= 4; ++n) CHECK(std::abs(legendre_nu_derivative(n, 1, 1.0).value) <= 1e-12);
    SpecialValue d = legendre_nu_derivative(1, 1, 0.2);
    CHECK(d.abs_err <= 1e-8);
    // d/dnu of the hypergeometric series at nu = 1 by a wide central difference
    double h = 1e-4;
    double fd = (oracle::legendre_p_hyp(1.0 + h, 0.2).real() - oracle::legendre_p_hyp(1.0 - h, 0.2).real()) / (2 * h);
    CHECK(d.value.real() == Approx(fd).epsilon(1e-7));
}

TEST_CASE("property: reflection symmetry of P")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dn(-10.0, 10.0), dx(-0.95, 0.95);
    for (int i = 0; i < 200; ++i) {
        Degree nu(dn(rng));
        double x = dx(rng);
        CHECK(std::abs(legendre_p(nu, x).value - legendre_p(nu.reflected(), x).value) <= 1e-10);
    }
}

TEST_CASE("property: Mehler-Dirichlet oracle agreement")
{
    for (double nu : {-1.0 / 6.0, -0.25, -1.0 / 3.0, 0.7, 2.3})
        for (double th : {0.2, 0.9, 1.5, 2.4})
            CHECK(std::abs(legendre_p(Degree(nu), std::cos(th)).value - legendre_p_md(Degree(nu), th).value) <= 1e-9);
}

TEST_CASE("property: integer degrees collapse to polynomials")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> dx(-0.999, 1.0);
    for (int i = 0; i < 200; ++i) {
        int n = i % 11;
        double x = dx(rng);
        CHECK(std::abs(legendre_p(Degree(n), x).value.real() - oracle::legendre_poly(n, x)) <= 1e-12);
    }
}

TEST_CASE("property: Q from its defining combination")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dn(-6.0, 6.0), dx(-0.95, 0.95);
    int done = 0;
    while (done < 200) {
        double nu = dn(rng), x = dx(rng);
        if (std::abs(nu - std::round(nu)) < 0.05) continue;
        ++done;
        double s = std::sin(nu * oracle::pi), c = std::cos(nu * oracle::pi);
        cplx ref = oracle::pi / (2.0 * s) * (c * legendre_p(Degree(nu), x).value - legendre_p(Degree(nu), -x).value);
        CHECK(std::abs(legendre_q(Degree(nu), x).value - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("property: Bessel regimes agree across crossovers")
{
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> dmu(0.0, 6.0), dt(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double mu = dmu(rng);
        double xa = detail::bessel_asymptotic_threshold(mu) + dt(rng);
        BesselPair s = detail::bessel_jy_steed(mu, xa), h = detail::bessel_jy_hankel(mu, xa);
        CHECK(std::abs(s.first - h.first) <= 1e-10);
        CHECK(std::abs(s.second - h.second) <= 1e-10);
        BesselPair si = detail::bessel_ik_temme(mu, xa, true), ai = detail::bessel_ik_asymptotic(mu, xa, true);
        CHECK(std::abs(si.first / ai.first - 1.0) <= 1e-10);
        CHECK(std::abs(si.second / ai.second - 1.0) <= 1e-10);
        double xs = 2.0 + 0.5 * dt(rng);
        CHECK(std::abs(detail::bessel_j_series(mu, xs) - detail::bessel_jy_steed(mu, xs).first) <= 1e-13);
    }
}

TEST_CASE("property: scaled and unscaled I0 agree")
{
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> dx(1e-3, 50.0);
    for (int i = 0; i < 200; ++i) {
        double x = dx(rng);
        double u = bessel_ik(0.0, x, false).first * std::exp(-x), s = bessel_ik(0.0, x, true).first;
        CHECK(std::abs(u - s) <= 1e-12 * s);
    }
}

} // TEST_SUITE
