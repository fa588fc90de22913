#include <doctest.h>

#include <cmath>
#include <random>

#include "lm/asymptotics.hpp"
#include "lm/errors.hpp"
#include "lm/special_functions.hpp"
#include "oracles.hpp"

using namespace lm;
using doctest::Approx;

namespace {
constexpr double pi = oracle::pi;
}

TEST_SUITE("asymptotics") {

TEST_CASE("fit_decay on exact power laws")
{
    std::vector<double> s = {3, 5, 9, 17, 33}, r;
    for (double x : s) r.push_back(1.0 / x);
    DecayFit f = fit_decay(s, r);
    CHECK(f.exponent == Approx(-1.0).epsilon(1e-12));
    CHECK(f.r_squared == Approx(1.0).epsilon(1e-12));
    CHECK(f.points.size() == 5);
    CHECK_THROWS_AS(fit_decay({1, 2, 3, 4}, {1, 0, 1, 1}), DomainError);
    CHECK_THROWS_AS(fit_decay({2, 2, 2, 2}, {1, 2, 3, 4}), DomainError);
    CHECK_THROWS_AS(fit_decay({1, 2, 3}, {1, 2, 3}), DomainError);
}

TEST_CASE("fit_decay sorts its points and computes r^2 from them")
{
    DecayFit f = fit_decay({9, 3, 27, 81}, {0.5, 1.0, 0.3, 0.1});
    for (size_t i = 1; i < f.points.size(); ++i) CHECK(f.points[i - 1].first < f.points[i].first);
    double mx = 0, my = 0;
    for (auto [x, y] : f.points) {
        mx += std::log(x) / 4;
        my += std::log(y) / 4;
    }
    double sse = 0, syy = 0;
    for (auto [x, y] : f.points) {
        double e = std::log(y) - f.intercept - f.exponent * std::log(x);
        sse += e * e;
        syy += (std::log(y) - my) * (std::log(y) - my);
    }
    CHECK(f.r_squared == Approx(1 - sse / syy).epsilon(1e-14));
}

TEST_CASE("Hansen-Heine residuals")
{
    auto grid = hh_default_grid();
    CHECK(grid.size() == 40);
    CHECK(grid.back() == Approx(pi / 2));
    double r = hansen_heine_residual(20.25, grid);
    CHECK(r <= 0.5 / (2 * 20.25 + 1));
    CHECK(hansen_heine_residual(20.25, grid, HansenHeineKind::Q) <= 0.5 / (2 * 20.25 + 1));
    // both sides tend to 1 as theta -> 0
    CHECK(hansen_heine_residual(20.25, {1e-6}) <= 1e-9);
    CHECK_THROWS_AS(hansen_heine_residual(1.5, grid), DomainError);
    CHECK_THROWS_AS(hansen_heine_residual(5.0, {}), DomainError);
}

TEST_CASE("Taylor checks near integers")
{
    TaylorCheck a0 = taylor_check(TaylorSide::A_L, 0);
    CHECK(a0.coeffs[0] == Approx(4.0).epsilon(1e-4));
    CHECK(std::abs(a0.coeffs[1]) <= 1e-3);
    TaylorCheck b1 = taylor_check(TaylorSide::B_L, 1);
    CHECK(std::abs(b1.coeffs[0] - 2.0) <= 9e-4);
    double dev = 0;
    for (int k = 0; k < 3; ++k) dev = std::max(dev, std::abs(b1.coeffs[k] - b1.refs[k]));
    CHECK(b1.max_abs_dev == dev);
    CHECK_THROWS_AS(taylor_check(TaylorSide::A_L, 4), DomainError);
}

TEST_CASE("cubic coefficient")
{
    double c = resolve_cubic_coefficient();
    CHECK(std::abs(c + 8 * pi * pi / 3) <= 0.1);
    CHECK(std::abs(c + 8 * pi * pi * pi / 3) > 50);
    CHECK(std::abs(cubic_coefficient_lhs() - c) <= 1e-2);
    CHECK(std::abs(resolve_cubic_coefficient(5e-3) - c) < 1e-3);
}

TEST_CASE("property: the A identity holds at the bound sampling points")
{
    for (int N : {4, 8, 16, 32}) {
        CHECK(a_bound_sample(N).identity_gap <= 1e-6);
        CHECK(b_bound_sample(N).identity_gap <= 1e-6);
    }
}

TEST_CASE("property: Hansen-Heine residual is monotone up to a factor 3")
{
    auto grid = hh_default_grid();
    for (auto kind : {HansenHeineKind::P, HansenHeineKind::Q}) {
        double prev = hansen_heine_residual(2.25, grid, kind);
        for (double nu = 4.5; nu <= 72; nu *= 2) {
            double r = hansen_heine_residual(nu, grid, kind);
            CHECK(r <= 3 * prev);
            prev = r;
        }
    }
}

TEST_CASE("property: first Taylor coefficients relate by the factor 2")
{
    for (int n = 0; n <= 2; ++n) {
        TaylorCheck a = taylor_check(TaylorSide::A_L, n), b = taylor_check(TaylorSide::B_L, n);
        CHECK(std::abs(a.coeffs[0] - 2 * b.coeffs[0]) <= 2e-3);
    }
}

TEST_CASE("property: synthetic power laws")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dp(-3.0, 1.0), dc(0.1, 10.0), ds(1.0, 100.0);
    for (int i = 0; i < 200; ++i) {
        double p = dp(rng), c = dc(rng);
        std::vector<double> s, r;
        for (int k = 0; k < 4 + i % 5; ++k) {
            s.push_back(ds(rng) * (k + 1));
            r.push_back(c * std::pow(s.back(), p));
        }
        CHECK(std::abs(fit_decay(s, r).exponent - p) <= 1e-10);
    }
}

} // TEST_SUITE
