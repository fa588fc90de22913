#pragma once

#include "lm/types.hpp"

namespace lm {

// psi^(m)(z) for m in {0, 1, 2}. Throws PoleError at z = 0, -1, -2, ...
SpecialValue polygamma(int m, cplx z);

// J, Y of real order mu >= 0 and argument x > 0 (J also at x = 0).
SpecialValue bessel_cyl(const BesselOrder& order, double x);
// I, K of real order mu >= -1/2, x > 0; scaled gives I e^{-x}, K e^{x}.
SpecialValue bessel_mod(const BesselOrder& order, double x);

struct BesselPair {
    double first = 0.0;  // J or I
    double second = 0.0; // Y or K
};

// Both cylinder functions in one pass. mu >= 0, x > 0.
BesselPair bessel_jy(double mu, double x);
// Both modified functions in one pass. Any real mu (negative orders by
// reflection), x > 0. Unscaled I that overflows throws OverflowError.
BesselPair bessel_ik(double mu, double x, bool scaled);

double bessel_j(double mu, double x);
double bessel_y(double mu, double x);

// P_nu(x) for -1 < x <= 1, any complex nu.
SpecialValue legendre_p(const Degree& nu, double x);
// P_nu(cos theta) by quadrature of the Mehler-Dirichlet integral.
SpecialValue legendre_p_md(const Degree& nu, double theta);
// Q_nu(x) for -1 < x < 1. Poles at negative integer nu.
SpecialValue legendre_q(const Degree& nu, double x);
// d^m/dnu^m P_nu(x) at nu = n, m in {1, 2, 3}.
SpecialValue legendre_nu_derivative(int n, int m, double x);

// P_nu and Q_nu at both x = 1 - u and x = -(1 - u), with u in (0, 1]
// passed directly so that points next to x = +-1 keep full accuracy.
struct LegendreMirror {
    cplx p_plus, p_minus;
    cplx q_plus, q_minus;
    double err = 0.0;
};
LegendreMirror legendre_mirror(const Degree& nu, double u);

namespace detail {

// Regime-specific Bessel evaluators, exposed for cross-regime tests.
double bessel_j_series(double mu, double x);
double bessel_i_series(double mu, double x);
BesselPair bessel_jy_steed(double mu, double x);
BesselPair bessel_jy_hankel(double mu, double x);
BesselPair bessel_ik_temme(double mu, double x, bool scaled);
BesselPair bessel_ik_asymptotic(double mu, double x, bool scaled);
// Argument beyond which the large-x expansions are used.
double bessel_asymptotic_threshold(double mu);

// 1/Gamma(1 + mu) and 1/Gamma(1 - mu) with the Temme combinations
// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2.
struct TemmeGammas {
    double gam1, gam2, gampl, gammi;
};
TemmeGammas temme_gammas(double mu);

} // namespace detail

} // namespace lm
