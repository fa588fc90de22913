#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <string>

#include "lm/constants.hpp"
#include "lm/errors.hpp"
#include "lm/special_functions.hpp"
#include "util.hpp"

// Real-order Bessel functions. Steed's continued fractions with Temme's
// series below x = 2 (the classic Numerical Recipes bessjy/bessik layout),
// and the Hankel expansions once x >= 25 + mu^2.

namespace lm {

namespace {

constexpr double pi = constants::pi;
constexpr double cf_eps = 1e-16;
constexpr double fpmin = DBL_MIN / 1e-16;
constexpr int max_iter = 200000;
constexpr double temme_xmin = 2.0;

// Taylor coefficients of 1/Gamma(1 + z) = sum c[k] z^k.
constexpr std::array<double, 26> rgamma1p = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16};

void check_order(double mu, double x, const char* who)
{
    if (!std::isfinite(mu) || !std::isfinite(x))
        throw DomainError(std::string(who) + ": non-finite input");
    if (!(x > 0.0))
        throw DomainError(std::string(who) + ": argument must be positive");
}

} // namespace

namespace detail {

TemmeGammas temme_gammas(double mu)
{
    // even and odd parts of 1/Gamma(1 + z) at z = mu
    double even = 0.0, odd = 0.0;
    double mu2 = mu * mu;
    double pw = 1.0;
    for (std::size_t k = 0; k + 1 < rgamma1p.size(); k += 2) {
        even += rgamma1p[k] * pw;
        odd += rgamma1p[k + 1] * pw;
        pw *= mu2;
    }
    TemmeGammas g;
    g.gam1 = -odd;
    g.gam2 = even;
    g.gampl = even + mu * odd;
    g.gammi = even - mu * odd;
    return g;
}

double bessel_asymptotic_threshold(double mu) { return 25.0 + mu * mu; }

double bessel_j_series(double mu, double x)
{
    if (x == 0.0) return mu == 0.0 ? 1.0 : 0.0;
    double h = 0.5 * x;
    double term = std::exp(mu * std::log(h) - std::lgamma(mu + 1.0));
    double sum = term, q = -h * h;
    for (int k = 1; k < 500; ++k) {
        term *= q / (k * (k + mu));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double bessel_i_series(double mu, double x)
{
    if (x == 0.0) return mu == 0.0 ? 1.0 : 0.0;
    double h = 0.5 * x;
    double term = std::exp(mu * std::log(h) - std::lgamma(mu + 1.0));
    double sum = term, q = h * h;
    for (int k = 1; k < 2000; ++k) {
        term *= q / (k * (k + mu));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

BesselPair bessel_jy_steed(double xnu, double x)
{
    int nl = (x < temme_xmin) ? static_cast<int>(xnu + 0.5)
                              : std::max(0, static_cast<int>(xnu - x + 1.5));
    double xmu = xnu - nl, xmu2 = xmu * xmu;
    double xi = 1.0 / x, xi2 = 2.0 * xi, w = xi2 / pi;

    // CF1: J'_nu / J_nu
    int isign = 1;
    double h = xnu * xi;
    if (h < fpmin) h = fpmin;
    double b = xi2 * xnu, d = 0.0, c = h;
    int i = 0;
    for (; i < max_iter; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b - 1.0 / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = c * d;
        h = del * h;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) <= cf_eps) break;
    }
    if (i == max_iter) throw NonConvergenceError("bessel_jy: CF1 did not converge");

    double rjl = isign * fpmin, rjpl = h * rjl;
    double rjl1 = rjl, rjp1 = rjpl;
    double fact = xnu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = cf_eps;
    double f = rjpl / rjl;

    double rjmu, rymu, rymup, ry1;
    if (x < temme_xmin) {
        double x2 = 0.5 * x, pimu = pi * xmu;
        fact = (std::abs(pimu) < cf_eps) ? 1.0 : pimu / std::sin(pimu);
        d = -std::log(x2);
        double e = xmu * d;
        double fact2 = (std::abs(e) < cf_eps) ? 1.0 : std::sinh(e) / e;
        TemmeGammas g = temme_gammas(xmu);
        double ff = 2.0 / pi * fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
        e = std::exp(e);
        double p = e / (g.gampl * pi);
        double q = 1.0 / (e * pi * g.gammi);
        double pimu2 = 0.5 * pimu;
        double fact3 = (std::abs(pimu2) < cf_eps) ? 1.0 : std::sin(pimu2) / pimu2;
        double r = pi * pimu2 * fact3 * fact3;
        c = 1.0;
        d = -x2 * x2;
        double sum = ff + r * q, sum1 = p;
        for (i = 1; i < max_iter; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
            c *= d / i;
            p /= (i - xmu);
            q /= (i + xmu);
            double del = c * (ff + r * q);
            sum += del;
            double del1 = c * p - i * del;
            sum1 += del1;
            if (std::abs(del) < (1.0 + std::abs(sum)) * cf_eps) break;
        }
        if (i == max_iter) throw NonConvergenceError("bessel_jy: Temme series did not converge");
        rymu = -sum;
        ry1 = -sum1 * xi2;
        rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: (J' + i Y') / (J + i Y) = p + i q
        double a = 0.25 - xmu2, p = -0.5 * xi, q = 1.0;
        double br = 2.0 * x, bi = 2.0;
        fact = a * xi / (p * p + q * q);
        double cr = br + q * fact, ci = bi + p * fact;
        double den = br * br + bi * bi;
        double dr = br / den, di = -bi / den;
        double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for (i = 1; i < max_iter; ++i) {
            a += 2 * i;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::abs(dr) + std::abs(di) < fpmin) dr = fpmin;
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if (std::abs(cr) + std::abs(ci) < fpmin) cr = fpmin;
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::abs(dlr - 1.0) + std::abs(dli) <= cf_eps) break;
        }
        if (i == max_iter) throw NonConvergenceError("bessel_jy: CF2 did not converge");
        double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    fact = rjmu / rjl;
    double rj = rjl1 * fact;
    (void)rjp1;
    for (i = 1; i <= nl; ++i) {
        double rytemp = (xmu + i) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    return {rj, rymu};
}

BesselPair bessel_jy_hankel(double mu, double x)
{
    // J = sqrt(2/(pi x)) (P cos chi - Q sin chi), Y = sqrt(2/(pi x)) (P sin chi + Q cos chi)
    double m4 = 4.0 * mu * mu;
    double P = 1.0, Q = 0.0, ak = 1.0, prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        ak *= (m4 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        double t = std::abs(ak);
        if (t > prev && k > 2) break; // asymptotic series started to diverge
        prev = t;
        int s = ((k / 2) % 2 == 0) ? 1 : -1;
        if (k % 2 == 0)
            P += s * ak;
        else
            Q += s * ak;
        if (t < 1e-17 * (std::abs(P) + std::abs(Q))) break;
    }
    // chi = x - (mu/2 + 1/4) pi; expand to keep the large x reduction exact
    double phi = 0.5 * mu + 0.25;
    double cx = std::cos(x), sx = std::sin(x);
    double cp = util::cospi(phi), sp = util::sinpi(phi);
    double cchi = cx * cp + sx * sp, schi = sx * cp - cx * sp;
    double amp = std::sqrt(2.0 / (pi * x));
    return {amp * (P * cchi - Q * schi), amp * (P * schi + Q * cchi)};
}

BesselPair bessel_ik_temme(double xnu, double x, bool scaled)
{
    int nl = static_cast<int>(xnu + 0.5);
    double xmu = xnu - nl, xmu2 = xmu * xmu;
    double xi = 1.0 / x, xi2 = 2.0 * xi;

    // CF1: I'_nu / I_nu
    double h = xnu * xi;
    if (h < fpmin) h = fpmin;
    double b = xi2 * xnu, d = 0.0, c = h;
    int i = 0;
    for (; i < max_iter; ++i) {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        double del = c * d;
        h = del * h;
        if (std::abs(del - 1.0) < cf_eps) break;
    }
    if (i == max_iter) throw NonConvergenceError("bessel_ik: CF1 did not converge");

    double ril = fpmin, ripl = h * ril;
    double ril1 = ril;
    double fact = xnu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        double ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    double f = ripl / ril;

    double rkmu, rk1;
    if (x < temme_xmin) {
        double x2 = 0.5 * x, pimu = pi * xmu;
        fact = (std::abs(pimu) < cf_eps) ? 1.0 : pimu / std::sin(pimu);
        d = -std::log(x2);
        double e = xmu * d;
        double fact2 = (std::abs(e) < cf_eps) ? 1.0 : std::sinh(e) / e;
        TemmeGammas g = temme_gammas(xmu);
        double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / g.gampl;
        double q = 0.5 / (e * g.gammi);
        c = 1.0;
        d = x2 * x2;
        double sum1 = p;
        for (i = 1; i < max_iter; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
            c *= d / i;
            p /= (i - xmu);
            q /= (i + xmu);
            double del = c * ff;
            sum += del;
            double del1 = c * (p - i * ff);
            sum1 += del1;
            if (std::abs(del) < std::abs(sum) * cf_eps) break;
        }
        if (i == max_iter) throw NonConvergenceError("bessel_ik: Temme series did not converge");
        rkmu = sum;
        rk1 = sum1 * xi2;
        if (scaled) {
            double ex = std::exp(x);
            rkmu *= ex;
            rk1 *= ex;
        }
    } else {
        // CF2 (Steed / Temme), computed directly for e^x K
        b = 2.0 * (1.0 + x);
        d = 1.0 / b;
        double delh = d;
        h = d;
        double q1 = 0.0, q2 = 1.0;
        double a1 = 0.25 - xmu2;
        double q = a1;
        c = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        for (i = 1; i < max_iter; ++i) {
            a -= 2 * i;
            c = -a * c / (i + 1.0);
            double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < cf_eps) break;
        }
        if (i == max_iter) throw NonConvergenceError("bessel_ik: CF2 did not converge");
        h = a1 * h;
        rkmu = std::sqrt(pi / (2.0 * x)) / s;
        if (!scaled) rkmu *= std::exp(-x);
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    double rkmup = xmu * xi * rkmu - rk1;
    // Wronskian I K' - I' K = -1/x; with K scaled by e^x, I comes out scaled by e^-x
    double rimu = xi / (f * rkmu - rkmup);
    double ri = (rimu * ril1) / ril;
    for (i = 1; i <= nl; ++i) {
        double rktemp = (xmu + i) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    return {ri, rkmu};
}

BesselPair bessel_ik_asymptotic(double mu, double x, bool scaled)
{
    double m4 = 4.0 * mu * mu;
    double si = 1.0, sk = 1.0, ak = 1.0, prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        ak *= (m4 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        double t = std::abs(ak);
        if (t > prev && k > 2) break;
        prev = t;
        sk += ak;
        si += (k % 2 == 0) ? ak : -ak;
        if (t < 1e-17) break;
    }
    double ri = si / std::sqrt(2.0 * pi * x);
    double rk = sk * std::sqrt(pi / (2.0 * x));
    if (!scaled) {
        ri *= std::exp(x);
        rk *= std::exp(-x);
    }
    return {ri, rk};
}

} // namespace detail

BesselPair bessel_jy(double mu, double x)
{
    check_order(mu, x, "bessel_jy");
    if (mu < 0.0) throw DomainError("bessel_jy: order must be nonnegative");
    if (x >= detail::bessel_asymptotic_threshold(mu)) return detail::bessel_jy_hankel(mu, x);
    BesselPair r = detail::bessel_jy_steed(mu, x);
    // the normalisation through CF1 overflows for tiny x; the series is exact there
    if (x < 2.0) r.first = detail::bessel_j_series(mu, x);
    return r;
}

BesselPair bessel_ik(double mu, double x, bool scaled)
{
    check_order(mu, x, "bessel_ik");
    if (mu < 0.0) {
        // I_{-m} = I_m + (2/pi) sin(m pi) K_m, K_{-m} = K_m
        double m = -mu;
        BesselPair s = bessel_ik(m, x, true);
        double ri = s.first + 2.0 / pi * util::sinpi(m) * s.second * std::exp(-2.0 * x);
        BesselPair r{ri, s.second};
        if (!scaled) {
            if (x > 700.0) throw OverflowError("bessel_ik: I overflows, use the scaled variant");
            r.first *= std::exp(x);
            r.second *= std::exp(-x);
        }
        return r;
    }
    if (!scaled && x > 700.0) {
        BesselPair s = bessel_ik(mu, x, true);
        double ri = s.first * std::exp(x);
        if (!std::isfinite(ri)) throw OverflowError("bessel_ik: I overflows, use the scaled variant");
        return {ri, s.second * std::exp(-x)};
    }
    if (x >= detail::bessel_asymptotic_threshold(mu)) return detail::bessel_ik_asymptotic(mu, x, scaled);
    BesselPair r = detail::bessel_ik_temme(mu, x, scaled);
    if (x < 2.0) r.first = detail::bessel_i_series(mu, x) * (scaled ? std::exp(-x) : 1.0);
    return r;
}

double bessel_j(double mu, double x)
{
    if (x == 0.0) return mu == 0.0 ? 1.0 : 0.0;
    return bessel_jy(mu, x).first;
}

double bessel_y(double mu, double x) { return bessel_jy(mu, x).second; }

SpecialValue bessel_cyl(const BesselOrder& order, double x)
{
    if (order.kind != BesselKind::J && order.kind != BesselKind::Y)
        throw DomainError("bessel_cyl: kind must be J or Y");
    if (order.scaled) throw DomainError("bessel_cyl: scaling applies to I and K only");
    if (order.mu < 0.0) throw DomainError("bessel_cyl: order must be nonnegative");
    if (order.kind == BesselKind::J && x == 0.0) return {order.mu == 0.0 ? 1.0 : 0.0, 0.0};
    if (!(x > 0.0)) throw DomainError("bessel_cyl: argument must be positive");
    BesselPair p = bessel_jy(order.mu, x);
    double v = order.kind == BesselKind::J ? p.first : p.second;
    double scale = std::max(std::abs(p.first), std::abs(p.second));
    return {v, 32.0 * util::eps * std::max(scale, std::abs(v))};
}

SpecialValue bessel_mod(const BesselOrder& order, double x)
{
    if (order.kind != BesselKind::I && order.kind != BesselKind::K)
        throw DomainError("bessel_mod: kind must be I or K");
    if (order.mu < -0.5) throw DomainError("bessel_mod: order must be >= -1/2");
    if (!(x > 0.0)) throw DomainError("bessel_mod: argument must be positive");
    BesselPair p = bessel_ik(order.mu, x, order.scaled);
    double v = order.kind == BesselKind::I ? p.first : p.second;
    return {v, 32.0 * util::eps * std::abs(v)};
}

} // namespace lm
