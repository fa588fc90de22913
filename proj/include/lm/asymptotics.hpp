#pragma once

#include <array>
#include <utility>
#include <vector>

#include "lm/identities.hpp"
#include "lm/types.hpp"

namespace lm {

// Least-squares line through (log scale, log residual).
struct DecayFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points; // (scale, residual), sorted by scale
};

DecayFit fit_decay(const std::vector<double>& scales, const std::vector<double>& residuals);

enum class HansenHeineKind { P, Q };

// theta_i = i pi / 80, i = 1..40
std::vector<double> hh_default_grid();

// max over the grid of |P_nu(cos t) - sqrt(t / sin t) J0((2nu+1) t / 2)|, or of
// |Q_nu(cos t) + (pi/2) sqrt(t / sin t) Y0((2nu+1) t / 2)| for the Q variant.
double hansen_heine_residual(double nu, const std::vector<double>& theta_grid,
                             HansenHeineKind kind = HansenHeineKind::P);

enum class TaylorSide { A_L, B_L };

// Derivatives of order 1..3 of g(nu) = (2nu+1)^2 side(nu) at nu = n.
struct TaylorCheck {
    TaylorSide side = TaylorSide::A_L;
    int n = 0;
    std::array<double, 3> coeffs{};
    std::array<double, 3> refs{};
    double max_abs_dev = 0.0;
};

TaylorCheck taylor_check(TaylorSide side, int n, double h = 1e-2);

// Cubic Taylor coefficient of (2nu+1)^2 A_R(nu) at nu = 0.
double resolve_cubic_coefficient(double h = 1e-2);
// The same fit applied to (2nu+1)^2 A_L(nu).
double cubic_coefficient_lhs(double h = 1e-2);

// Leading large-degree behaviour of A_L and B_L at nu = N + 1/4, divided by
// the sine powers:
//   (2nu+1)^2 A_L / sin^4 ~ 4 [14 zeta(3)/pi^4 + cos/(pi sin^3)]
//   (2nu+1)^2 B_L / sin^2 ~ 2 cot/pi + 4 (gamma + 2 log 2 + log nu)/pi^2
// The residuals below are the differences, in absolute value.
struct BoundSample {
    int N = 0;
    double nu = 0.0;
    double scaled_residual = 0.0; // the difference above
    double identity_gap = 0.0;    // |side_L - side_R|
};

BoundSample a_bound_sample(int N);
BoundSample b_bound_sample(int N);

// A record of one asymptotic check as it appears in reports.
struct AsymptoticRecord {
    std::string check;  // hh, taylor, bound, cubic
    std::string name;   // e.g. "A_L n=1", "hh P"
    double value = 0.0;
    double expected_lo = 0.0, expected_hi = 0.0;
    bool pass = false;
    std::vector<std::pair<double, double>> points;
    double elapsed = 0.0;
};

std::vector<AsymptoticRecord> run_asymptotic_check(const std::string& check);

} // namespace lm
