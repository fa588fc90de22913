#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lm/types.hpp"

namespace lm {

// Named real parameters of one verification. A complex degree is stored as
// "nu" and "nu_im" (the latter only when nonzero).
using Params = std::map<std::string, double>;

Degree degree_of(const Params& p);
void set_degree(Params& p, const Degree& nu);
std::string format_params(const Params& p); // "k=v;k=v", sorted by key

enum class Side { LHS, RHS };

struct SideValue {
    cplx value;
    double err = 0.0;
    long n_evals = 0;
    bool converged = true;
};

using SideEvaluator = std::function<SideValue(const Params&, double tol)>;

struct IdentitySpec {
    std::string id;
    std::string description;
    std::string param_domain;         // human readable constraint
    std::vector<std::string> params;  // names the evaluators read
    Params defaults;                  // used for names the caller leaves out
    std::string lhs_kind, rhs_kind;   // finite, pv, oscillatory, decaying, closed_form, special
    std::string anchor;               // the identity as a formula
    double default_tol = 1e-9;
    std::function<void(const Params&)> check_domain; // throws DomainError
    SideEvaluator lhs, rhs;
};

const std::vector<IdentitySpec>& catalog();
// Case-insensitive lookup; throws UnknownIdentity.
const IdentitySpec& find_identity(std::string_view id);

// tol is the accuracy requested from the underlying integrators.
SideValue eval_side(std::string_view id, Side side, const Params& params, double tol);

// Integrals of the two headline identities.
SideValue a_lhs(const Degree& nu, double tol);  // int_{-1}^1 x P^4
SideValue b_lhs(const Degree& nu, double tol);  // int_0^1 x P^2 (P^2 - P(-x)^2)
SideValue p3p_lhs(const Degree& nu, double tol); // (2nu+1)^2 int_{-1}^1 x P^3 P(-x)

enum class Branch { generic, near_integer_limit, near_minus_half_limit };

struct ClosedFormContext {
    Degree nu;
    Branch branch = Branch::generic;
};

inline constexpr double guard_band = 1e-4;
// Around -1/2 the displayed formulas cancel harder (to ~6e-9 at distance
// 1e-4), so the limit path there covers a wider disc.
inline constexpr double half_guard_band = 2e-3;

ClosedFormContext classify_degree(const Degree& nu);

// Right-hand sides of the two headline identities, continuity-extended.
SpecialValue a_rhs(const Degree& nu);
SpecialValue b_rhs(const Degree& nu);
// The displayed formulas, valid only away from the integers and -1/2.
SpecialValue a_rhs_generic(const Degree& nu);
SpecialValue b_rhs_generic(const Degree& nu);
// id in {A, B}; meant for nu inside the guard band but valid everywhere.
SpecialValue closed_form_limit(std::string_view id, const Degree& nu);

// Derivative of the odd part of eps -> g(n + eps) at order 3, from samples at
// +-h, +-2h with one Richardson step in h; the cubic Taylor coefficient.
double fit_cubic_coefficient(const std::function<double(double)>& g, double h);

struct VerificationRecord {
    std::string id;
    Params params;
    cplx lhs, rhs;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    double tol = 0.0;
    bool pass = false;
    long n_evals = 0;
    double elapsed = 0.0;
    std::string status = "ok"; // ok, failed, non_converged, invalid (domain), error
    std::string diagnostic;
};

// pass <=> abs_diff <= max(tol, tol * max(|lhs|, |rhs|))
bool within_tolerance(double abs_diff, cplx lhs, cplx rhs, double tol);

VerificationRecord verify(std::string_view id, const Params& params,
                          std::optional<double> tol = std::nullopt);

} // namespace lm
