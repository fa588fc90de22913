#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "lm/errors.hpp"
#include "lm/identities.hpp"

namespace lm {

bool within_tolerance(double abs_diff, cplx lhs, cplx rhs, double tol)
{
    if (!std::isfinite(abs_diff)) return false;
    double scale = std::max(std::abs(lhs), std::abs(rhs));
    return abs_diff <= std::max(tol, tol * scale);
}

VerificationRecord verify(std::string_view id, const Params& params, std::optional<double> tol)
{
    const IdentitySpec& spec = find_identity(id);
    VerificationRecord r;
    r.id = spec.id;
    r.params = spec.defaults;
    for (const auto& [k, v] : params) r.params[k] = v;
    r.params.erase("nu_im");
    if (auto it = params.find("nu_im"); it != params.end() && it->second != 0.0) r.params["nu_im"] = it->second;
    r.tol = tol.value_or(spec.default_tol);
    if (!(r.tol > 0.0) || !std::isfinite(r.tol)) throw DomainError("tolerance must be a positive number");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto t0 = std::chrono::steady_clock::now();
    try {
        // integrators work a decade below the verification tolerance
        double side_tol = r.tol / 10.0;
        SideValue l = eval_side(spec.id, Side::LHS, r.params, side_tol);
        SideValue rr = eval_side(spec.id, Side::RHS, r.params, side_tol);
        r.lhs = l.value;
        r.rhs = rr.value;
        r.n_evals = l.n_evals + rr.n_evals;
        r.abs_diff = std::abs(l.value - rr.value);
        double scale = std::max(std::abs(l.value), std::abs(rr.value));
        r.rel_diff = scale > 0.0 ? r.abs_diff / scale : 0.0;
        r.pass = within_tolerance(r.abs_diff, r.lhs, r.rhs, r.tol);
        if (!l.converged || !rr.converged) {
            r.status = "non_converged";
            r.diagnostic = std::string(!l.converged ? "lhs" : "rhs") + " integral did not reach the requested accuracy";
        } else {
            r.status = r.pass ? "ok" : "failed";
        }
    } catch (const DomainError& e) {
        r.lhs = r.rhs = {nan, nan};
        r.abs_diff = r.rel_diff = nan;
        r.pass = false;
        r.status = "invalid";
        r.diagnostic = e.what();
    } catch (const NonConvergenceError& e) {
        r.lhs = r.rhs = {nan, nan};
        r.abs_diff = r.rel_diff = nan;
        r.pass = false;
        r.status = "non_converged";
        r.diagnostic = e.what();
    } catch (const Error& e) {
        r.lhs = r.rhs = {nan, nan};
        r.abs_diff = r.rel_diff = nan;
        r.pass = false;
        r.status = "error";
        r.diagnostic = e.what();
    }
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

} // namespace lm
