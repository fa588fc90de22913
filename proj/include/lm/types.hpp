#pragma once

#include <cmath>
#include <complex>

namespace lm {

using cplx = std::complex<double>;

// Complex Legendre degree nu.
struct Degree {
    double re = 0.0;
    double im = 0.0;

    Degree() = default;
    Degree(double r, double i = 0.0) : re(r), im(i) {}
    explicit Degree(cplx z) : re(z.real()), im(z.imag()) {}

    cplx value() const { return {re, im}; }
    // nu -> -nu-1
    Degree reflected() const { return {-re - 1.0, -im}; }
    bool is_real() const { return im == 0.0; }
    bool finite() const { return std::isfinite(re) && std::isfinite(im); }
};

struct SpecialValue {
    cplx value;
    double abs_err = 0.0;
};

enum class BesselKind { J, Y, I, K };

struct BesselOrder {
    double mu = 0.0;
    BesselKind kind = BesselKind::J;
    bool scaled = false; // I * exp(-x), K * exp(x)
};

struct QuadResult {
    cplx value;
    double err_est = 0.0;
    long n_evals = 0;
    bool converged = false;
};

} // namespace lm
