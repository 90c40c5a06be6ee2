#pragma once

#include <complex>
#include <cstdint>

#include "zetalab/numerics.hpp"

namespace zetalab {

struct ComplexPoint {
    double sigma = 0.0;
    double t = 0.0;

    double tau() const { return std::abs(t) + 10.0; }
    Complex value() const { return {sigma, t}; }
    static ComplexPoint from(Complex z) { return {z.real(), z.imag()}; }
};

// Euler-Maclaurin evaluation of zeta(s), truncation order adapted to |t|.
// Throws on s = 1 and when tol is unreachable in double precision.
Complex zeta(ComplexPoint s, double tol);

// Same machinery carrying d/ds up to order 3.
Jet zeta_jet(Complex s, double tol);

// zeta'/zeta(s) = -sum Lambda(n) n^{-s}, sigma > 1 + margin. The partial sum
// is completed with the smooth tail N^{1-s}/(s-1); the stopping rule uses the
// prime-counting fluctuation bound sqrt(u) log^2 u / (8 pi). Throws a domain
// error left of the margin and a runtime error when the bound cannot reach
// tol with a table of sane size.
Complex log_deriv_zeta_series(ComplexPoint s, double tol, double margin = 0.25);

// Raw truncated sum -sum_{n<=N} Lambda(n) n^{-s}, no tail completion.
Complex log_deriv_zeta_partial(Complex s, std::uint64_t N);

// zeta'/zeta as a ratio of zeta_jet coefficients. Valid wherever the
// Euler-Maclaurin series converges, not just sigma > 1. Coefficients 0..2
// are meaningful, c[3] is zeroed.
Jet log_deriv_zeta_ratio(Complex s, double tol);

// Recurrence shift plus asymptotic series; order in {0,1,2,3}.
Complex digamma(Complex z);
Complex polygamma(int order, Complex z);

// Principal branch, Re z > 0.
Complex log_gamma(Complex z);

double riemann_siegel_theta(double t);
double riemann_siegel_theta_deriv(double t);

// Main sum plus the C0 correction; t >= 10.
double riemann_siegel_Z(double t);
// Conservative magnitude for the neglected correction terms.
double riemann_siegel_error_envelope(double t);
// First-correction shape factor on [0,1); exposed for direct testing.
double rs_psi(double p);

struct ZValue {
    double value = 0.0;
    double envelope = 0.0;
    bool sign_reliable = false;
};

// Hybrid evaluator for Z(t): Euler-Maclaurin zeta rotated by theta below
// t = 4000, Riemann-Siegel above.
ZValue z_eval(double t);
double z_function(double t);

}  // namespace zetalab
