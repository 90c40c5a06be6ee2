#include "zetalab/weights.hpp"

#include <cmath>
#include <stdexcept>

#include "zetalab/numerics.hpp"

namespace zetalab {
namespace {

double int_pow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

}  // namespace

WeightParams::WeightParams(double nu_, int k_) : nu(nu_), k(k_) {
    if (!(nu > 0.5)) throw std::invalid_argument("weight parameter nu must exceed 1/2");
    if (k < 0 || k > 8) throw std::invalid_argument("weight parameter k must be in 0..8");
    four_nu_sq = 4.0 * nu * nu;
    double two_nu = 2.0 * nu;
    double lead = int_pow(two_nu, 2 * k + 1);
    for (int m = 0; m <= k; ++m) {
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        rho[m] = lead * sign * binomial(2 * k + 1, 2 * m) * int_pow(two_nu, 2 * k + 1 - 2 * m);
    }
}

double montgomery_weight(double u) { return 4.0 / (u * u + 4.0); }

double general_weight(const WeightParams& p, double u) {
    double x = u * u;
    double num = p.rho[p.k];
    for (int m = p.k - 1; m >= 0; --m) num = num * x + p.rho[m];
    return num / int_pow(x + p.four_nu_sq, 2 * p.k + 1);
}

double near_zero_constant(const WeightParams& p) {
    // w(u) - 1 = (num - den)/den; constant terms cancel, remaining
    // coefficients bounded on |u| <= 1 against den >= (4 nu^2)^{2k+1}
    double den0 = int_pow(p.four_nu_sq, 2 * p.k + 1);
    double acc = 0.0;
    for (int m = 1; m <= 2 * p.k + 1; ++m) {
        double rho_m = m <= p.k ? p.rho[m] : 0.0;
        double d_m = binomial(2 * p.k + 1, m) * int_pow(p.four_nu_sq, 2 * p.k + 1 - m);
        acc += std::abs(rho_m - d_m);
    }
    return acc / den0;
}

double decay_constant(const WeightParams& p) {
    double two_nu = 2.0 * p.nu;
    double four_nu = 4.0 * p.nu;
    double acc = 0.0;
    for (int m = 0; m <= p.k; ++m)
        acc += binomial(2 * p.k + 1, 2 * m) * int_pow(two_nu, 2 * p.k + 1 - 2 * m) *
               std::pow(four_nu, 2 * (m - p.k));
    return int_pow(two_nu, 2 * p.k + 1) * acc;
}

double lorentzian_kernel(const WeightParams& p, double gamma, double t, int deriv) {
    if (deriv < 0 || deriv > 8) throw std::invalid_argument("kernel derivative order must be in 0..8");
    double d = t - gamma;
    double r = std::hypot(d, p.nu);
    double phi = std::atan2(p.nu, d);
    double sign = (deriv % 2 == 0) ? 1.0 : -1.0;
    return 2.0 * sign * factorial(deriv) * std::sin((deriv + 1) * phi) /
           int_pow(r, deriv + 1);
}

KernelProductCheck kernel_product_check(const WeightParams& p, double delta) {
    KernelProductCheck out;
    double scale0 = 4.0 * PI * factorial(2 * p.k) / int_pow(2.0 * p.nu, 2 * p.k + 1);
    out.closed_form = scale0 * general_weight(p, delta);

    // t = S tan(theta) maps the axis to (-pi/2, pi/2); the integrand decays
    // like t^{-2k-4}, so the transformed one vanishes smoothly at the edges.
    double S = std::max(2.0 * p.nu, 1.0 + 0.5 * std::abs(delta));
    auto f = [&](double theta) {
        double c = std::cos(theta);
        double t = S * std::tan(theta);
        double w = lorentzian_kernel(p, 0.0, t, p.k) * lorentzian_kernel(p, delta, t, p.k);
        return w * S / (c * c);
    };
    double tol = 1e-8 * std::max(std::abs(out.closed_form), 0.01 * scale0);
    double edge = 1e-9;
    out.quadrature = adaptive_simpson(f, -0.5 * PI + edge, 0.5 * PI - edge, tol);
    out.rel_error = std::abs(out.quadrature - out.closed_form) /
                    std::max(std::abs(out.closed_form), 1e-6 * scale0);
    return out;
}

double kernel_product_integral(const WeightParams& p, double delta) {
    KernelProductCheck c = kernel_product_check(p, delta);
    if (c.rel_error > 1e-7)
        throw std::runtime_error("kernel product integral: quadrature disagrees with closed form");
    return c.closed_form;
}

}  // namespace zetalab
