#pragma once

#include <array>

namespace zetalab {

// Two-parameter weight family. nu > 1/2, k in 0..8. The even-power
// coefficients of the numerator polynomial are cached at construction:
//   w(u) = (2nu)^{2k+1} Re{(2nu - iu)^{2k+1}} / (u^2 + 4 nu^2)^{2k+1}
//        = sum_m rho_m u^{2m} / (u^2 + 4 nu^2)^{2k+1},  m = 0..k.
struct WeightParams {
    double nu = 1.0;
    int k = 0;

    WeightParams(double nu_, int k_);

    std::array<double, 9> rho{};  // rho[m], m <= k
    double four_nu_sq = 4.0;
};

double montgomery_weight(double u);
double general_weight(const WeightParams& p, double u);

// |w(u) - 1| <= near_zero_constant * u^2 on |u| <= 1
double near_zero_constant(const WeightParams& p);
// |w(u)| <= decay_constant * u^{-2k-2} for |u| >= 4 nu
double decay_constant(const WeightParams& p);

// deriv-th t-derivative of the Lorentzian 2 nu / ((t - gamma)^2 + nu^2),
// evaluated in polar closed form; deriv in 0..8.
double lorentzian_kernel(const WeightParams& p, double gamma, double t, int deriv);

struct KernelProductCheck {
    double closed_form = 0.0;
    double quadrature = 0.0;
    double rel_error = 0.0;
};

// integral over t of W^(k)_{nu,0}(t) W^(k)_{nu,delta}(t), computed both as
// the closed form 4 pi (2k)! / (2 nu)^{2k+1} * w_{nu,k}(delta) and by
// adaptive quadrature on a tan-compactified axis.
KernelProductCheck kernel_product_check(const WeightParams& p, double delta);
// closed form; throws when the quadrature cross-check disagrees beyond 1e-7
double kernel_product_integral(const WeightParams& p, double delta);

}  // namespace zetalab
