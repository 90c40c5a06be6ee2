#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zetalab/numerics.hpp"
#include "zetalab/report.hpp"
#include "zetalab/weights.hpp"
#include "zetalab/zero_catalog.hpp"

namespace zetalab {

// Windowed ordered-pair accumulation over ascending values (diagonal pairs
// included): sum of exp(i log_x (v_i - v_j)) * w(v_i - v_j) * c_i c_j over
// |v_i - v_j| <= window. counts empty means all multiplicities are one.
// Work is split into 8 fixed index partitions whose compensated partial sums
// merge in partition order, so results are bit-reproducible.
struct PairSumResult {
    Complex sum{};
    double abs_weight_sum = 0.0;
    std::uint64_t pair_count = 0;
};

PairSumResult windowed_pair_sum(const std::vector<double>& values,
                                const std::vector<double>& counts, double log_x,
                                const WeightParams& p, double window);

// Same two-pointer walk for a plain real summand f(v_i - v_j).
double windowed_real_pair_sum(const std::vector<double>& values, double window,
                              const std::function<double(double)>& f);

// Weighted count of ordered pairs with |v_i - v_j| <= delta, diagonal included.
double windowed_pair_mass(const std::vector<double>& values,
                          const std::vector<double>& counts, double delta);

// Rigorous upper bound on the total |weight| mass dropped by truncating at
// |v_i - v_j| > window, from the weight decay constant over dyadic annuli.
// Requires window >= 4 nu so the decay bound applies from the first annulus.
double windowed_pair_tail_bound(const std::vector<double>& values,
                                const std::vector<double>& counts, const WeightParams& p,
                                double window);

struct CorrelationEstimate {
    WeightParams params{1.0, 0};
    double x = 1.0;
    double alpha = 0.0;
    double T = 0.0;
    double value = 0.0;
    double imag_residual = 0.0;
    double window = 0.0;
    double tail_bound = 0.0;
    double phase_error = 0.0;
    std::uint64_t pair_count = 0;
};

// (2 pi / (T log T)) * sum over ordinate pairs in (0, T] of
// x^{i(gamma - gamma')} w_{nu,k}(gamma - gamma').
CorrelationEstimate f_general(const ZeroCatalog& cat, const WeightParams& p, double x,
                              double T, double window = 50.0);
CorrelationEstimate f_montgomery(const ZeroCatalog& cat, double alpha, double T,
                                 double window = 50.0);

// alpha^{2k} (2 nu log T)^{2k+1} / (2 (2k)! T^{2 nu alpha}) + alpha + 1
double theorem1_prediction(const WeightParams& p, double alpha, double T);

struct KernelPair {
    std::string name;
    double lambda = 0.0;
    std::function<double(double)> r;
    std::function<double(double)> r_hat;
    // multiply by T log T / (2 pi) for the predicted sum limit; NaN when the
    // limit rests on conjectural F beyond alpha = 1
    double limit_factor = 0.0;
};

KernelPair fejer_kernel(double lambda);
KernelPair dirichlet_sinc_kernel(double lambda);
KernelPair triangle_kernel(double lambda);

double kernel_convolution_sum(const ZeroCatalog& cat, const WeightParams& p,
                              const KernelPair& kernel, double T, double window = 200.0);

// Compares the direct pair sum against (T log T / 2 pi) * integral of the
// measured F against r_hat over the alpha grid, and against the predicted
// limit when the kernel carries one.
AsymptoticReport convolution_consistency(const ZeroCatalog& cat, const WeightParams& p,
                                         const KernelPair& kernel, double T,
                                         const std::vector<double>& alpha_grid,
                                         double window = 200.0);

}  // namespace zetalab
