#include "zetalab/pair_correlation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

namespace zetalab {

namespace {

struct PartialSum {
    Complex sum{};
    double abs_weight = 0.0;
    std::uint64_t pairs = 0;
};

PartialSum accumulate_range(const std::vector<double>& vals, const std::vector<double>& counts,
                            const std::vector<Complex>& phase, const WeightParams& p,
                            double window, std::size_t lo, std::size_t hi) {
    const std::size_t n = vals.size();
    const bool weighted = !counts.empty();
    KahanComplex acc;
    Kahan aw;
    std::uint64_t pairs = 0;
    std::size_t jlo =
        std::lower_bound(vals.begin(), vals.end(), vals[lo] - window) - vals.begin();
    std::size_t jhi =
        std::upper_bound(vals.begin(), vals.end(), vals[lo] + window) - vals.begin();
    for (std::size_t i = lo; i < hi; ++i) {
        while (jlo < n && vals[jlo] < vals[i] - window) ++jlo;
        while (jhi < n && vals[jhi] <= vals[i] + window) ++jhi;
        const Complex pi_phase = phase[i];
        const double ci = weighted ? counts[i] : 1.0;
        for (std::size_t j = jlo; j < jhi; ++j) {
            const double w = general_weight(p, vals[i] - vals[j]);
            const double c = weighted ? ci * counts[j] : 1.0;
            acc.add(pi_phase * std::conj(phase[j]) * (w * c));
            aw.add(std::abs(w) * c);
        }
        pairs += jhi - jlo;
    }
    return {acc.value(), aw.value(), pairs};
}

}  // namespace

PairSumResult windowed_pair_sum(const std::vector<double>& values,
                                const std::vector<double>& counts, double log_x,
                                const WeightParams& p, double window) {
    PairSumResult out;
    const std::size_t n = values.size();
    if (n == 0) return out;
    if (!counts.empty() && counts.size() != n)
        throw std::invalid_argument("windowed_pair_sum: counts size mismatch");
    if (!(window > 0.0)) throw std::invalid_argument("windowed_pair_sum: window must be positive");
    for (std::size_t i = 1; i < n; ++i)
        if (values[i] < values[i - 1])
            throw std::invalid_argument("windowed_pair_sum: values must be ascending");

    std::vector<Complex> phase(n);
    for (std::size_t i = 0; i < n; ++i) phase[i] = std::polar(1.0, log_x * values[i]);

    constexpr std::size_t kParts = 8;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (std::size_t c = 0; c < kParts; ++c) {
        std::size_t lo = n * c / kParts, hi = n * (c + 1) / kParts;
        if (lo < hi) ranges.emplace_back(lo, hi);
    }
    std::vector<std::future<PartialSum>> futs;
    for (std::size_t c = 1; c < ranges.size(); ++c)
        futs.push_back(std::async(std::launch::async, accumulate_range, std::cref(values),
                                  std::cref(counts), std::cref(phase), std::cref(p), window,
                                  ranges[c].first, ranges[c].second));
    std::vector<PartialSum> parts;
    parts.push_back(accumulate_range(values, counts, phase, p, window, ranges[0].first,
                                     ranges[0].second));
    for (auto& f : futs) parts.push_back(f.get());

    KahanComplex total;
    Kahan aw;
    for (const auto& part : parts) {
        total.add(part.sum);
        aw.add(part.abs_weight);
        out.pair_count += part.pairs;
    }
    out.sum = total.value();
    out.abs_weight_sum = aw.value();
    return out;
}

double windowed_pair_mass(const std::vector<double>& values,
                          const std::vector<double>& counts, double delta) {
    const std::size_t n = values.size();
    if (n == 0 || !(delta >= 0.0)) return 0.0;
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + (counts.empty() ? 1.0 : counts[i]);
    Kahan acc;
    std::size_t jlo = 0, jhi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (jlo < n && values[jlo] < values[i] - delta) ++jlo;
        while (jhi < n && values[jhi] <= values[i] + delta) ++jhi;
        const double ci = counts.empty() ? 1.0 : counts[i];
        acc.add(ci * (prefix[jhi] - prefix[jlo]));
    }
    return acc.value();
}

double windowed_pair_tail_bound(const std::vector<double>& values,
                                const std::vector<double>& counts, const WeightParams& p,
                                double window) {
    if (values.size() < 2 || !std::isfinite(window)) return 0.0;
    if (!(window >= 4.0 * p.nu))
        throw std::invalid_argument("windowed_pair_tail_bound: window must be at least 4 nu");
    const double cprime = decay_constant(p);
    const double span = values.back() - values.front();
    Kahan total;
    double inner_mass = windowed_pair_mass(values, counts, window);
    for (double lo = window; lo < span; lo *= 2.0) {
        const double outer_mass = windowed_pair_mass(values, counts, 2.0 * lo);
        const double annulus = std::max(outer_mass - inner_mass, 0.0);
        total.add(cprime * std::pow(lo, -2.0 * p.k - 2.0) * annulus);
        inner_mass = outer_mass;
    }
    return total.value();
}

double windowed_real_pair_sum(const std::vector<double>& values, double window,
                              const std::function<double(double)>& f) {
    const std::size_t n = values.size();
    if (!(window > 0.0))
        throw std::invalid_argument("windowed_real_pair_sum: window must be positive");
    Kahan acc;
    std::size_t jlo = 0, jhi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (jlo < n && values[jlo] < values[i] - window) ++jlo;
        while (jhi < n && values[jhi] <= values[i] + window) ++jhi;
        for (std::size_t j = jlo; j < jhi; ++j) acc.add(f(values[i] - values[j]));
    }
    return acc.value();
}

CorrelationEstimate f_general(const ZeroCatalog& cat, const WeightParams& p, double x,
                              double T, double window) {
    if (!(T >= 2.0)) throw std::domain_error("f_general: T must be at least 2");
    if (!(x >= 1.0)) throw std::domain_error("f_general: x must be at least 1");
    if (cat.t_max < T * (1.0 - 1e-12))
        throw std::out_of_range("f_general: catalog does not cover (0, T]");

    const std::size_t n_use = cat.count_up_to(T);
    std::vector<double> vals(cat.ordinates.begin(),
                             cat.ordinates.begin() + static_cast<std::ptrdiff_t>(n_use));

    CorrelationEstimate est;
    est.params = p;
    est.x = x;
    est.alpha = std::log(x) / std::log(T);
    est.T = T;
    est.window = window;
    const double norm = TWO_PI / (T * std::log(T));
    if (vals.empty()) return est;

    const bool bounded = std::isfinite(window);
    if (bounded) {
        const double mean_gap = T / static_cast<double>(vals.size());
        if (window < mean_gap)
            throw std::invalid_argument("f_general: window below the mean ordinate gap");
        if (window < 4.0 * p.nu)
            throw std::invalid_argument("f_general: window must be at least 4 nu");
    }

    PairSumResult raw = windowed_pair_sum(vals, {}, std::log(x), p, window);
    est.value = norm * raw.sum.real();
    est.imag_residual = norm * std::abs(raw.sum.imag());
    est.pair_count = raw.pair_count;
    if (bounded) est.tail_bound = norm * windowed_pair_tail_bound(vals, {}, p, window);
    est.phase_error = norm * 2.0 * std::abs(std::log(x)) * cat.precision_hint *
                      raw.abs_weight_sum;
    return est;
}

CorrelationEstimate f_montgomery(const ZeroCatalog& cat, double alpha, double T,
                                 double window) {
    if (!(alpha >= 0.0)) throw std::domain_error("f_montgomery: alpha must be nonnegative");
    CorrelationEstimate est =
        f_general(cat, WeightParams(1.0, 0), std::pow(T, alpha), T, window);
    est.alpha = alpha;
    return est;
}

double theorem1_prediction(const WeightParams& p, double alpha, double T) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::domain_error("theorem1_prediction: alpha must lie in [0, 1]");
    if (!(T >= 2.0)) throw std::domain_error("theorem1_prediction: T must be at least 2");
    const double L = std::log(T);
    const double main = std::pow(alpha, 2.0 * p.k) *
                        std::pow(2.0 * p.nu * L, 2.0 * p.k + 1.0) /
                        (2.0 * factorial(2 * p.k) * std::pow(T, 2.0 * p.nu * alpha));
    return main + alpha + 1.0;
}

KernelPair fejer_kernel(double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("fejer_kernel: lambda must be positive");
    KernelPair kp;
    kp.name = "fejer";
    kp.lambda = lambda;
    kp.r = [lambda](double v) {
        const double a = PI * lambda * v;
        if (std::abs(a) < 1e-8) return 1.0 - a * a / 3.0;
        const double s = std::sin(a) / a;
        return s * s;
    };
    kp.r_hat = [lambda](double a) { return std::max(0.0, 1.0 - std::abs(a) / lambda) / lambda; };
    kp.limit_factor = 1.0 / lambda + lambda / 3.0;
    return kp;
}

KernelPair dirichlet_sinc_kernel(double lambda) {
    if (!(lambda > 0.0))
        throw std::domain_error("dirichlet_sinc_kernel: lambda must be positive");
    KernelPair kp;
    kp.name = "dirichlet-sinc";
    kp.lambda = lambda;
    kp.r = [lambda](double v) {
        const double a = TWO_PI * lambda * v;
        if (std::abs(a) < 1e-8) return 1.0 - a * a / 6.0;
        return std::sin(a) / a;
    };
    kp.r_hat = [lambda](double a) {
        return std::abs(a) <= lambda ? 0.5 / lambda : 0.0;
    };
    kp.limit_factor = 0.5 / lambda + 0.5 * lambda;
    return kp;
}

KernelPair triangle_kernel(double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("triangle_kernel: lambda must be positive");
    KernelPair kp;
    kp.name = "triangle";
    kp.lambda = lambda;
    kp.r = [lambda](double u) { return std::max(0.0, 1.0 - std::abs(u) / lambda); };
    kp.r_hat = [lambda](double a) {
        const double b = PI * lambda * a;
        if (std::abs(b) < 1e-8) return lambda * (1.0 - b * b / 3.0);
        const double s = std::sin(b) / b;
        return lambda * s * s;
    };
    // the transform has unbounded support, so the sum limit would lean on
    // correlation values past alpha = 1
    kp.limit_factor = std::numeric_limits<double>::quiet_NaN();
    return kp;
}

double kernel_convolution_sum(const ZeroCatalog& cat, const WeightParams& p,
                              const KernelPair& kernel, double T, double window) {
    if (!(T >= 2.0)) throw std::domain_error("kernel_convolution_sum: T must be at least 2");
    if (cat.t_max < T * (1.0 - 1e-12))
        throw std::out_of_range("kernel_convolution_sum: catalog does not cover (0, T]");
    const std::size_t n_use = cat.count_up_to(T);
    std::vector<double> vals(cat.ordinates.begin(),
                             cat.ordinates.begin() + static_cast<std::ptrdiff_t>(n_use));
    if (vals.empty()) return 0.0;
    if (std::isfinite(window)) {
        const double mean_gap = T / static_cast<double>(vals.size());
        if (window < mean_gap)
            throw std::invalid_argument("kernel_convolution_sum: window below the mean gap");
    }
    const double scale = std::log(T) / TWO_PI;
    return windowed_real_pair_sum(vals, window, [&](double u) {
        return kernel.r(u * scale) * general_weight(p, u);
    });
}

namespace {

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys,
                 std::size_t stride) {
    Kahan acc;
    std::size_t prev = 0;
    for (std::size_t i = stride; i < xs.size(); i += stride) {
        acc.add(0.5 * (xs[i] - xs[prev]) * (ys[i] + ys[prev]));
        prev = i;
    }
    if (prev + 1 < xs.size()) {
        std::size_t last = xs.size() - 1;
        acc.add(0.5 * (xs[last] - xs[prev]) * (ys[last] + ys[prev]));
    }
    return acc.value();
}

}  // namespace

AsymptoticReport convolution_consistency(const ZeroCatalog& cat, const WeightParams& p,
                                         const KernelPair& kernel, double T,
                                         const std::vector<double>& alpha_grid,
                                         double window) {
    if (alpha_grid.size() < 5)
        throw std::invalid_argument("convolution_consistency: need at least 5 grid points");
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        if (alpha_grid[i] < 0.0)
            throw std::invalid_argument("convolution_consistency: negative grid alpha");
        if (i > 0 && alpha_grid[i] <= alpha_grid[i - 1])
            throw std::invalid_argument("convolution_consistency: grid must ascend");
    }

    const double lhs = kernel_convolution_sum(cat, p, kernel, T, window);

    std::vector<double> fvals(alpha_grid.size()), gvals(alpha_grid.size());
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        CorrelationEstimate est =
            f_general(cat, p, std::pow(T, alpha_grid[i]), T, window);
        fvals[i] = est.value;
        gvals[i] = est.value * kernel.r_hat(alpha_grid[i]);
    }
    // the transforms are even in alpha, so integrate the half line twice
    const double integral = 2.0 * trapezoid(alpha_grid, gvals, 1);
    const double coarse = 2.0 * trapezoid(alpha_grid, gvals, 2);
    const double scale = T * std::log(T) / TWO_PI;
    const double rhs = scale * integral;
    if (std::abs(rhs - scale * coarse) > 0.1 * std::abs(rhs))
        throw std::runtime_error("convolution_consistency: alpha grid too coarse");

    const bool has_limit = std::isfinite(kernel.limit_factor);
    const double predicted = has_limit ? kernel.limit_factor * scale : rhs;
    AsymptoticReport rep = relative_report(
        "convolution(" + kernel.name + ")", lhs, predicted, 0.25, 0.0,
        "pair sum vs transform integral " + shortest_double(rhs) + ", ratio " +
            shortest_double(rhs != 0.0 ? lhs / rhs : 0.0) +
            (has_limit ? ", limit factor " + shortest_double(kernel.limit_factor)
                       : ", no closed limit"));
    return rep;
}

}  // namespace zetalab
