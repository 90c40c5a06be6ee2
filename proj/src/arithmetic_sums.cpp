#include "zetalab/arithmetic_sums.hpp"

#include <cmath>
#include <stdexcept>

namespace zetalab {

namespace {

constexpr std::uint64_t kSieveCap = 100'000'000;
// psi(u) < 1.03883 u for all u > 0 (Rosser-Schoenfeld), rounded up
constexpr double kPsiSlope = 1.04;

double factorial_d(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binom_d(int n, int k) {
    return factorial_d(n) / (factorial_d(k) * factorial_d(n - k));
}

// int_X^infty log^h u / u^g du for g > 1, via u = X v and
// int_1^infty log^j v / v^g dv = j! / (g-1)^{j+1}; all terms positive
double tail_integral(double g, int h, double X) {
    const double lx = std::log(X);
    double acc = 0.0;
    for (int j = 0; j <= h; ++j)
        acc += binom_d(h, j) * std::pow(lx, h - j) * factorial_d(j) /
               std::pow(g - 1.0, j + 1);
    return std::pow(X, 1.0 - g) * acc;
}

// int_X^infty log^i u log^b(u/x) / u^a du expanded in positive pieces
double tail_integral_mixed(double a, int i, int b, double x, double X) {
    const double lX = std::log(X);
    const double lXx = std::log(X / x);
    double acc = 0.0;
    for (int p = 0; p <= i; ++p)
        for (int m = 0; m <= b; ++m)
            acc += binom_d(i, p) * std::pow(lX, i - p) * binom_d(b, m) *
                   std::pow(lXx, b - m) * factorial_d(p + m) /
                   std::pow(a - 1.0, p + m + 1);
    return std::pow(X, 1.0 - a) * acc;
}

void require_tail_exponent(double a) {
    if (a <= 1.1) throw std::domain_error("tail too fat: need a > 1.1");
}

std::uint64_t clamp_cutoff(std::uint64_t c) { return c > kSieveCap ? kSieveCap : c; }

}  // namespace

LemmaSum lemma_beef(double x, double a, int b) {
    if (a <= -1.0) throw std::domain_error("lemma_beef: need a > -1");
    if (b < 0) throw std::domain_error("lemma_beef: need b >= 0");
    if (x < 1.0) throw std::domain_error("lemma_beef: need x >= 1");
    if (x > (double)kSieveCap) throw std::length_error("lemma_beef: x beyond sieve budget");

    LemmaSum out;
    const double lx = std::log(x);
    out.main = factorial_d(b) * std::pow(x, a + 1.0) * lx / std::pow(a + 1.0, b + 1);

    auto table = shared_mangoldt((std::uint64_t)x);
    const std::size_t end = table->upper_index((std::uint64_t)x);
    Kahan acc;
    for (std::size_t i = 0; i < end; ++i) {
        const auto& e = table->entries[i];
        const double lam = e.log_p;
        acc.add(lam * lam * std::pow((double)e.n, a) *
                std::pow(lx - std::log((double)e.n), b));
        ++out.terms;
    }
    out.exact = acc.value();
    out.cutoff = (std::uint64_t)x;
    return out;
}

LemmaSum lemma_steak(double x, double a, int b, std::uint64_t cutoff) {
    require_tail_exponent(a);
    if (b < 0) throw std::domain_error("lemma_steak: need b >= 0");
    if (x < 2.0) throw std::domain_error("lemma_steak: need x >= 2");

    LemmaSum out;
    const double lx = std::log(x);
    out.main = ((b % 2 == 0) ? 1.0 : -1.0) * factorial_d(b) * std::pow(x, 1.0 - a) * lx /
               std::pow(a - 1.0, b + 1);

    // summand bound Lambda(n) g(n) with g(u) = log u log^b(u/x) u^{-a};
    // g must be decreasing beyond the cutoff: 1/log u + b/log(u/x) <= a
    auto decreasing_at = [&](double X) {
        return 1.0 / std::log(X) + (b > 0 ? b / std::log(X / x) : 0.0) <= a;
    };
    auto bound_at = [&](double X) {
        const double gX = std::log(X) * std::pow(std::log(X / x), b) * std::pow(X, -a);
        return kPsiSlope * (X * gX + tail_integral_mixed(a, 1, b, x, X));
    };

    double X = (cutoff > 0) ? (double)clamp_cutoff(cutoff) : std::max(4.0 * x, 1048576.0);
    while (!decreasing_at(X)) {
        if (X >= (double)kSieveCap)
            throw std::invalid_argument("lemma_steak: no usable cutoff under the sieve budget");
        X = std::min(2.0 * X, (double)kSieveCap);
    }
    if (cutoff == 0) {
        const double target = 1e-9 * std::fabs(out.main);
        while (bound_at(X) > target && X < (double)kSieveCap)
            X = std::min(2.0 * X, (double)kSieveCap);
    }
    out.cutoff = (std::uint64_t)X;
    out.tail_bound = bound_at(X);

    auto table = shared_mangoldt(out.cutoff);
    const std::size_t lo = table->upper_index((std::uint64_t)x);
    const std::size_t hi = table->upper_index(out.cutoff);
    Kahan acc;
    for (std::size_t i = lo; i < hi; ++i) {
        const auto& e = table->entries[i];
        const double lam = e.log_p;
        acc.add(lam * lam * std::pow((double)e.n, -a) *
                std::pow(lx - std::log((double)e.n), b));
        ++out.terms;
    }
    out.exact = acc.value();
    return out;
}

LemmaSum lemma_wagyu(double x, int k, double a) {
    if (k < 1) throw std::domain_error("lemma_wagyu: need k >= 1");
    if (a <= -1.0) throw std::domain_error("lemma_wagyu: need a > -1");
    if (x < 1.0) throw std::domain_error("lemma_wagyu: need x >= 1");
    if (x > (double)kSieveCap) throw std::length_error("lemma_wagyu: x beyond sieve budget");

    LemmaSum out;
    out.main = std::pow(x, a + 1.0) * std::pow(std::log(x), k - 1) / (a + 1.0);

    auto table = shared_mangoldt((std::uint64_t)x);
    const std::size_t end = table->upper_index((std::uint64_t)x);
    Kahan acc;
    for (std::size_t i = 0; i < end; ++i) {
        const auto& e = table->entries[i];
        acc.add(std::pow(e.log_p, k) * std::pow((double)e.n, a));
        ++out.terms;
    }
    out.exact = acc.value();
    out.cutoff = (std::uint64_t)x;
    return out;
}

LemmaSum wagyu_harmonic(double x, int k) {
    if (k < 1) throw std::domain_error("wagyu_harmonic: need k >= 1");
    if (x < 1.0) throw std::domain_error("wagyu_harmonic: need x >= 1");
    if (x > (double)kSieveCap) throw std::length_error("wagyu_harmonic: x beyond sieve budget");

    LemmaSum out;
    out.main = std::pow(std::log(x), k) / k;

    auto table = shared_mangoldt((std::uint64_t)x);
    const std::size_t end = table->upper_index((std::uint64_t)x);
    Kahan acc;
    for (std::size_t i = 0; i < end; ++i) {
        const auto& e = table->entries[i];
        acc.add(std::pow(e.log_p, k) / (double)e.n);
        ++out.terms;
    }
    out.exact = acc.value();
    out.cutoff = (std::uint64_t)x;
    return out;
}

LemmaSum lemma_sirloin(double x, int k, double a, std::uint64_t cutoff) {
    require_tail_exponent(a);
    if (k < 1) throw std::domain_error("lemma_sirloin: need k >= 1");
    if (x < 2.0) throw std::domain_error("lemma_sirloin: need x >= 2");

    LemmaSum out;
    out.main = std::pow(x, 1.0 - a) * std::pow(std::log(x), k - 1) / (a - 1.0);

    // summand bound Lambda(n) g(n), g(u) = log^{k-1} u u^{-a}
    auto decreasing_at = [&](double X) { return (k - 1) / std::log(X) <= a; };
    auto bound_at = [&](double X) {
        const double gX = std::pow(std::log(X), k - 1) * std::pow(X, -a);
        return kPsiSlope * (X * gX + tail_integral(a, k - 1, X));
    };

    double X = (cutoff > 0) ? (double)clamp_cutoff(cutoff) : std::max(4.0 * x, 1048576.0);
    while (!decreasing_at(X)) {
        if (X >= (double)kSieveCap)
            throw std::invalid_argument("lemma_sirloin: no usable cutoff under the sieve budget");
        X = std::min(2.0 * X, (double)kSieveCap);
    }
    if (cutoff == 0) {
        const double target = 1e-9 * std::fabs(out.main);
        while (bound_at(X) > target && X < (double)kSieveCap)
            X = std::min(2.0 * X, (double)kSieveCap);
    }
    out.cutoff = (std::uint64_t)X;
    out.tail_bound = bound_at(X);

    auto table = shared_mangoldt(out.cutoff);
    const std::size_t lo = table->upper_index((std::uint64_t)x);
    const std::size_t hi = table->upper_index(out.cutoff);
    Kahan acc;
    for (std::size_t i = lo; i < hi; ++i) {
        const auto& e = table->entries[i];
        acc.add(std::pow(e.log_p, k) * std::pow((double)e.n, -a));
        ++out.terms;
    }
    out.exact = acc.value();
    return out;
}

LemmaSum sirloin_loglog(double x, int k, double a, std::uint64_t cutoff) {
    require_tail_exponent(a);
    if (k < 1) throw std::domain_error("sirloin_loglog: need k >= 1");
    if (x < 16.0) throw std::domain_error("sirloin_loglog: need x >= 16");

    LemmaSum out;
    const double lx = std::log(x);
    out.main = std::pow(x, 1.0 - a) * std::pow(lx, k) * std::log(lx) / (a - 1.0);

    // summand bound Lambda(n) g(n), g(u) = log^k u loglog u u^{-a};
    // loglog u <= (log u)/e for u >= e^e covers the integral piece
    auto decreasing_at = [&](double X) {
        const double l = std::log(X);
        return k / l + 1.0 / (l * std::log(l)) <= a;
    };
    auto bound_at = [&](double X) {
        const double l = std::log(X);
        const double gX = std::pow(l, k) * std::log(l) * std::pow(X, -a);
        return kPsiSlope * (X * gX + tail_integral(a, k + 1, X) / std::exp(1.0));
    };

    double X = (cutoff > 0) ? (double)clamp_cutoff(cutoff) : std::max(4.0 * x, 1048576.0);
    while (!decreasing_at(X)) {
        if (X >= (double)kSieveCap)
            throw std::invalid_argument("sirloin_loglog: no usable cutoff under the sieve budget");
        X = std::min(2.0 * X, (double)kSieveCap);
    }
    if (cutoff == 0) {
        const double target = 1e-9 * std::fabs(out.main);
        while (bound_at(X) > target && X < (double)kSieveCap)
            X = std::min(2.0 * X, (double)kSieveCap);
    }
    out.cutoff = (std::uint64_t)X;
    out.tail_bound = bound_at(X);

    auto table = shared_mangoldt(out.cutoff);
    const std::size_t lo = table->upper_index((std::uint64_t)x);
    const std::size_t hi = table->upper_index(out.cutoff);
    Kahan acc;
    for (std::size_t i = lo; i < hi; ++i) {
        const auto& e = table->entries[i];
        const double n = (double)e.n;
        acc.add(std::pow(e.log_p, k) * std::pow(n, -a) * std::log(n) *
                std::log(std::log(n)));
        ++out.terms;
    }
    out.exact = acc.value();
    return out;
}

GonekConstants gonek_constants(std::uint64_t n, double T) {
    if (n < 2) throw std::domain_error("gonek_constants: need n >= 2");
    if (T < 16.0) throw std::domain_error("gonek_constants: need T >= 16");

    GonekConstants out;
    auto table = shared_mangoldt(n);
    const double lam = (*table)(n);
    out.lambda_n = -lam / (TWO_PI * std::sqrt((double)n));

    const double rn = std::sqrt((double)n);
    const double LT = std::log(T);
    if ((double)n <= T)
        out.error_scale = rn * LT * std::log(LT);
    else {
        const double ln = std::log((double)n);
        out.error_scale = rn * ln * std::log(ln);
    }
    return out;
}

GonekSum gonek_sum(const ZeroCatalog& cat, std::uint64_t n, double T) {
    if (cat.t_max < T * (1.0 - 1e-12))
        throw std::out_of_range("gonek_sum: catalog does not cover (0, T]");

    const auto gc = gonek_constants(n, T);
    GonekSum out;
    out.prediction = gc.lambda_n * T;
    out.error_scale = gc.error_scale;

    const double ln = std::log((double)n);
    const std::size_t end = cat.count_up_to(T);
    KahanComplex acc;
    for (std::size_t i = 0; i < end; ++i)
        acc.add(std::polar(1.0, cat.ordinates[i] * ln));
    out.value = acc.value();
    out.terms = end;
    out.deviation = std::abs(out.value - Complex(out.prediction, 0.0)) / out.error_scale;
    return out;
}

PhiSum phi_sum(const SumMultiset& ms, std::uint64_t n, int k) {
    if (k < 0 || k > 8) throw std::domain_error("phi_sum: need 0 <= k <= 8");

    const auto gc = gonek_constants(n, ms.T);
    const double kfac = factorial_d(k);

    PhiSum out;
    out.prediction = std::pow(gc.lambda_n, (double)ms.mu) *
                     std::pow(ms.T, (double)(ms.mu + k)) /
                     ((ms.mu + k) * factorial_d(ms.mu - 1) * kfac);
    out.error_scale = std::pow(ms.T, (double)(ms.mu + k - 1)) *
                      std::pow(std::log(ms.T), (double)(ms.mu - 1)) * gc.error_scale;

    const double ln = std::log((double)n);
    KahanComplex acc;
    for (const auto& e : ms.entries)
        acc.add((double)e.count * std::pow(e.sum, k) / kfac *
                std::polar(1.0, e.sum * ln));
    out.value = acc.value();
    out.deviation = std::abs(out.value - Complex(out.prediction, 0.0)) / out.error_scale;
    return out;
}

}  // namespace zetalab
