#pragma once

#include <cstdint>

#include "zetalab/mangoldt.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/ordinate_sums.hpp"
#include "zetalab/zero_catalog.hpp"

namespace zetalab {

// Result of one truncated von Mangoldt sum against its leading term. For the
// n > x family `exact` covers sieve entries in (x, cutoff] only and
// `tail_bound` is an analytic bound (Chebyshev psi(u) <= 1.04 u plus the
// closed-form log-power integrals) on everything beyond the cutoff. The
// n <= x family is complete, tail_bound = 0.
struct LemmaSum {
    double exact = 0.0;
    double main = 0.0;
    double tail_bound = 0.0;
    std::uint64_t cutoff = 0;
    std::uint64_t terms = 0;
};

// sum_{n<=x} Lambda(n)^2 n^a log^b(x/n), main b! x^{a+1} log x / (a+1)^{b+1}
LemmaSum lemma_beef(double x, double a, int b);

// sum_{n>x} Lambda(n)^2 n^{-a} log^b(x/n), main (-1)^b b! x^{1-a} log x / (a-1)^{b+1}
// cutoff = 0 lets the routine grow it until the tail bound is negligible or
// the sieve budget is reached.
LemmaSum lemma_steak(double x, double a, int b, std::uint64_t cutoff = 0);

// sum_{n<=x} Lambda(n)^k n^a, main x^{a+1} (log x)^{k-1} / (a+1)
LemmaSum lemma_wagyu(double x, int k, double a);

// sum_{n<=x} Lambda(n)^k / n, main (log x)^k / k
LemmaSum wagyu_harmonic(double x, int k);

// sum_{n>x} Lambda(n)^k n^{-a}, main x^{1-a} (log x)^{k-1} / (a-1)
LemmaSum lemma_sirloin(double x, int k, double a, std::uint64_t cutoff = 0);

// sum_{n>x} Lambda(n)^k n^{-a} log n loglog n, main x^{1-a} (log x)^k loglog x / (a-1)
LemmaSum sirloin_loglog(double x, int k, double a, std::uint64_t cutoff = 0);

// lambda_n = -Lambda(n) / (2 pi sqrt n); error_scale is the two-branch
// envelope: sqrt n log T loglog T for n <= T, sqrt n log n loglog n for n > T.
struct GonekConstants {
    double lambda_n = 0.0;
    double error_scale = 0.0;
};
GonekConstants gonek_constants(std::uint64_t n, double T);

struct GonekSum {
    Complex value;
    double prediction = 0.0;
    double error_scale = 0.0;
    double deviation = 0.0;  // |value - prediction| / error_scale
    std::uint64_t terms = 0;
};

// S(n,T) = sum over ordinates gamma <= T of n^{i gamma}
GonekSum gonek_sum(const ZeroCatalog& cat, std::uint64_t n, double T);

struct PhiSum {
    Complex value;
    double prediction = 0.0;
    double error_scale = 0.0;
    double deviation = 0.0;
};

// Phi(mu,k) = sum over the multiset of n^{i s} s^k / k!, with prediction
// lambda_n^mu T^{mu+k} / ((mu+k) (mu-1)! k!) and error scale
// T^{mu+k-1} (log T)^{mu-1} E(n,T).
PhiSum phi_sum(const SumMultiset& ms, std::uint64_t n, int k);

}  // namespace zetalab
