#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "zetalab/pair_correlation.hpp"
#include "zetalab/report.hpp"
#include "zetalab/weights.hpp"
#include "zetalab/zero_catalog.hpp"

namespace zetalab {

struct NTConstant {
    double T = 0.0;
    double value = 0.0;  // T log T / (2 pi)
    explicit NTConstant(double T_);
};

struct SumEntry {
    double sum = 0.0;
    std::uint64_t count = 0;
};

// Multiset of mu-fold ordinate sums in (0, T]: each ascending entry is a
// distinct sum value with its ordered-tuple multiplicity. Values closer than
// merge_tol chain-merge into a count-weighted mean.
struct SumMultiset {
    int mu = 1;
    double T = 0.0;
    double merge_tol = 0.0;
    double bin_width = 0.0;          // 0 for exact-merged builds
    double value_error_bound = 0.0;  // cumulative merge/bin displacement
    std::uint64_t total = 0;
    std::vector<SumEntry> entries;
    std::shared_ptr<const ZeroCatalog> built_from;
    std::size_t size() const { return entries.size(); }
};

struct BuildOptions {
    double merge_tol = -1.0;   // < 0 picks 10 * mu * precision_hint
    double bin_width = -1.0;   // < 0: exact when it fits, else 100 * merge_tol
    std::uint64_t entry_budget = 30'000'000;
    std::uint64_t tuple_budget = 2'000'000'000;
};

// Level-by-level convolution of the ordinate list with the previous level,
// streamed in ascending order through a k-way merge.
SumMultiset build_sum_multiset(std::shared_ptr<const ZeroCatalog> catalog, int mu, double T,
                               const BuildOptions& opts = {});

struct RecursionCheck {
    std::uint64_t built = 0;
    std::uint64_t recursed = 0;  // sum over gamma <= T of level mu-1 prefix counts
    bool equal = false;
};
RecursionCheck check_build_recursion(std::shared_ptr<const ZeroCatalog> catalog, int mu,
                                     double T, const BuildOptions& opts = {});

// T^mu L^mu / ((2 pi)^mu mu!)
double cardinality_prediction(int mu, double T);
AsymptoticReport check_cardinality(const SumMultiset& ms);

// Exact sum of count * sum_value^k over entries; prediction has the
// mu T^{mu+k} L^mu / ((2 pi)^mu (mu+k) mu!) main term, or the
// mu L^{mu+1} / ((2 pi)^mu (mu+1)!) form when mu + k = 0.
double moments(const SumMultiset& ms, int k);
double moment_prediction(int mu, int k, double T);

struct DeltaResult {
    std::uint64_t value = 0;  // sum of count^2: ordered tuple pairs with equal sums
    std::uint64_t value_at_half_tol = 0;
    bool tolerance_sensitive = false;
};
DeltaResult delta_mu(const SumMultiset& ms);

// (2 pi / (T log T))^{2 mu - 1} * sum over entry pairs of
// count_i count_j x^{i(s_i - s_j)} w(s_i - s_j), windowed as f_general.
CorrelationEstimate g_mu(const SumMultiset& ms, const WeightParams& p, double x, double T,
                         double window = 50.0);

double theorem2_prediction(int mu, double alpha, double T);
double theorem3_bound(int mu, double alpha, double T);

// N_mu(T, u): ordered entry pairs with 0 < s_i - s_j <= 2 pi u / log T,
// counted with multiplicity and scaled by (T log T / 2 pi)^{1 - 2 mu}.
double close_pair_count(const SumMultiset& ms, double u);

// Sum over ordinates g in (14, T-14] of g^a (T-g)^b log^c g log^d (T-g).
double stieltjes_weighted_integral(const ZeroCatalog& catalog, int a, int b, int c, int d,
                                   double T);
// a! b! T^{a+b+1} L^{c+d+1} / (2 pi (a+b+1)!)
double caltech_main_term(int a, int b, int c, int d, double T);

// Sum over entries of count * log(|t - sum_value| + 10).
double log_tau_sum(const SumMultiset& ms, double t);
// T^mu L_T^mu L_nat / ((2 pi)^mu mu!) with L_nat = log max{T, |t| + 10}
double log_tau_main(int mu, double T, double t);

void serialize_sum_multiset(const SumMultiset& ms, std::ostream& out);
SumMultiset parse_sum_multiset(std::istream& in);

}  // namespace zetalab
