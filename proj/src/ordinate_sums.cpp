#include "zetalab/ordinate_sums.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>

namespace zetalab {

NTConstant::NTConstant(double T_) : T(T_) {
    if (!(T_ >= 2.0)) throw std::domain_error("NTConstant: T must be at least 2");
    value = T_ * std::log(T_) / TWO_PI;
}

namespace {

// Streams ascending (value, count) pairs into merged entries. Exact mode
// chains values within merge_tol; bin mode groups by fixed-width bins. The
// emitted value is the count-weighted mean, left bitwise intact when every
// member of a cluster is identical.
struct MergeEmitter {
    double merge_tol = 0.0;
    double bin_width = 0.0;
    std::uint64_t entry_budget = 0;
    std::vector<SumEntry> out;
    double max_span = 0.0;
    std::uint64_t total = 0;

    bool open = false;
    double first = 0.0, last = 0.0;
    Kahan weighted;
    std::uint64_t count = 0;
    std::int64_t bin = 0;

    static std::int64_t bin_of(double v, double w) {
        return static_cast<std::int64_t>(std::floor(v / w));
    }

    void flush() {
        if (!open) return;
        SumEntry e;
        e.sum = (last == first) ? first : weighted.value() / static_cast<double>(count);
        e.count = count;
        if (out.size() >= entry_budget)
            throw std::runtime_error(
                "sum multiset entry budget exceeded; raise bin_width or the budget");
        out.push_back(e);
        max_span = std::max(max_span, last - first);
        open = false;
    }

    void push(double v, std::uint64_t c) {
        total += c;
        const bool joins =
            open && (bin_width > 0.0 ? bin_of(v, bin_width) == bin : v - last <= merge_tol);
        if (!joins) {
            flush();
            open = true;
            first = v;
            weighted = Kahan{};
            count = 0;
            if (bin_width > 0.0) bin = bin_of(v, bin_width);
        }
        last = v;
        weighted.add(v * static_cast<double>(c));
        count += c;
    }
};

struct KNode {
    double v;
    std::uint32_t stream;
    std::uint64_t idx;
};
struct KNodeAfter {
    bool operator()(const KNode& a, const KNode& b) const {
        return a.v > b.v || (a.v == b.v && a.stream > b.stream);
    }
};

// All sums prev[e].sum + gam[j] <= T, ascending, merged.
MergeEmitter convolve_level(const std::vector<SumEntry>& prev, const std::vector<double>& gam,
                            double T, double merge_tol, double bin_width,
                            std::uint64_t entry_budget, std::uint64_t tuple_budget) {
    MergeEmitter em;
    em.merge_tol = merge_tol;
    em.bin_width = bin_width;
    em.entry_budget = entry_budget;
    std::priority_queue<KNode, std::vector<KNode>, KNodeAfter> heap;
    for (std::uint32_t j = 0; j < gam.size(); ++j)
        if (!prev.empty() && prev[0].sum + gam[j] <= T) heap.push({prev[0].sum + gam[j], j, 0});
    std::uint64_t pops = 0;
    while (!heap.empty()) {
        const KNode nd = heap.top();
        heap.pop();
        if (++pops > tuple_budget)
            throw std::runtime_error(
                "sum multiset tuple budget exceeded; reduce T or mu, or raise the budget");
        em.push(nd.v, prev[nd.idx].count);
        if (nd.idx + 1 < prev.size()) {
            const double nv = prev[nd.idx + 1].sum + gam[nd.stream];
            if (nv <= T) heap.push({nv, nd.stream, nd.idx + 1});
        }
    }
    em.flush();
    return em;
}

double level_merge_tol(const BuildOptions& opts, int mu, double hint) {
    return opts.merge_tol >= 0.0 ? opts.merge_tol : 10.0 * mu * hint;
}

}  // namespace

SumMultiset build_sum_multiset(std::shared_ptr<const ZeroCatalog> catalog, int mu, double T,
                               const BuildOptions& opts) {
    if (!catalog) throw std::invalid_argument("build_sum_multiset: null catalog");
    if (mu < 1 || mu > 4)
        throw std::domain_error(
            "build_sum_multiset: materialization covers mu in [1, 4]; use streamed "
            "statistics above that");
    if (!(T >= 2.0)) throw std::domain_error("build_sum_multiset: T must be at least 2");
    if (catalog->t_max < T * (1.0 - 1e-12))
        throw std::out_of_range("build_sum_multiset: catalog does not cover (0, T]");

    const double merge_tol = level_merge_tol(opts, mu, catalog->precision_hint);
    if (!(merge_tol >= 0.0))
        throw std::invalid_argument("build_sum_multiset: merge_tol must be nonnegative");

    if (T >= 14.0 * mu && cardinality_prediction(mu, T) > 6.0 * static_cast<double>(opts.tuple_budget))
        throw std::runtime_error(
            "sum multiset tuple budget exceeded by the cardinality estimate; reduce T or mu");

    const std::size_t n_use = catalog->count_up_to(T);
    std::vector<double> gam(catalog->ordinates.begin(),
                            catalog->ordinates.begin() + static_cast<std::ptrdiff_t>(n_use));

    SumMultiset ms;
    ms.mu = mu;
    ms.T = T;
    ms.merge_tol = merge_tol;
    ms.built_from = catalog;

    MergeEmitter level;
    level.merge_tol = merge_tol;
    level.bin_width = 0.0;
    level.entry_budget = opts.entry_budget;
    for (double g : gam) level.push(g, 1);
    level.flush();
    ms.value_error_bound = level.max_span;

    for (int m = 2; m <= mu; ++m) {
        double bw = opts.bin_width;
        if (bw < 0.0) {
            bw = 0.0;
            if (T >= 14.0 * m && cardinality_prediction(m, T) / factorial(m) >
                                     static_cast<double>(opts.entry_budget))
                bw = 100.0 * merge_tol;
        }
        MergeEmitter next = convolve_level(level.out, gam, T, merge_tol, bw,
                                           opts.entry_budget, opts.tuple_budget);
        ms.value_error_bound += next.max_span;
        ms.bin_width = bw;
        level = std::move(next);
    }
    ms.entries = std::move(level.out);
    ms.total = level.total;
    return ms;
}

RecursionCheck check_build_recursion(std::shared_ptr<const ZeroCatalog> catalog, int mu,
                                     double T, const BuildOptions& opts) {
    if (mu < 2) throw std::domain_error("check_build_recursion: mu must be at least 2");
    RecursionCheck rc;
    rc.built = build_sum_multiset(catalog, mu, T, opts).total;
    SumMultiset prev = build_sum_multiset(catalog, mu - 1, T, opts);
    std::vector<std::uint64_t> prefix(prev.entries.size() + 1, 0);
    for (std::size_t i = 0; i < prev.entries.size(); ++i)
        prefix[i + 1] = prefix[i] + prev.entries[i].count;
    const std::size_t n_use = catalog->count_up_to(T);
    for (std::size_t j = 0; j < n_use; ++j) {
        const double g = catalog->ordinates[j];
        auto it = std::partition_point(prev.entries.begin(), prev.entries.end(),
                                       [&](const SumEntry& e) { return e.sum + g <= T; });
        rc.recursed += prefix[static_cast<std::size_t>(it - prev.entries.begin())];
    }
    rc.equal = rc.built == rc.recursed;
    return rc;
}

double cardinality_prediction(int mu, double T) {
    if (mu < 1) throw std::domain_error("cardinality_prediction: mu must be positive");
    if (!(T >= 14.0 * mu))
        throw std::domain_error("cardinality_prediction: requires T >= 14 mu");
    return std::pow(T * std::log(T) / TWO_PI, mu) / factorial(mu);
}

AsymptoticReport check_cardinality(const SumMultiset& ms) {
    const double L = std::log(ms.T);
    const bool asymptotic = ms.T >= 14.0 * ms.mu;
    const double predicted = std::pow(ms.T * L / TWO_PI, ms.mu) / factorial(ms.mu);
    std::string extra = "error scale log L / L";
    if (ms.mu == 1)
        extra += "; refined count main term " + shortest_double(counting_main_term(ms.T));
    if (!asymptotic) extra += "; non-asymptotic (T < 14 mu)";
    char name[64];
    std::snprintf(name, sizeof name, "cardinality(mu=%d,T=%g)", ms.mu, ms.T);
    return relative_report(name, static_cast<double>(ms.total), predicted, 0.35,
                           std::log(L) / L, extra);
}

double moments(const SumMultiset& ms, int k) {
    if (ms.mu + k < 0) throw std::domain_error("moments: requires mu + k >= 0");
    Kahan acc;
    for (const SumEntry& e : ms.entries)
        acc.add(static_cast<double>(e.count) * std::pow(e.sum, k));
    return acc.value();
}

double moment_prediction(int mu, int k, double T) {
    if (mu < 1) throw std::domain_error("moment_prediction: mu must be positive");
    if (mu + k < 0) throw std::domain_error("moment_prediction: requires mu + k >= 0");
    const double L = std::log(T);
    if (mu + k == 0) return mu * std::pow(L, mu + 1) / (std::pow(TWO_PI, mu) * factorial(mu + 1));
    return mu * std::pow(T, mu + k) * std::pow(L, mu) /
           (std::pow(TWO_PI, mu) * (mu + k) * factorial(mu));
}

DeltaResult delta_mu(const SumMultiset& ms) {
    DeltaResult dr;
    for (const SumEntry& e : ms.entries) dr.value += e.count * e.count;
    dr.value_at_half_tol = dr.value;
    if (ms.built_from) {
        BuildOptions half;
        half.merge_tol = ms.merge_tol / 2.0;
        half.bin_width = ms.bin_width;
        SumMultiset redo = build_sum_multiset(ms.built_from, ms.mu, ms.T, half);
        dr.value_at_half_tol = 0;
        for (const SumEntry& e : redo.entries) dr.value_at_half_tol += e.count * e.count;
    }
    dr.tolerance_sensitive = dr.value_at_half_tol != dr.value;
    return dr;
}

CorrelationEstimate g_mu(const SumMultiset& ms, const WeightParams& p, double x, double T,
                         double window) {
    if (p.nu != 1.0 || p.k != 0)
        throw std::invalid_argument("g_mu: only the base weight (nu=1, k=0) is supported");
    if (!(T >= 2.0)) throw std::domain_error("g_mu: T must be at least 2");
    if (!(x >= 1.0)) throw std::domain_error("g_mu: x must be at least 1");

    CorrelationEstimate est;
    est.params = p;
    est.x = x;
    est.alpha = std::log(x) / std::log(T);
    est.T = T;
    est.window = window;
    if (ms.entries.empty()) return est;

    std::vector<double> vals(ms.entries.size()), cnts(ms.entries.size());
    for (std::size_t i = 0; i < ms.entries.size(); ++i) {
        vals[i] = ms.entries[i].sum;
        cnts[i] = static_cast<double>(ms.entries[i].count);
    }
    const bool bounded = std::isfinite(window);
    if (bounded) {
        const double mean_gap = ms.T / static_cast<double>(ms.total);
        if (window < mean_gap)
            throw std::invalid_argument("g_mu: window below the mean sum gap");
        if (window < 4.0 * p.nu)
            throw std::invalid_argument("g_mu: window must be at least 4 nu");
    }
    const double norm = std::pow(TWO_PI / (T * std::log(T)), 2.0 * ms.mu - 1.0);
    PairSumResult raw = windowed_pair_sum(vals, cnts, std::log(x), p, window);
    est.value = norm * raw.sum.real();
    est.imag_residual = norm * std::abs(raw.sum.imag());
    est.pair_count = raw.pair_count;
    if (bounded) est.tail_bound = norm * windowed_pair_tail_bound(vals, cnts, p, window);
    const double hint = ms.built_from ? ms.built_from->precision_hint : 0.0;
    const double displacement = ms.mu * hint + ms.value_error_bound;
    est.phase_error =
        norm * 2.0 * std::abs(std::log(x)) * displacement * raw.abs_weight_sum;
    return est;
}

double theorem2_prediction(int mu, double alpha, double T) {
    if (mu < 2) throw std::domain_error("theorem2_prediction: mu must be at least 2");
    if (!(T >= 16.0)) throw std::domain_error("theorem2_prediction: T must be at least 16");
    const double L = std::log(T);
    const double LL = std::log(L);
    if (mu == 2) {
        if (!(alpha >= 0.0 && alpha <= 1.0 - 3.0 * LL / L))
            throw std::domain_error("theorem2_prediction: alpha outside [0, 1 - 3 loglogT/logT]");
        return std::max(L / std::pow(T, 2.0 * alpha),
                        4.0 * alpha * alpha * alpha / (3.0 * std::pow(T, alpha)));
    }
    if (mu == 3) {
        if (!(alpha >= 0.0)) throw std::domain_error("theorem2_prediction: alpha must be >= 0");
        return L / (4.0 * std::pow(T, 2.0 * alpha));
    }
    if (!(alpha >= 0.0 && alpha <= 0.5 - LL / L))
        throw std::domain_error("theorem2_prediction: alpha outside [0, 1/2 - loglogT/logT]");
    const double f = factorial(mu - 1);
    return L / (f * f * std::pow(T, 2.0 * alpha));
}

double theorem3_bound(int mu, double alpha, double T) {
    if (mu < 2) throw std::domain_error("theorem3_bound: mu must be at least 2");
    if (!(alpha >= 0.0)) throw std::domain_error("theorem3_bound: alpha must be >= 0");
    if (!(T >= 16.0)) throw std::domain_error("theorem3_bound: T must be at least 16");
    const double L = std::log(T);
    const double base = L * L / T;
    if (alpha <= 1.0) {
        double main = L / std::pow(T, 2.0 * alpha);
        if (mu == 2) main += alpha * alpha * alpha / std::pow(T, alpha);
        return base + main;
    }
    const double LL = std::log(L);
    if (mu == 2) return base + std::pow(T, 2.0 * alpha - 3.0) * LL;
    if (mu == 3) return base + std::pow(T, 2.0 * alpha - 3.5) * LL;
    // the unspecified log power is read as a single log factor
    return base + std::pow(T, 2.0 * alpha - 0.5 * mu - 2.0) * L;
}

double close_pair_count(const SumMultiset& ms, double u) {
    if (!(u > 0.0)) return 0.0;
    const double delta = TWO_PI * u / std::log(ms.T);
    const std::size_t n = ms.entries.size();
    std::vector<std::uint64_t> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + ms.entries[i].count;
    std::uint64_t pairs = 0;
    std::size_t jlo = 0, jhi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (jlo < n && ms.entries[jlo].sum < ms.entries[i].sum - delta) ++jlo;
        while (jhi < n && ms.entries[jhi].sum < ms.entries[i].sum) ++jhi;
        if (jhi > jlo) pairs += ms.entries[i].count * (prefix[jhi] - prefix[jlo]);
    }
    const double nt = NTConstant(ms.T).value;
    return std::pow(nt, 1.0 - 2.0 * ms.mu) * static_cast<double>(pairs);
}

double stieltjes_weighted_integral(const ZeroCatalog& catalog, int a, int b, int c, int d,
                                   double T) {
    if (a < 0 || b < 0 || c < 0 || d < 0)
        throw std::domain_error("stieltjes_weighted_integral: exponents must be nonnegative");
    if (!(T >= 28.0)) throw std::domain_error("stieltjes_weighted_integral: T must be >= 28");
    if (catalog.t_max < (T - 14.0) * (1.0 - 1e-12))
        throw std::out_of_range("stieltjes_weighted_integral: catalog does not cover (0, T-14]");
    Kahan acc;
    for (double g : catalog.ordinates) {
        if (g <= 14.0) continue;
        if (g > T - 14.0) break;
        acc.add(std::pow(g, a) * std::pow(T - g, b) * std::pow(std::log(g), c) *
                std::pow(std::log(T - g), d));
    }
    return acc.value();
}

double caltech_main_term(int a, int b, int c, int d, double T) {
    if (a < 0 || b < 0 || c < 0 || d < 0)
        throw std::domain_error("caltech_main_term: exponents must be nonnegative");
    const double L = std::log(T);
    return factorial(a) * factorial(b) * std::pow(T, a + b + 1) * std::pow(L, c + d + 1) /
           (TWO_PI * factorial(a + b + 1));
}

double log_tau_sum(const SumMultiset& ms, double t) {
    Kahan acc;
    for (const SumEntry& e : ms.entries)
        acc.add(static_cast<double>(e.count) * std::log(std::abs(t - e.sum) + 10.0));
    return acc.value();
}

double log_tau_main(int mu, double T, double t) {
    if (mu < 1) throw std::domain_error("log_tau_main: mu must be positive");
    const double L = std::log(T);
    const double lnat = std::log(std::max(T, std::abs(t) + 10.0));
    return std::pow(T, mu) * std::pow(L, mu) * lnat / (std::pow(TWO_PI, mu) * factorial(mu));
}

void serialize_sum_multiset(const SumMultiset& ms, std::ostream& out) {
    char hash[32] = "0";
    if (ms.built_from)
        std::snprintf(hash, sizeof hash, "%016" PRIx64, catalog_fingerprint(*ms.built_from));
    out << "# sum-multiset\n";
    out << "# mu: " << ms.mu << "\n";
    out << "# T: " << shortest_double(ms.T) << "\n";
    out << "# merge_tol: " << shortest_double(ms.merge_tol) << "\n";
    out << "# bin_width: " << shortest_double(ms.bin_width) << "\n";
    out << "# value_error_bound: " << shortest_double(ms.value_error_bound) << "\n";
    out << "# total: " << ms.total << "\n";
    out << "# source_hash: " << hash << "\n";
    for (const SumEntry& e : ms.entries)
        out << shortest_double(e.sum) << " " << e.count << "\n";
}

SumMultiset parse_sum_multiset(std::istream& in) {
    SumMultiset ms;
    ms.merge_tol = 0.0;
    std::string line;
    std::size_t lineno = 0;
    std::uint64_t declared_total = 0;
    bool have_total = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (!key.empty() && key.back() == ':') key.pop_back();
            if (key == "mu")
                hs >> ms.mu;
            else if (key == "T")
                hs >> ms.T;
            else if (key == "merge_tol")
                hs >> ms.merge_tol;
            else if (key == "bin_width")
                hs >> ms.bin_width;
            else if (key == "value_error_bound")
                hs >> ms.value_error_bound;
            else if (key == "total") {
                hs >> declared_total;
                have_total = true;
            }
            continue;
        }
        std::istringstream es(line);
        SumEntry e;
        if (!(es >> e.sum >> e.count))
            throw std::runtime_error("parse_sum_multiset: bad entry at line " +
                                     std::to_string(lineno));
        if (!ms.entries.empty() && e.sum <= ms.entries.back().sum)
            throw std::runtime_error("parse_sum_multiset: entries must ascend at line " +
                                     std::to_string(lineno));
        ms.entries.push_back(e);
        ms.total += e.count;
    }
    if (ms.mu < 1 || !(ms.T >= 2.0))
        throw std::runtime_error("parse_sum_multiset: missing or invalid header");
    if (have_total && declared_total != ms.total)
        throw std::runtime_error("parse_sum_multiset: declared total mismatch");
    return ms;
}

}  // namespace zetalab
