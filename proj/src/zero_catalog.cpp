#include "zetalab/zero_catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "zetalab/numerics.hpp"
#include "zetalab/special_functions.hpp"

namespace zetalab {

std::size_t ZeroCatalog::count_up_to(double u) const {
    return std::size_t(std::upper_bound(ordinates.begin(), ordinates.end(), u) -
                       ordinates.begin());
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

ZeroCatalog ingest_zeros(std::istream& in, double t_max, std::string source_tag) {
    ZeroCatalog cat;
    cat.source = std::move(source_tag);
    double header_tmax = 0.0;
    double header_prec = 0.0;
    std::string header_source;
    std::string line;
    std::size_t lineno = 0;
    double prev = 0.0;
    bool clipped = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            body.remove_prefix(1);
            body = trim(body);
            auto colon = body.find(':');
            if (colon != std::string_view::npos) {
                std::string_view key = trim(body.substr(0, colon));
                std::string_view val = trim(body.substr(colon + 1));
                if (key == "source") {
                    header_source = std::string(val);
                } else if (key == "t_max") {
                    std::from_chars(val.data(), val.data() + val.size(), header_tmax);
                } else if (key == "precision_hint") {
                    std::from_chars(val.data(), val.data() + val.size(), header_prec);
                }
            }
            continue;
        }
        double v = 0.0;
        auto res = std::from_chars(body.data(), body.data() + body.size(), v);
        if (res.ec != std::errc{} || res.ptr != body.data() + body.size())
            throw std::runtime_error("zero table parse error at line " + std::to_string(lineno) +
                                     ": '" + std::string(body) + "'");
        if (!(v > 0.0))
            throw std::runtime_error("non-positive ordinate at line " + std::to_string(lineno));
        if (v < prev)
            throw std::runtime_error("monotonicity violation at line " + std::to_string(lineno) +
                                     ": " + std::string(body));
        if (v == prev)
            cat.warnings.push_back("duplicate ordinate at line " + std::to_string(lineno) +
                                   " treated as multiplicity");
        prev = v;
        if (t_max > 0.0 && v > t_max) {
            clipped = true;
            continue;
        }
        cat.ordinates.push_back(v);
    }
    if (cat.ordinates.empty()) throw std::runtime_error("zero table input holds no ordinates");
    if (!header_source.empty()) cat.source = header_source;
    if (header_prec > 0.0) cat.precision_hint = header_prec;
    double requested = t_max > 0.0 ? t_max : (header_tmax > 0.0 ? header_tmax : cat.ordinates.back());
    // A raw table guarantees coverage only to its last line; a header that
    // declares t_max is trusted (the producer knew the scan ceiling).
    double limit = header_tmax > 0.0 ? std::max(header_tmax, cat.ordinates.back())
                                     : cat.ordinates.back();
    cat.t_max = clipped ? requested : std::min(requested, limit);
    if (cat.source.rfind("synthetic", 0) != 0 && cat.t_max >= 14.14) {
        double first = cat.ordinates.front();
        if (!(first > 14.13 && first < 14.14))
            cat.warnings.push_back("first ordinate not in (14.13, 14.14); data may be partial");
    }
    return cat;
}

ZeroCatalog ingest_zeros_file(const std::string& path, double t_max) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open zero table: " + path);
    return ingest_zeros(in, t_max, "file:" + path);
}

void serialize_catalog(const ZeroCatalog& cat, std::ostream& out) {
    out << "# zeros: " << cat.ordinates.size() << "\n";
    out << "# source: " << cat.source << "\n";
    out << "# t_max: " << shortest_double(cat.t_max) << "\n";
    out << "# precision_hint: " << shortest_double(cat.precision_hint) << "\n";
    for (double g : cat.ordinates) out << shortest_double(g) << "\n";
}

std::uint64_t catalog_fingerprint(const ZeroCatalog& cat) {
    std::uint64_t h = fnv1a64("zero-catalog-v1");
    h = fnv1a64(shortest_double(cat.t_max), h);
    h = fnv1a64(shortest_double(double(cat.ordinates.size())), h);
    for (double g : cat.ordinates) h = fnv1a64(shortest_double(g), h);
    return h;
}

std::size_t count_zeros(const ZeroCatalog& cat, double u) {
    if (u < 0.0) throw std::invalid_argument("count_zeros needs u >= 0");
    if (u > cat.t_max)
        throw std::out_of_range("count_zeros: u exceeds catalog coverage t_max");
    return cat.count_up_to(u);
}

double counting_main_term(double u) {
    if (u < 10.0) throw std::domain_error("counting_main_term needs u >= 10");
    return u / TWO_PI * std::log(u / (TWO_PI * std::exp(1.0)));
}

AsymptoticReport check_counting(const ZeroCatalog& cat, double u) {
    double measured = double(count_zeros(cat, u));
    double main = counting_main_term(u);
    double scale = std::log(u) / std::log(std::log(u));
    return scaled_report("zero-count-vs-main(u=" + shortest_double(u) + ")", measured, main,
                         scale, 1.5, "catalog:" + cat.source);
}

namespace {

double gram_point(std::int64_t n, double seed) {
    double target = double(n) * PI;
    double g = seed;
    for (int i = 0; i < 60; ++i) {
        double f = riemann_siegel_theta(g) - target;
        double d = riemann_siegel_theta_deriv(g);
        double step = f / d;
        g -= step;
        if (g < 7.2) g = 7.2;
        if (std::abs(step) < 1e-10) break;
    }
    return g;
}

double refine_zero(double a, double b, double fa, double fb) {
    double tol = std::max(1e-12, 1e-13 * b);
    int side = 0;
    for (int i = 0; i < 200 && (b - a) > tol; ++i) {
        double c = (a * fb - b * fa) / (fb - fa);
        double lo = a + 0.001 * (b - a);
        double hi = b - 0.001 * (b - a);
        c = std::min(std::max(c, lo), hi);
        double fc = z_function(c);
        if (fc == 0.0) return c;
        if ((fc > 0.0) == (fa > 0.0)) {
            a = c;
            fa = fc;
            if (side < 0) fb *= 0.5;
            side = -1;
        } else {
            b = c;
            fb = fc;
            if (side > 0) fa *= 0.5;
            side = 1;
        }
    }
    return 0.5 * (a + b);
}

// inserts refined zeros from sign changes of Z over the given sample points
void collect_zeros(const std::vector<double>& pts, std::vector<double>& zeros) {
    if (pts.size() < 2) return;
    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = z_function(pts[i]);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (vals[i] == 0.0) {
            zeros.push_back(pts[i]);
            continue;
        }
        if (vals[i] * vals[i + 1] < 0.0)
            zeros.push_back(refine_zero(pts[i], pts[i + 1], vals[i], vals[i + 1]));
    }
    if (vals.back() == 0.0) zeros.push_back(pts.back());
}

void sort_dedupe(std::vector<double>& zeros) {
    std::sort(zeros.begin(), zeros.end());
    std::vector<double> out;
    out.reserve(zeros.size());
    for (double z : zeros) {
        if (out.empty() || z - out.back() > 1e-6) out.push_back(z);
    }
    zeros.swap(out);
}

ZeroCatalog scan_zeros(double t_max, const std::string& tag) {
    if (t_max < 10.0) throw std::domain_error("zero scan needs t_max >= 10");
    ZeroCatalog cat;
    cat.source = tag;
    cat.t_max = t_max;
    cat.precision_hint = t_max <= 4000.0 ? 1e-9 : 1e-4;

    std::vector<double> gram;
    {
        std::int64_t n = -1;
        double g = gram_point(n, 9.7);
        while (g < t_max) {
            gram.push_back(g);
            double d = riemann_siegel_theta_deriv(g);
            ++n;
            g = gram_point(n, g + PI / d);
        }
        gram.push_back(g);
    }

    std::vector<double> samples;
    samples.reserve(std::size_t(4.0 * (t_max - 10.0)) + 4 * gram.size() + 8);
    for (std::uint64_t i = 0;; ++i) {
        double t = 10.0 + 0.25 * double(i);
        if (t >= t_max) break;
        samples.push_back(t);
    }
    samples.push_back(t_max);
    for (std::size_t i = 0; i + 1 < gram.size(); ++i) {
        for (int j = 0; j < 4; ++j) {
            double t = gram[i] + (gram[i + 1] - gram[i]) * (double(j) / 4.0);
            if (t >= 10.0 && t <= t_max) samples.push_back(t);
        }
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end(),
                              [](double a, double b) { return b - a < 1e-4; }),
                  samples.end());

    std::vector<double> zeros;
    collect_zeros(samples, zeros);
    sort_dedupe(zeros);

    // Deficit repair: at Gram index n the zero count should sit near n+1;
    // a persistent shortfall of two or more marks a close pair the coarse
    // grid stepped over.
    for (int round = 0; round < 4; ++round) {
        std::vector<std::pair<double, double>> windows;
        int consec = 0;
        for (std::size_t j = 1; j < gram.size(); ++j) {
            double g = std::min(gram[j], t_max);
            auto found = std::upper_bound(zeros.begin(), zeros.end(), g) - zeros.begin();
            long expect = long(j);  // gram[j] is the Gram point of index j-1
            long d = long(found) - expect;
            if (gram[j] > t_max) break;
            if (d <= -2)
                ++consec;
            else
                consec = 0;
            if (consec >= 3) {
                std::size_t lo = j >= 10 ? j - 10 : 0;
                windows.emplace_back(gram[lo], std::min(gram[j], t_max));
                consec = 0;
            }
        }
        if (windows.empty()) break;
        double mult = std::pow(8.0, round + 1);
        for (auto [a, b] : windows) {
            std::vector<double> fine;
            double gap = (b - a) / std::ceil((b - a) * 4.0 * mult);
            for (double t = a; t < b; t += gap) fine.push_back(t);
            fine.push_back(b);
            collect_zeros(fine, zeros);
        }
        sort_dedupe(zeros);
    }

    while (!zeros.empty() && zeros.back() > t_max) zeros.pop_back();
    double expected = counting_main_term(t_max) + 0.875;
    if (std::abs(double(zeros.size()) - expected) > 3.0) {
        std::ostringstream msg;
        msg << "missed-zero check failed: found " << zeros.size() << " zeros to t_max="
            << t_max << " but the counting main term predicts about " << expected;
        throw std::runtime_error(msg.str());
    }
    cat.ordinates = std::move(zeros);
    return cat;
}

double uniform01(std::mt19937_64& gen) {
    return (double(gen() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
}

double inverse_counting_main(double x, double guess) {
    double g = std::max(guess, TWO_PI * std::exp(1.0) + 0.1);
    for (int i = 0; i < 60; ++i) {
        double f = g / TWO_PI * std::log(g / (TWO_PI * std::exp(1.0))) - x;
        double d = std::log(g / TWO_PI) / TWO_PI;
        double step = f / d;
        g -= step;
        if (g < TWO_PI + 0.3) g = TWO_PI + 0.3;
        if (std::abs(step) < 1e-11 * std::max(1.0, g)) break;
    }
    return g;
}

}  // namespace

ZeroCatalog find_zeros(double t_max) {
    if (!(t_max >= 10.0 && t_max <= 5000.0))
        throw std::domain_error("find_zeros covers 10 <= t_max <= 5000");
    return scan_zeros(t_max, "find_zeros");
}

ZeroCatalog build_zero_table(double t_max) { return scan_zeros(t_max, "self-computed"); }

SyntheticKind synthetic_kind_from_name(std::string_view name) {
    if (name == "independent-toy") return SyntheticKind::independent_toy;
    if (name == "poisson") return SyntheticKind::poisson;
    if (name == "unfolded-model") return SyntheticKind::unfolded_model;
    throw std::invalid_argument("unknown synthetic catalog kind: " + std::string(name));
}

ZeroCatalog synthetic_catalog(SyntheticKind kind, std::uint64_t seed, double t_max) {
    ZeroCatalog cat;
    cat.t_max = t_max;
    cat.precision_hint = 2.3e-16 * std::max(1.0, t_max);
    switch (kind) {
        case SyntheticKind::independent_toy: {
            const double base[] = {1.0,
                                   std::sqrt(2.0),
                                   PI,
                                   std::sqrt(2.0) * PI,
                                   std::sqrt(3.0) * PI,
                                   std::sqrt(5.0) * PI,
                                   std::exp(2.0),
                                   std::sqrt(7.0) * PI};
            for (double v : base)
                if (v <= t_max) cat.ordinates.push_back(v);
            cat.t_max = std::min(t_max, base[7]);
            cat.source = "synthetic:independent-toy";
            cat.precision_hint = 0.0;
            break;
        }
        case SyntheticKind::poisson: {
            std::mt19937_64 gen(seed);
            double t = 14.0;
            for (;;) {
                double mean = TWO_PI / std::log(std::max(t, 20.0) / TWO_PI);
                t += -mean * std::log(uniform01(gen));
                if (t > t_max) break;
                cat.ordinates.push_back(t);
            }
            cat.source = "synthetic:poisson:seed=" + std::to_string(seed);
            break;
        }
        case SyntheticKind::unfolded_model: {
            std::mt19937_64 gen(seed);
            double x = 0.0;
            double g = 20.0;
            for (;;) {
                x += 0.5 + (uniform01(gen) - (1.0 / 9007199254740992.0));  // [0.5, 1.5)
                g = inverse_counting_main(x, g);
                if (g > t_max) break;
                cat.ordinates.push_back(g);
            }
            cat.source = "synthetic:unfolded-model:seed=" + std::to_string(seed);
            break;
        }
    }
    return cat;
}

}  // namespace zetalab
