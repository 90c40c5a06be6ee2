#include "zetalab/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace zetalab {

AsymptoticReport relative_report(std::string name, double measured, double predicted,
                                 double tolerance, double error_scale,
                                 std::string provenance) {
    AsymptoticReport r;
    r.name = std::move(name);
    r.measured = measured;
    r.predicted = predicted;
    r.tolerance = tolerance;
    r.error_scale = error_scale;
    double denom = std::abs(predicted);
    r.rel_err = denom > 0.0 ? std::abs(measured - predicted) / denom
                            : (measured == predicted ? 0.0 : std::numeric_limits<double>::infinity());
    r.pass = r.rel_err <= r.tolerance;
    r.provenance = std::move(provenance);
    return r;
}

AsymptoticReport scaled_report(std::string name, double measured, double predicted,
                               double error_scale, double tolerance,
                               std::string provenance) {
    AsymptoticReport r;
    r.name = std::move(name);
    r.measured = measured;
    r.predicted = predicted;
    r.tolerance = tolerance;
    r.error_scale = error_scale;
    r.rel_err = error_scale > 0.0
                    ? std::abs(measured - predicted) / error_scale
                    : (measured == predicted ? 0.0 : std::numeric_limits<double>::infinity());
    r.pass = r.rel_err <= r.tolerance;
    r.provenance = std::move(provenance);
    return r;
}

AsymptoticReport factor_report(std::string name, double measured, double predicted,
                               double factor, std::string provenance) {
    AsymptoticReport r;
    r.name = std::move(name);
    r.measured = measured;
    r.predicted = predicted;
    r.tolerance = factor - 1.0;
    r.error_scale = 0.0;
    if (measured == 0.0 && predicted == 0.0) {
        r.rel_err = 0.0;
    } else if (measured * predicted <= 0.0) {
        r.rel_err = std::numeric_limits<double>::infinity();
    } else {
        double q = std::abs(measured / predicted);
        r.rel_err = std::max(q, 1.0 / q) - 1.0;
    }
    r.pass = r.rel_err <= r.tolerance;
    r.provenance = std::move(provenance);
    return r;
}

std::string report_line(const AsymptoticReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-34s measured=%-14.8g predicted=%-14.8g rel_err=%-10.4g tol=%-8.4g %s",
                  r.name.c_str(), r.measured, r.predicted, r.rel_err, r.tolerance,
                  r.pass ? "pass" : "FAIL");
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string shortest_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace zetalab
