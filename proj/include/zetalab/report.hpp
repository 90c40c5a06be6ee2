#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace zetalab {

// One measured-vs-predicted comparison. rel_err is the normalized deviation
// the pass rule is applied to; how it is normalized depends on the statistic
// (plain relative error, deviation per error_scale, or symmetric ratio), and
// the maker functions below pick that. Invariant: pass == (rel_err <= tolerance).
struct AsymptoticReport {
    std::string name;
    double measured = 0.0;
    double predicted = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    double error_scale = 0.0;
    bool pass = false;
    std::string provenance;
};

// rel_err = |measured - predicted| / |predicted|
AsymptoticReport relative_report(std::string name, double measured, double predicted,
                                 double tolerance, double error_scale = 0.0,
                                 std::string provenance = {});

// rel_err = |measured - predicted| / error_scale
AsymptoticReport scaled_report(std::string name, double measured, double predicted,
                               double error_scale, double tolerance,
                               std::string provenance = {});

// rel_err = max(|m/p|, |p/m|) - 1; pass within a multiplicative factor
AsymptoticReport factor_report(std::string name, double measured, double predicted,
                               double factor, std::string provenance = {});

std::string report_line(const AsymptoticReport& r);

// FNV-1a over arbitrary bytes, used for provenance fingerprints.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 14695981039346656037ull);

// Shortest decimal text that parses back to the same double.
std::string shortest_double(double v);

}  // namespace zetalab
