#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "zetalab/report.hpp"

namespace zetalab {

// Ascending ordinates of critical-line zeros (or a synthetic stand-in).
// t_max is the height up to which coverage is guaranteed complete; consumers
// must not read past it. precision_hint is the absolute ordinate uncertainty.
struct ZeroCatalog {
    std::vector<double> ordinates;
    double t_max = 0.0;
    std::string source;
    double precision_hint = 1e-9;
    std::vector<std::string> warnings;

    std::size_t size() const { return ordinates.size(); }
    std::size_t count_up_to(double u) const;
};

// Text format: one ordinate per line, ascending; '#' comments and blank
// lines ignored. "# key: value" comment lines carry source / t_max /
// precision_hint metadata and are honored on re-ingest.
ZeroCatalog ingest_zeros(std::istream& in, double t_max,
                         std::string source_tag = "ingest");
ZeroCatalog ingest_zeros_file(const std::string& path, double t_max);
void serialize_catalog(const ZeroCatalog& cat, std::ostream& out);
std::uint64_t catalog_fingerprint(const ZeroCatalog& cat);

std::size_t count_zeros(const ZeroCatalog& cat, double u);
double counting_main_term(double u);
AsymptoticReport check_counting(const ZeroCatalog& cat, double u);

// Sign-change scan of Z(t) on a grid refined at Gram points, with deficit
// detection and rescan. find_zeros is the public desk-scale entry point;
// build_zero_table is the uncapped builder behind the make-table verb.
ZeroCatalog find_zeros(double t_max);
ZeroCatalog build_zero_table(double t_max);

enum class SyntheticKind { independent_toy, poisson, unfolded_model };
SyntheticKind synthetic_kind_from_name(std::string_view name);
ZeroCatalog synthetic_catalog(SyntheticKind kind, std::uint64_t seed, double t_max);

}  // namespace zetalab
