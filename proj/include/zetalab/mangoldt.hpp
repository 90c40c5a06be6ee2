#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace zetalab {

// von Mangoldt support on [2, limit], stored sparsely: one entry per prime
// power n = p^m with its log p. Sorted by n, so range sums are contiguous
// scans and point lookups are binary searches.
struct PrimePower {
    std::uint64_t n;
    double log_p;
};

struct MangoldtTable {
    std::vector<PrimePower> entries;
    std::uint64_t limit = 0;

    explicit MangoldtTable(std::uint64_t limit);

    double operator()(std::uint64_t n) const;
    // index of first entry with entry.n > x
    std::size_t upper_index(std::uint64_t x) const;
};

// Process-wide cached table, regrown (power-of-two limits) on demand.
// Callers hold the shared_ptr so a concurrent regrow cannot invalidate them.
std::shared_ptr<const MangoldtTable> shared_mangoldt(std::uint64_t at_least);

}  // namespace zetalab
