#include "zetalab/mangoldt.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace zetalab {

MangoldtTable::MangoldtTable(std::uint64_t lim) : limit(lim) {
    if (lim > 200'000'000ull)
        throw std::invalid_argument("mangoldt table limit above 2e8 not supported");
    if (lim < 2) return;
    std::vector<bool> composite(lim + 1, false);
    for (std::uint64_t p = 2; p * p <= lim; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t q = p * p; q <= lim; q += p) composite[q] = true;
    }
    for (std::uint64_t p = 2; p <= lim; ++p) {
        if (composite[p]) continue;
        double lp = std::log(double(p));
        for (std::uint64_t q = p;; q *= p) {
            entries.push_back({q, lp});
            if (q > lim / p) break;
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
}

double MangoldtTable::operator()(std::uint64_t n) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), n,
                               [](const PrimePower& e, std::uint64_t v) { return e.n < v; });
    if (it != entries.end() && it->n == n) return it->log_p;
    return 0.0;
}

std::size_t MangoldtTable::upper_index(std::uint64_t x) const {
    auto it = std::upper_bound(entries.begin(), entries.end(), x,
                               [](std::uint64_t v, const PrimePower& e) { return v < e.n; });
    return static_cast<std::size_t>(it - entries.begin());
}

std::shared_ptr<const MangoldtTable> shared_mangoldt(std::uint64_t at_least) {
    static std::mutex mtx;
    static std::shared_ptr<const MangoldtTable> current;
    std::lock_guard<std::mutex> lock(mtx);
    if (current && current->limit >= at_least) return current;
    std::uint64_t lim = 1ull << 16;
    while (lim < at_least) lim <<= 1;
    current = std::make_shared<const MangoldtTable>(lim);
    return current;
}

}  // namespace zetalab
