#include "rsklab/young.hpp"

namespace rsklab {

namespace {

void emit_partitions(std::size_t remaining, std::uint32_t max_part,
                     std::vector<std::uint32_t>& prefix,
                     std::vector<YoungDiagram>& out) {
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    std::uint32_t first = static_cast<std::uint32_t>(
        remaining < max_part ? remaining : max_part);
    for (std::uint32_t part = first; part >= 1; --part) {
        prefix.push_back(part);
        emit_partitions(remaining - part, part, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<YoungDiagram> partitions_of(std::size_t n) {
    std::vector<YoungDiagram> out;
    std::vector<std::uint32_t> prefix;
    emit_partitions(n, static_cast<std::uint32_t>(n == 0 ? 1 : n), prefix, out);
    return out;
}

std::size_t partition_count(std::size_t n) {
    // Euler's pentagonal recurrence; cheap compared to enumeration and kept
    // separate so capacity checks do not have to materialise diagrams.
    std::vector<std::size_t> p(n + 1, 0);
    p[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        std::size_t total = 0;
        for (std::size_t k = 1;; ++k) {
            const std::size_t g1 = k * (3 * k - 1) / 2;
            if (g1 > m) break;
            const std::size_t sign = (k % 2 == 1) ? 1 : 0;
            if (sign)
                total += p[m - g1];
            else
                total -= p[m - g1];
            const std::size_t g2 = k * (3 * k + 1) / 2;
            if (g2 <= m) {
                if (sign)
                    total += p[m - g2];
                else
                    total -= p[m - g2];
            }
        }
        p[m] = total;
    }
    return p[n];
}

}  // namespace rsklab
