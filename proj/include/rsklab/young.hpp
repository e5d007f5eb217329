// Young diagrams (French convention, row 0 at bottom) and integer partition
// enumeration.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rsklab {

/// Thrown when an exact computation is requested beyond the configured
/// enumeration limit.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A partition written as weakly decreasing row lengths; trailing zeros are
/// never stored, so the empty diagram has no rows.
struct YoungDiagram {
    std::vector<std::uint32_t> rows;

    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<std::uint32_t> r) : rows(std::move(r)) {}

    std::size_t row_count() const { return rows.size(); }

    /// Length of row y, zero beyond the last stored row.
    std::uint32_t row(std::size_t y) const { return y < rows.size() ? rows[y] : 0; }

    std::size_t box_count() const {
        std::size_t n = 0;
        for (auto r : rows) n += r;
        return n;
    }

    bool empty() const { return rows.empty(); }

    /// Weakly decreasing and strictly positive row lengths.
    bool valid() const {
        for (std::size_t y = 0; y < rows.size(); ++y) {
            if (rows[y] == 0) return false;
            if (y + 1 < rows.size() && rows[y + 1] > rows[y]) return false;
        }
        return true;
    }

    /// Column lengths; conjugate().size() == row(0).
    std::vector<std::uint32_t> conjugate() const {
        std::vector<std::uint32_t> cols(row(0), 0);
        for (std::uint32_t len : rows)
            for (std::uint32_t x = 0; x < len; ++x) ++cols[x];
        return cols;
    }

    /// A box may be added in row y when the result is still a diagram.
    bool addable(std::size_t y) const { return y == 0 || row(y) < row(y - 1); }

    /// A box may be removed from row y when the result is still a diagram.
    bool removable(std::size_t y) const { return y < rows.size() && row(y) > row(y + 1); }

    YoungDiagram with_box(std::size_t y) const {
        if (!addable(y)) throw std::invalid_argument("YoungDiagram: row not addable");
        YoungDiagram out = *this;
        if (y == out.rows.size())
            out.rows.push_back(1);
        else
            ++out.rows[y];
        return out;
    }

    YoungDiagram without_box(std::size_t y) const {
        if (!removable(y)) throw std::invalid_argument("YoungDiagram: row not removable");
        YoungDiagram out = *this;
        if (--out.rows[y] == 0) out.rows.pop_back();
        return out;
    }

    /// Rows where a box can be added: 0..row_count(), filtered by addable().
    std::vector<std::size_t> addable_rows() const {
        std::vector<std::size_t> out;
        for (std::size_t y = 0; y <= rows.size(); ++y)
            if (addable(y)) out.push_back(y);
        return out;
    }

    auto operator<=>(const YoungDiagram&) const = default;
};

/// All partitions of n in lexicographically decreasing order.
/// Sizes grow fast (p(50) = 204226); callers guard with their own limit.
std::vector<YoungDiagram> partitions_of(std::size_t n);

/// Number of partitions of n (exact, for n small enough to enumerate).
std::size_t partition_count(std::size_t n);

}  // namespace rsklab
