// Schensted row insertion: full tableaux with bumping routes, the
// insertion/recording pair, and a truncated variant that keeps only the
// bottom rows.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rsklab/rng.hpp"
#include "rsklab/young.hpp"

namespace rsklab {

/// Tableau entries are reals; ties are rejected, so words must be duplicate
/// free.
using Entry = double;

/// One bumping step: the value settled at (column x, row y).  The final step
/// is the box the insertion created.
struct RouteStep {
    std::size_t x = 0;
    std::size_t y = 0;
    Entry value = 0;
};

/// The full bumping route of one insertion, bottom row first.  Columns along
/// the route are weakly decreasing and values strictly increase.
struct BumpingRoute {
    std::vector<RouteStep> steps;

    std::size_t length() const { return steps.size(); }
    /// Row index of the box created by the insertion.
    std::size_t final_row() const { return steps.back().y; }
    const RouteStep& final_step() const { return steps.back(); }
};

namespace detail {

/// Index of the first element of p[0..n) strictly greater than a, assuming p
/// sorted ascending; n if none.  Branch-free binary search: the counting-path
/// simulations spend nearly all their time here, and the multiply-by-bool
/// update compiles to cmov instead of an unpredictable branch.
inline std::size_t upper_bound_index(const Entry* p, std::size_t n, Entry a) {
    if (n == 0) return 0;
    std::size_t lo = 0;
    while (n > 1) {
        std::size_t half = n / 2;
        lo += std::size_t(p[lo + half - 1] <= a) * half;
        n -= half;
    }
    return lo + std::size_t(p[lo] <= a);
}

}  // namespace detail

/// Standard insertion tableau: rows strictly increase left to right, columns
/// strictly increase bottom to top (row 0 is the bottom row).
class Tableau {
public:
    Tableau() = default;

    /// Validating constructor for externally supplied rows.
    static Tableau from_rows(std::vector<std::vector<Entry>> rows);

    const std::vector<std::vector<Entry>>& rows() const { return rows_; }
    const std::vector<Entry>& row(std::size_t y) const { return rows_[y]; }
    std::size_t row_count() const { return rows_.size(); }

    std::size_t box_count() const {
        std::size_t n = 0;
        for (const auto& r : rows_) n += r.size();
        return n;
    }

    YoungDiagram shape() const {
        std::vector<std::uint32_t> rows(rows_.size());
        for (std::size_t y = 0; y < rows_.size(); ++y)
            rows[y] = static_cast<std::uint32_t>(rows_[y].size());
        return YoungDiagram(std::move(rows));
    }

    /// Insert a, bumping upward until a value settles at the end of a row.
    /// Throws std::invalid_argument if a duplicates an existing entry.
    BumpingRoute insert(Entry a);

    bool contains(Entry a) const;

    /// Strict row and column increase.
    bool valid() const;

    bool operator==(const Tableau&) const = default;

private:
    std::vector<std::vector<Entry>> rows_;
};

/// Recording tableau: 1-based iteration indices, same shape as the insertion
/// tableau it was built alongside.
class RecordingTableau {
public:
    RecordingTableau() = default;

    const std::vector<std::vector<std::uint64_t>>& rows() const { return rows_; }
    const std::vector<std::uint64_t>& row(std::size_t y) const { return rows_[y]; }
    std::size_t row_count() const { return rows_.size(); }

    YoungDiagram shape() const {
        std::vector<std::uint32_t> rows(rows_.size());
        for (std::size_t y = 0; y < rows_.size(); ++y)
            rows[y] = static_cast<std::uint32_t>(rows_[y].size());
        return YoungDiagram(std::move(rows));
    }

    /// Append index at the end of row y (the box insertion i created).
    void record(std::size_t y, std::uint64_t index);

    bool operator==(const RecordingTableau&) const = default;

private:
    std::vector<std::vector<std::uint64_t>> rows_;
};

/// One row-insertion step: place a into a strictly increasing row, bumping
/// the leftmost strictly larger entry out if there is one.  Throws
/// std::invalid_argument if the row is not strictly increasing or a
/// duplicates an entry.
struct RowInsertResult {
    std::vector<Entry> row;
    std::optional<Entry> bumped;
};

RowInsertResult row_insert(std::vector<Entry> row, Entry a);

/// Pure-functional wrapper around Tableau::insert.
std::pair<Tableau, BumpingRoute> schensted_insert(const Tableau& t, Entry a);

struct RskResult {
    Tableau P;
    RecordingTableau Q;

    YoungDiagram shape() const { return P.shape(); }
};

/// Insert the word letter by letter; Q records iteration indices 1..len.
/// Throws std::invalid_argument on duplicate letters.
RskResult rsk(std::span<const Entry> word);

/// Truncated insertion state: rows 0..k of the insertion tableau only.
/// A bump out of row k is discarded — the cascade above row k never feeds
/// back down, so the kept rows evolve exactly as in the full tableau.
class BottomRows {
public:
    /// Sentinel label for insertions that settle above row k.
    static constexpr std::uint32_t beyond = ~std::uint32_t(0);

    explicit BottomRows(std::uint32_t k)
        : rows_(std::size_t(k) + 1),
          undo_pos_(std::size_t(k) + 1),
          undo_value_(std::size_t(k) + 1) {}

    std::uint32_t k() const { return static_cast<std::uint32_t>(rows_.size() - 1); }
    const std::vector<Entry>& row(std::size_t y) const { return rows_[y]; }

    std::vector<std::uint32_t> row_lengths() const {
        std::vector<std::uint32_t> out(rows_.size());
        for (std::size_t y = 0; y < rows_.size(); ++y)
            out[y] = static_cast<std::uint32_t>(rows_[y].size());
        return out;
    }

    std::size_t box_count() const {
        std::size_t n = 0;
        for (const auto& r : rows_) n += r.size();
        return n;
    }

    /// Insert a; returns the row where the insertion terminated, or `beyond`
    /// if the cascade left row k.  Throws on duplicates against any retained
    /// entry (public entry point; samplers go through insert_drawn).
    std::uint32_t insert(Entry a);

    /// Hot path: assumes a duplicates no entry in rows 0..k.  Kept in the
    /// header so the simulation loops inline it.
    std::uint32_t insert_unchecked(Entry a) {
        for (std::size_t y = 0; y < rows_.size(); ++y) {
            std::vector<Entry>& row = rows_[y];
            const std::size_t pos = detail::upper_bound_index(row.data(), row.size(), a);
            if (pos == row.size()) {
                row.push_back(a);
                return static_cast<std::uint32_t>(y);
            }
            const Entry bumped = row[pos];
            row[pos] = a;
            a = bumped;
        }
        return beyond;
    }

    /// Sampler entry point: draw uniform letters until one inserts cleanly.
    ///
    /// Collisions against values the cascade inspects are detected inline
    /// (the cost is one extra compare per visited row) and undone before
    /// redrawing.  A letter can also tie a retained value in a row the
    /// cascade never reaches; catching that case would need a full
    /// membership scan per insertion, roughly doubling the dominant cost of
    /// every simulation.  Such ties slip through with probability under
    /// (k+1)*rowlen/2^53 per letter — orders of magnitude below the
    /// resolution of any statistic built on these samples — leaving at worst
    /// one duplicated value across rows while each row stays strictly
    /// sorted.
    std::uint32_t insert_drawn(Rng& rng) {
        for (;;) {
            const Entry a = uniform01(rng);
            const std::uint32_t label = try_insert(a);
            if (label != redraw) return label;
        }
    }

private:
    static constexpr std::uint32_t redraw = beyond - 1;

    /// Cascade with inline tie detection; returns the label, or `redraw`
    /// after rolling back if a tie was seen along the route.
    std::uint32_t try_insert(Entry a) {
        std::size_t depth = 0;
        for (std::size_t y = 0; y < rows_.size(); ++y) {
            std::vector<Entry>& row = rows_[y];
            const std::size_t pos = detail::upper_bound_index(row.data(), row.size(), a);
            if (pos > 0 && row[pos - 1] == a) {
                while (depth-- > 0)
                    rows_[depth][undo_pos_[depth]] = undo_value_[depth];
                return redraw;
            }
            if (pos == row.size()) {
                row.push_back(a);
                return static_cast<std::uint32_t>(y);
            }
            undo_pos_[depth] = pos;
            undo_value_[depth] = row[pos];
            ++depth;
            row[pos] = a;
            a = undo_value_[depth - 1];
        }
        return beyond;
    }

public:
    bool operator==(const BottomRows& other) const { return rows_ == other.rows_; }

private:
    std::vector<std::vector<Entry>> rows_;
    std::vector<std::uint32_t> undo_pos_;
    std::vector<Entry> undo_value_;
};

/// Free-function form of truncated insertion; returns the terminal row or
/// BottomRows::beyond.
std::uint32_t truncated_insert(BottomRows& state, Entry a);

}  // namespace rsklab
