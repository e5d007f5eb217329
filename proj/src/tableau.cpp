#include "rsklab/tableau.hpp"

#include <algorithm>

namespace rsklab {

Tableau Tableau::from_rows(std::vector<std::vector<Entry>> rows) {
    Tableau t;
    t.rows_ = std::move(rows);
    if (!t.valid()) throw std::invalid_argument("Tableau::from_rows: not a standard tableau");
    return t;
}

bool Tableau::valid() const {
    std::vector<Entry> all;
    for (std::size_t y = 0; y < rows_.size(); ++y) {
        const auto& row = rows_[y];
        if (row.empty()) return false;
        if (y + 1 < rows_.size() && rows_[y + 1].size() > row.size()) return false;
        for (std::size_t x = 0; x < row.size(); ++x) {
            if (x + 1 < row.size() && row[x] >= row[x + 1]) return false;
            if (y + 1 < rows_.size() && x < rows_[y + 1].size() &&
                row[x] >= rows_[y + 1][x])
                return false;
        }
        all.insert(all.end(), row.begin(), row.end());
    }
    // Row and column order alone allow repeats in unrelated cells, but an
    // insertion tableau built from a duplicate-free word never has them.
    std::sort(all.begin(), all.end());
    return std::adjacent_find(all.begin(), all.end()) == all.end();
}

bool Tableau::contains(Entry a) const {
    for (const auto& row : rows_) {
        const std::size_t pos = detail::upper_bound_index(row.data(), row.size(), a);
        if (pos > 0 && row[pos - 1] == a) return true;
    }
    return false;
}

BumpingRoute Tableau::insert(Entry a) {
    // Bumped values stay distinct along the cascade, so checking the fresh
    // letter against every row up front is a complete duplicate test.
    if (contains(a)) throw std::invalid_argument("Tableau::insert: duplicate entry");
    BumpingRoute route;
    for (std::size_t y = 0;; ++y) {
        if (y == rows_.size()) rows_.emplace_back();
        std::vector<Entry>& row = rows_[y];
        const std::size_t pos = detail::upper_bound_index(row.data(), row.size(), a);
        if (pos == row.size()) {
            row.push_back(a);
            route.steps.push_back({pos, y, a});
            return route;
        }
        const Entry bumped = row[pos];
        row[pos] = a;
        route.steps.push_back({pos, y, a});
        a = bumped;
    }
}

void RecordingTableau::record(std::size_t y, std::uint64_t index) {
    if (y > rows_.size()) throw std::invalid_argument("RecordingTableau::record: row gap");
    if (y == rows_.size()) rows_.emplace_back();
    rows_[y].push_back(index);
}

RowInsertResult row_insert(std::vector<Entry> row, Entry a) {
    if (!std::is_sorted(row.begin(), row.end()) ||
        std::adjacent_find(row.begin(), row.end()) != row.end())
        throw std::invalid_argument("row_insert: row must be strictly increasing");
    RowInsertResult out;
    const std::size_t pos = detail::upper_bound_index(row.data(), row.size(), a);
    if (pos > 0 && row[pos - 1] == a)
        throw std::invalid_argument("row_insert: duplicate entry");
    if (pos == row.size()) {
        row.push_back(a);
    } else {
        out.bumped = row[pos];
        row[pos] = a;
    }
    out.row = std::move(row);
    return out;
}

std::pair<Tableau, BumpingRoute> schensted_insert(const Tableau& t, Entry a) {
    Tableau out = t;
    BumpingRoute route = out.insert(a);
    return {std::move(out), std::move(route)};
}

RskResult rsk(std::span<const Entry> word) {
    RskResult result;
    for (std::size_t i = 0; i < word.size(); ++i) {
        BumpingRoute route = result.P.insert(word[i]);
        result.Q.record(route.final_row(), i + 1);
    }
    return result;
}

std::uint32_t BottomRows::insert(Entry a) {
    for (const auto& row : rows_) {
        const std::size_t pos = detail::upper_bound_index(row.data(), row.size(), a);
        if (pos > 0 && row[pos - 1] == a)
            throw std::invalid_argument("BottomRows::insert: duplicate entry");
    }
    return insert_unchecked(a);
}

std::uint32_t truncated_insert(BottomRows& state, Entry a) {
    return state.insert(a);
}

}  // namespace rsklab
