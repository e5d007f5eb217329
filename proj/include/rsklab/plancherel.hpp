// Plancherel measure and its growth process: exact hook-length dimensions,
// exact transition weights and row-growth probabilities, plus the two
// samplers (coupled growth observations and their independent surrogate).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rsklab/rng.hpp"
#include "rsklab/tableau.hpp"
#include "rsklab/young.hpp"

namespace rsklab {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Exact computations enumerate partitions; p(n) grows fast, so anything
/// beyond this default size must be requested explicitly.
inline constexpr std::size_t kDefaultEnumLimit = 50;

BigInt factorial(std::uint64_t n);

/// Number of standard fillings of lam (hook length formula), memoized
/// process-wide; safe to call concurrently.
BigInt dimension(const YoungDiagram& lam);

/// Entries currently memoized by the dimension cache (diagnostic).
std::size_t dimension_cache_size();

/// A probability measure with finite support listed alongside exact weights.
struct ExactMeasure {
    std::vector<YoungDiagram> support;
    std::vector<BigRat> probability;

    std::size_t size() const { return support.size(); }
};

/// Plancherel measure on partitions of n: weight dimension^2 / n!.
/// Throws capacity_error when n exceeds enum_limit.
ExactMeasure plancherel_pmf(std::size_t n, std::size_t enum_limit = kDefaultEnumLimit);

/// Transition weights of the growth process from mu, one entry per addable
/// row: weight = dimension(mu + box) / ((n+1) * dimension(mu)).  The exact
/// form throws logic_error unless the weights sum to exactly 1.
std::vector<std::pair<std::size_t, BigRat>> transition_probabilities_exact(
    const YoungDiagram& mu);

/// Same weights in floating point, computed per corner from hook ratios in
/// log domain so large diagrams neither overflow nor underflow.
std::vector<std::pair<std::size_t, double>> transition_probabilities(
    const YoungDiagram& mu);

/// Grow mu by one Plancherel transition in place; returns the chosen row.
/// Uses exact weights while |mu|+1 <= exact_limit, log-domain weights above.
std::size_t transition_step(YoungDiagram& mu, Rng& rng,
                            std::size_t exact_limit = kDefaultEnumLimit);

/// What a growth-observation sampler should retain about the terminal state.
enum class TerminalMode { none, bottom_rows, full };

/// Label value recorded when an insertion settles above row k.
inline std::uint8_t beyond_label(std::uint32_t k) {
    return static_cast<std::uint8_t>(k + 1);
}

/// One sampled observation window: the rows (truncated at k) where boxes
/// n+1..n+ell of the growth process appeared, plus optional terminal data.
struct GrowthObservation {
    std::uint64_t base_n = 0;
    std::uint32_t k = 0;
    std::vector<std::uint8_t> labels;               // values 0..k, k+1 = beyond
    std::vector<std::uint32_t> bottom_row_lengths;  // rows 0..k at the end
    std::optional<YoungDiagram> terminal;           // TerminalMode::full only
};

/// Sample the coupled observation by running Schensted insertion on n+ell
/// i.i.d. uniform letters and recording the last ell settle rows.  Letters
/// colliding with a retained entry are redrawn.
GrowthObservation grow_rsk(std::uint64_t n, std::uint64_t ell, std::uint32_t k,
                           Rng& rng, TerminalMode mode = TerminalMode::none);

/// Sample the independent surrogate: labels i.i.d. with P{r} = 1/sqrt(n) for
/// each r <= k (beyond otherwise), and a terminal state drawn independently
/// of the labels from the size-(n+ell) Plancherel measure.
GrowthObservation sample_vbar(std::uint64_t n, std::uint64_t ell, std::uint32_t k,
                              Rng& rng, TerminalMode mode = TerminalMode::none);

/// Exact probability that the growth step n-1 -> n adds its box in row r:
/// sum over mu of dimension(mu) * dimension(mu + box_r) / n!.
/// Throws capacity_error when n-1 exceeds enum_limit.
BigRat exact_row_growth_prob(std::size_t n, std::size_t r,
                             std::size_t enum_limit = kDefaultEnumLimit);

/// Row of the exact small-n table: growth probabilities for rows 0..K and
/// their sum s = P(box lands in a row <= K).
struct STableRow {
    std::size_t n = 0;
    std::vector<BigRat> row_prob;  // index r in 0..K
    BigRat s;

    /// Exact check of s <= (K+1)/sqrt(n), squared to stay rational.
    bool bound_holds() const;
    /// Exact check that row_prob is weakly decreasing in r.
    bool monotone() const;
};

/// Exact table for n = 1..n_max (n_max-1 <= enum_limit required).
std::vector<STableRow> s_table(std::size_t K, std::size_t n_max,
                               std::size_t enum_limit = kDefaultEnumLimit);

}  // namespace rsklab
