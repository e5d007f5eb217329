#include "rsklab/plancherel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace rsklab {

namespace {

struct RowsHash {
    std::size_t operator()(const std::vector<std::uint32_t>& rows) const {
        std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
        for (std::uint32_t r : rows) {
            h ^= r;
            h *= 0x100000001B3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

BigInt hook_product(const YoungDiagram& lam) {
    BigInt prod = 1;
    const auto conj = lam.conjugate();
    for (std::size_t y = 0; y < lam.row_count(); ++y)
        for (std::size_t x = 0; x < lam.rows[y]; ++x) {
            const unsigned long hook = (lam.rows[y] - x) + (conj[x] - y) - 1;
            prod *= hook;
        }
    return prod;
}

class DimensionCache {
public:
    BigInt dimension(const YoungDiagram& lam) {
        {
            std::shared_lock lock(mutex_);
            auto it = cache_.find(lam.rows);
            if (it != cache_.end()) return it->second;
        }
        BigInt d = factorial(lam.box_count()) / hook_product(lam);
        std::unique_lock lock(mutex_);
        return cache_.emplace(lam.rows, std::move(d)).first->second;
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return cache_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::vector<std::uint32_t>, BigInt, RowsHash> cache_;
};

DimensionCache& cache() {
    static DimensionCache instance;
    return instance;
}

}  // namespace

BigInt factorial(std::uint64_t n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

BigInt dimension(const YoungDiagram& lam) {
    if (!lam.valid()) throw std::invalid_argument("dimension: invalid diagram");
    return cache().dimension(lam);
}

std::size_t dimension_cache_size() { return cache().size(); }

ExactMeasure plancherel_pmf(std::size_t n, std::size_t enum_limit) {
    if (n > enum_limit)
        throw capacity_error("plancherel_pmf: n exceeds enumeration limit");
    ExactMeasure out;
    out.support = partitions_of(n);
    out.probability.reserve(out.support.size());
    const BigInt nfact = factorial(n);
    BigInt total = 0;
    for (const auto& lam : out.support) {
        const BigInt d = dimension(lam);
        total += d * d;
        BigRat p(d * d, nfact);
        p.canonicalize();
        out.probability.push_back(std::move(p));
    }
    // Burnside check: the squared dimensions must tile n! exactly.
    if (total != nfact) throw std::logic_error("plancherel_pmf: weights do not sum to 1");
    return out;
}

std::vector<std::pair<std::size_t, BigRat>> transition_probabilities_exact(
    const YoungDiagram& mu) {
    const BigInt dmu = dimension(mu);
    const unsigned long n1 = static_cast<unsigned long>(mu.box_count()) + 1;
    std::vector<std::pair<std::size_t, BigRat>> out;
    BigRat total = 0;
    for (std::size_t r : mu.addable_rows()) {
        BigRat w(dimension(mu.with_box(r)), dmu * n1);
        w.canonicalize();
        total += w;
        out.emplace_back(r, std::move(w));
    }
    if (total != 1)
        throw std::logic_error("transition_probabilities_exact: weights do not sum to 1");
    return out;
}

std::vector<std::pair<std::size_t, double>> transition_probabilities(
    const YoungDiagram& mu) {
    // Per addable row r with arm length c = mu_r, the boxes whose hooks grow
    // by one are those in row r left of the new box and in column c below
    // it; the ratio of dimensions telescopes to prod hook/(hook+1) over that
    // set.  Work in logs: deep corners can have astronomically small weight.
    const auto conj = mu.conjugate();
    const auto addable = mu.addable_rows();
    std::vector<double> logw;
    logw.reserve(addable.size());
    for (std::size_t r : addable) {
        const std::size_t c = mu.row(r);
        double lw = 0;
        for (std::size_t x = 0; x < c; ++x) {
            const double hook = double(mu.rows[r] - x) + double(conj[x] - r) - 1;
            lw += std::log(hook) - std::log(hook + 1);
        }
        for (std::size_t y = 0; y < r; ++y) {
            const double hook = double(mu.rows[y] - c) + double(conj[c] - y) - 1;
            lw += std::log(hook) - std::log(hook + 1);
        }
        logw.push_back(lw);
    }
    const double lmax = *std::max_element(logw.begin(), logw.end());
    double sum = 0;
    for (double lw : logw) sum += std::exp(lw - lmax);
    const double total = std::exp(lmax) * sum;
    if (std::abs(total - 1.0) > 1e-6)
        throw std::logic_error("transition_probabilities: weights do not sum to 1");
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(addable.size());
    for (std::size_t i = 0; i < addable.size(); ++i)
        out.emplace_back(addable[i], std::exp(logw[i] - lmax) / sum);
    return out;
}

std::size_t transition_step(YoungDiagram& mu, Rng& rng, std::size_t exact_limit) {
    const double u = uniform01(rng);
    std::size_t chosen = 0;
    if (mu.box_count() + 1 <= exact_limit) {
        const auto weights = transition_probabilities_exact(mu);
        double acc = 0;
        chosen = weights.back().first;
        for (const auto& [r, w] : weights) {
            acc += w.get_d();
            if (u < acc) {
                chosen = r;
                break;
            }
        }
    } else {
        const auto weights = transition_probabilities(mu);
        double acc = 0;
        chosen = weights.back().first;
        for (const auto& [r, w] : weights) {
            acc += w;
            if (u < acc) {
                chosen = r;
                break;
            }
        }
    }
    mu = mu.with_box(chosen);
    return chosen;
}

namespace {

constexpr std::uint32_t kMaxLabelRows = 200;

void check_label_row(std::uint32_t k) {
    if (k > kMaxLabelRows)
        throw std::invalid_argument("truncation depth k too large for label encoding");
}

/// Draw a letter not present in the full tableau (ties are vanishingly rare
/// but would corrupt column order).
Entry draw_fresh_letter(const Tableau& t, Rng& rng) {
    for (;;) {
        const Entry a = uniform01(rng);
        if (!t.contains(a)) return a;
    }
}

std::uint8_t clamp_label(std::size_t settle_row, std::uint32_t k) {
    return settle_row <= k ? static_cast<std::uint8_t>(settle_row) : beyond_label(k);
}

}  // namespace

GrowthObservation grow_rsk(std::uint64_t n, std::uint64_t ell, std::uint32_t k,
                           Rng& rng, TerminalMode mode) {
    check_label_row(k);
    GrowthObservation obs;
    obs.base_n = n;
    obs.k = k;
    obs.labels.reserve(ell);

    if (mode == TerminalMode::full) {
        Tableau t;
        for (std::uint64_t i = 0; i < n; ++i) (void)t.insert(draw_fresh_letter(t, rng));
        for (std::uint64_t i = 0; i < ell; ++i) {
            const auto route = t.insert(draw_fresh_letter(t, rng));
            obs.labels.push_back(clamp_label(route.final_row(), k));
        }
        obs.terminal = t.shape();
        obs.bottom_row_lengths.resize(std::size_t(k) + 1);
        for (std::uint32_t y = 0; y <= k; ++y)
            obs.bottom_row_lengths[y] = obs.terminal->row(y);
        return obs;
    }

    BottomRows state(k);
    for (std::uint64_t i = 0; i < n; ++i) (void)state.insert_drawn(rng);
    for (std::uint64_t i = 0; i < ell; ++i) {
        const std::uint32_t label = state.insert_drawn(rng);
        obs.labels.push_back(label == BottomRows::beyond ? beyond_label(k)
                                                         : static_cast<std::uint8_t>(label));
    }
    if (mode == TerminalMode::bottom_rows) obs.bottom_row_lengths = state.row_lengths();
    return obs;
}

GrowthObservation sample_vbar(std::uint64_t n, std::uint64_t ell, std::uint32_t k,
                              Rng& rng, TerminalMode mode) {
    check_label_row(k);
    if (n == 0 || double(k + 1) > std::sqrt(double(n)))
        throw std::invalid_argument("sample_vbar: needs (k+1) <= sqrt(n)");
    GrowthObservation obs;
    obs.base_n = n;
    obs.k = k;
    obs.labels.reserve(ell);

    // Labels i.i.d.: each row r <= k with probability 1/sqrt(n).
    const double sqrt_n = std::sqrt(double(n));
    for (std::uint64_t i = 0; i < ell; ++i) {
        const double idx = std::floor(uniform01(rng) * sqrt_n);
        obs.labels.push_back(idx <= double(k) ? static_cast<std::uint8_t>(idx)
                                              : beyond_label(k));
    }

    // Terminal state: an independent draw from the size n+ell Plancherel
    // measure, realised through a fresh insertion chain (or, for small
    // sizes in full mode, through exact growth transitions).
    switch (mode) {
        case TerminalMode::none:
            break;
        case TerminalMode::bottom_rows: {
            BottomRows state(k);
            for (std::uint64_t i = 0; i < n + ell; ++i) (void)state.insert_drawn(rng);
            obs.bottom_row_lengths = state.row_lengths();
            break;
        }
        case TerminalMode::full: {
            YoungDiagram lam;
            if (n + ell <= 2000) {
                for (std::uint64_t i = 0; i < n + ell; ++i)
                    (void)transition_step(lam, rng);
            } else {
                Tableau t;
                for (std::uint64_t i = 0; i < n + ell; ++i)
                    (void)t.insert(draw_fresh_letter(t, rng));
                lam = t.shape();
            }
            obs.bottom_row_lengths.resize(std::size_t(k) + 1);
            for (std::uint32_t y = 0; y <= k; ++y) obs.bottom_row_lengths[y] = lam.row(y);
            obs.terminal = std::move(lam);
            break;
        }
    }
    return obs;
}

BigRat exact_row_growth_prob(std::size_t n, std::size_t r, std::size_t enum_limit) {
    if (n == 0) throw std::invalid_argument("exact_row_growth_prob: n must be positive");
    if (n - 1 > enum_limit)
        throw capacity_error("exact_row_growth_prob: n exceeds enumeration limit");
    // P(box n lands in row r) = sum over mu of dim(mu) dim(mu + box_r) / n!.
    BigInt numerator = 0;
    for (const auto& mu : partitions_of(n - 1))
        if (mu.addable(r)) numerator += dimension(mu) * dimension(mu.with_box(r));
    BigRat out(numerator, factorial(n));
    out.canonicalize();
    return out;
}

bool STableRow::bound_holds() const {
    // s <= (K+1)/sqrt(n), compared as s^2 * n <= (K+1)^2 to stay exact.
    const unsigned long k1 = static_cast<unsigned long>(row_prob.size());
    BigRat lhs = s * s;
    lhs *= BigRat(static_cast<unsigned long>(n));
    return cmp(lhs, BigRat(k1 * k1)) <= 0;
}

bool STableRow::monotone() const {
    for (std::size_t r = 0; r + 1 < row_prob.size(); ++r)
        if (cmp(row_prob[r], row_prob[r + 1]) < 0) return false;
    return true;
}

std::vector<STableRow> s_table(std::size_t K, std::size_t n_max,
                               std::size_t enum_limit) {
    std::vector<STableRow> out;
    out.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        STableRow row;
        row.n = n;
        row.s = 0;
        for (std::size_t r = 0; r <= K; ++r) {
            row.row_prob.push_back(exact_row_growth_prob(n, r, enum_limit));
            row.s += row.row_prob.back();
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace rsklab
