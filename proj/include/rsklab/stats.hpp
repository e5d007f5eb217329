// Statistical verification engine: total-variation estimates, counting
// paths of the growth process, Poisson goodness-of-fit machinery, and the
// rescaled local point sets of the insertion and recording tableaux.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "rsklab/rng.hpp"
#include "rsklab/tableau.hpp"
#include "rsklab/young.hpp"

namespace rsklab {

// ---------------------------------------------------------------------------
// Tail probabilities (null distributions of the test statistics).

/// P(Chi2_df > x).
double chi_squared_sf(double x, double df);

/// Kolmogorov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_sf(double lambda);

/// Two-sided KS p-value for statistic d on a sample of size n (asymptotic
/// Kolmogorov law with the usual small-sample size adjustment).
double ks_p_value(double d, std::uint64_t n);

/// P(N(0,1) > z).
double normal_sf(double z);

// ---------------------------------------------------------------------------
// Empirical distributions and total variation.

template <class Key>
class EmpiricalDistribution {
public:
    void add(const Key& key, std::uint64_t weight = 1) {
        counts_[key] += weight;
        total_ += weight;
    }

    const std::map<Key, std::uint64_t>& counts() const { return counts_; }
    std::uint64_t total() const { return total_; }
    std::size_t support_size() const { return counts_.size(); }

    double probability(const Key& key) const {
        auto it = counts_.find(key);
        return it == counts_.end() ? 0.0 : double(it->second) / double(total_);
    }

private:
    std::map<Key, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Half the l1 distance over the union support; equals the maximal
/// discrepancy assigned to any event.
template <class Key>
double tvd(const EmpiricalDistribution<Key>& p, const EmpiricalDistribution<Key>& q) {
    if (p.total() == 0 || q.total() == 0)
        throw std::invalid_argument("tvd: empty distribution");
    double sum = 0;
    auto ip = p.counts().begin();
    auto iq = q.counts().begin();
    while (ip != p.counts().end() || iq != q.counts().end()) {
        if (iq == q.counts().end() || (ip != p.counts().end() && ip->first < iq->first)) {
            sum += double(ip->second) / double(p.total());
            ++ip;
        } else if (ip == p.counts().end() || iq->first < ip->first) {
            sum += double(iq->second) / double(q.total());
            ++iq;
        } else {
            sum += std::abs(double(ip->second) / double(p.total()) -
                            double(iq->second) / double(q.total()));
            ++ip;
            ++iq;
        }
    }
    return sum / 2;
}

/// TVD against an exact reference measure given as probabilities.
template <class Key>
double tvd(const EmpiricalDistribution<Key>& p, const std::map<Key, double>& exact) {
    if (p.total() == 0 || exact.empty())
        throw std::invalid_argument("tvd: empty distribution");
    double sum = 0;
    auto ip = p.counts().begin();
    auto iq = exact.begin();
    while (ip != p.counts().end() || iq != exact.end()) {
        if (iq == exact.end() || (ip != p.counts().end() && ip->first < iq->first)) {
            sum += double(ip->second) / double(p.total());
            ++ip;
        } else if (ip == p.counts().end() || iq->first < ip->first) {
            sum += iq->second;
            ++iq;
        } else {
            sum += std::abs(double(ip->second) / double(p.total()) - iq->second);
            ++ip;
            ++iq;
        }
    }
    return sum / 2;
}

/// Expected plug-in TVD when comparing empirical distributions drawn from
/// the law `probs` itself (normal approximation per atom).  two_sample
/// selects empirical-vs-empirical rather than empirical-vs-exact.
double expected_same_law_tvd(std::span<const double> probs, std::uint64_t reps,
                             bool two_sample = true);

// ---------------------------------------------------------------------------
// Counting paths of the growth process.

/// Row-growth labels of one replicate over the rescaled window [-c, c]:
/// grid times t_j = j/sqrt(n) for j in [-m, m] with m = floor(c sqrt n),
/// one label per step j in (-m, m].
struct CountingPath {
    std::uint64_t n = 0;
    std::uint32_t k = 0;
    double c = 0;
    std::int64_t grid_max = 0;         // m
    std::vector<std::uint8_t> labels;  // index i holds the label of step j = i - m + 1

    double sqrt_n() const { return std::sqrt(double(n)); }
    std::size_t steps() const { return labels.size(); }

    /// Cumulative row-growth vector Lambda^(n+j) - Lambda^(n), one entry per
    /// row 0..k.  Negative j counts backwards from the anchor.
    std::vector<std::int64_t> value_at(std::int64_t j) const;

    /// Event times per row, each within its own step interval: the event of
    /// step j is placed at (j - 1 + u)/sqrt(n), u = 0 by default or a
    /// supplied dequantization draw in [0,1).
    std::vector<std::vector<double>> event_times(Rng* jitter = nullptr) const;

    /// Events per unit window, rows 0..k by 2c windows.
    std::vector<std::vector<std::uint64_t>> window_counts() const;
};

/// Sample `reps` counting paths of the Plancherel growth process by
/// truncated insertion.  c must be a positive integer value; requires
/// c sqrt(n) < n so the burn-in is nonempty.
std::vector<CountingPath> counting_paths(std::uint64_t n, double c, std::uint32_t k,
                                         std::uint64_t reps, std::uint64_t seed,
                                         unsigned jobs = 1);

/// Null model for calibration: labels i.i.d. with P{row r} = 1/sqrt(n).
std::vector<CountingPath> counting_paths_null(std::uint64_t n, double c,
                                              std::uint32_t k, std::uint64_t reps,
                                              std::uint64_t seed, unsigned jobs = 1);

/// Deterministic alternative: every row fires exactly once per round(sqrt n)
/// steps, so window counts have zero variance and gaps are constant.
std::vector<CountingPath> counting_paths_periodic(std::uint64_t n, double c,
                                                  std::uint32_t k, std::uint64_t reps);

// ---------------------------------------------------------------------------
// Rescaled local point sets.

/// Point sets per row with presence flags (a requested row may be missing
/// from a small tableau).
struct PointSets {
    std::vector<std::vector<double>> rows;
    std::vector<bool> present;
};

/// Row y of Q rescaled around iteration n: {(Q_{x,y} - n)/sqrt(n)}.
PointSets rescaled_q_sets(const RecordingTableau& Q, std::uint64_t n, std::uint32_t k);

/// Row y of P rescaled around level w: {sqrt(n) (P_{x,y} - w)}.
/// w must lie in (0, 1].
PointSets rescaled_p_sets(const Tableau& P, double w, std::uint64_t n, std::uint32_t k);

// ---------------------------------------------------------------------------
// Poisson goodness of fit, shared by counting paths and point sets.

struct RowFit {
    std::uint32_t row = 0;
    std::uint64_t events = 0;

    // Unit-window counts.
    std::uint64_t cells = 0;
    double count_mean = 0, count_mean_se = 0;
    double count_var = 0, count_var_se = 0;
    std::vector<std::uint64_t> count_histogram;  // index = per-cell count
    double chi2_stat = 0;
    std::uint32_t chi2_df = 0;
    double chi2_p = 1;

    // Interarrival gaps (base point inside the window).
    std::uint64_t gap_count = 0;
    double gap_mean = 0, gap_mean_se = 0;
    double ks_stat = 0;
    double ks_p = 1;
};

struct CrossFit {
    std::uint32_t row_a = 0, row_b = 0;
    double covariance = 0;
    double se = 0;
};

struct PointFitReport {
    std::vector<RowFit> rows;
    std::vector<CrossFit> cross;
    double rate = 1;
    double alpha = 0.01;
    double window_lo = 0, window_hi = 0;
    std::uint64_t replicates = 0;

    std::size_t test_count() const { return 2 * rows.size(); }
    /// chi-square and KS per row, Bonferroni-corrected to family level alpha.
    bool family_tests_pass() const;
    /// Window-count means and variances within z standard errors of the
    /// Poisson rate; cross covariances within z standard errors of zero.
    bool moments_pass(double z = 3.0) const;
};

struct PointFitConfig {
    double window_lo = 0;
    double window_hi = 0;
    double rate = 1;
    double alpha = 0.01;
    double min_expected = 5;  // chi-square tail-merge threshold

    /// Gap base points are restricted to (gap_base_lo, window_hi].  Each gap
    /// runs backward from a base to its predecessor, which keeps the estimate
    /// unbiased even when the data genuinely ends at window_hi, but callers
    /// whose samples are truncated at window_lo must leave a margin so every
    /// base still has its predecessor; NaN means window_lo.
    double gap_base_lo = std::numeric_limits<double>::quiet_NaN();
};

/// Window-count and gap analysis of per-replicate point sets against a
/// homogeneous Poisson process of the configured rate.  Requires >= 100
/// replicates and an integral window length.
PointFitReport point_process_fit(const std::vector<PointSets>& samples,
                                 const PointFitConfig& config);

struct PoissonFitConfig {
    double rate = 1;
    double alpha = 0.01;
    bool dequantize = true;  // spread each event over its grid step
    std::uint64_t jitter_seed = 0x5DEECE66D;
    double min_expected = 5;
};

/// Fit of counting paths against k+1 independent Poisson(rate) processes.
PointFitReport poisson_process_fit(const std::vector<CountingPath>& paths,
                                   const PoissonFitConfig& config = {});

// ---------------------------------------------------------------------------
// Tail statistic of the bottom row.

struct TailFitReport {
    std::uint64_t count = 0;
    double mean = 0, mean_se = 0;
    double min = 0;
    double ks_stat = 0, ks_p = 1;
    double alpha = 0.01;

    bool pass(double z = 3.0) const {
        return min > 0 && std::abs(mean - 1.0) <= z * mean_se && ks_p >= alpha;
    }
};

/// KS/mean analysis of samples expected to follow Exp(1).
TailFitReport exp_tail_fit(std::span<const double> samples, double alpha = 0.01);

/// Samples sqrt(n) (1 - last bottom-row entry) across replicates.
std::vector<double> exp_tail_samples(std::uint64_t n, std::uint64_t reps,
                                     std::uint64_t seed, unsigned jobs = 1);

// ---------------------------------------------------------------------------
// Order-statistics diagnostic backing the localP rescaling.

struct OrderStatReport {
    std::uint64_t n = 0;
    double w = 0;
    std::uint64_t m = 0;        // #{xi_i < w}
    double stat_at_m = 0;       // (xi_(m) - w) sqrt(n)
    double max_abs_dev = 0;     // over |j - m| <= 3 sqrt(n)
    std::uint64_t window_lo = 0, window_hi = 0;  // j range examined
    std::uint64_t j0 = 0;       // round(n w), probe for the Beta mean
    double xi_j0 = 0;
};

/// One-replicate diagnostic: deviations (xi_(j) - w) sqrt(n) - (j - m)/sqrt(n)
/// across the window |j - m| <= 3 sqrt(n).
OrderStatReport order_stat_diag(std::uint64_t n, double w, Rng& rng);

}  // namespace rsklab
