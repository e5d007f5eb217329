// Experiment drivers wiring the samplers to the statistical gates: local
// point-set experiments, the V vs V-bar independence estimate, tail and
// shape-distribution checks, and the calibration campaigns that validate
// every statistical pipeline on its own null model.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rsklab/plancherel.hpp"
#include "rsklab/stats.hpp"

namespace rsklab {

/// One named pass/fail gate of an experiment verdict.
struct GateResult {
    std::string name;
    bool pass = false;
    double value = 0;
    double threshold = 0;
};

// ---------------------------------------------------------------------------
// Counting-path experiment (growth process vs independent Poisson processes).

struct PoissonVerifyConfig {
    std::uint64_t n = 10000;
    std::uint32_t k = 2;
    double c = 5;
    std::uint64_t reps = 2000;
    std::uint64_t seed = 1;
    unsigned jobs = 0;
    double alpha = 0.01;
};

struct PoissonVerifyReport {
    PoissonVerifyConfig config;
    PointFitReport fit;
    std::vector<GateResult> gates;  // per-row mean/variance, family tests, covariances

    bool pass() const {
        for (const auto& g : gates)
            if (!g.pass) return false;
        return true;
    }
};

PoissonVerifyReport poisson_experiment(const PoissonVerifyConfig& config);

// ---------------------------------------------------------------------------
// Local point-set experiments (recording and insertion tableaux).

struct LocalConfig {
    std::uint64_t n = 10000;
    std::uint32_t k = 0;   // rows 0..k analyzed
    double c = 3;          // analysis window [-c, c]
    double w = 1;          // level for the insertion-side sets (ignored by the Q side)
    std::uint64_t reps = 500;
    std::uint64_t seed = 1;
    unsigned jobs = 0;
    double alpha = 0.01;
};

struct LocalReport {
    LocalConfig config;
    double rate = 1;  // expected intensity: 1 for Q sets, 1/sqrt(w) for P sets
    PointFitReport fit;
    double max_point = -std::numeric_limits<double>::infinity();
    std::uint64_t points_above_zero = 0;  // over the analysis window, all rows
    std::vector<GateResult> gates;

    bool pass() const {
        for (const auto& g : gates)
            if (!g.pass) return false;
        return true;
    }
};

/// Rows 0..k of the recording tableau around iteration n, rescaled by
/// 1/sqrt(n); expected limit: unit-rate Poisson processes.
LocalReport local_q_experiment(const LocalConfig& config);

/// Rows 0..k of the insertion tableau around level w, rescaled by sqrt(n);
/// expected limit: rate-1/sqrt(w) Poisson processes (negative halfline for
/// w = 1).
LocalReport local_p_experiment(const LocalConfig& config);

/// True Poisson(rate) point sets on (lo, hi] with predecessor margin — the
/// null model for calibrating point_process_fit.
std::vector<PointSets> poisson_point_sets(double rate, double lo, double hi,
                                          std::uint32_t rows, std::uint64_t reps,
                                          std::uint64_t seed);

/// Equally spaced points at the same average rate — a deterministic
/// alternative every fit must reject.
std::vector<PointSets> periodic_point_sets(double rate, double lo, double hi,
                                           std::uint32_t rows, std::uint64_t reps);

// ---------------------------------------------------------------------------
// Independence experiment: V (coupled growth labels) vs V-bar (independent
// surrogate), compared by plug-in total variation on the label marginal.

enum class IndependenceMode {
    labels,           // label sequence only
    labels_and_rows,  // labels plus clamped terminal bottom-row lengths
};

/// What the "V side" of the comparison is drawn from; the other side is
/// always sample_vbar.  The non-growth settings exist for calibration.
enum class IndependenceSide { growth, vbar, degenerate };

struct IndependenceConfig {
    std::uint64_t n = 2500;
    std::uint64_t ell = 3;
    std::uint32_t k = 1;
    std::uint64_t reps = 1000000;
    std::uint64_t seed = 1;
    unsigned jobs = 0;
    IndependenceMode mode = IndependenceMode::labels;
    IndependenceSide side = IndependenceSide::growth;
    std::uint32_t row_halfwidth = 8;  // clamp range of the coarse row statistic
    std::uint32_t bootstrap = 200;
};

struct TVDEstimate {
    double value = 0;
    double lo = 0, hi = 0;  // bootstrap percentile interval (2.5%..97.5%)
    double bootstrap_se = 0;

    // Same-law baseline measured from an independent pair of V-bar draws
    // with identical reps, plus its bootstrap error.
    double baseline = 0;
    double baseline_se = 0;

    // Expected plug-in TVD of two same-law empirical samples, from the exact
    // label law (NaN when the mode has no closed-form law).
    double analytic_baseline = 0;

    std::size_t support = 0;
    std::uint64_t replicates = 0;

    /// Calibration gate: a same-law estimate must sit within three bootstrap
    /// standard errors of the analytic prediction.
    bool same_law_consistent() const {
        return std::abs(value - analytic_baseline) <= 3 * bootstrap_se;
    }
};

TVDEstimate independence_experiment(const IndependenceConfig& config);

// ---------------------------------------------------------------------------
// Bottom-row tail experiment.

struct ExpTailConfig {
    std::uint64_t n = 10000;
    std::uint64_t reps = 2000;
    std::uint64_t seed = 1;
    unsigned jobs = 0;
    double alpha = 0.01;
};

struct ExpTailReport {
    ExpTailConfig config;
    TailFitReport fit;
    std::vector<GateResult> gates;

    bool pass() const {
        for (const auto& g : gates)
            if (!g.pass) return false;
        return true;
    }
};

ExpTailReport exp_tail_experiment(const ExpTailConfig& config);

// ---------------------------------------------------------------------------
// Hammersley/RSK trajectory equivalence campaign.

struct HammersleyEquivConfig {
    std::uint64_t words = 1000;
    std::uint64_t max_len = 200;
    std::uint32_t k = 3;
    std::uint64_t seed = 1;
};

struct HammersleyEquivReport {
    HammersleyEquivConfig config;
    std::uint64_t words_checked = 0;
    bool all_equal = true;

    struct Failure {
        std::uint64_t word_index;
        std::size_t step;
        std::uint32_t line;
    };
    std::optional<Failure> first_failure;

    bool pass() const { return all_equal; }
};

HammersleyEquivReport hammersley_equiv_experiment(const HammersleyEquivConfig& config);

// ---------------------------------------------------------------------------
// Shape-distribution cross-validation (sampler vs exact Plancherel pmf).

struct ShapeSamplingConfig {
    std::uint64_t n = 8;
    std::uint64_t reps = 1000000;
    std::uint64_t seed = 1;
    unsigned jobs = 0;
    std::size_t enum_limit = kDefaultEnumLimit;
};

struct ShapeSamplingReport {
    ShapeSamplingConfig config;
    double tvd_value = 0;
    double baseline = 0;  // expected plug-in TVD against the exact law
    std::size_t support = 0;

    bool pass() const { return tvd_value < 0.005 && tvd_value < 3 * baseline; }
};

ShapeSamplingReport shape_sampling_experiment(const ShapeSamplingConfig& config);

// ---------------------------------------------------------------------------
// Exact small-n table verdict.

struct STableVerifyConfig {
    std::size_t K = 1;
    std::size_t n_max = 40;
    std::size_t enum_limit = kDefaultEnumLimit;
};

struct STableVerifyReport {
    STableVerifyConfig config;
    std::vector<STableRow> table;
    bool all_monotone = true;
    bool all_bounded = true;
    bool s_decreasing = true;  // s_n weakly decreasing in n

    bool pass() const { return all_monotone && all_bounded && s_decreasing; }
};

STableVerifyReport s_table_experiment(const STableVerifyConfig& config);

// ---------------------------------------------------------------------------
// Calibration campaigns: each statistical pipeline run on data from its own
// null model (non-rejection expected) and on a deterministic alternative
// (rejection required).

struct CalibrationConfig {
    std::string id;  // poisson | localQ | localP | exp_tail | tvd
    std::uint32_t campaigns = 100;
    std::uint64_t seed = 1;
    unsigned jobs = 0;
    double alpha = 0.01;

    // Per-campaign pipeline sizes (defaults keep a full 100-campaign run
    // inside a few minutes).
    std::uint64_t reps = 0;  // 0 = pipeline-specific default
};

struct CalibrationReport {
    CalibrationConfig config;
    std::uint32_t null_passes = 0;
    std::uint32_t alt_rejections = 0;
    std::vector<bool> null_results;
    std::vector<bool> alt_results;

    double null_pass_rate() const {
        return config.campaigns ? double(null_passes) / double(config.campaigns) : 0;
    }
    bool pass() const {
        return config.campaigns > 0 && 20 * null_passes >= 19 * config.campaigns &&
               alt_rejections == config.campaigns;
    }
};

/// Valid calibration ids (the statistical subset of the verify ids).
const std::vector<std::string>& calibration_ids();

CalibrationReport calibrate(const CalibrationConfig& config);

}  // namespace rsklab
