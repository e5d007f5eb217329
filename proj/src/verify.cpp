// Experiment drivers: sampling harnesses feeding the statistical gates, and
// the calibration campaigns that validate the gates themselves.
#include "rsklab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "rsklab/hammersley.hpp"
#include "rsklab/parallel.hpp"
#include "rsklab/rng.hpp"
#include "rsklab/tableau.hpp"
#include "rsklab/young.hpp"

namespace rsklab {

namespace {

std::string row_name(std::uint32_t r) { return "row " + std::to_string(r); }

/// Gate of the form |value - target| <= 3 se; reported value is the z-score.
void add_moment_gate(std::vector<GateResult>& gates, const std::string& name,
                     double value, double target, double se) {
    GateResult gate;
    gate.name = name;
    gate.value = se > 0 ? (value - target) / se : 0.0;
    gate.threshold = 3.0;
    gate.pass = std::abs(value - target) <= 3.0 * se;
    gates.push_back(gate);
}

void add_p_gate(std::vector<GateResult>& gates, const std::string& name, double p,
                double threshold) {
    gates.push_back({name, p >= threshold, p, threshold});
}

/// Bonferroni family: chi-square and spacing KS per row, each compared with
/// alpha / (number of tests).
void add_family_gates(std::vector<GateResult>& gates, const PointFitReport& fit) {
    const double threshold = fit.alpha / double(fit.test_count());
    for (const RowFit& row : fit.rows) {
        add_p_gate(gates, row_name(row.row) + " count chi-square p", row.chi2_p,
                   threshold);
        add_p_gate(gates, row_name(row.row) + " spacing ks p", row.ks_p, threshold);
    }
}

void add_cross_gates(std::vector<GateResult>& gates, const PointFitReport& fit) {
    for (const CrossFit& pair : fit.cross)
        add_moment_gate(gates,
                        "rows " + std::to_string(pair.row_a) + "," +
                            std::to_string(pair.row_b) + " covariance z",
                        pair.covariance, 0.0, pair.se);
}

void check_window(double c, const char* who) {
    if (!(c >= 1) || std::floor(c) != c)
        throw std::invalid_argument(std::string(who) +
                                    ": c must be a positive integer value");
}

}  // namespace

// ---------------------------------------------------------------------------
// Counting-path experiment.

PoissonVerifyReport poisson_experiment(const PoissonVerifyConfig& config) {
    PoissonVerifyReport report;
    report.config = config;
    const auto paths = counting_paths(config.n, config.c, config.k, config.reps,
                                      config.seed, config.jobs);
    PoissonFitConfig fit_config;
    fit_config.alpha = config.alpha;
    report.fit = poisson_process_fit(paths, fit_config);
    for (const RowFit& row : report.fit.rows) {
        add_moment_gate(report.gates, row_name(row.row) + " count mean z",
                        row.count_mean, report.fit.rate, row.count_mean_se);
        add_moment_gate(report.gates, row_name(row.row) + " count variance z",
                        row.count_var, report.fit.rate, row.count_var_se);
    }
    add_family_gates(report.gates, report.fit);
    add_cross_gates(report.gates, report.fit);
    return report;
}

// ---------------------------------------------------------------------------
// Local point-set experiments.

namespace {

/// Shared tail of the two local experiments: scan the raw points, then attach
/// the gates (family tests, bottom-row gap mean, cross covariances, and for
/// processes that should end at the origin the sign and plain-KS gates).
void finish_local_report(LocalReport& report, const std::vector<PointSets>& samples,
                         bool sign_gates) {
    for (const PointSets& sets : samples)
        for (std::size_t r = 0; r < sets.rows.size(); ++r) {
            if (!sets.present[r])
                continue;
            for (double x : sets.rows[r]) {
                report.max_point = std::max(report.max_point, x);
                if (x > 0)
                    ++report.points_above_zero;
            }
        }

    add_family_gates(report.gates, report.fit);

    const RowFit& row0 = report.fit.rows.front();
    const double target = 1.0 / report.rate;
    GateResult gap;
    gap.name = "row 0 gap mean relative error";
    gap.value = row0.gap_count > 0 ? std::abs(row0.gap_mean - target) / target : 1.0;
    gap.threshold = 0.05;
    gap.pass = row0.gap_count > 0 && gap.value <= gap.threshold;
    report.gates.push_back(gap);

    add_cross_gates(report.gates, report.fit);

    if (sign_gates) {
        GateResult sign;
        sign.name = "points above the level";
        sign.value = double(report.points_above_zero);
        sign.threshold = 0;
        sign.pass = report.points_above_zero == 0;
        report.gates.push_back(sign);
        add_p_gate(report.gates, "row 0 spacing ks p (unadjusted)", row0.ks_p,
                   report.fit.alpha);
    }
}

}  // namespace

LocalReport local_q_experiment(const LocalConfig& config) {
    check_window(config.c, "local_q_experiment");
    if (config.n == 0 || config.reps == 0)
        throw std::invalid_argument("local_q_experiment: n and reps must be positive");
    const double s = std::sqrt(double(config.n));
    // Record iterations that can land in the analysis window, plus a
    // predecessor margin on the left so no backward gap is cut at the edge of
    // the recorded range (the tail beyond eight mean spacings is negligible
    // next to every gate's resolution).
    const double margin = 8.0;
    const auto lo_steps = std::uint64_t(std::ceil((config.c + margin) * s)) + 1;
    const auto hi_steps = std::uint64_t(std::ceil(config.c * s));
    if (lo_steps >= config.n)
        throw std::invalid_argument("local_q_experiment: window exceeds the run length");
    const std::uint64_t start = config.n - lo_steps;  // record iterations > start
    const std::uint64_t total = config.n + hi_steps;

    std::vector<PointSets> samples(config.reps);
    for_each_replicate(config.reps, config.jobs, [&](std::uint64_t i) {
        Rng rng = make_replicate_rng(config.seed, i);
        BottomRows state(config.k);
        PointSets& sets = samples[i];
        sets.rows.resize(std::size_t(config.k) + 1);
        sets.present.assign(std::size_t(config.k) + 1, true);
        for (std::uint64_t step = 1; step <= total; ++step) {
            const std::uint32_t label = state.insert_drawn(rng);
            if (step > start && label <= config.k)
                sets.rows[label].push_back((double(step) - double(config.n)) / s);
        }
    });

    LocalReport report;
    report.config = config;
    report.rate = 1.0;
    PointFitConfig fit_config;
    fit_config.window_lo = -config.c;
    fit_config.window_hi = config.c;
    fit_config.rate = 1.0;
    fit_config.alpha = config.alpha;
    report.fit = point_process_fit(samples, fit_config);
    finish_local_report(report, samples, /*sign_gates=*/false);
    return report;
}

LocalReport local_p_experiment(const LocalConfig& config) {
    check_window(config.c, "local_p_experiment");
    if (config.n == 0 || config.reps == 0)
        throw std::invalid_argument("local_p_experiment: n and reps must be positive");
    if (!(config.w > 0) || config.w > 1)
        throw std::invalid_argument("local_p_experiment: w must lie in (0, 1]");
    const bool top_level = config.w == 1.0;

    std::vector<PointSets> samples(config.reps);
    for_each_replicate(config.reps, config.jobs, [&](std::uint64_t i) {
        Rng rng = make_replicate_rng(config.seed, i);
        BottomRows state(config.k);
        for (std::uint64_t step = 0; step < config.n; ++step)
            state.insert_drawn(rng);
        std::vector<std::vector<Entry>> rows;
        for (std::uint32_t y = 0; y <= config.k && !state.row(y).empty(); ++y)
            rows.push_back(state.row(y));
        samples[i] =
            rescaled_p_sets(Tableau::from_rows(std::move(rows)), config.w, config.n,
                            config.k);
    });

    LocalReport report;
    report.config = config;
    report.rate = 1.0 / std::sqrt(config.w);
    PointFitConfig fit_config;
    fit_config.window_lo = -config.c;
    // At the top level the limit process lives on the negative halfline, so
    // cells above zero would have expectation zero, not `rate`.
    fit_config.window_hi = top_level ? 0.0 : config.c;
    fit_config.rate = report.rate;
    fit_config.alpha = config.alpha;
    report.fit = point_process_fit(samples, fit_config);
    finish_local_report(report, samples, /*sign_gates=*/top_level);
    return report;
}

std::vector<PointSets> poisson_point_sets(double rate, double lo, double hi,
                                          std::uint32_t rows, std::uint64_t reps,
                                          std::uint64_t seed) {
    if (!(rate > 0) || !(hi > lo) || rows == 0 || reps == 0)
        throw std::invalid_argument("poisson_point_sets: bad parameters");
    // Start below lo so every gap base inside the window keeps its
    // predecessor.
    const double start = lo - 8.0 / rate;
    std::vector<PointSets> samples(reps);
    for (std::uint64_t i = 0; i < reps; ++i) {
        Rng rng = make_replicate_rng(seed, i);
        PointSets& sets = samples[i];
        sets.rows.resize(rows);
        sets.present.assign(rows, true);
        for (auto& row : sets.rows) {
            double x = start;
            for (;;) {
                double u;
                do {
                    u = uniform01(rng);
                } while (u == 0);
                x -= std::log(u) / rate;
                if (x > hi)
                    break;
                row.push_back(x);
            }
        }
    }
    return samples;
}

std::vector<PointSets> periodic_point_sets(double rate, double lo, double hi,
                                           std::uint32_t rows, std::uint64_t reps) {
    if (!(rate > 0) || !(hi > lo) || rows == 0 || reps == 0)
        throw std::invalid_argument("periodic_point_sets: bad parameters");
    const double start = lo - 8.0 / rate;
    PointSets sets;
    sets.rows.resize(rows);
    sets.present.assign(rows, true);
    for (auto& row : sets.rows)
        for (double x = start + 0.5 / rate; x <= hi; x += 1.0 / rate)
            row.push_back(x);
    return std::vector<PointSets>(reps, sets);
}

// ---------------------------------------------------------------------------
// Independence experiment.

namespace {

struct AtomCodec {
    std::uint64_t ell;
    std::uint32_t k;
    IndependenceMode mode;
    std::uint32_t halfwidth;
    std::uint32_t center;

    std::uint32_t encode(const GrowthObservation& obs) const {
        std::uint64_t code = 0;
        for (std::uint8_t label : obs.labels)
            code = code * (std::uint64_t(k) + 2) + label;
        if (mode == IndependenceMode::labels_and_rows) {
            const std::uint64_t base = 2 * std::uint64_t(halfwidth) + 1;
            for (std::uint32_t y = 0; y <= k; ++y) {
                const std::int64_t len =
                    y < obs.bottom_row_lengths.size() ? obs.bottom_row_lengths[y] : 0;
                const std::int64_t digit = std::clamp<std::int64_t>(
                    len - std::int64_t(center) + halfwidth, 0, 2 * std::int64_t(halfwidth));
                code = code * base + std::uint64_t(digit);
            }
        }
        return std::uint32_t(code);
    }
};

/// Multinomial resample with the total preserved, via sequential conditional
/// binomials over the support.
EmpiricalDistribution<std::uint32_t> resample(
    const EmpiricalDistribution<std::uint32_t>& emp, Rng& rng) {
    EmpiricalDistribution<std::uint32_t> out;
    std::uint64_t remaining = emp.total();
    double mass_left = 1.0;
    std::size_t index = 0;
    const std::size_t last = emp.counts().size() - 1;
    for (const auto& [key, count] : emp.counts()) {
        if (remaining == 0)
            break;
        std::uint64_t draw;
        if (index == last) {
            draw = remaining;
        } else {
            const double p = double(count) / double(emp.total());
            const double q = std::clamp(mass_left > 0 ? p / mass_left : 1.0, 0.0, 1.0);
            std::binomial_distribution<std::uint64_t> binomial(remaining, q);
            draw = binomial(rng);
            mass_left -= p;
        }
        if (draw > 0)
            out.add(key, draw);
        remaining -= draw;
        ++index;
    }
    return out;
}

struct BootstrapSummary {
    double se = 0;
    double lo = 0;
    double hi = 0;
};

BootstrapSummary bootstrap_tvd(const EmpiricalDistribution<std::uint32_t>& a,
                               const EmpiricalDistribution<std::uint32_t>& b,
                               std::uint64_t master, std::uint32_t rounds) {
    std::vector<double> values(rounds);
    for (std::uint32_t r = 0; r < rounds; ++r) {
        Rng rng = make_replicate_rng(master, r);
        const auto ra = resample(a, rng);
        const auto rb = resample(b, rng);
        values[r] = tvd(ra, rb);
    }
    double mean = 0;
    for (double v : values)
        mean += v;
    mean /= double(rounds);
    double var = 0;
    for (double v : values)
        var += (v - mean) * (v - mean);
    var /= double(rounds - 1);
    std::sort(values.begin(), values.end());
    BootstrapSummary out;
    out.se = std::sqrt(var);
    out.lo = values[std::size_t(0.025 * double(rounds - 1) + 0.5)];
    out.hi = values[std::size_t(0.975 * double(rounds - 1) + 0.5)];
    return out;
}

std::size_t union_support(const EmpiricalDistribution<std::uint32_t>& a,
                          const EmpiricalDistribution<std::uint32_t>& b) {
    std::size_t n = a.support_size();
    for (const auto& [key, count] : b.counts())
        if (a.counts().find(key) == a.counts().end())
            ++n;
    return n;
}

}  // namespace

TVDEstimate independence_experiment(const IndependenceConfig& config) {
    if (config.n == 0 || config.ell == 0 || config.reps == 0)
        throw std::invalid_argument(
            "independence_experiment: n, ell and reps must be positive");
    if (config.n < std::uint64_t(config.k + 1) * (config.k + 1))
        throw std::invalid_argument("independence_experiment: n must be at least (k+1)^2");
    if (config.bootstrap < 2)
        throw std::invalid_argument(
            "independence_experiment: at least two bootstrap rounds required");

    constexpr std::uint64_t kMaxAtoms = std::uint64_t(1) << 31;
    std::uint64_t label_atoms = 1;
    for (std::uint64_t j = 0; j < config.ell; ++j) {
        label_atoms *= config.k + 2;
        if (label_atoms > kMaxAtoms)
            throw capacity_error("independence_experiment: atom space too large");
    }
    std::uint64_t atom_space = label_atoms;
    if (config.mode == IndependenceMode::labels_and_rows)
        for (std::uint32_t y = 0; y <= config.k; ++y) {
            atom_space *= 2 * std::uint64_t(config.row_halfwidth) + 1;
            if (atom_space > kMaxAtoms)
                throw capacity_error("independence_experiment: atom space too large");
        }
    if (config.reps < 100 * label_atoms)
        throw capacity_error(
            "independence_experiment: reps must be at least 100 per label atom");

    AtomCodec codec;
    codec.ell = config.ell;
    codec.k = config.k;
    codec.mode = config.mode;
    codec.halfwidth = config.row_halfwidth;
    codec.center =
        std::uint32_t(std::llround(2 * std::sqrt(double(config.n + config.ell))));
    const TerminalMode terminal = config.mode == IndependenceMode::labels_and_rows
                                      ? TerminalMode::bottom_rows
                                      : TerminalMode::none;

    std::vector<std::uint32_t> side(config.reps), surrogate(config.reps),
        base_a(config.reps), base_b(config.reps);
    for_each_replicate(config.reps, config.jobs, [&](std::uint64_t i) {
        Rng rng = make_replicate_rng(config.seed, i);
        GrowthObservation obs;
        switch (config.side) {
            case IndependenceSide::growth:
                obs = grow_rsk(config.n, config.ell, config.k, rng, terminal);
                break;
            case IndependenceSide::vbar:
                obs = sample_vbar(config.n, config.ell, config.k, rng, terminal);
                break;
            case IndependenceSide::degenerate:
                obs.labels.assign(config.ell, 0);
                obs.bottom_row_lengths.assign(std::size_t(config.k) + 1, codec.center);
                break;
        }
        side[i] = codec.encode(obs);
        surrogate[i] =
            codec.encode(sample_vbar(config.n, config.ell, config.k, rng, terminal));
        base_a[i] =
            codec.encode(sample_vbar(config.n, config.ell, config.k, rng, terminal));
        base_b[i] =
            codec.encode(sample_vbar(config.n, config.ell, config.k, rng, terminal));
    });

    EmpiricalDistribution<std::uint32_t> emp_side, emp_surrogate, emp_a, emp_b;
    for (std::uint64_t i = 0; i < config.reps; ++i) {
        emp_side.add(side[i]);
        emp_surrogate.add(surrogate[i]);
        emp_a.add(base_a[i]);
        emp_b.add(base_b[i]);
    }

    TVDEstimate est;
    est.replicates = config.reps;
    est.value = tvd(emp_side, emp_surrogate);
    est.baseline = tvd(emp_a, emp_b);
    est.support = union_support(emp_side, emp_surrogate);

    const auto main_boot = bootstrap_tvd(emp_side, emp_surrogate,
                                         replicate_seed(config.seed, 0x626F6F74),
                                         config.bootstrap);
    est.bootstrap_se = main_boot.se;
    est.lo = main_boot.lo;
    est.hi = main_boot.hi;
    const auto base_boot = bootstrap_tvd(
        emp_a, emp_b, replicate_seed(config.seed, 0x62617365), config.bootstrap);
    est.baseline_se = base_boot.se;

    if (config.mode == IndependenceMode::labels) {
        // Exact surrogate label law: each of the ell labels lands on row r <= k
        // with probability 1/sqrt(n), beyond otherwise, independently.
        const double p_row = 1.0 / std::sqrt(double(config.n));
        const double p_beyond = 1.0 - double(config.k + 1) * p_row;
        std::vector<double> slot(std::size_t(config.k) + 2, p_row);
        slot.back() = p_beyond;
        std::vector<double> probs{1.0};
        for (std::uint64_t j = 0; j < config.ell; ++j) {
            std::vector<double> next;
            next.reserve(probs.size() * slot.size());
            for (double p : probs)
                for (double q : slot)
                    next.push_back(p * q);
            probs = std::move(next);
        }
        est.analytic_baseline = expected_same_law_tvd(probs, config.reps, true);
    } else {
        est.analytic_baseline = std::numeric_limits<double>::quiet_NaN();
    }
    return est;
}

// ---------------------------------------------------------------------------
// Bottom-row tail experiment.

ExpTailReport exp_tail_experiment(const ExpTailConfig& config) {
    ExpTailReport report;
    report.config = config;
    const auto samples =
        exp_tail_samples(config.n, config.reps, config.seed, config.jobs);
    report.fit = exp_tail_fit(samples, config.alpha);
    add_moment_gate(report.gates, "tail mean z", report.fit.mean, 1.0,
                    report.fit.mean_se);
    GateResult positive;
    positive.name = "all samples positive";
    positive.value = report.fit.min;
    positive.threshold = 0;
    positive.pass = report.fit.min > 0;
    report.gates.push_back(positive);
    add_p_gate(report.gates, "tail ks p", report.fit.ks_p, config.alpha);
    return report;
}

// ---------------------------------------------------------------------------
// Hammersley/RSK equivalence campaign.

HammersleyEquivReport hammersley_equiv_experiment(const HammersleyEquivConfig& config) {
    if (config.words == 0 || config.max_len == 0)
        throw std::invalid_argument(
            "hammersley_equiv_experiment: words and max_len must be positive");
    HammersleyEquivReport report;
    report.config = config;
    std::vector<Entry> word, sorted;
    for (std::uint64_t i = 0; i < config.words; ++i) {
        Rng rng = make_replicate_rng(config.seed, i);
        const auto len =
            1 + std::uint64_t(uniform01(rng) * double(config.max_len));
        for (;;) {
            word.resize(len);
            for (auto& a : word)
                a = uniform01(rng);
            sorted = word;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
                break;  // redraw the astronomically unlikely duplicate
        }
        const RskEquivalence result = check_rsk_equivalence(word, config.k);
        ++report.words_checked;
        if (!result.equal) {
            report.all_equal = false;
            report.first_failure =
                HammersleyEquivReport::Failure{i, result.first_mismatch->step,
                                               result.first_mismatch->line};
            break;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Shape-distribution cross-validation.

ShapeSamplingReport shape_sampling_experiment(const ShapeSamplingConfig& config) {
    if (config.n == 0 || config.reps == 0)
        throw std::invalid_argument(
            "shape_sampling_experiment: n and reps must be positive");
    if (config.n > 15)
        throw capacity_error("shape_sampling_experiment: shape codes need n <= 15");

    const ExactMeasure exact = plancherel_pmf(config.n, config.enum_limit);
    const std::uint64_t base = config.n + 1;
    const auto encode = [base](const std::uint32_t* rows, std::size_t count) {
        std::uint64_t code = 0;
        for (std::size_t y = count; y-- > 0;)
            code = code * base + rows[y];
        return code;
    };

    std::map<std::uint64_t, double> exact_map;
    std::vector<double> probs;
    probs.reserve(exact.size());
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const auto& rows = exact.support[i].rows;
        exact_map[encode(rows.data(), rows.size())] = exact.probability[i].get_d();
        probs.push_back(exact.probability[i].get_d());
    }

    std::vector<std::uint64_t> codes(config.reps);
    const auto k = std::uint32_t(config.n - 1);
    for_each_replicate(config.reps, config.jobs, [&](std::uint64_t i) {
        Rng rng = make_replicate_rng(config.seed, i);
        BottomRows state(k);
        for (std::uint64_t step = 0; step < config.n; ++step)
            state.insert_drawn(rng);
        std::uint64_t code = 0;
        for (std::size_t y = std::size_t(k) + 1; y-- > 0;)
            code = code * base + state.row(y).size();
        codes[i] = code;
    });

    EmpiricalDistribution<std::uint64_t> emp;
    for (std::uint64_t code : codes)
        emp.add(code);

    ShapeSamplingReport report;
    report.config = config;
    report.tvd_value = tvd(emp, exact_map);
    report.baseline = expected_same_law_tvd(probs, config.reps, /*two_sample=*/false);
    report.support = exact.size();
    return report;
}

// ---------------------------------------------------------------------------
// Exact small-n table verdict.

STableVerifyReport s_table_experiment(const STableVerifyConfig& config) {
    STableVerifyReport report;
    report.config = config;
    report.table = s_table(config.K, config.n_max, config.enum_limit);
    for (std::size_t i = 0; i < report.table.size(); ++i) {
        const STableRow& row = report.table[i];
        if (!row.monotone())
            report.all_monotone = false;
        if (!row.bound_holds())
            report.all_bounded = false;
        if (i > 0 && row.s > report.table[i - 1].s)
            report.s_decreasing = false;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Calibration campaigns.

const std::vector<std::string>& calibration_ids() {
    static const std::vector<std::string> ids{"poisson", "localQ", "localP",
                                              "exp_tail", "tvd"};
    return ids;
}

CalibrationReport calibrate(const CalibrationConfig& config) {
    if (config.campaigns == 0)
        throw std::invalid_argument("calibrate: campaigns must be positive");
    const auto& ids = calibration_ids();
    if (std::find(ids.begin(), ids.end(), config.id) == ids.end())
        throw std::invalid_argument("calibrate: unknown id '" + config.id + "'");

    CalibrationReport report;
    report.config = config;
    report.null_results.resize(config.campaigns);
    report.alt_results.resize(config.campaigns);

    for (std::uint32_t campaign = 0; campaign < config.campaigns; ++campaign) {
        const std::uint64_t seed = replicate_seed(config.seed, campaign);
        bool null_pass = false;
        bool alt_reject = false;

        if (config.id == "poisson") {
            // Null: independent labels at the limiting rates; alternative:
            // one deterministic event per period on every row.
            const std::uint64_t reps = config.reps ? config.reps : 400;
            const std::uint64_t n = 4096;
            const double c = 4;
            const std::uint32_t k = 1;
            PoissonFitConfig fit_config;
            fit_config.alpha = config.alpha;
            const auto null_paths = counting_paths_null(n, c, k, reps, seed, config.jobs);
            null_pass = poisson_process_fit(null_paths, fit_config).family_tests_pass();
            const auto alt_paths = counting_paths_periodic(n, c, k, reps);
            alt_reject =
                !poisson_process_fit(alt_paths, fit_config).family_tests_pass();
        } else if (config.id == "localQ" || config.id == "localP") {
            // Null: true Poisson point sets at the pipeline's rate (the P-side
            // pipeline runs at 1/sqrt(w); 2 stands for w = 1/4); alternative:
            // an equally spaced lattice.
            const std::uint64_t reps = config.reps ? config.reps : 400;
            const double rate = config.id == "localP" ? 2.0 : 1.0;
            PointFitConfig fit_config;
            fit_config.window_lo = -3;
            fit_config.window_hi = 3;
            fit_config.rate = rate;
            fit_config.alpha = config.alpha;
            const auto null_sets = poisson_point_sets(rate, -3, 3, 2, reps, seed);
            null_pass = point_process_fit(null_sets, fit_config).family_tests_pass();
            const auto alt_sets = periodic_point_sets(rate, -3, 3, 2, reps);
            alt_reject = !point_process_fit(alt_sets, fit_config).family_tests_pass();
        } else if (config.id == "exp_tail") {
            // Null: i.i.d. unit exponentials; alternative: a point mass.
            const std::uint64_t reps = config.reps ? config.reps : 2000;
            Rng rng(seed);
            std::vector<double> null_samples(reps);
            for (auto& v : null_samples) {
                double u;
                do {
                    u = uniform01(rng);
                } while (u == 0);
                v = -std::log(u);
            }
            null_pass = exp_tail_fit(null_samples, config.alpha).pass();
            const std::vector<double> alt_samples(reps, 1.0);
            alt_reject = !exp_tail_fit(alt_samples, config.alpha).pass();
        } else {
            // Null: both sides drawn from the surrogate law; alternative: a
            // point mass on one label word.
            IndependenceConfig ic;
            ic.n = 2500;
            ic.ell = 3;
            ic.k = 1;
            ic.reps = config.reps ? config.reps : 20000;
            ic.seed = seed;
            ic.jobs = config.jobs;
            ic.side = IndependenceSide::vbar;
            null_pass = independence_experiment(ic).same_law_consistent();
            ic.side = IndependenceSide::degenerate;
            alt_reject = !independence_experiment(ic).same_law_consistent();
        }

        report.null_results[campaign] = null_pass;
        report.alt_results[campaign] = alt_reject;
        if (null_pass)
            ++report.null_passes;
        if (alt_reject)
            ++report.alt_rejections;
    }
    return report;
}

}  // namespace rsklab
