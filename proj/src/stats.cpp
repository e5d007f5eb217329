#include "rsklab/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "rsklab/parallel.hpp"

namespace rsklab {

// ---------------------------------------------------------------------------
// Tail probabilities.

double chi_squared_sf(double x, double df) {
    if (x <= 0)
        return 1.0;
    return boost::math::gamma_q(df / 2, x / 2);
}

double kolmogorov_sf(double lambda) {
    if (lambda <= 0)
        return 1.0;
    if (lambda < 0.755) {
        // Jacobi-theta form of the CDF converges fast for small lambda.
        const double a = M_PI * M_PI / (8 * lambda * lambda);
        double cdf = 0;
        for (int j = 1; j <= 9; j += 2)
            cdf += std::exp(-double(j) * double(j) * a);
        cdf *= std::sqrt(2 * M_PI) / lambda;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sf = 0;
    double sign = 1;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sf += sign * term;
        sign = -sign;
        if (term < 1e-16)
            break;
    }
    return std::clamp(2 * sf, 0.0, 1.0);
}

double ks_p_value(double d, std::uint64_t n) {
    if (d <= 0 || n == 0)
        return 1.0;
    const double s = std::sqrt(double(n));
    return kolmogorov_sf(d * (s + 0.12 + 0.11 / s));
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double expected_same_law_tvd(std::span<const double> probs, std::uint64_t reps,
                             bool two_sample) {
    if (reps == 0)
        throw std::invalid_argument("expected_same_law_tvd: reps must be positive");
    const double factor = two_sample ? 2.0 : 1.0;
    double sum = 0;
    for (double p : probs) {
        if (p < 0 || p > 1)
            throw std::invalid_argument("expected_same_law_tvd: probability out of range");
        const double sd = std::sqrt(factor * p * (1 - p) / double(reps));
        sum += sd * std::sqrt(2.0 / M_PI);
    }
    return sum / 2;
}

// ---------------------------------------------------------------------------
// Counting paths.

std::vector<std::int64_t> CountingPath::value_at(std::int64_t j) const {
    if (j < -grid_max || j > grid_max)
        throw std::invalid_argument("CountingPath::value_at: grid index out of range");
    std::vector<std::int64_t> value(k + 1, 0);
    if (j > 0) {
        for (std::int64_t step = 1; step <= j; ++step) {
            const std::uint8_t r = labels[std::size_t(step + grid_max - 1)];
            if (r <= k)
                ++value[r];
        }
    } else if (j < 0) {
        for (std::int64_t step = j + 1; step <= 0; ++step) {
            const std::uint8_t r = labels[std::size_t(step + grid_max - 1)];
            if (r <= k)
                --value[r];
        }
    }
    return value;
}

std::vector<std::vector<double>> CountingPath::event_times(Rng* jitter) const {
    std::vector<std::vector<double>> times(k + 1);
    const double s = sqrt_n();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const std::uint8_t r = labels[i];
        if (r > k)
            continue;
        const std::int64_t j = std::int64_t(i) - grid_max + 1;
        const double u = jitter ? uniform01(*jitter) : 0.0;
        times[r].push_back((double(j) - 1 + u) / s);
    }
    return times;
}

std::vector<std::vector<std::uint64_t>> CountingPath::window_counts() const {
    const std::size_t windows = std::size_t(std::llround(2 * c));
    std::vector<std::vector<std::uint64_t>> counts(k + 1,
                                                   std::vector<std::uint64_t>(windows, 0));
    const double s = sqrt_n();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const std::uint8_t r = labels[i];
        if (r > k)
            continue;
        const std::int64_t j = std::int64_t(i) - grid_max + 1;
        // Window (w - c, w - c + 1]; the ceil lands exact grid hits on the
        // closed upper end.
        const double t = double(j) / s;
        auto w = std::int64_t(std::ceil(t + c)) - 1;
        w = std::clamp<std::int64_t>(w, 0, std::int64_t(windows) - 1);
        ++counts[r][std::size_t(w)];
    }
    return counts;
}

namespace {

std::int64_t checked_grid_max(std::uint64_t n, double c) {
    if (!(c >= 1) || std::floor(c) != c)
        throw std::invalid_argument("counting_paths: c must be a positive integer value");
    const auto m = std::int64_t(std::floor(c * std::sqrt(double(n))));
    if (m < 1 || std::uint64_t(m) >= n)
        throw std::invalid_argument("counting_paths: window exceeds the process length");
    return m;
}

}  // namespace

std::vector<CountingPath> counting_paths(std::uint64_t n, double c, std::uint32_t k,
                                         std::uint64_t reps, std::uint64_t seed,
                                         unsigned jobs) {
    const std::int64_t m = checked_grid_max(n, c);
    std::vector<CountingPath> paths(reps);
    for_each_replicate(reps, jobs, [&](std::uint64_t i) {
        Rng rng = make_replicate_rng(seed, i);
        BottomRows state(k);
        const std::uint64_t burn = n - std::uint64_t(m);
        for (std::uint64_t s = 0; s < burn; ++s)
            state.insert_drawn(rng);
        CountingPath& path = paths[i];
        path.n = n;
        path.k = k;
        path.c = c;
        path.grid_max = m;
        path.labels.resize(std::size_t(2 * m));
        for (std::size_t s = 0; s < path.labels.size(); ++s) {
            const std::uint32_t row = state.insert_drawn(rng);
            path.labels[s] = std::uint8_t(row <= k ? row : k + 1);
        }
    });
    return paths;
}

std::vector<CountingPath> counting_paths_null(std::uint64_t n, double c, std::uint32_t k,
                                              std::uint64_t reps, std::uint64_t seed,
                                              unsigned jobs) {
    const std::int64_t m = checked_grid_max(n, c);
    const double s = std::sqrt(double(n));
    std::vector<CountingPath> paths(reps);
    for_each_replicate(reps, jobs, [&](std::uint64_t i) {
        Rng rng = make_replicate_rng(seed, i);
        CountingPath& path = paths[i];
        path.n = n;
        path.k = k;
        path.c = c;
        path.grid_max = m;
        path.labels.resize(std::size_t(2 * m));
        for (auto& label : path.labels) {
            const auto idx = std::uint64_t(uniform01(rng) * s);
            label = std::uint8_t(idx <= k ? idx : k + 1);
        }
    });
    return paths;
}

std::vector<CountingPath> counting_paths_periodic(std::uint64_t n, double c,
                                                  std::uint32_t k, std::uint64_t reps) {
    const std::int64_t m = checked_grid_max(n, c);
    const auto period = std::int64_t(std::llround(std::sqrt(double(n))));
    std::vector<CountingPath> paths(reps);
    for (auto& path : paths) {
        path.n = n;
        path.k = k;
        path.c = c;
        path.grid_max = m;
        path.labels.assign(std::size_t(2 * m), std::uint8_t(k + 1));
        for (std::uint32_t r = 0; r <= k; ++r) {
            const std::int64_t offset = std::int64_t(r) * period / std::int64_t(k + 1);
            for (std::size_t i = 0; i < path.labels.size(); ++i) {
                const std::int64_t j = std::int64_t(i) - m + 1;
                if (((j - offset) % period + period) % period == 0 &&
                    path.labels[i] == k + 1)
                    path.labels[i] = std::uint8_t(r);
            }
        }
    }
    return paths;
}

// ---------------------------------------------------------------------------
// Rescaled local point sets.

PointSets rescaled_q_sets(const RecordingTableau& Q, std::uint64_t n, std::uint32_t k) {
    if (n == 0)
        throw std::invalid_argument("rescaled_q_sets: n must be positive");
    PointSets sets;
    sets.rows.resize(k + 1);
    sets.present.assign(k + 1, false);
    const double s = std::sqrt(double(n));
    for (std::uint32_t y = 0; y <= k; ++y) {
        if (y >= Q.row_count())
            continue;
        sets.present[y] = true;
        sets.rows[y].reserve(Q.row(y).size());
        for (std::uint64_t entry : Q.row(y))
            sets.rows[y].push_back((double(entry) - double(n)) / s);
    }
    return sets;
}

PointSets rescaled_p_sets(const Tableau& P, double w, std::uint64_t n, std::uint32_t k) {
    if (!(w > 0) || w > 1)
        throw std::invalid_argument("rescaled_p_sets: w must lie in (0, 1]");
    if (n == 0)
        throw std::invalid_argument("rescaled_p_sets: n must be positive");
    PointSets sets;
    sets.rows.resize(k + 1);
    sets.present.assign(k + 1, false);
    const double s = std::sqrt(double(n));
    for (std::uint32_t y = 0; y <= k; ++y) {
        if (y >= P.row_count())
            continue;
        sets.present[y] = true;
        sets.rows[y].reserve(P.row(y).size());
        for (Entry v : P.row(y))
            sets.rows[y].push_back(s * (v - w));
    }
    return sets;
}

// ---------------------------------------------------------------------------
// Poisson goodness of fit.

bool PointFitReport::family_tests_pass() const {
    if (rows.empty())
        return false;
    const double threshold = alpha / double(test_count());
    for (const RowFit& row : rows)
        if (row.chi2_p < threshold || row.ks_p < threshold)
            return false;
    return true;
}

bool PointFitReport::moments_pass(double z) const {
    for (const RowFit& row : rows) {
        if (std::abs(row.count_mean - rate) > z * row.count_mean_se)
            return false;
        if (std::abs(row.count_var - rate) > z * row.count_var_se)
            return false;
    }
    for (const CrossFit& pair : cross)
        if (std::abs(pair.covariance) > z * pair.se)
            return false;
    return true;
}

namespace {

struct ChiSquare {
    double stat = 0;
    std::uint32_t df = 0;
    double p = 1;
};

// Chi-square of an observed count histogram against Poisson(rate), merging
// bins from both ends until every expected count reaches min_expected.
ChiSquare poisson_chi_square(const std::vector<std::uint64_t>& histogram,
                             std::uint64_t total, double rate, double min_expected) {
    ChiSquare out;
    if (total == 0 || rate <= 0)
        return out;
    // Expected bin masses: Poisson pmf on 0..H-1 plus the upper tail.
    const std::size_t h = histogram.size();
    std::vector<double> expected(h + 1, 0.0);
    double pmf = std::exp(-rate);
    double cdf = 0;
    for (std::size_t i = 0; i < h; ++i) {
        expected[i] = pmf * double(total);
        cdf += pmf;
        pmf *= rate / double(i + 1);
    }
    expected[h] = std::max(0.0, 1.0 - cdf) * double(total);
    std::vector<double> observed(histogram.begin(), histogram.end());
    observed.push_back(0);

    // Merge the sparse tail downwards, then the sparse head upwards.
    while (expected.size() > 1 && expected.back() < min_expected) {
        expected[expected.size() - 2] += expected.back();
        observed[observed.size() - 2] += observed.back();
        expected.pop_back();
        observed.pop_back();
    }
    while (expected.size() > 1 && expected.front() < min_expected) {
        expected[1] += expected[0];
        observed[1] += observed[0];
        expected.erase(expected.begin());
        observed.erase(observed.begin());
    }
    if (expected.size() < 2)
        return out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const double diff = observed[i] - expected[i];
        out.stat += diff * diff / expected[i];
    }
    out.df = std::uint32_t(expected.size() - 1);
    out.p = chi_squared_sf(out.stat, out.df);
    return out;
}

struct KsResult {
    double stat = 0;
    double p = 1;
};

// KS against Exp(rate); consumes the sample order.
KsResult exponential_ks(std::vector<double>& sample, double rate) {
    KsResult out;
    if (sample.empty())
        return out;
    std::sort(sample.begin(), sample.end());
    const auto n = double(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = 1.0 - std::exp(-rate * sample[i]);
        out.stat = std::max(out.stat, double(i + 1) / n - f);
        out.stat = std::max(out.stat, f - double(i) / n);
    }
    out.p = ks_p_value(out.stat, sample.size());
    return out;
}

}  // namespace

PointFitReport point_process_fit(const std::vector<PointSets>& samples,
                                 const PointFitConfig& config) {
    if (samples.size() < 100)
        throw capacity_error("point_process_fit: at least 100 replicates required");
    const double length = config.window_hi - config.window_lo;
    const auto windows = std::int64_t(std::llround(length));
    if (windows < 1 || std::abs(length - double(windows)) > 1e-9)
        throw std::invalid_argument("point_process_fit: window length must be a positive integer");
    if (!(config.rate > 0))
        throw std::invalid_argument("point_process_fit: rate must be positive");
    const std::size_t row_count = samples.front().rows.size();
    for (const PointSets& sets : samples)
        if (sets.rows.size() != row_count || sets.present.size() != row_count)
            throw std::invalid_argument("point_process_fit: inconsistent row counts");

    const std::size_t reps = samples.size();
    const auto w_count = std::size_t(windows);
    const double gap_lo =
        std::isnan(config.gap_base_lo) ? config.window_lo : config.gap_base_lo;
    if (gap_lo < config.window_lo)
        throw std::invalid_argument("point_process_fit: gap base window exceeds the cell window");
    // cells[(rep * row_count + row) * w_count + window]
    std::vector<std::uint32_t> cells(reps * row_count * w_count, 0);
    std::vector<std::uint8_t> present(reps * row_count, 0);
    std::vector<std::vector<double>> gaps(row_count);

    for (std::size_t rep = 0; rep < reps; ++rep) {
        const PointSets& sets = samples[rep];
        for (std::size_t r = 0; r < row_count; ++r) {
            if (!sets.present[r])
                continue;
            present[rep * row_count + r] = 1;
            std::vector<double> pts = sets.rows[r];
            if (!std::is_sorted(pts.begin(), pts.end()))
                std::sort(pts.begin(), pts.end());
            std::uint32_t* cell = &cells[(rep * row_count + r) * w_count];
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double x = pts[i];
                if (x > config.window_lo && x <= config.window_hi) {
                    auto w = std::int64_t(std::ceil(x - config.window_lo)) - 1;
                    w = std::clamp<std::int64_t>(w, 0, windows - 1);
                    ++cell[std::size_t(w)];
                }
                // Backward gap from a base point in the gap window to its
                // predecessor, which may lie below it.  Anchoring gaps at
                // their upper end keeps them unbiased when the data has a
                // hard right edge (conditioning a base on having a successor
                // under-samples long gaps there).
                if (x > gap_lo && x <= config.window_hi && i >= 1)
                    gaps[r].push_back(x - pts[i - 1]);
            }
        }
    }

    PointFitReport report;
    report.rate = config.rate;
    report.alpha = config.alpha;
    report.window_lo = config.window_lo;
    report.window_hi = config.window_hi;
    report.replicates = reps;

    for (std::size_t r = 0; r < row_count; ++r) {
        RowFit fit;
        fit.row = std::uint32_t(r);
        double sum = 0, sum2 = 0;
        std::vector<std::uint64_t> histogram;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            if (!present[rep * row_count + r])
                continue;
            const std::uint32_t* cell = &cells[(rep * row_count + r) * w_count];
            for (std::size_t w = 0; w < w_count; ++w) {
                const double v = cell[w];
                ++fit.cells;
                fit.events += cell[w];
                sum += v;
                sum2 += v * v;
                if (histogram.size() <= cell[w])
                    histogram.resize(cell[w] + 1, 0);
                ++histogram[cell[w]];
            }
        }
        if (fit.cells >= 2) {
            const auto n = double(fit.cells);
            fit.count_mean = sum / n;
            fit.count_var = (sum2 - n * fit.count_mean * fit.count_mean) / (n - 1);
            fit.count_mean_se = std::sqrt(std::max(fit.count_var, 0.0) / n);
            double m4 = 0;
            for (std::size_t rep = 0; rep < reps; ++rep) {
                if (!present[rep * row_count + r])
                    continue;
                const std::uint32_t* cell = &cells[(rep * row_count + r) * w_count];
                for (std::size_t w = 0; w < w_count; ++w) {
                    const double d = double(cell[w]) - fit.count_mean;
                    m4 += d * d * d * d;
                }
            }
            m4 /= n;
            fit.count_var_se =
                std::sqrt(std::max(m4 - fit.count_var * fit.count_var, 0.0) / n);
            const ChiSquare chi2 =
                poisson_chi_square(histogram, fit.cells, config.rate, config.min_expected);
            fit.chi2_stat = chi2.stat;
            fit.chi2_df = chi2.df;
            fit.chi2_p = chi2.p;
        }
        fit.count_histogram = std::move(histogram);
        fit.gap_count = gaps[r].size();
        if (fit.gap_count > 0) {
            double gsum = 0, gsum2 = 0;
            for (double g : gaps[r]) {
                gsum += g;
                gsum2 += g * g;
            }
            const auto gn = double(fit.gap_count);
            fit.gap_mean = gsum / gn;
            const double gvar =
                fit.gap_count > 1 ? (gsum2 - gn * fit.gap_mean * fit.gap_mean) / (gn - 1) : 0;
            fit.gap_mean_se = std::sqrt(std::max(gvar, 0.0) / gn);
            const KsResult ks = exponential_ks(gaps[r], config.rate);
            fit.ks_stat = ks.stat;
            fit.ks_p = ks.p;
        }
        report.rows.push_back(fit);
    }

    for (std::size_t a = 0; a < row_count; ++a) {
        for (std::size_t b = a + 1; b < row_count; ++b) {
            CrossFit pair;
            pair.row_a = std::uint32_t(a);
            pair.row_b = std::uint32_t(b);
            double sa = 0, sb = 0;
            std::uint64_t joint = 0;
            for (std::size_t rep = 0; rep < reps; ++rep) {
                if (!present[rep * row_count + a] || !present[rep * row_count + b])
                    continue;
                const std::uint32_t* ca = &cells[(rep * row_count + a) * w_count];
                const std::uint32_t* cb = &cells[(rep * row_count + b) * w_count];
                for (std::size_t w = 0; w < w_count; ++w) {
                    sa += ca[w];
                    sb += cb[w];
                    ++joint;
                }
            }
            if (joint < 2) {
                report.cross.push_back(pair);
                continue;
            }
            const double ma = sa / double(joint);
            const double mb = sb / double(joint);
            double sp = 0, sp2 = 0;
            for (std::size_t rep = 0; rep < reps; ++rep) {
                if (!present[rep * row_count + a] || !present[rep * row_count + b])
                    continue;
                const std::uint32_t* ca = &cells[(rep * row_count + a) * w_count];
                const std::uint32_t* cb = &cells[(rep * row_count + b) * w_count];
                for (std::size_t w = 0; w < w_count; ++w) {
                    const double prod = (double(ca[w]) - ma) * (double(cb[w]) - mb);
                    sp += prod;
                    sp2 += prod * prod;
                }
            }
            pair.covariance = sp / double(joint);
            const double pvar =
                (sp2 - double(joint) * pair.covariance * pair.covariance) / double(joint - 1);
            pair.se = std::sqrt(std::max(pvar, 0.0) / double(joint));
            report.cross.push_back(pair);
        }
    }
    return report;
}

PointFitReport poisson_process_fit(const std::vector<CountingPath>& paths,
                                   const PoissonFitConfig& config) {
    if (paths.size() < 100)
        throw capacity_error("poisson_process_fit: at least 100 replicates required");
    const CountingPath& first = paths.front();
    for (const CountingPath& path : paths)
        if (path.n != first.n || path.k != first.k || path.c != first.c)
            throw std::invalid_argument("poisson_process_fit: mixed path parameters");

    std::vector<PointSets> samples;
    samples.reserve(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        PointSets sets;
        if (config.dequantize) {
            Rng jitter = make_replicate_rng(config.jitter_seed, i);
            sets.rows = paths[i].event_times(&jitter);
        } else {
            sets.rows = paths[i].event_times();
        }
        sets.present.assign(sets.rows.size(), true);
        samples.push_back(std::move(sets));
    }
    PointFitConfig inner;
    inner.window_lo = -first.c;
    inner.window_hi = first.c;
    inner.rate = config.rate;
    inner.alpha = config.alpha;
    inner.min_expected = config.min_expected;
    // Path events start at -c, so a base near that edge would find its
    // predecessor only when the gap is short.  Reserve a predecessor margin
    // covering the exponential tail; a window too small for the margin gets
    // no gap analysis rather than a biased one.
    inner.gap_base_lo = -first.c + 7.0 / config.rate;
    return point_process_fit(samples, inner);
}

// ---------------------------------------------------------------------------
// Bottom-row tail statistic.

TailFitReport exp_tail_fit(std::span<const double> samples, double alpha) {
    if (samples.size() < 2)
        throw std::invalid_argument("exp_tail_fit: need at least two samples");
    TailFitReport report;
    report.alpha = alpha;
    report.count = samples.size();
    std::vector<double> sorted(samples.begin(), samples.end());
    double sum = 0;
    for (double v : sorted)
        sum += v;
    const auto n = double(sorted.size());
    report.mean = sum / n;
    double var = 0;
    for (double v : sorted)
        var += (v - report.mean) * (v - report.mean);
    var /= n - 1;
    report.mean_se = std::sqrt(var / n);
    const KsResult ks = exponential_ks(sorted, 1.0);
    report.min = sorted.front();
    report.ks_stat = ks.stat;
    report.ks_p = ks.p;
    return report;
}

std::vector<double> exp_tail_samples(std::uint64_t n, std::uint64_t reps,
                                     std::uint64_t seed, unsigned jobs) {
    if (n == 0 || reps == 0)
        throw std::invalid_argument("exp_tail_samples: n and reps must be positive");
    std::vector<double> samples(reps);
    const double s = std::sqrt(double(n));
    for_each_replicate(reps, jobs, [&](std::uint64_t i) {
        Rng rng = make_replicate_rng(seed, i);
        BottomRows state(0);
        for (std::uint64_t step = 0; step < n; ++step)
            state.insert_drawn(rng);
        samples[i] = s * (1.0 - state.row(0).back());
    });
    return samples;
}

// ---------------------------------------------------------------------------
// Order-statistics diagnostic.

OrderStatReport order_stat_diag(std::uint64_t n, double w, Rng& rng) {
    if (n < 4)
        throw std::invalid_argument("order_stat_diag: n too small");
    if (!(w > 0) || !(w < 1))
        throw std::invalid_argument("order_stat_diag: w must lie in (0, 1)");
    std::vector<double> xi(n);
    for (double& v : xi)
        v = uniform01(rng);
    std::sort(xi.begin(), xi.end());

    OrderStatReport report;
    report.n = n;
    report.w = w;
    const double s = std::sqrt(double(n));
    report.m = std::uint64_t(std::lower_bound(xi.begin(), xi.end(), w) - xi.begin());
    const auto center = std::int64_t(report.m);
    const auto halfwidth = std::int64_t(std::floor(3 * s));
    report.window_lo = std::uint64_t(std::max<std::int64_t>(1, center - halfwidth));
    report.window_hi = std::uint64_t(std::min<std::int64_t>(std::int64_t(n), center + halfwidth));
    for (std::uint64_t j = report.window_lo; j <= report.window_hi; ++j) {
        const double dev =
            (xi[j - 1] - w) * s - double(std::int64_t(j) - center) / s;
        report.max_abs_dev = std::max(report.max_abs_dev, std::abs(dev));
        if (std::int64_t(j) == center)
            report.stat_at_m = (xi[j - 1] - w) * s;
    }
    report.j0 = std::clamp<std::uint64_t>(std::uint64_t(std::llround(double(n) * w)), 1, n);
    report.xi_j0 = xi[report.j0 - 1];
    return report;
}

}  // namespace rsklab
