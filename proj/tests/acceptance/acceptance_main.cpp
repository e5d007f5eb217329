// Acceptance suite: ten numbered criteria, one [PASS]/[FAIL] line each.
// Run all (default) or a single one with --criterion N.
#include <CLI11.hpp>

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rsklab/plancherel.hpp"
#include "rsklab/rng.hpp"
#include "rsklab/stats.hpp"
#include "rsklab/tableau.hpp"
#include "rsklab/verify.hpp"
#include "rsklab/young.hpp"

using namespace rsklab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const GateResult* find_gate(const std::vector<GateResult>& gates, const std::string& name) {
    for (const auto& g : gates)
        if (g.name == name) return &g;
    return nullptr;
}

std::string failing_gates(const std::vector<GateResult>& gates) {
    std::size_t failed = 0;
    const GateResult* worst = nullptr;
    for (const auto& g : gates) {
        if (g.pass) continue;
        ++failed;
        if (!worst || std::abs(g.value) > std::abs(worst->value)) worst = &g;
    }
    std::ostringstream out;
    out << failed << "/" << gates.size() << " gates outside tolerance";
    if (worst) out << " (worst: " << worst->name << " = " << worst->value << ")";
    return std::move(out).str();
}

// ---------------------------------------------------------------------------
// 1. Exact RSK/Plancherel oracle on full permutation groups.

Outcome criterion1() {
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<double> word(n);
        for (std::size_t i = 0; i < n; ++i) word[i] = double(i + 1);

        std::map<std::vector<std::uint32_t>, BigInt> shape_counts;
        std::set<std::string> pairs;
        std::uint64_t total = 0;
        do {
            const RskResult result = rsk(word);
            shape_counts[result.shape().rows] += 1;
            std::ostringstream key;
            for (const auto& row : result.P.rows()) {
                for (double v : row) key << v << ' ';
                key << '/';
            }
            key << '|';
            for (const auto& row : result.Q.rows()) {
                for (std::uint64_t v : row) key << v << ' ';
                key << '/';
            }
            pairs.insert(std::move(key).str());
            ++total;
        } while (std::next_permutation(word.begin(), word.end()));

        if (pairs.size() != total)
            return {false, "duplicate (P,Q) pairs at n=" + std::to_string(n)};

        const ExactMeasure pmf = plancherel_pmf(n);
        if (pmf.size() != shape_counts.size())
            return {false, "shape support mismatch at n=" + std::to_string(n)};
        for (const YoungDiagram& shape : pmf.support) {
            const BigInt expected = dimension(shape) * dimension(shape);
            const auto it = shape_counts.find(shape.rows);
            if (it == shape_counts.end() || it->second != expected)
                return {false, "shape count != d^2 at n=" + std::to_string(n)};
        }
    }

    for (std::size_t n = 1; n <= 12; ++n) {
        BigRat sum = 0;
        for (const BigRat& p : plancherel_pmf(n).probability) sum += p;
        if (sum != 1)
            return {false, "sum d^2 != n! at n=" + std::to_string(n)};
    }
    return {true, "shape law = d^2/n! and all (P,Q) distinct for n<=6; sum d^2 = n! for n<=12"};
}

// ---------------------------------------------------------------------------
// 2. Sampler vs exact Plancherel law at n = 8.

Outcome criterion2() {
    ShapeSamplingConfig config;  // n = 8, 10^6 replicates
    const ShapeSamplingReport report = shape_sampling_experiment(config);
    std::ostringstream out;
    out << "tvd=" << report.tvd_value << " vs 0.005 and 3*baseline="
        << 3 * report.baseline << ", support=" << report.support;
    return {report.pass(), std::move(out).str()};
}

// ---------------------------------------------------------------------------
// 3. Multi-line Hammersley lines = insertion rows at every step.

Outcome criterion3() {
    HammersleyEquivConfig config;  // 1000 words, len <= 200, k = 3
    const HammersleyEquivReport report = hammersley_equiv_experiment(config);
    std::ostringstream out;
    if (report.all_equal) {
        out << report.words_checked << "/" << config.words
            << " words equal on lines 0..3 at every step";
    } else if (report.first_failure) {
        out << "mismatch at word " << report.first_failure->word_index << ", step "
            << report.first_failure->step << ", line " << report.first_failure->line;
    }
    return {report.pass(), std::move(out).str()};
}

// ---------------------------------------------------------------------------
// 4. Truncated insertion tracks full-insertion rows 0..k exactly.

Outcome criterion4() {
    const std::uint64_t words = 10000;
    for (std::uint64_t i = 0; i < words; ++i) {
        Rng rng = make_replicate_rng(7, i);
        const auto len = std::uint64_t(1 + uniform01(rng) * 120);
        const auto k = std::uint32_t(i % 4);

        Tableau full;
        BottomRows truncated(k);
        std::set<double> seen;
        for (std::uint64_t step = 0; step < len; ++step) {
            double a = uniform01(rng);
            while (!seen.insert(a).second) a = uniform01(rng);

            const BumpingRoute route = full.insert(a);
            const std::uint32_t label = truncated.insert(a);
            const std::uint32_t expected =
                route.final_row() > k ? BottomRows::beyond
                                      : std::uint32_t(route.final_row());
            if (label != expected)
                return {false, "label mismatch at word " + std::to_string(i)};
            for (std::uint32_t y = 0; y <= k; ++y) {
                const bool have = y < full.row_count();
                const bool equal = have ? truncated.row(y) == full.row(y)
                                        : truncated.row(y).empty();
                if (!equal)
                    return {false, "row " + std::to_string(y) + " diverged at word " +
                                       std::to_string(i)};
            }
        }
    }
    return {true, "rows 0..k identical after every step across 10000 words (k = 0..3)"};
}

// ---------------------------------------------------------------------------
// 5. Exact s-table: decreasing s_n and the (K+1)/sqrt(n) bound.

Outcome criterion5() {
    for (std::size_t K = 0; K <= 3; ++K) {
        STableVerifyConfig config;
        config.K = K;
        config.n_max = 40;
        const STableVerifyReport report = s_table_experiment(config);
        if (!report.pass()) {
            std::ostringstream out;
            out << "K=" << K << ": monotone=" << report.all_monotone
                << " bounded=" << report.all_bounded
                << " decreasing=" << report.s_decreasing;
            return {false, std::move(out).str()};
        }
    }
    return {true, "exact rational checks hold for K<=3, n<=40 (zero tolerance)"};
}

// ---------------------------------------------------------------------------
// 6. Poisson limit of the counting paths at n = 10^4.

Outcome criterion6() {
    PoissonVerifyConfig config;  // n = 10^4, k = 2, c = 5, 2000 replicates
    const PoissonVerifyReport report = poisson_experiment(config);
    std::ostringstream out;
    if (report.pass())
        out << "all " << report.gates.size() << " moment/test/covariance gates hold";
    else
        out << failing_gates(report.gates);
    return {report.pass(), std::move(out).str()};
}

// ---------------------------------------------------------------------------
// 7. Local insertion-tableau point process at levels w = 0.25 and w = 1.

Outcome criterion7() {
    LocalConfig config;  // n = 10^4, c = 3, 500 replicates
    config.w = 0.25;
    const LocalReport bulk = local_p_experiment(config);
    config.w = 1.0;
    const LocalReport edge = local_p_experiment(config);

    const GateResult* bulk_gap = find_gate(bulk.gates, "row 0 gap mean relative error");
    const GateResult* edge_gap = find_gate(edge.gates, "row 0 gap mean relative error");
    const GateResult* sign = find_gate(edge.gates, "points above the level");
    const GateResult* ks = find_gate(edge.gates, "row 0 spacing ks p (unadjusted)");
    const bool pass = bulk_gap && bulk_gap->pass && edge_gap && edge_gap->pass &&
                      sign && sign->pass && ks && ks->pass;

    std::ostringstream out;
    out << "gap means " << bulk.fit.rows[0].gap_mean << " vs 0.5 and "
        << edge.fit.rows[0].gap_mean << " vs 1.0 (5%); points above level: "
        << edge.points_above_zero << "; edge gap ks p=" << edge.fit.rows[0].ks_p;
    return {pass, std::move(out).str()};
}

// ---------------------------------------------------------------------------
// 8. Exponential tail of the last bottom-row entry.

Outcome criterion8() {
    ExpTailConfig config;  // n = 10^4, 2000 replicates
    const ExpTailReport report = exp_tail_experiment(config);
    std::ostringstream out;
    out << "mean=" << report.fit.mean << " (se " << report.fit.mean_se
        << "), min=" << report.fit.min << ", ks p=" << report.fit.ks_p;
    if (!report.pass()) out << "; " << failing_gates(report.gates);
    return {report.pass(), std::move(out).str()};
}

// ---------------------------------------------------------------------------
// 9. Label-marginal TVD shrinks in n and stays under the absolute bound.

Outcome criterion9() {
    IndependenceConfig config;  // ell = 3, k = 1, 10^6 replicates
    config.n = 400;
    const TVDEstimate small_n = independence_experiment(config);
    config.n = 10000;
    const TVDEstimate large_n = independence_experiment(config);

    const double margin = std::isfinite(large_n.analytic_baseline)
                              ? large_n.analytic_baseline
                              : large_n.baseline;
    const bool shrinks = large_n.value < small_n.value;
    const bool bounded = large_n.value < 0.02 + margin;

    std::ostringstream out;
    out << "tvd(n=10^4)=" << large_n.value << " vs tvd(n=400)=" << small_n.value
        << ", bound=" << 0.02 + margin;
    return {shrinks && bounded, std::move(out).str()};
}

// ---------------------------------------------------------------------------
// 10. Every statistical pipeline calibrates on its own null model.

Outcome criterion10() {
    std::ostringstream out;
    bool all = true;
    for (const std::string& id : calibration_ids()) {
        CalibrationConfig config;
        config.id = id;
        config.campaigns = 100;
        const CalibrationReport report = calibrate(config);
        if (!out.view().empty()) out << ", ";
        out << id << " " << report.null_passes << "/100 null, " << report.alt_rejections
            << "/100 alt";
        all = all && report.pass();
    }
    return {all, std::move(out).str()};
}

using CriterionFn = Outcome (*)();

struct Criterion {
    int number;
    const char* title;
    CriterionFn run;
};

constexpr Criterion kCriteria[] = {
    {1, "exact RSK/Plancherel oracle", criterion1},
    {2, "sampler vs exact shape law", criterion2},
    {3, "Hammersley lines = insertion rows", criterion3},
    {4, "truncated insertion equivalence", criterion4},
    {5, "exact s-table bounds", criterion5},
    {6, "Poisson limit of counting paths", criterion6},
    {7, "local insertion point process", criterion7},
    {8, "exponential tail of the bottom row", criterion8},
    {9, "independence TVD trend", criterion9},
    {10, "statistical calibration", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rsklab acceptance criteria"};
    int selected = 0;
    app.add_option("--criterion", selected, "Run a single criterion (1..10); 0 = all")
        ->check(CLI::Range(0, 10));
    CLI11_PARSE(app, argc, argv);

    bool all_pass = true;
    for (const Criterion& criterion : kCriteria) {
        if (selected != 0 && criterion.number != selected)
            continue;
        const Outcome outcome = criterion.run();
        std::printf("[%s] C%d %s — %s\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.number, criterion.title, outcome.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
