#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rsklab/verify.hpp"
#include "rsklab/young.hpp"

using namespace rsklab;

TEST_CASE("poisson point sets respect rate, margin and determinism") {
    const auto sets = poisson_point_sets(2.0, -3, 3, 2, 300, 99);
    REQUIRE(sets.size() == 300);

    double in_window = 0;
    std::uint64_t beyond = 0;
    for (const auto& sample : sets) {
        REQUIRE(sample.rows.size() == 2);
        CHECK(sample.present[0]);
        CHECK(sample.present[1]);
        for (const auto& row : sample.rows) {
            CHECK(std::is_sorted(row.begin(), row.end()));
            for (double x : row) {
                CHECK(x <= 3);
                if (x > -3)
                    ++in_window;
                else
                    ++beyond;
            }
        }
    }
    // 2 rows * 6 units * rate 2 = 24 expected points per replicate.
    const double mean = in_window / 300.0;
    CHECK(mean == doctest::Approx(24.0).epsilon(0.03));
    // The predecessor margin keeps data below the window on essentially every row.
    CHECK(beyond > 4 * 300);

    const auto again = poisson_point_sets(2.0, -3, 3, 2, 300, 99);
    CHECK(again[17].rows[1] == sets[17].rows[1]);
    const auto other = poisson_point_sets(2.0, -3, 3, 2, 300, 100);
    CHECK(other[17].rows[1] != sets[17].rows[1]);

    CHECK_THROWS_AS(poisson_point_sets(0.0, -3, 3, 1, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(poisson_point_sets(1.0, 3, -3, 1, 10, 1), std::invalid_argument);
}

TEST_CASE("periodic point sets put an exact count in every unit cell") {
    const auto sets = periodic_point_sets(2.0, -2, 2, 1, 5);
    REQUIRE(sets.size() == 5);
    for (const auto& sample : sets) {
        std::vector<int> counts(4, 0);
        for (double x : sample.rows[0])
            if (x > -2 && x <= 2)
                ++counts[std::size_t(std::ceil(x + 2)) - 1];
        for (int c : counts)
            CHECK(c == 2);
    }
    CHECK(sets[0].rows == sets[4].rows);
}

TEST_CASE("point fit accepts the poisson null and rejects the lattice") {
    PointFitConfig config;
    config.window_lo = -3;
    config.window_hi = 3;
    config.rate = 2.0;

    const auto null_sets = poisson_point_sets(2.0, -3, 3, 2, 400, 5);
    const auto null_fit = point_process_fit(null_sets, config);
    CHECK(null_fit.family_tests_pass());
    CHECK(null_fit.moments_pass());

    const auto alt_sets = periodic_point_sets(2.0, -3, 3, 2, 400);
    const auto alt_fit = point_process_fit(alt_sets, config);
    CHECK_FALSE(alt_fit.family_tests_pass());
}

TEST_CASE("recording-side local experiment passes its gates at moderate size") {
    LocalConfig config;
    config.n = 2500;
    config.k = 1;
    config.c = 2;
    config.reps = 200;
    config.seed = 11;
    config.jobs = 2;

    const LocalReport report = local_q_experiment(config);
    REQUIRE(report.fit.rows.size() == 2);
    CHECK(report.rate == 1.0);
    CHECK(report.fit.window_lo == -2.0);
    CHECK(report.fit.window_hi == 2.0);
    // Around 4 unit windows * 200 replicates of rate-1 data per row.
    CHECK(report.fit.rows[0].events > 600);
    CHECK(report.fit.rows[0].gap_count > 400);
    for (const auto& gate : report.gates) {
        INFO(gate.name, " value=", gate.value, " threshold=", gate.threshold);
        CHECK(gate.pass);
    }
    CHECK(report.pass());

    // Scheduling must not change the payload.
    LocalConfig serial = config;
    serial.jobs = 1;
    const LocalReport again = local_q_experiment(serial);
    CHECK(again.fit.rows[0].count_mean == report.fit.rows[0].count_mean);
    CHECK(again.fit.rows[0].gap_mean == report.fit.rows[0].gap_mean);
    CHECK(again.fit.rows[1].events == report.fit.rows[1].events);

    LocalConfig bad = config;
    bad.c = 2.5;
    CHECK_THROWS_AS(local_q_experiment(bad), std::invalid_argument);
    bad.c = 60;
    CHECK_THROWS_AS(local_q_experiment(bad), std::invalid_argument);
}

TEST_CASE("insertion-side local experiment at the top level ends at zero") {
    LocalConfig config;
    config.n = 10000;
    config.k = 0;
    config.c = 3;
    config.w = 1.0;
    config.reps = 500;
    config.seed = 7;
    config.jobs = 2;

    const LocalReport report = local_p_experiment(config);
    CHECK(report.rate == 1.0);
    CHECK(report.fit.window_hi == 0.0);
    CHECK(report.points_above_zero == 0);
    CHECK(report.max_point < 0);
    CHECK(report.max_point > -30);
    for (const auto& gate : report.gates) {
        INFO(gate.name, " value=", gate.value, " threshold=", gate.threshold);
        CHECK(gate.pass);
    }
    CHECK(report.pass());
}

TEST_CASE("insertion-side local experiment below the top level matches its rate") {
    LocalConfig config;
    config.n = 2500;
    config.k = 0;
    config.c = 2;
    config.w = 0.25;
    config.reps = 300;
    config.seed = 21;
    config.jobs = 2;

    const LocalReport report = local_p_experiment(config);
    CHECK(report.rate == 2.0);
    CHECK(report.fit.window_hi == 2.0);
    // Rescaled entries continue far above the window below the top level.
    CHECK(report.max_point > 10);
    const RowFit& row0 = report.fit.rows[0];
    CHECK(row0.gap_mean == doctest::Approx(0.5).epsilon(0.05));
    for (const auto& gate : report.gates) {
        INFO(gate.name, " value=", gate.value, " threshold=", gate.threshold);
        CHECK(gate.pass);
    }

    LocalConfig bad = config;
    bad.w = 1.5;
    CHECK_THROWS_AS(local_p_experiment(bad), std::invalid_argument);
}

TEST_CASE("independence experiment is unbiased on two surrogate draws") {
    IndependenceConfig config;
    config.n = 400;
    config.ell = 2;
    config.k = 1;
    config.reps = 5000;
    config.seed = 31;
    config.jobs = 2;
    config.side = IndependenceSide::vbar;

    const TVDEstimate est = independence_experiment(config);
    CHECK(est.replicates == 5000);
    CHECK(est.support <= 9);
    CHECK(est.value > 0);
    CHECK(est.bootstrap_se > 0);
    CHECK(est.lo <= est.value);
    CHECK(est.value <= est.hi);
    CHECK(est.analytic_baseline > 0);
    INFO("value=", est.value, " analytic=", est.analytic_baseline,
         " se=", est.bootstrap_se);
    CHECK(est.same_law_consistent());
    // The measured same-law pair should sit near the analytic prediction too.
    CHECK(est.baseline ==
          doctest::Approx(est.analytic_baseline).epsilon(0.5));
}

TEST_CASE("independence experiment separates a point mass from the surrogate") {
    IndependenceConfig config;
    config.n = 400;
    config.ell = 2;
    config.k = 1;
    config.reps = 2000;
    config.seed = 32;
    config.side = IndependenceSide::degenerate;

    const TVDEstimate est = independence_experiment(config);
    CHECK(est.value > 0.8);
    CHECK_FALSE(est.same_law_consistent());
}

TEST_CASE("independence experiment on the coupled growth side is deterministic") {
    IndependenceConfig config;
    config.n = 400;
    config.ell = 2;
    config.k = 1;
    config.reps = 3000;
    config.seed = 33;
    config.jobs = 3;

    const TVDEstimate est = independence_experiment(config);
    CHECK(est.value >= 0);
    CHECK(est.value <= 1);

    IndependenceConfig serial = config;
    serial.jobs = 1;
    const TVDEstimate again = independence_experiment(serial);
    CHECK(again.value == est.value);
    CHECK(again.baseline == est.baseline);
    CHECK(again.bootstrap_se == est.bootstrap_se);
}

TEST_CASE("independence experiment guards its capacity") {
    IndependenceConfig config;
    config.n = 400;
    config.ell = 2;
    config.k = 1;
    config.reps = 500;  // under 100 per atom
    CHECK_THROWS_AS(independence_experiment(config), capacity_error);

    config.reps = 5000;
    config.n = 3;  // under (k+1)^2
    CHECK_THROWS_AS(independence_experiment(config), std::invalid_argument);
}

TEST_CASE("independence experiment with terminal rows reports no analytic baseline") {
    IndependenceConfig config;
    config.n = 400;
    config.ell = 1;
    config.k = 1;
    config.reps = 1000;
    config.seed = 35;
    config.mode = IndependenceMode::labels_and_rows;
    config.side = IndependenceSide::vbar;

    const TVDEstimate est = independence_experiment(config);
    CHECK(est.value > 0);
    CHECK(est.support > 3);
    CHECK(std::isnan(est.analytic_baseline));
    CHECK_FALSE(est.same_law_consistent());
}

TEST_CASE("tail experiment accepts the growth data at moderate size") {
    ExpTailConfig config;
    config.n = 10000;
    config.reps = 300;
    config.seed = 41;
    config.jobs = 2;

    const ExpTailReport report = exp_tail_experiment(config);
    CHECK(report.fit.count == 300);
    CHECK(report.fit.min > 0);
    for (const auto& gate : report.gates) {
        INFO(gate.name, " value=", gate.value, " threshold=", gate.threshold);
        CHECK(gate.pass);
    }
    CHECK(report.pass());
}

TEST_CASE("hammersley equivalence campaign checks every word") {
    HammersleyEquivConfig config;
    config.words = 50;
    config.max_len = 60;
    config.k = 2;
    config.seed = 51;

    const HammersleyEquivReport report = hammersley_equiv_experiment(config);
    CHECK(report.words_checked == 50);
    CHECK(report.all_equal);
    CHECK_FALSE(report.first_failure.has_value());
    CHECK(report.pass());
}

TEST_CASE("shape sampling stays within the plug-in baseline at n = 6") {
    ShapeSamplingConfig config;
    config.n = 6;
    config.reps = 120000;
    config.seed = 61;
    config.jobs = 2;

    const ShapeSamplingReport report = shape_sampling_experiment(config);
    CHECK(report.support == 11);
    CHECK(report.baseline > 0);
    CHECK(report.tvd_value > 0);
    INFO("tvd=", report.tvd_value, " baseline=", report.baseline);
    CHECK(report.tvd_value < 3 * report.baseline);

    ShapeSamplingConfig bad = config;
    bad.n = 16;
    CHECK_THROWS_AS(shape_sampling_experiment(bad), capacity_error);
}

TEST_CASE("exact table experiment verifies monotonicity and the bound") {
    STableVerifyConfig config;
    config.K = 1;
    config.n_max = 12;

    const STableVerifyReport report = s_table_experiment(config);
    REQUIRE(report.table.size() == 12);
    CHECK(report.all_monotone);
    CHECK(report.all_bounded);
    CHECK(report.s_decreasing);
    CHECK(report.pass());
}

TEST_CASE("calibration rejects unknown ids and empty campaigns") {
    CalibrationConfig config;
    config.id = "nonsense";
    CHECK_THROWS_AS(calibrate(config), std::invalid_argument);
    config.id = "poisson";
    config.campaigns = 0;
    CHECK_THROWS_AS(calibrate(config), std::invalid_argument);

    const auto& ids = calibration_ids();
    CHECK(ids.size() == 5);
    CHECK(std::find(ids.begin(), ids.end(), "tvd") != ids.end());
}

TEST_CASE("tail calibration holds its level and always rejects the point mass") {
    CalibrationConfig config;
    config.id = "exp_tail";
    config.campaigns = 10;
    config.seed = 71;
    config.reps = 500;

    const CalibrationReport report = calibrate(config);
    CHECK(report.null_passes >= 9);
    CHECK(report.alt_rejections == 10);
    CHECK(report.null_results.size() == 10);
}

TEST_CASE("point-set calibration holds its level and rejects the lattice") {
    CalibrationConfig config;
    config.id = "localP";
    config.campaigns = 5;
    config.seed = 72;
    config.reps = 150;

    const CalibrationReport report = calibrate(config);
    CHECK(report.null_passes >= 4);
    CHECK(report.alt_rejections == 5);
}

TEST_CASE("path calibration holds its level and rejects the periodic path") {
    CalibrationConfig config;
    config.id = "poisson";
    config.campaigns = 3;
    config.seed = 73;
    config.reps = 150;
    config.jobs = 2;

    const CalibrationReport report = calibrate(config);
    CHECK(report.null_passes == 3);
    CHECK(report.alt_rejections == 3);
}

TEST_CASE("tvd calibration sits inside its own error bars") {
    CalibrationConfig config;
    config.id = "tvd";
    config.campaigns = 3;
    config.seed = 74;
    config.reps = 2700;
    config.jobs = 2;

    const CalibrationReport report = calibrate(config);
    CHECK(report.null_passes == 3);
    CHECK(report.alt_rejections == 3);
}

TEST_CASE("full counting-path experiment passes all gates at moderate size") {
    PoissonVerifyConfig config;
    // Finite-size variance deficits in the higher rows fade like n^(-1/3);
    // at this n they sit well inside the three-sigma moment gates.
    config.n = 40000;
    config.k = 1;
    config.c = 2;
    config.reps = 300;
    config.seed = 81;
    config.jobs = 2;

    const PoissonVerifyReport report = poisson_experiment(config);
    REQUIRE(report.fit.rows.size() == 2);
    CHECK(report.fit.replicates == 300);
    for (const auto& gate : report.gates) {
        INFO(gate.name, " value=", gate.value, " threshold=", gate.threshold);
        CHECK(gate.pass);
    }
    CHECK(report.pass());
}
