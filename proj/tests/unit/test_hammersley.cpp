#include <doctest.h>

#include <algorithm>

#include "rsklab/hammersley.hpp"
#include "rsklab/rng.hpp"

using rsklab::DualCorner;
using rsklab::ParticleConfiguration;
using rsklab::SpaceTimePoint;

namespace {

std::vector<rsklab::Entry> random_word(std::size_t n, rsklab::Rng& rng) {
    std::vector<rsklab::Entry> word(n);
    for (auto& w : word) w = rsklab::uniform01(rng);
    auto sorted = word;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return random_word(n, rng);
    return word;
}

}  // namespace

TEST_CASE("single step: jump and creation") {
    ParticleConfiguration line({2.0, 3.0, 7.0});

    SUBCASE("jump moves the nearest particle to the right") {
        auto out = rsklab::hammersley_step(line, {5.0, 1.0});
        CHECK(line.positions() == std::vector<double>{2, 3, 5});
        REQUIRE(out.corner.has_value());
        CHECK(*out.corner == DualCorner{7.0, 1.0});
        CHECK(out.event.is_jump());
        CHECK(out.event.x_from == 7.0);
        CHECK(out.event.x_to == 5.0);
    }

    SUBCASE("creation when no particle lies to the right") {
        auto out = rsklab::hammersley_step(line, {8.0, 1.0});
        CHECK(line.positions() == std::vector<double>{2, 3, 7, 8});
        CHECK_FALSE(out.corner.has_value());
        CHECK_FALSE(out.event.is_jump());
    }

    SUBCASE("occupied positions are rejected") {
        CHECK_THROWS_AS((void)rsklab::hammersley_step(line, {3.0, 1.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("worked single-line run") {
    // Particles start at {2,3,7}; four driving points produce three jumps
    // (corners at (7,2), (2,4), (5,6)) and one creation.
    const std::vector<SpaceTimePoint> points{
        {5.0, 2.0}, {1.0, 4.0}, {6.0, 5.0}, {4.0, 6.0}};
    auto run = rsklab::run_line(points, ParticleConfiguration({2.0, 3.0, 7.0}));

    CHECK(run.line.positions() == std::vector<double>{1, 3, 4, 6});
    CHECK(run.trace.corners ==
          std::vector<DualCorner>{{7.0, 2.0}, {2.0, 4.0}, {5.0, 6.0}});
    REQUIRE(run.trace.events.size() == 4);
    CHECK_FALSE(run.trace.events[2].is_jump());  // the point at t = 5 creates
}

TEST_CASE("worked second line driven by first-line corners") {
    // Feeding the corners above into a line holding {4.5}: the corner at
    // x = 7 creates, then 4.5 jumps to 2, then 7 jumps to 5.
    const std::vector<SpaceTimePoint> points{{7.0, 2.0}, {2.0, 4.0}, {5.0, 6.0}};
    auto run = rsklab::run_line(points, ParticleConfiguration({4.5}));

    CHECK(run.line.positions() == std::vector<double>{2, 5});
    REQUIRE(run.trace.events.size() == 3);
    CHECK_FALSE(run.trace.events[0].is_jump());
    CHECK(run.trace.events[1].x_from == 4.5);
    CHECK(run.trace.events[1].x_to == 2.0);
    CHECK(run.trace.events[2].x_from == 7.0);
    CHECK(run.trace.events[2].x_to == 5.0);
    CHECK(run.trace.corners ==
          std::vector<DualCorner>{{4.5, 4.0}, {7.0, 6.0}});
}

TEST_CASE("multi-line cascade equals separate line runs") {
    const std::vector<SpaceTimePoint> points{
        {5.0, 2.0}, {1.0, 4.0}, {6.0, 5.0}, {4.0, 6.0}};
    auto multi = rsklab::run_multiline(
        points, 1, {ParticleConfiguration({2.0, 3.0, 7.0}), ParticleConfiguration({4.5})});

    auto line0 = rsklab::run_line(points, ParticleConfiguration({2.0, 3.0, 7.0}));
    std::vector<SpaceTimePoint> dual;
    for (const auto& c : line0.trace.corners) dual.push_back({c.x, c.t});
    auto line1 = rsklab::run_line(dual, ParticleConfiguration({4.5}));

    CHECK(multi.lines[0] == line0.line);
    CHECK(multi.lines[1] == line1.line);
    CHECK(multi.traces[0].corners == line0.trace.corners);
    CHECK(multi.traces[1].events == line1.trace.events);
    CHECK(multi.lines[1].positions() == std::vector<double>{2, 5});
}

TEST_CASE("driving times must increase") {
    const std::vector<SpaceTimePoint> bad{{0.5, 2.0}, {0.7, 2.0}};
    CHECK_THROWS_AS((void)rsklab::run_line(bad), std::invalid_argument);
    CHECK_THROWS_AS((void)rsklab::run_multiline(bad, 2), std::invalid_argument);
}

TEST_CASE("line driven by a word matches the insertion tableau") {
    rsklab::Rng rng(2025);
    for (int trial = 0; trial < 40; ++trial) {
        auto word = random_word(120, rng);
        const auto report = rsklab::check_rsk_equivalence(word, 3);
        CHECK(report.equal);
        CHECK_FALSE(report.first_mismatch.has_value());
        CHECK(report.steps == word.size());
    }
}

TEST_CASE("equivalence rejects duplicate letters") {
    std::vector<rsklab::Entry> word{0.5, 0.25, 0.5};
    CHECK_THROWS_AS((void)rsklab::check_rsk_equivalence(word, 1),
                    std::invalid_argument);
}

TEST_CASE("jump counts line up across the hierarchy") {
    // Jumps of line y = corners of line y = drives of line y+1.
    rsklab::Rng rng(33);
    auto word = random_word(300, rng);
    std::vector<SpaceTimePoint> points;
    for (std::size_t i = 0; i < word.size(); ++i)
        points.push_back({word[i], double(i + 1)});
    auto run = rsklab::run_multiline(points, 4);

    for (std::uint32_t y = 0; y <= 4; ++y) {
        std::size_t jumps = 0;
        for (const auto& e : run.traces[y].events) jumps += e.is_jump();
        CHECK(jumps == run.traces[y].corners.size());
        if (y > 0) CHECK(run.traces[y].events.size() == run.traces[y - 1].corners.size());
        CHECK(run.traces[y].events.size() ==
              run.lines[y].size() + run.traces[y].corners.size());
        CHECK(std::is_sorted(run.lines[y].positions().begin(),
                             run.lines[y].positions().end()));
    }
}

TEST_CASE("word 3,1,2 drives lines matching its insertion rows") {
    const std::vector<SpaceTimePoint> points{{3.0, 1.0}, {1.0, 2.0}, {2.0, 3.0}};
    auto run = rsklab::run_multiline(points, 1);

    CHECK(run.lines[0].positions() == std::vector<double>{1, 2});
    REQUIRE(run.traces[0].corners.size() == 1);
    CHECK(run.traces[0].corners[0] == DualCorner{3.0, 2.0});
    CHECK(run.lines[1].positions() == std::vector<double>{3});
}
