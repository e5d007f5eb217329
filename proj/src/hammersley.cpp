#include "rsklab/hammersley.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rsklab {

ParticleConfiguration::ParticleConfiguration(std::vector<double> positions)
    : positions_(std::move(positions)) {
    for (std::size_t i = 0; i + 1 < positions_.size(); ++i)
        if (!(positions_[i] < positions_[i + 1]))
            throw std::invalid_argument(
                "ParticleConfiguration: positions must strictly increase");
}

StepOutcome hammersley_step(ParticleConfiguration& line, const SpaceTimePoint& p) {
    auto& pos = line.positions_;
    const auto it = std::upper_bound(pos.begin(), pos.end(), p.x);
    if (it != pos.begin() && *(it - 1) == p.x)
        throw std::invalid_argument("hammersley_step: point on an occupied position");

    StepOutcome out;
    out.event.t = p.t;
    out.event.x_to = p.x;
    if (it == pos.end()) {
        pos.push_back(p.x);  // creation
        return out;
    }
    out.event.x_from = *it;
    out.corner = DualCorner{*it, p.t};
    *it = p.x;  // jump preserves strict ordering
    return out;
}

namespace {

void check_times(std::span<const SpaceTimePoint> points) {
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i].t < points[i + 1].t))
            throw std::invalid_argument("driving times must strictly increase");
}

}  // namespace

LineRun run_line(std::span<const SpaceTimePoint> points, ParticleConfiguration initial) {
    check_times(points);
    LineRun run;
    run.line = std::move(initial);
    for (const auto& p : points) {
        StepOutcome out = hammersley_step(run.line, p);
        run.trace.events.push_back(out.event);
        if (out.corner) run.trace.corners.push_back(*out.corner);
    }
    return run;
}

MultiLineRun run_multiline(std::span<const SpaceTimePoint> points, std::uint32_t k,
                           std::vector<ParticleConfiguration> initial) {
    check_times(points);
    if (initial.size() > std::size_t(k) + 1)
        throw std::invalid_argument("run_multiline: more initial lines than lines");
    MultiLineRun run;
    run.lines.resize(std::size_t(k) + 1);
    run.traces.resize(std::size_t(k) + 1);
    std::move(initial.begin(), initial.end(), run.lines.begin());

    for (const auto& p : points) {
        SpaceTimePoint drive = p;
        for (std::uint32_t y = 0; y <= k; ++y) {
            StepOutcome out = hammersley_step(run.lines[y], drive);
            run.traces[y].events.push_back(out.event);
            if (!out.corner) break;
            run.traces[y].corners.push_back(*out.corner);
            drive = {out.corner->x, out.corner->t};  // cascade at the same time
        }
    }
    return run;
}

RskEquivalence check_rsk_equivalence(std::span<const Entry> word, std::uint32_t k) {
    {
        std::set<Entry> seen(word.begin(), word.end());
        if (seen.size() != word.size())
            throw std::invalid_argument("check_rsk_equivalence: duplicate letters");
    }

    RskEquivalence result;
    result.k = k;
    result.steps = word.size();

    MultiLineRun ham;
    ham.lines.resize(std::size_t(k) + 1);
    ham.traces.resize(std::size_t(k) + 1);
    BottomRows tableau(k);

    for (std::size_t i = 0; i < word.size(); ++i) {
        SpaceTimePoint drive{word[i], double(i + 1)};
        for (std::uint32_t y = 0; y <= k; ++y) {
            StepOutcome out = hammersley_step(ham.lines[y], drive);
            if (!out.corner) break;
            drive = {out.corner->x, out.corner->t};
        }
        (void)tableau.insert(word[i]);

        for (std::uint32_t y = 0; y <= k; ++y) {
            if (ham.lines[y].positions() != tableau.row(y)) {
                result.equal = false;
                result.first_mismatch = RskEquivalence::Mismatch{i + 1, y};
                return result;
            }
        }
    }
    return result;
}

}  // namespace rsklab
