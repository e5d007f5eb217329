// Multi-line Hammersley particle process: each planar input point makes the
// nearest particle to its right jump onto it (or creates one), jumps emit
// dual corners, and the corners of line y drive line y+1.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rsklab/tableau.hpp"

namespace rsklab {

struct SpaceTimePoint {
    double x = 0;
    double t = 0;

    bool operator==(const SpaceTimePoint&) const = default;
};

/// Corner left behind by a jump: the vacated position at the jump time.
struct DualCorner {
    double x = 0;
    double t = 0;

    bool operator==(const DualCorner&) const = default;
};

/// One change of a line: a creation (no source) or a jump from x_from.
struct LineEvent {
    double t = 0;
    double x_to = 0;
    std::optional<double> x_from;

    bool is_jump() const { return x_from.has_value(); }
    bool operator==(const LineEvent&) const = default;
};

struct StepOutcome;

/// Particles on a line, positions strictly increasing.
class ParticleConfiguration {
public:
    ParticleConfiguration() = default;
    explicit ParticleConfiguration(std::vector<double> positions);

    const std::vector<double>& positions() const { return positions_; }
    std::size_t size() const { return positions_.size(); }

    bool operator==(const ParticleConfiguration&) const = default;

private:
    friend StepOutcome hammersley_step(ParticleConfiguration&, const SpaceTimePoint&);
    std::vector<double> positions_;
};

struct StepOutcome {
    LineEvent event;
    std::optional<DualCorner> corner;  // present exactly for jumps
};

/// Apply one driving point: the leftmost particle strictly right of p.x
/// slides to p.x and its old position becomes a corner; with no particle to
/// the right, a new one appears at p.x.  Throws std::invalid_argument when
/// p.x coincides with an existing particle.
StepOutcome hammersley_step(ParticleConfiguration& line, const SpaceTimePoint& p);

struct LineTrace {
    std::vector<LineEvent> events;
    std::vector<DualCorner> corners;  // emitted by this line
};

struct LineRun {
    ParticleConfiguration line;
    LineTrace trace;
};

/// Drive a single line by points with strictly increasing times.
LineRun run_line(std::span<const SpaceTimePoint> points,
                 ParticleConfiguration initial = {});

struct MultiLineRun {
    std::vector<ParticleConfiguration> lines;  // index y in 0..k
    std::vector<LineTrace> traces;
};

/// Drive lines 0..k: the input feeds line 0 and each jump's corner feeds the
/// next line within the same driving time.  `initial` may supply starting
/// configurations for a prefix of the lines.
MultiLineRun run_multiline(std::span<const SpaceTimePoint> points, std::uint32_t k,
                           std::vector<ParticleConfiguration> initial = {});

/// Trajectory-level check that line y of the multi-line process driven by
/// (letter, index) points equals row y of the insertion tableau after every
/// step.
struct RskEquivalence {
    bool equal = true;
    std::uint32_t k = 0;
    std::size_t steps = 0;

    struct Mismatch {
        std::size_t step;   // 1-based driving index
        std::uint32_t line;
    };
    std::optional<Mismatch> first_mismatch;
};

RskEquivalence check_rsk_equivalence(std::span<const Entry> word, std::uint32_t k);

}  // namespace rsklab
