#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "spgemm/grid.hpp"

namespace spgemm {

enum class Phase { Broadcast, AlltoAll, LocalMultiply, MergeLayer, MergeFiber };
constexpr int kNumPhases = 5;

const char* phase_name(Phase p);

/// Wall seconds a single process spent in each phase.
struct PhaseTimes {
    std::array<double, kNumPhases> seconds{};

    double& operator[](Phase p) { return seconds[static_cast<std::size_t>(p)]; }
    double operator[](Phase p) const { return seconds[static_cast<std::size_t>(p)]; }
};

struct PhaseRecord {
    double seconds_max = 0;   // slowest process
    double seconds_mean = 0;  // average over processes
    std::uint64_t bytes = 0;
    std::uint64_t messages = 0;
};

/// Per-phase breakdown of one run. The CSV schema is stable:
/// '#'-prefixed metadata lines, then `phase,seconds,bytes,messages` with one
/// row per phase (seconds = max over processes).
struct PhaseReport {
    std::array<PhaseRecord, kNumPhases> phases{};
    std::vector<std::pair<std::string, std::string>> metadata;

    PhaseRecord& operator[](Phase p) { return phases[static_cast<std::size_t>(p)]; }
    const PhaseRecord& operator[](Phase p) const { return phases[static_cast<std::size_t>(p)]; }

    void write_csv(std::ostream& out) const;
};

/// Folds per-process times and counters into a report: communication bytes
/// and message counts are sums over processes of the sender-side tallies.
PhaseReport make_phase_report(const std::vector<PhaseTimes>& times,
                              const std::vector<CommCounters>& counters);

}  // namespace spgemm
