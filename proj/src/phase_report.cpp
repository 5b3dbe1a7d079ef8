#include "spgemm/phase_report.hpp"

#include <ostream>
#include <stdexcept>

namespace spgemm {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Broadcast: return "Broadcast";
        case Phase::AlltoAll: return "AlltoAll";
        case Phase::LocalMultiply: return "LocalMultiply";
        case Phase::MergeLayer: return "MergeLayer";
        case Phase::MergeFiber: return "MergeFiber";
    }
    throw std::logic_error("unknown phase");
}

void PhaseReport::write_csv(std::ostream& out) const {
    for (const auto& [key, value] : metadata) out << "# " << key << "=" << value << "\n";
    out << "phase,seconds,bytes,messages\n";
    for (int p = 0; p < kNumPhases; ++p) {
        const PhaseRecord& r = phases[static_cast<std::size_t>(p)];
        out << phase_name(static_cast<Phase>(p)) << ',' << r.seconds_max << ',' << r.bytes << ','
            << r.messages << "\n";
    }
}

PhaseReport make_phase_report(const std::vector<PhaseTimes>& times,
                              const std::vector<CommCounters>& counters) {
    PhaseReport report;
    const auto n = times.size();
    for (int p = 0; p < kNumPhases; ++p) {
        PhaseRecord& r = report.phases[static_cast<std::size_t>(p)];
        for (const auto& t : times) {
            r.seconds_max = std::max(r.seconds_max, t.seconds[static_cast<std::size_t>(p)]);
            r.seconds_mean += t.seconds[static_cast<std::size_t>(p)];
        }
        if (n) r.seconds_mean /= static_cast<double>(n);
    }
    for (const auto& c : counters) {
        report[Phase::Broadcast].bytes += c.bcast.bytes_sent;
        report[Phase::Broadcast].messages += c.bcast.msgs;
        report[Phase::AlltoAll].bytes += c.alltoall.bytes_sent;
        report[Phase::AlltoAll].messages += c.alltoall.msgs;
    }
    return report;
}

}  // namespace spgemm
