#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "spgemm/transport.hpp"

namespace spgemm {

/// Virtual pr x pc x pl process grid. The raw grid accepts any shape;
/// the shipped algorithms additionally require square layers (pr == pc).
struct GridShape {
    int pr = 1, pc = 1, pl = 1;

    int nprocs() const { return pr * pc * pl; }

    void validate() const {
        if (pr < 1 || pc < 1 || pl < 1) throw std::invalid_argument("grid shape must be positive");
    }

    Rank rank_of(int i, int j, int k) const { return (i * pc + j) * pl + k; }

    friend bool operator==(const GridShape&, const GridShape&) = default;
};

struct CounterTally {
    std::uint64_t calls = 0;        // collective invocations this process took part in
    std::uint64_t root_calls = 0;   // invocations where this process was the root
    std::uint64_t msgs = 0;         // point-to-point messages sent (self excluded)
    std::uint64_t bytes_sent = 0;
    std::uint64_t bytes_received = 0;
    std::uint64_t max_single_payload = 0;

    void record_send(std::uint64_t bytes) {
        ++msgs;
        bytes_sent += bytes;
        max_single_payload = std::max(max_single_payload, bytes);
    }

    CounterTally& operator+=(const CounterTally& o) {
        calls += o.calls;
        root_calls += o.root_calls;
        msgs += o.msgs;
        bytes_sent += o.bytes_sent;
        bytes_received += o.bytes_received;
        max_single_payload = std::max(max_single_payload, o.max_single_payload);
        return *this;
    }
};

/// Per-process tallies, monotone until reset() — merged across processes
/// only after a run completes.
struct CommCounters {
    CounterTally bcast;
    CounterTally alltoall;

    void reset() { *this = CommCounters{}; }

    CommCounters& operator+=(const CommCounters& o) {
        bcast += o.bcast;
        alltoall += o.alltoall;
        return *this;
    }
};

namespace detail {

// Reusable barrier with timeout so mismatched participation surfaces as an
// error instead of a hang.
class SyncBarrier {
public:
    explicit SyncBarrier(int n) : count_(n) {}

    void arrive_and_wait(std::chrono::milliseconds timeout) {
        std::unique_lock lock(mutex_);
        const std::uint64_t gen = generation_;
        if (++waiting_ == count_) {
            waiting_ = 0;
            ++generation_;
            cv_.notify_all();
            return;
        }
        if (!cv_.wait_for(lock, timeout, [&] { return generation_ != gen; }))
            throw TransportTimeout("collective barrier timed out (mismatched participation?)");
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    int count_;
    int waiting_ = 0;
    std::uint64_t generation_ = 0;
};

}  // namespace detail

/// One communicator of a process context: an ordered member list plus the
/// process's position in it. A barrier is implied at the end of each
/// collective performed on it.
struct Communicator {
    std::vector<Rank> members;
    int my_pos = 0;
    Transport* transport = nullptr;
    CommCounters* counters = nullptr;
    std::shared_ptr<detail::SyncBarrier> barrier;
    std::chrono::milliseconds timeout{std::chrono::minutes(2)};

    int size() const { return static_cast<int>(members.size()); }
    Rank my_rank() const { return members[static_cast<std::size_t>(my_pos)]; }

    void sync() const {
        if (size() > 1) barrier->arrive_and_wait(timeout);
    }
};

/// One simulated process: coordinates plus the three communicators
/// P(i,:,k), P(:,j,k) and P(i,j,:). Counters are owned per process.
struct ProcessCtx {
    GridShape shape;
    int i = 0, j = 0, k = 0;
    Rank rank = 0;
    Communicator row;    // varies j
    Communicator col;    // varies i
    Communicator fiber;  // varies k
    CommCounters counters;
};

/// The grid wires communicators per coordinates and owns the transport.
/// Each context is meant to run on its own execution context (one thread per
/// simulated process); the transport is the only channel between them.
class Grid {
public:
    Grid(GridShape shape, std::unique_ptr<Transport> transport);

    /// Grid over the reference in-process transport.
    explicit Grid(GridShape shape,
                  std::chrono::milliseconds timeout = std::chrono::minutes(2));

    GridShape shape() const { return shape_; }
    int nprocs() const { return shape_.nprocs(); }
    ProcessCtx& ctx(Rank r) { return ctxs_[static_cast<std::size_t>(r)]; }
    const ProcessCtx& ctx(Rank r) const { return ctxs_[static_cast<std::size_t>(r)]; }
    ProcessCtx& ctx(int i, int j, int k) { return ctx(shape_.rank_of(i, j, k)); }

    void reset_counters() {
        for (auto& c : ctxs_) c.counters.reset();
    }

    CommCounters merged_counters() const {
        CommCounters total;
        for (const auto& c : ctxs_) total += c.counters;
        return total;
    }

private:
    GridShape shape_;
    std::unique_ptr<Transport> transport_;
    std::vector<ProcessCtx> ctxs_;
};

/// Runs fn(ctx) on every process context, one thread each; joins all and
/// rethrows the lowest-rank failure.
void run_on_grid(Grid& grid, const std::function<void(ProcessCtx&)>& fn);

}  // namespace spgemm
