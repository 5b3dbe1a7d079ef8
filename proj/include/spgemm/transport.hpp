#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace spgemm {

using Rank = int;

struct TransportTimeout : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered point-to-point byte transport between process ranks. Delivery
/// order is preserved per (sender, receiver) pair. Algorithms only ever talk
/// through this interface, so an MPI-backed implementation can be swapped in
/// without touching them.
class Transport {
public:
    virtual ~Transport() = default;
    virtual int nranks() const = 0;
    virtual void send(Rank from, Rank to, std::vector<std::byte> payload) = 0;
    /// Blocks until a message from `from` arrives; a timeout means a peer
    /// never made the matching call and raises TransportTimeout.
    virtual std::vector<std::byte> recv(Rank me, Rank from) = 0;
};

/// Reference transport: one bounded in-memory queue per ordered channel.
class InProcessTransport final : public Transport {
public:
    explicit InProcessTransport(int nranks,
                                std::chrono::milliseconds timeout = std::chrono::minutes(2),
                                std::size_t channel_capacity = 1024);
    ~InProcessTransport() override;

    int nranks() const override { return nranks_; }
    void send(Rank from, Rank to, std::vector<std::byte> payload) override;
    std::vector<std::byte> recv(Rank me, Rank from) override;

    std::chrono::milliseconds timeout() const { return timeout_; }

private:
    struct Channel;
    Channel& channel(Rank from, Rank to);

    int nranks_;
    std::chrono::milliseconds timeout_;
    std::size_t capacity_;
    std::vector<std::unique_ptr<Channel>> channels_;
};

}  // namespace spgemm
