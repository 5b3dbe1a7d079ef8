#include "spgemm/transport.hpp"

#include <string>

namespace spgemm {

struct InProcessTransport::Channel {
    std::mutex mutex;
    std::condition_variable nonempty;
    std::condition_variable nonfull;
    std::deque<std::vector<std::byte>> queue;
};

InProcessTransport::InProcessTransport(int nranks, std::chrono::milliseconds timeout,
                                       std::size_t channel_capacity)
    : nranks_(nranks), timeout_(timeout), capacity_(channel_capacity) {
    if (nranks <= 0) throw std::invalid_argument("transport: need at least one rank");
    channels_.resize(static_cast<std::size_t>(nranks) * static_cast<std::size_t>(nranks));
    for (auto& ch : channels_) ch = std::make_unique<Channel>();
}

InProcessTransport::~InProcessTransport() = default;

InProcessTransport::Channel& InProcessTransport::channel(Rank from, Rank to) {
    if (from < 0 || from >= nranks_ || to < 0 || to >= nranks_)
        throw std::invalid_argument("transport: rank out of range");
    return *channels_[static_cast<std::size_t>(from) * static_cast<std::size_t>(nranks_) +
                      static_cast<std::size_t>(to)];
}

void InProcessTransport::send(Rank from, Rank to, std::vector<std::byte> payload) {
    Channel& ch = channel(from, to);
    std::unique_lock lock(ch.mutex);
    if (!ch.nonfull.wait_for(lock, timeout_, [&] { return ch.queue.size() < capacity_; }))
        throw TransportTimeout("send " + std::to_string(from) + "->" + std::to_string(to) +
                               ": channel full past timeout");
    ch.queue.push_back(std::move(payload));
    ch.nonempty.notify_one();
}

std::vector<std::byte> InProcessTransport::recv(Rank me, Rank from) {
    Channel& ch = channel(from, me);
    std::unique_lock lock(ch.mutex);
    if (!ch.nonempty.wait_for(lock, timeout_, [&] { return !ch.queue.empty(); }))
        throw TransportTimeout("recv " + std::to_string(from) + "->" + std::to_string(me) +
                               ": no message past timeout (mismatched collective?)");
    auto payload = std::move(ch.queue.front());
    ch.queue.pop_front();
    ch.nonfull.notify_one();
    return payload;
}

}  // namespace spgemm
