#pragma once

#include <cstring>

#include "spgemm/dcsc.hpp"
#include "spgemm/grid.hpp"

namespace spgemm {

// Wire format: 24-byte header (nrows, ncols, count as 64-bit) followed by
// 24 bytes per triple (row, col, value). Counter tests rely on these sizes
// being exact, so only 8-byte scalars are serializable.
constexpr std::uint64_t kWireHeaderBytes = 24;
constexpr std::uint64_t kWireTripleBytes = 24;

inline std::uint64_t serialized_size(std::uint64_t nnz) {
    return kWireHeaderBytes + kWireTripleBytes * nnz;
}

template <class V>
std::vector<std::byte> serialize(const TripleList<V>& t) {
    static_assert(sizeof(V) == 8, "wire format carries 8-byte scalars");
    std::vector<std::byte> buf(serialized_size(static_cast<std::uint64_t>(t.nnz())));
    std::byte* p = buf.data();
    auto put = [&p](const void* src, std::size_t n) {
        std::memcpy(p, src, n);
        p += n;
    };
    const std::int64_t head[3] = {t.nrows, t.ncols, t.nnz()};
    put(head, sizeof head);
    for (const auto& e : t.triples) {
        put(&e.row, 8);
        put(&e.col, 8);
        put(&e.value, 8);
    }
    return buf;
}

template <class V>
TripleList<V> deserialize(const std::vector<std::byte>& buf) {
    static_assert(sizeof(V) == 8, "wire format carries 8-byte scalars");
    if (buf.size() < kWireHeaderBytes) throw std::runtime_error("deserialize: truncated header");
    const std::byte* p = buf.data();
    auto get = [&p](void* dst, std::size_t n) {
        std::memcpy(dst, p, n);
        p += n;
    };
    std::int64_t head[3];
    get(head, sizeof head);
    if (buf.size() != serialized_size(static_cast<std::uint64_t>(head[2])))
        throw std::runtime_error("deserialize: size does not match triple count");
    TripleList<V> t(head[0], head[1]);
    t.triples.resize(static_cast<std::size_t>(head[2]));
    for (auto& e : t.triples) {
        get(&e.row, 8);
        get(&e.col, 8);
        get(&e.value, 8);
    }
    return t;
}

/// Flat-tree broadcast: the root sends its payload to every other member.
/// Every member returns a copy equal to the root's payload. Byte counting is
/// per transmission, attributed to the sender.
template <class V>
TripleList<V> bcast(Communicator& comm, int root_pos, TripleList<V> payload) {
    if (root_pos < 0 || root_pos >= comm.size())
        throw std::invalid_argument("bcast: root outside communicator");
    CounterTally& tally = comm.counters->bcast;
    ++tally.calls;
    if (comm.size() > 1) {
        if (comm.my_pos == root_pos) {
            ++tally.root_calls;
            auto buf = serialize(payload);
            for (int q = 0; q < comm.size(); ++q) {
                if (q == root_pos) continue;
                tally.record_send(buf.size());
                comm.transport->send(comm.my_rank(), comm.members[static_cast<std::size_t>(q)],
                                     buf);
            }
        } else {
            auto buf = comm.transport->recv(comm.my_rank(),
                                            comm.members[static_cast<std::size_t>(root_pos)]);
            tally.bytes_received += buf.size();
            payload = deserialize<V>(buf);
        }
    } else if (comm.my_pos == root_pos) {
        ++tally.root_calls;
    }
    comm.sync();
    return payload;
}

template <class V>
DcscMatrix<V> bcast(Communicator& comm, int root_pos, const DcscMatrix<V>& payload) {
    // DCSC rides the wire as its triple list; the byte count only depends on nnz.
    TripleList<V> t = comm.my_pos == root_pos ? dcsc_to_triples(payload) : TripleList<V>{};
    return triples_to_dcsc(bcast(comm, root_pos, std::move(t)));
}

/// Personalized exchange: member q receives member r's q-th payload for all
/// r. The payload to self never touches the transport and costs no bytes.
template <class V>
std::vector<TripleList<V>> alltoall(Communicator& comm, std::vector<TripleList<V>> outgoing) {
    if (static_cast<int>(outgoing.size()) != comm.size())
        throw std::invalid_argument("alltoall: need one payload per member");
    CounterTally& tally = comm.counters->alltoall;
    ++tally.calls;
    std::vector<TripleList<V>> incoming(outgoing.size());
    for (int q = 0; q < comm.size(); ++q) {
        if (q == comm.my_pos) continue;
        auto buf = serialize(outgoing[static_cast<std::size_t>(q)]);
        tally.record_send(buf.size());
        comm.transport->send(comm.my_rank(), comm.members[static_cast<std::size_t>(q)],
                             std::move(buf));
    }
    incoming[static_cast<std::size_t>(comm.my_pos)] =
        std::move(outgoing[static_cast<std::size_t>(comm.my_pos)]);
    for (int q = 0; q < comm.size(); ++q) {
        if (q == comm.my_pos) continue;
        auto buf = comm.transport->recv(comm.my_rank(), comm.members[static_cast<std::size_t>(q)]);
        tally.bytes_received += buf.size();
        incoming[static_cast<std::size_t>(q)] = deserialize<V>(buf);
    }
    comm.sync();
    return incoming;
}

}  // namespace spgemm
