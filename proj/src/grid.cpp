#include "spgemm/grid.hpp"

#include <map>
#include <thread>

namespace spgemm {

namespace {

std::chrono::milliseconds transport_timeout(const Transport& t) {
    if (auto* inproc = dynamic_cast<const InProcessTransport*>(&t)) return inproc->timeout();
    return std::chrono::minutes(2);
}

}  // namespace

Grid::Grid(GridShape shape, std::unique_ptr<Transport> transport)
    : shape_(shape), transport_(std::move(transport)) {
    shape_.validate();
    if (transport_->nranks() != shape_.nprocs())
        throw std::invalid_argument("grid: transport rank count does not match shape");
    const auto timeout = transport_timeout(*transport_);

    // One shared barrier per distinct communicator group.
    std::map<std::pair<int, int>, std::shared_ptr<detail::SyncBarrier>> row_bar, col_bar, fib_bar;
    auto group_barrier = [](auto& m, int a, int b, int n) {
        auto& slot = m[{a, b}];
        if (!slot) slot = std::make_shared<detail::SyncBarrier>(n);
        return slot;
    };

    ctxs_.resize(static_cast<std::size_t>(shape_.nprocs()));
    for (int i = 0; i < shape_.pr; ++i) {
        for (int j = 0; j < shape_.pc; ++j) {
            for (int k = 0; k < shape_.pl; ++k) {
                ProcessCtx& c = ctxs_[static_cast<std::size_t>(shape_.rank_of(i, j, k))];
                c.shape = shape_;
                c.i = i;
                c.j = j;
                c.k = k;
                c.rank = shape_.rank_of(i, j, k);

                c.row.members.reserve(static_cast<std::size_t>(shape_.pc));
                for (int q = 0; q < shape_.pc; ++q) c.row.members.push_back(shape_.rank_of(i, q, k));
                c.row.my_pos = j;
                c.row.barrier = group_barrier(row_bar, i, k, shape_.pc);

                c.col.members.reserve(static_cast<std::size_t>(shape_.pr));
                for (int q = 0; q < shape_.pr; ++q) c.col.members.push_back(shape_.rank_of(q, j, k));
                c.col.my_pos = i;
                c.col.barrier = group_barrier(col_bar, j, k, shape_.pr);

                c.fiber.members.reserve(static_cast<std::size_t>(shape_.pl));
                for (int q = 0; q < shape_.pl; ++q)
                    c.fiber.members.push_back(shape_.rank_of(i, j, q));
                c.fiber.my_pos = k;
                c.fiber.barrier = group_barrier(fib_bar, i, j, shape_.pl);

                for (Communicator* comm : {&c.row, &c.col, &c.fiber}) {
                    comm->transport = transport_.get();
                    comm->timeout = timeout;
                    comm->counters = &c.counters;
                }
            }
        }
    }
}

Grid::Grid(GridShape shape, std::chrono::milliseconds timeout)
    : Grid(shape, std::make_unique<InProcessTransport>(shape.nprocs(), timeout)) {}

void run_on_grid(Grid& grid, const std::function<void(ProcessCtx&)>& fn) {
    const int p = grid.nprocs();
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(p));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(p));
    for (Rank r = 0; r < p; ++r) {
        threads.emplace_back([&, r] {
            try {
                fn(grid.ctx(r));
            } catch (...) {
                errors[static_cast<std::size_t>(r)] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace spgemm
