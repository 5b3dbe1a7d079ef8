#pragma once

#include <atomic>
#include <thread>

#include "spgemm/dcsc.hpp"
#include "spgemm/semiring.hpp"

namespace spgemm {

struct HeapSpgemmStats {
    // High-water mark of live heap entries summed across threads. Bounded by
    // nnz(B): each output column's heap holds at most nnz(B(:,j)) entries.
    std::atomic<std::uint64_t> peak_heap_entries{0};
    std::atomic<std::uint64_t> live_heap_entries{0};

    void on_alloc(std::uint64_t n) {
        const std::uint64_t live = live_heap_entries.fetch_add(n) + n;
        std::uint64_t peak = peak_heap_entries.load();
        while (peak < live && !peak_heap_entries.compare_exchange_weak(peak, live)) {
        }
    }
    void on_free(std::uint64_t n) { live_heap_entries.fetch_sub(n); }
};

namespace detail {

// One cursor per nonzero of B(:,j), walking down a column of A. Ties on the
// output row are broken by source position for a deterministic add order.
template <class V>
struct ColumnCursor {
    index_t row;
    index_t src;
    index_t pa;
    index_t pa_end;
    V bval;
};

template <class V>
inline bool cursor_after(const ColumnCursor<V>& x, const ColumnCursor<V>& y) {
    return x.row != y.row ? x.row > y.row : x.src > y.src;
}

template <Semiring SR>
void heap_multiply_columns(const DcscMatrix<typename SR::value_type>& a,
                           const DcscMatrix<typename SR::value_type>& b, index_t jpos_lo,
                           index_t jpos_hi, std::vector<Triple<typename SR::value_type>>& out,
                           HeapSpgemmStats* stats) {
    using V = typename SR::value_type;
    std::vector<ColumnCursor<V>> heap;
    for (index_t jpos = jpos_lo; jpos < jpos_hi; ++jpos) {
        const index_t jcol = b.jc[jpos];
        heap.clear();
        const std::uint64_t heap_budget = static_cast<std::uint64_t>(b.col_nnz(jpos));
        if (stats) stats->on_alloc(heap_budget);
        heap.reserve(heap_budget);
        for (index_t pb = b.cp[jpos]; pb < b.cp[jpos + 1]; ++pb) {
            const index_t k = b.rowidx[pb];
            const index_t apos = a.locate_column(k);
            if (apos >= a.nzc() || a.jc[apos] != k) continue;
            heap.push_back({a.rowidx[a.cp[apos]], pb, a.cp[apos], a.cp[apos + 1], b.values[pb]});
        }
        std::make_heap(heap.begin(), heap.end(), cursor_after<V>);
        index_t last_row = -1;
        while (!heap.empty()) {
            std::pop_heap(heap.begin(), heap.end(), cursor_after<V>);
            ColumnCursor<V>& cur = heap.back();
            const V prod = SR::multiply(a.values[cur.pa], cur.bval);
            if (cur.row == last_row) {
                out.back().value = SR::add(out.back().value, prod);
            } else {
                out.push_back({cur.row, jcol, prod});
                last_row = cur.row;
            }
            if (++cur.pa < cur.pa_end) {
                cur.row = a.rowidx[cur.pa];
                std::push_heap(heap.begin(), heap.end(), cursor_after<V>);
            } else {
                heap.pop_back();
            }
        }
        if (stats) stats->on_free(heap_budget);
    }
}

// Splits [0, total) weighted by the prefix sums in cp into at most `parts`
// nonempty, contiguous chunks.
inline std::vector<index_t> weighted_parts(const std::vector<index_t>& cp, index_t nitems,
                                           index_t parts) {
    std::vector<index_t> bounds{0};
    const index_t total = cp.empty() ? 0 : cp.back();
    for (index_t i = 1; i < parts; ++i) {
        const index_t target = total * i / parts;
        auto it = std::upper_bound(cp.begin(), cp.end(), target);
        index_t pos = std::min<index_t>(static_cast<index_t>(it - cp.begin()) - 1, nitems);
        bounds.push_back(std::max(pos, bounds.back()));
    }
    bounds.push_back(nitems);
    return bounds;
}

}  // namespace detail

/// Heap-assisted column-by-column SpGEMM over DCSC operands. Runs in
/// O(sum_j flops(C(:,j)) log nnz(B(:,j))) independent of the matrix
/// dimensions. Each output column is produced by exactly one thread with a
/// fixed combine order, so the result is identical for every thread count.
template <Semiring SR>
TripleList<typename SR::value_type> heap_spgemm(const DcscMatrix<typename SR::value_type>& a,
                                                const DcscMatrix<typename SR::value_type>& b,
                                                int nthreads = 1,
                                                HeapSpgemmStats* stats = nullptr) {
    using V = typename SR::value_type;
    if (a.ncols != b.nrows) throw std::invalid_argument("heap_spgemm: dimension mismatch");

    TripleList<V> c(a.nrows, b.ncols);
    if (b.nzc() == 0 || a.nnz() == 0) return c;

    if (nthreads <= 1 || b.nzc() < 2) {
        detail::heap_multiply_columns<SR>(a, b, 0, b.nzc(), c.triples, stats);
        return c;
    }

    // 4t parts over B's nonzero columns, weighted by nnz, claimed dynamically.
    const auto bounds = detail::weighted_parts(b.cp, b.nzc(), static_cast<index_t>(4 * nthreads));
    const auto nparts = static_cast<index_t>(bounds.size()) - 1;
    std::vector<std::vector<Triple<V>>> part_out(static_cast<std::size_t>(nparts));
    std::atomic<index_t> next_part{0};
    auto worker = [&] {
        for (;;) {
            const index_t p = next_part.fetch_add(1);
            if (p >= nparts) break;
            detail::heap_multiply_columns<SR>(a, b, bounds[p], bounds[p + 1],
                                              part_out[static_cast<std::size_t>(p)], stats);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads) - 1);
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::size_t total = 0;
    for (const auto& po : part_out) total += po.size();
    c.triples.reserve(total);
    for (auto& po : part_out) c.triples.insert(c.triples.end(), po.begin(), po.end());
    return c;
}

template <Semiring SR>
TripleList<typename SR::value_type> heap_spgemm_triples(
    const TripleList<typename SR::value_type>& a, const TripleList<typename SR::value_type>& b,
    int nthreads = 1) {
    return heap_spgemm<SR>(triples_to_dcsc(a), triples_to_dcsc(b), nthreads);
}

}  // namespace spgemm
