#pragma once

#include <atomic>
#include <span>
#include <thread>

#include "spgemm/semiring.hpp"
#include "spgemm/triple.hpp"

namespace spgemm {

namespace detail {

template <class V>
struct MergeCursor {
    index_t col;
    index_t row;
    index_t src;
    const Triple<V>* pos;
    const Triple<V>* end;
};

template <class V>
inline bool merge_after(const MergeCursor<V>& x, const MergeCursor<V>& y) {
    if (x.col != y.col) return x.col > y.col;
    if (x.row != y.row) return x.row > y.row;
    return x.src > y.src;
}

// First triple with column >= x.
template <class V>
inline const Triple<V>* column_lower_bound(const TripleList<V>& t, index_t x) {
    Triple<V> probe{std::numeric_limits<index_t>::min(), x, V{}};
    return std::to_address(
        std::lower_bound(t.triples.begin(), t.triples.end(), probe, col_row_less<V>));
}

// Heap-based k-way merge of the column range [col_lo, col_hi) of each list.
// Triples ordered (col, row, source); with Reduce, runs of equal (row, col)
// fold through SR::add in that fixed order.
template <Semiring SR, bool Reduce>
void merge_column_range(std::span<const TripleList<typename SR::value_type>> lists,
                        index_t col_lo, index_t col_hi,
                        std::vector<Triple<typename SR::value_type>>& out) {
    using V = typename SR::value_type;
    std::vector<MergeCursor<V>> heap;
    heap.reserve(lists.size());
    for (std::size_t l = 0; l < lists.size(); ++l) {
        const Triple<V>* lo = column_lower_bound(lists[l], col_lo);
        const Triple<V>* hi = column_lower_bound(lists[l], col_hi);
        if (lo != hi) heap.push_back({lo->col, lo->row, static_cast<index_t>(l), lo, hi});
    }
    std::make_heap(heap.begin(), heap.end(), merge_after<V>);
    index_t last_row = -1, last_col = -1;
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), merge_after<V>);
        MergeCursor<V>& cur = heap.back();
        if (Reduce && !out.empty() && cur.row == last_row && cur.col == last_col) {
            out.back().value = SR::add(out.back().value, cur.pos->value);
        } else {
            out.push_back(*cur.pos);
            last_row = cur.row;
            last_col = cur.col;
        }
        if (++cur.pos != cur.end) {
            cur.col = cur.pos->col;
            cur.row = cur.pos->row;
            std::push_heap(heap.begin(), heap.end(), merge_after<V>);
        } else {
            heap.pop_back();
        }
    }
}

template <Semiring SR, bool Reduce>
TripleList<typename SR::value_type> merge_lists(
    std::span<const TripleList<typename SR::value_type>> lists, int nthreads) {
    using V = typename SR::value_type;
    if (lists.empty()) return {};
    const index_t nrows = lists[0].nrows;
    const index_t ncols = lists[0].ncols;
    std::size_t total = 0;
    for (const auto& l : lists) {
        if (l.nrows != nrows || l.ncols != ncols)
            throw std::invalid_argument("multiway_merge: list dimensions disagree");
        if (!l.sorted()) throw std::invalid_argument("multiway_merge: input list not sorted");
        total += l.triples.size();
    }
    TripleList<V> out(nrows, ncols);
    if (total == 0) return out;

    if (nthreads <= 1) {
        out.triples.reserve(total);
        merge_column_range<SR, Reduce>(lists, 0, ncols, out.triples);
        return out;
    }

    // 4t column-range parts with near-equal element counts. A part boundary
    // is a column index found by binary search on the summed positions, so a
    // column never splits across parts and the result is thread-invariant.
    const index_t nparts = static_cast<index_t>(4 * nthreads);
    auto count_before = [&](index_t x) {
        std::size_t n = 0;
        for (const auto& l : lists)
            n += static_cast<std::size_t>(column_lower_bound(l, x) - l.triples.data());
        return n;
    };
    std::vector<index_t> bounds{0};
    for (index_t i = 1; i < nparts; ++i) {
        const std::size_t target = total * static_cast<std::size_t>(i) / static_cast<std::size_t>(nparts);
        index_t lo = bounds.back(), hi = ncols;
        while (lo < hi) {  // smallest x with count_before(x) >= target
            const index_t mid = lo + (hi - lo) / 2;
            if (count_before(mid) < target)
                lo = mid + 1;
            else
                hi = mid;
        }
        bounds.push_back(lo);
    }
    bounds.push_back(ncols);

    std::vector<std::vector<Triple<V>>> part_out(bounds.size() - 1);
    std::atomic<std::size_t> next_part{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t p = next_part.fetch_add(1);
            if (p >= part_out.size()) break;
            if (bounds[p] < bounds[p + 1])
                merge_column_range<SR, Reduce>(lists, bounds[p], bounds[p + 1], part_out[p]);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::size_t out_total = 0;
    for (const auto& po : part_out) out_total += po.size();
    out.triples.reserve(out_total);
    for (auto& po : part_out) out.triples.insert(out.triples.end(), po.begin(), po.end());
    return out;
}

}  // namespace detail

/// Merges k sorted triple lists into one sorted, reduced list: the output
/// value at (i, j) is the SR::add-fold of every input value at (i, j).
/// Cost is sum_l nnz(T_l) log k; output is identical for every thread count.
template <Semiring SR>
TripleList<typename SR::value_type> multiway_merge(
    std::span<const TripleList<typename SR::value_type>> lists, int nthreads = 1) {
    return detail::merge_lists<SR, true>(lists, nthreads);
}

template <Semiring SR>
TripleList<typename SR::value_type> multiway_merge(
    const std::vector<TripleList<typename SR::value_type>>& lists, int nthreads = 1) {
    return detail::merge_lists<SR, true>(
        std::span<const TripleList<typename SR::value_type>>(lists.data(), lists.size()),
        nthreads);
}

/// Same merge order but keeps duplicates: used to pack sorted, unreduced
/// intermediate triples whose reduction happens after communication.
template <Semiring SR>
TripleList<typename SR::value_type> multiway_concat_sorted(
    const std::vector<TripleList<typename SR::value_type>>& lists, int nthreads = 1) {
    return detail::merge_lists<SR, false>(
        std::span<const TripleList<typename SR::value_type>>(lists.data(), lists.size()),
        nthreads);
}

}  // namespace spgemm
