#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spgemm {

using index_t = std::int64_t;

template <class V>
struct Triple {
    index_t row = 0;
    index_t col = 0;
    V value{};

    friend bool operator==(const Triple&, const Triple&) = default;
};

// Orders by (col, row): the j-th column comes before the (j+1)-st.
template <class V>
inline bool col_row_less(const Triple<V>& a, const Triple<V>& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
}

/// Sparse matrix as a list of (row, col, value) entries, kept sorted by
/// (col, row). Explicit zero values count as nonzeros and are never dropped.
template <class V>
struct TripleList {
    index_t nrows = 0;
    index_t ncols = 0;
    std::vector<Triple<V>> triples;

    TripleList() = default;
    TripleList(index_t r, index_t c) : nrows(r), ncols(c) {}
    TripleList(index_t r, index_t c, std::vector<Triple<V>> t)
        : nrows(r), ncols(c), triples(std::move(t)) {}

    index_t nnz() const { return static_cast<index_t>(triples.size()); }

    bool sorted() const {
        return std::is_sorted(triples.begin(), triples.end(), col_row_less<V>);
    }

    // Sorted and no two entries share (row, col).
    bool reduced() const {
        if (!sorted()) return false;
        for (std::size_t i = 1; i < triples.size(); ++i)
            if (triples[i].row == triples[i - 1].row && triples[i].col == triples[i - 1].col)
                return false;
        return true;
    }

    void sort() {
        std::sort(triples.begin(), triples.end(), col_row_less<V>);
    }

    /// Collapses runs with equal (row, col) using `add`; requires sorted input.
    template <class Add>
    void reduce(Add add) {
        if (triples.empty()) return;
        std::size_t out = 0;
        for (std::size_t i = 1; i < triples.size(); ++i) {
            if (triples[i].row == triples[out].row && triples[i].col == triples[out].col) {
                triples[out].value = add(triples[out].value, triples[i].value);
            } else {
                triples[++out] = triples[i];
            }
        }
        triples.resize(out + 1);
    }

    void check_bounds() const {
        for (const auto& t : triples)
            if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
                throw std::invalid_argument("triple index out of matrix bounds");
    }

    friend bool operator==(const TripleList&, const TripleList&) = default;
};

template <class V>
TripleList<V> transpose(const TripleList<V>& t) {
    TripleList<V> out(t.ncols, t.nrows);
    out.triples.reserve(t.triples.size());
    for (const auto& e : t.triples) out.triples.push_back({e.col, e.row, e.value});
    out.sort();
    return out;
}

/// Drops entries whose value equals V{}. Never called implicitly by any
/// kernel; explicit zeros are first-class nonzeros everywhere else.
template <class V>
TripleList<V> prune_explicit_zeros(const TripleList<V>& t) {
    TripleList<V> out(t.nrows, t.ncols);
    for (const auto& e : t.triples)
        if (!(e.value == V{})) out.triples.push_back(e);
    return out;
}

}  // namespace spgemm
