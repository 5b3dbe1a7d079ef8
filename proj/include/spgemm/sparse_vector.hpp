#pragma once

#include <unordered_map>

#include "spgemm/dcsc.hpp"
#include "spgemm/semiring.hpp"

namespace spgemm {

/// Sparse vector: (index, value) pairs with strictly increasing indices.
template <class V>
struct SparseVector {
    index_t len = 0;
    std::vector<std::pair<index_t, V>> entries;

    SparseVector() = default;
    explicit SparseVector(index_t n) : len(n) {}

    index_t nnz() const { return static_cast<index_t>(entries.size()); }

    bool valid() const {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].first < 0 || entries[i].first >= len) return false;
            if (i > 0 && entries[i].first <= entries[i - 1].first) return false;
        }
        return true;
    }

    const V* find(index_t idx) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), idx,
                                   [](const auto& e, index_t x) { return e.first < x; });
        return it != entries.end() && it->first == idx ? &it->second : nullptr;
    }

    friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

/// Union of the index sets; f combines values on overlap.
template <class V, class F>
SparseVector<V> ewise_add(const SparseVector<V>& x, const SparseVector<V>& y, F f) {
    if (x.len != y.len) throw std::invalid_argument("ewise_add: length mismatch");
    SparseVector<V> out(x.len);
    out.entries.reserve(x.entries.size() + y.entries.size());
    std::size_t i = 0, j = 0;
    while (i < x.entries.size() && j < y.entries.size()) {
        if (x.entries[i].first < y.entries[j].first) {
            out.entries.push_back(x.entries[i++]);
        } else if (y.entries[j].first < x.entries[i].first) {
            out.entries.push_back(y.entries[j++]);
        } else {
            out.entries.emplace_back(x.entries[i].first,
                                     f(x.entries[i].second, y.entries[j].second));
            ++i, ++j;
        }
    }
    out.entries.insert(out.entries.end(), x.entries.begin() + static_cast<std::ptrdiff_t>(i),
                       x.entries.end());
    out.entries.insert(out.entries.end(), y.entries.begin() + static_cast<std::ptrdiff_t>(j),
                       y.entries.end());
    return out;
}

/// Intersection of the index sets; f combines the paired values.
template <class V, class F>
SparseVector<V> ewise_mult(const SparseVector<V>& x, const SparseVector<V>& y, F f) {
    if (x.len != y.len) throw std::invalid_argument("ewise_mult: length mismatch");
    SparseVector<V> out(x.len);
    std::size_t i = 0, j = 0;
    while (i < x.entries.size() && j < y.entries.size()) {
        if (x.entries[i].first < y.entries[j].first) {
            ++i;
        } else if (y.entries[j].first < x.entries[i].first) {
            ++j;
        } else {
            out.entries.emplace_back(x.entries[i].first,
                                     f(x.entries[i].second, y.entries[j].second));
            ++i, ++j;
        }
    }
    return out;
}

/// Entries of x whose index is absent from y (structural exclusion).
template <class V, class W>
SparseVector<V> ewise_without(const SparseVector<V>& x, const SparseVector<W>& y) {
    if (x.len != y.len) throw std::invalid_argument("ewise_without: length mismatch");
    SparseVector<V> out(x.len);
    std::size_t j = 0;
    for (const auto& e : x.entries) {
        while (j < y.entries.size() && y.entries[j].first < e.first) ++j;
        if (j == y.entries.size() || y.entries[j].first != e.first) out.entries.push_back(e);
    }
    return out;
}

/// y = A x over the semiring: y[i] = fold-add over stored j of
/// multiply(A(i,j), x[j]). With (min, select2nd) this is the smallest x
/// value among i's in-neighbors.
template <Semiring SR>
SparseVector<typename SR::value_type> mxv(const DcscMatrix<typename SR::value_type>& a,
                                          const SparseVector<typename SR::value_type>& x) {
    using V = typename SR::value_type;
    if (a.ncols != x.len) throw std::invalid_argument("mxv: length mismatch");
    std::unordered_map<index_t, V> acc;
    for (const auto& [j, xv] : x.entries) {
        const index_t jpos = a.locate_column(j);
        if (jpos >= a.nzc() || a.jc[jpos] != j) continue;
        for (index_t p = a.cp[jpos]; p < a.cp[jpos + 1]; ++p) {
            const V prod = SR::multiply(a.values[p], xv);
            auto [it, fresh] = acc.try_emplace(a.rowidx[p], prod);
            if (!fresh) it->second = SR::add(it->second, prod);
        }
    }
    SparseVector<V> y(a.nrows);
    y.entries.assign(acc.begin(), acc.end());
    std::sort(y.entries.begin(), y.entries.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    return y;
}

}  // namespace spgemm
