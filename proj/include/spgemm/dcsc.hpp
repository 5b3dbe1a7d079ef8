#pragma once

#include <atomic>
#include <memory>

#include "spgemm/csc.hpp"
#include "spgemm/triple.hpp"

namespace spgemm {

/// Doubly compressed sparse column storage: a sparse array of sparse columns.
/// Only columns with at least one nonzero are represented, so the footprint
/// is O(nnz) and independent of ncols. Submatrices of a 2D/3D-distributed
/// matrix are hypersparse (nnz < ncols), where plain CSC would waste
/// O(ncols) on the pointer array alone.
template <class V>
class DcscMatrix {
public:
    index_t nrows = 0;
    index_t ncols = 0;
    std::vector<index_t> jc;      // column indices of nonempty columns, strictly increasing
    std::vector<index_t> cp;      // length nzc()+1, pointers over nonempty columns only
    std::vector<index_t> rowidx;  // length nnz, strictly increasing within a column
    std::vector<V> values;

    DcscMatrix() = default;
    DcscMatrix(index_t r, index_t c) : nrows(r), ncols(c), cp{0} {}

    DcscMatrix(const DcscMatrix& o)
        : nrows(o.nrows), ncols(o.ncols), jc(o.jc), cp(o.cp), rowidx(o.rowidx), values(o.values) {}
    DcscMatrix(DcscMatrix&& o) noexcept
        : nrows(o.nrows), ncols(o.ncols), jc(std::move(o.jc)), cp(std::move(o.cp)),
          rowidx(std::move(o.rowidx)), values(std::move(o.values)),
          aux_(o.aux_.exchange(nullptr, std::memory_order_acq_rel)) {}
    DcscMatrix& operator=(DcscMatrix o) noexcept {
        swap(*this, o);
        return *this;
    }
    ~DcscMatrix() { delete aux_.load(std::memory_order_acquire); }

    friend void swap(DcscMatrix& a, DcscMatrix& b) noexcept {
        using std::swap;
        swap(a.nrows, b.nrows);
        swap(a.ncols, b.ncols);
        swap(a.jc, b.jc);
        swap(a.cp, b.cp);
        swap(a.rowidx, b.rowidx);
        swap(a.values, b.values);
        const Aux* pa = a.aux_.load(std::memory_order_acquire);
        const Aux* pb = b.aux_.load(std::memory_order_acquire);
        a.aux_.store(pb, std::memory_order_release);
        b.aux_.store(pa, std::memory_order_release);
    }

    index_t nzc() const { return static_cast<index_t>(jc.size()); }
    index_t nnz() const { return static_cast<index_t>(rowidx.size()); }

    index_t col_nnz(std::size_t jpos) const { return cp[jpos + 1] - cp[jpos]; }

    /// Position in jc of the first nonempty column with index >= col.
    /// Uses the AUX acceleration array, built lazily on first use.
    index_t locate_column(index_t col) const {
        if (jc.empty()) return 0;
        const Aux* a = aux();
        index_t b = std::min<index_t>(col / a->stride, static_cast<index_t>(a->buckets.size()) - 1);
        index_t pos = a->buckets[static_cast<std::size_t>(b)];
        while (pos < nzc() && jc[static_cast<std::size_t>(pos)] < col) ++pos;
        return pos;
    }

    index_t nnz_of_column(index_t col) const {
        index_t pos = locate_column(col);
        if (pos < nzc() && jc[static_cast<std::size_t>(pos)] == col)
            return col_nnz(static_cast<std::size_t>(pos));
        return 0;
    }

    bool has_aux() const { return aux_.load(std::memory_order_acquire) != nullptr; }

private:
    // AUX maps column-space buckets to jc positions so a column range can be
    // located in expected O(1) without a dense per-column array. Built lazily
    // and safe to race: the losing builder is discarded.
    struct Aux {
        index_t stride = 1;
        std::vector<index_t> buckets;
    };
    mutable std::atomic<const Aux*> aux_{nullptr};

    const Aux* aux() const {
        const Aux* a = aux_.load(std::memory_order_acquire);
        if (a) return a;
        auto built = std::make_unique<Aux>();
        built->stride = std::max<index_t>(1, ncols / (nzc() + 1));
        index_t nbuckets = (ncols + built->stride - 1) / built->stride + 1;
        built->buckets.assign(static_cast<std::size_t>(nbuckets), nzc());
        index_t pos = 0;
        for (index_t b = 0; b < nbuckets; ++b) {
            while (pos < nzc() && jc[static_cast<std::size_t>(pos)] < b * built->stride) ++pos;
            built->buckets[static_cast<std::size_t>(b)] = pos;
        }
        const Aux* expected = nullptr;
        const Aux* fresh = built.get();
        if (aux_.compare_exchange_strong(expected, fresh, std::memory_order_acq_rel,
                                         std::memory_order_acquire)) {
            built.release();
            return fresh;
        }
        return expected;
    }
};

/// Requires sorted, reduced input.
template <class V>
DcscMatrix<V> triples_to_dcsc(const TripleList<V>& t) {
    if (!t.sorted()) throw std::invalid_argument("triples_to_dcsc: input not sorted by (col,row)");
    if (!t.reduced()) throw std::invalid_argument("triples_to_dcsc: input has duplicate coordinates");
    t.check_bounds();
    DcscMatrix<V> m(t.nrows, t.ncols);
    m.rowidx.reserve(t.triples.size());
    m.values.reserve(t.triples.size());
    for (const auto& e : t.triples) {
        if (m.jc.empty() || m.jc.back() != e.col) {
            m.jc.push_back(e.col);
            m.cp.back() = m.nnz();
            m.cp.push_back(m.nnz());
        }
        m.rowidx.push_back(e.row);
        m.values.push_back(e.value);
    }
    m.cp.back() = m.nnz();
    return m;
}

template <class V>
TripleList<V> dcsc_to_triples(const DcscMatrix<V>& m) {
    TripleList<V> t(m.nrows, m.ncols);
    t.triples.reserve(m.rowidx.size());
    for (index_t j = 0; j < m.nzc(); ++j)
        for (index_t p = m.cp[j]; p < m.cp[j + 1]; ++p)
            t.triples.push_back({m.rowidx[p], m.jc[j], m.values[p]});
    return t;  // already (col,row) sorted
}

template <class V>
DcscMatrix<V> csc_to_dcsc(const CscMatrix<V>& m) {
    return triples_to_dcsc(csc_to_triples(m));
}

template <class V>
CscMatrix<V> dcsc_to_csc(const DcscMatrix<V>& m) {
    return triples_to_csc(dcsc_to_triples(m));
}

/// Submatrix of columns [lo, hi), column indices rebased to 0. Cost is
/// proportional to (hi - lo) plus the output nnz.
template <class V>
DcscMatrix<V> extract_columns(const DcscMatrix<V>& m, index_t lo, index_t hi) {
    if (lo < 0 || hi < lo || hi > m.ncols)
        throw std::invalid_argument("extract_columns: range out of bounds");
    DcscMatrix<V> out(m.nrows, hi - lo);
    index_t pos = m.locate_column(lo);
    for (; pos < m.nzc() && m.jc[pos] < hi; ++pos) {
        out.jc.push_back(m.jc[pos] - lo);
        out.cp.back() = out.nnz();
        out.cp.push_back(out.nnz());
        for (index_t p = m.cp[pos]; p < m.cp[pos + 1]; ++p) {
            out.rowidx.push_back(m.rowidx[p]);
            out.values.push_back(m.values[p]);
        }
    }
    out.cp.back() = out.nnz();
    return out;
}

}  // namespace spgemm
