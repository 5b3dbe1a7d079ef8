#pragma once

#include "spgemm/triple.hpp"

namespace spgemm {

/// Compressed sparse column storage: a dense array of sparse columns.
template <class V>
struct CscMatrix {
    index_t nrows = 0;
    index_t ncols = 0;
    std::vector<index_t> colptr;  // length ncols+1, nondecreasing
    std::vector<index_t> rowidx;  // length nnz, strictly increasing per column
    std::vector<V> values;

    index_t nnz() const { return static_cast<index_t>(rowidx.size()); }
};

template <class V>
CscMatrix<V> triples_to_csc(const TripleList<V>& t) {
    if (!t.sorted()) throw std::invalid_argument("triples_to_csc: input not sorted by (col,row)");
    if (!t.reduced()) throw std::invalid_argument("triples_to_csc: input has duplicate coordinates");
    t.check_bounds();
    CscMatrix<V> m;
    m.nrows = t.nrows;
    m.ncols = t.ncols;
    m.colptr.assign(static_cast<std::size_t>(t.ncols) + 1, 0);
    m.rowidx.reserve(t.triples.size());
    m.values.reserve(t.triples.size());
    for (const auto& e : t.triples) {
        ++m.colptr[static_cast<std::size_t>(e.col) + 1];
        m.rowidx.push_back(e.row);
        m.values.push_back(e.value);
    }
    for (std::size_t j = 0; j < static_cast<std::size_t>(t.ncols); ++j)
        m.colptr[j + 1] += m.colptr[j];
    return m;
}

template <class V>
TripleList<V> csc_to_triples(const CscMatrix<V>& m) {
    TripleList<V> t(m.nrows, m.ncols);
    t.triples.reserve(m.rowidx.size());
    for (index_t j = 0; j < m.ncols; ++j)
        for (index_t p = m.colptr[j]; p < m.colptr[j + 1]; ++p)
            t.triples.push_back({m.rowidx[p], j, m.values[p]});
    return t;  // already (col,row) sorted
}

}  // namespace spgemm
