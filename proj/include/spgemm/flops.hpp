#pragma once

#include "spgemm/dcsc.hpp"

namespace spgemm {

/// Number of scalar multiply-add pairs in A*B:
/// sum over k of nnz(A(:,k)) * nnz(B(k,:)), accumulated column-by-column
/// over B as sum_j flops(C(:,j)).
template <class V>
std::uint64_t flops_count(const DcscMatrix<V>& a, const DcscMatrix<V>& b) {
    if (a.ncols != b.nrows) throw std::invalid_argument("flops_count: dimension mismatch");
    std::uint64_t flops = 0;
    for (index_t jpos = 0; jpos < b.nzc(); ++jpos)
        for (index_t pb = b.cp[jpos]; pb < b.cp[jpos + 1]; ++pb)
            flops += static_cast<std::uint64_t>(a.nnz_of_column(b.rowidx[pb]));
    return flops;
}

template <class V>
std::uint64_t flops_count_triples(const TripleList<V>& a, const TripleList<V>& b) {
    return flops_count(triples_to_dcsc(a), triples_to_dcsc(b));
}

}  // namespace spgemm
