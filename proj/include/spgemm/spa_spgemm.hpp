#pragma once

#include "spgemm/csc.hpp"
#include "spgemm/semiring.hpp"

namespace spgemm {

/// Gustavson's column-wise SpGEMM with a sparse accumulator. The SPA is an
/// O(nrows) dense workspace, which rules this routine out for hypersparse
/// blocks; it is the serial reference that every other multiply path is
/// checked against.
template <Semiring SR>
TripleList<typename SR::value_type> spa_spgemm(const CscMatrix<typename SR::value_type>& a,
                                               const CscMatrix<typename SR::value_type>& b,
                                               std::uint64_t* flops_out = nullptr) {
    using V = typename SR::value_type;
    if (a.ncols != b.nrows) throw std::invalid_argument("spa_spgemm: dimension mismatch");

    std::uint64_t flops = 0;
    TripleList<V> c(a.nrows, b.ncols);
    std::vector<V> spa(static_cast<std::size_t>(a.nrows), SR::zero());
    std::vector<bool> occupied(static_cast<std::size_t>(a.nrows), false);
    std::vector<index_t> touched;

    for (index_t j = 0; j < b.ncols; ++j) {
        touched.clear();
        for (index_t pb = b.colptr[j]; pb < b.colptr[j + 1]; ++pb) {
            const index_t k = b.rowidx[pb];
            const V bkj = b.values[pb];
            flops += static_cast<std::uint64_t>(a.colptr[k + 1] - a.colptr[k]);
            for (index_t pa = a.colptr[k]; pa < a.colptr[k + 1]; ++pa) {
                const index_t i = a.rowidx[pa];
                const V prod = SR::multiply(a.values[pa], bkj);
                if (occupied[static_cast<std::size_t>(i)]) {
                    spa[static_cast<std::size_t>(i)] =
                        SR::add(spa[static_cast<std::size_t>(i)], prod);
                } else {
                    occupied[static_cast<std::size_t>(i)] = true;
                    spa[static_cast<std::size_t>(i)] = prod;
                    touched.push_back(i);
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        for (index_t i : touched) {
            c.triples.push_back({i, j, spa[static_cast<std::size_t>(i)]});
            occupied[static_cast<std::size_t>(i)] = false;
        }
    }
    if (flops_out) *flops_out = flops;
    return c;
}

template <Semiring SR>
TripleList<typename SR::value_type> spa_spgemm_triples(
    const TripleList<typename SR::value_type>& a, const TripleList<typename SR::value_type>& b) {
    return spa_spgemm<SR>(triples_to_csc(a), triples_to_csc(b));
}

}  // namespace spgemm
