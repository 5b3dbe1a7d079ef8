#pragma once

#include <numeric>
#include <span>

#include "spgemm/rng.hpp"
#include "spgemm/triple.hpp"

namespace spgemm {

/// P*A*P^T for the permutation taking old index i to perm[i].
template <class V>
TripleList<V> apply_symmetric_permutation(const TripleList<V>& t, std::span<const index_t> perm) {
    if (t.nrows != t.ncols)
        throw std::invalid_argument("symmetric permutation requires a square matrix");
    if (static_cast<index_t>(perm.size()) != t.nrows)
        throw std::invalid_argument("permutation length mismatch");
    TripleList<V> out(t.nrows, t.ncols);
    out.triples.reserve(t.triples.size());
    for (const auto& e : t.triples)
        out.triples.push_back({perm[static_cast<std::size_t>(e.row)],
                               perm[static_cast<std::size_t>(e.col)], e.value});
    out.sort();
    return out;
}

inline std::vector<index_t> random_permutation(index_t n, std::uint64_t seed) {
    std::vector<index_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), index_t{0});
    SeqRng rng(seed);
    for (index_t i = n - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[rng.bounded(static_cast<std::uint64_t>(i) + 1)]);
    return perm;
}

/// P*A*P^T for a seed-determined random permutation P (Fisher-Yates).
template <class V>
TripleList<V> random_symmetric_permute(const TripleList<V>& t, std::uint64_t seed) {
    if (t.nrows != t.ncols)
        throw std::invalid_argument("symmetric permutation requires a square matrix");
    auto perm = random_permutation(t.nrows, seed);
    return apply_symmetric_permutation<V>(t, perm);
}

}  // namespace spgemm
