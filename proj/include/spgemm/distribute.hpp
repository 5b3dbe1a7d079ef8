#pragma once

#include "spgemm/dcsc.hpp"
#include "spgemm/grid.hpp"

namespace spgemm {

/// Ceil-division 1D block map: leading blocks take ceil(total/nblocks)
/// elements, the last takes the remainder, trailing blocks may be empty.
struct BlockMap {
    index_t total = 0;
    index_t nblocks = 1;
    index_t q = 1;

    BlockMap() = default;
    BlockMap(index_t total_, index_t nblocks_)
        : total(total_), nblocks(nblocks_),
          q(total_ > 0 ? (total_ + nblocks_ - 1) / nblocks_ : 1) {
        if (nblocks_ < 1) throw std::invalid_argument("BlockMap: need at least one block");
    }

    index_t lo(index_t i) const { return std::min(i * q, total); }
    index_t hi(index_t i) const { return std::min((i + 1) * q, total); }
    index_t size(index_t i) const { return hi(i) - lo(i); }
    index_t owner(index_t g) const { return std::min(g / q, nblocks - 1); }
};

/// Two-level split of the column space: pc outer blocks, each cut into pl
/// consecutive slices. P(i,j,k) owns slice k of outer block j.
struct ColSplit {
    BlockMap outer;
    int pl = 1;

    ColSplit() = default;
    ColSplit(index_t total, int pc, int pl_) : outer(total, pc), pl(pl_) {}

    BlockMap inner(index_t j) const { return BlockMap(outer.size(j), pl); }

    index_t lo(index_t j, index_t k) const { return outer.lo(j) + inner(j).lo(k); }
    index_t hi(index_t j, index_t k) const { return outer.lo(j) + inner(j).hi(k); }
    index_t size(index_t j, index_t k) const { return inner(j).size(k); }
};

namespace detail {

template <class V>
std::vector<TripleList<V>> bucket_to_sorted(std::vector<TripleList<V>>&& buckets) {
    for (auto& b : buckets) b.sort();
    return std::move(buckets);
}

}  // namespace detail

/// 2D block distribution: block (i,j) holds global rows [i*ceil(m/pr), ...)
/// and columns [j*ceil(n/pc), ...), locally 0-based. Blocks are indexed
/// i*pc + j, matching GridShape::rank_of with pl = 1.
template <class V>
std::vector<DcscMatrix<V>> distribute_2d(const TripleList<V>& t, int pr, int pc,
                                         bool transpose_blocks = false) {
    BlockMap rows(t.nrows, pr), cols(t.ncols, pc);
    std::vector<TripleList<V>> buckets(static_cast<std::size_t>(pr) * static_cast<std::size_t>(pc));
    for (int i = 0; i < pr; ++i)
        for (int j = 0; j < pc; ++j) {
            auto& b = buckets[static_cast<std::size_t>(i * pc + j)];
            b.nrows = transpose_blocks ? cols.size(j) : rows.size(i);
            b.ncols = transpose_blocks ? rows.size(i) : cols.size(j);
        }
    for (const auto& e : t.triples) {
        const index_t bi = rows.owner(e.row), bj = cols.owner(e.col);
        const index_t r = e.row - rows.lo(bi), c = e.col - cols.lo(bj);
        auto& b = buckets[static_cast<std::size_t>(bi * pc + bj)];
        b.triples.push_back(transpose_blocks ? Triple<V>{c, r, e.value} : Triple<V>{r, c, e.value});
    }
    std::vector<DcscMatrix<V>> out;
    out.reserve(buckets.size());
    for (auto& b : detail::bucket_to_sorted(std::move(buckets))) out.push_back(triples_to_dcsc(b));
    return out;
}

template <class V>
TripleList<V> gather_2d(const std::vector<DcscMatrix<V>>& blocks, index_t nrows, index_t ncols,
                        int pr, int pc) {
    BlockMap rows(nrows, pr), cols(ncols, pc);
    TripleList<V> t(nrows, ncols);
    for (int i = 0; i < pr; ++i)
        for (int j = 0; j < pc; ++j)
            for (const auto& e :
                 dcsc_to_triples(blocks[static_cast<std::size_t>(i * pc + j)]).triples)
                t.triples.push_back({e.row + rows.lo(i), e.col + cols.lo(j), e.value});
    t.sort();
    if (!t.reduced()) throw std::logic_error("gather_2d: blocks overlap");
    return t;
}

/// Split 3D distribution: P(i,j,k) owns rows [i*m/pr, ...) and the k-th
/// slice of column block j, a (m/pr) x (n/(pc*pl)) submatrix. Nothing is
/// replicated. Blocks are indexed by grid rank.
template <class V>
std::vector<DcscMatrix<V>> distribute_3d(const TripleList<V>& t, GridShape shape) {
    shape.validate();
    BlockMap rows(t.nrows, shape.pr);
    ColSplit cols(t.ncols, shape.pc, shape.pl);
    std::vector<TripleList<V>> buckets(static_cast<std::size_t>(shape.nprocs()));
    for (int i = 0; i < shape.pr; ++i)
        for (int j = 0; j < shape.pc; ++j)
            for (int k = 0; k < shape.pl; ++k) {
                auto& b = buckets[static_cast<std::size_t>(shape.rank_of(i, j, k))];
                b.nrows = rows.size(i);
                b.ncols = cols.size(j, k);
            }
    for (const auto& e : t.triples) {
        const index_t bi = rows.owner(e.row);
        const index_t bj = cols.outer.owner(e.col);
        const index_t bk = cols.inner(bj).owner(e.col - cols.outer.lo(bj));
        auto& b = buckets[static_cast<std::size_t>(
            shape.rank_of(static_cast<int>(bi), static_cast<int>(bj), static_cast<int>(bk)))];
        b.triples.push_back({e.row - rows.lo(bi), e.col - cols.lo(bj, bk), e.value});
    }
    std::vector<DcscMatrix<V>> out;
    out.reserve(buckets.size());
    for (auto& b : detail::bucket_to_sorted(std::move(buckets))) out.push_back(triples_to_dcsc(b));
    return out;
}

template <class V>
TripleList<V> gather_3d(const std::vector<DcscMatrix<V>>& blocks, index_t nrows, index_t ncols,
                        GridShape shape) {
    BlockMap rows(nrows, shape.pr);
    ColSplit cols(ncols, shape.pc, shape.pl);
    TripleList<V> t(nrows, ncols);
    for (int i = 0; i < shape.pr; ++i)
        for (int j = 0; j < shape.pc; ++j)
            for (int k = 0; k < shape.pl; ++k)
                for (const auto& e :
                     dcsc_to_triples(blocks[static_cast<std::size_t>(shape.rank_of(i, j, k))])
                         .triples)
                    t.triples.push_back({e.row + rows.lo(i), e.col + cols.lo(j, k), e.value});
    t.sort();
    if (!t.reduced()) throw std::logic_error("gather_3d: blocks overlap");
    return t;
}

}  // namespace spgemm
