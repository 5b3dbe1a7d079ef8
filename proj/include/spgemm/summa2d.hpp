#pragma once

#include <chrono>

#include "spgemm/collectives.hpp"
#include "spgemm/distribute.hpp"
#include "spgemm/flops.hpp"
#include "spgemm/heap_spgemm.hpp"
#include "spgemm/multiway_merge.hpp"
#include "spgemm/phase_report.hpp"

namespace spgemm {

/// A: m x l, B: l x n.
struct GlobalDims {
    index_t m = 0, l = 0, n = 0;
};

struct Summa2DConfig {
    int pr = 1, pc = 1;
    index_t b = 0;  // blocking parameter; 0 means full local inner dimension
    int nthreads = 1;

    void validate() const {
        if (pr != pc)
            throw std::invalid_argument("summa: layers must be square (pr == pc)");
        if (b < 0) throw std::invalid_argument("summa: blocking parameter must be >= 1");
        if (nthreads < 1) throw std::invalid_argument("summa: need at least one thread");
    }
};

/// Everything a distributed multiply leaves behind: the output blocks by
/// grid rank, per-process phase times and counter snapshots, and the
/// intermediate-triple statistics behind the 3D expansion-ratio bound.
template <class V>
struct EngineRun {
    GridShape shape;
    GlobalDims dims;
    std::vector<TripleList<V>> c_blocks;
    std::vector<PhaseTimes> times;
    std::vector<CommCounters> counters;
    std::vector<std::uint64_t> cint_nnz;  // per process: triples entering the final reduction
    std::uint64_t flops = 0;              // summed over processes and stages

    std::uint64_t total_cint() const {
        std::uint64_t s = 0;
        for (auto x : cint_nnz) s += x;
        return s;
    }
    std::uint64_t output_nnz() const {
        std::uint64_t s = 0;
        for (const auto& b : c_blocks) s += static_cast<std::uint64_t>(b.nnz());
        return s;
    }
    TripleList<V> gathered() const {
        std::vector<DcscMatrix<V>> d;
        d.reserve(c_blocks.size());
        for (const auto& b : c_blocks) d.push_back(triples_to_dcsc(b));
        return gather_3d(d, dims.m, dims.n, shape);
    }
    PhaseReport report() const { return make_phase_report(times, counters); }
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class V>
DcscMatrix<V> transpose_to_dcsc(const DcscMatrix<V>& m) {
    return triples_to_dcsc(transpose(dcsc_to_triples(m)));
}

/// The SUMMA stage loop of one layer: for every process column/row r and
/// every width-b slab of r's local inner dimension, broadcast the A slab
/// along rows and the (transpose-stored) B slab along columns, then fold a
/// rank-b update into the partial list. stage_widths[r] is the local inner
/// width owned by process column r, identical down a layer.
template <Semiring SR>
std::vector<TripleList<typename SR::value_type>> summa_stage_loop(
    ProcessCtx& ctx, const DcscMatrix<typename SR::value_type>& a_local,
    const DcscMatrix<typename SR::value_type>& bt_local, const std::vector<index_t>& stage_widths,
    index_t b, int nthreads, PhaseTimes& pt, std::uint64_t& flops_acc) {
    using V = typename SR::value_type;
    std::vector<TripleList<V>> partials;
    for (int r = 0; r < static_cast<int>(stage_widths.size()); ++r) {
        const index_t width = stage_widths[static_cast<std::size_t>(r)];
        for (index_t lo = 0; lo < width; lo += (b > 0 ? b : width)) {
            const index_t hi = b > 0 ? std::min(width, lo + b) : width;

            auto t0 = std::chrono::steady_clock::now();
            DcscMatrix<V> a_piece =
                ctx.j == r ? extract_columns(a_local, lo, hi) : DcscMatrix<V>{};
            a_piece = bcast(ctx.row, r, a_piece);
            DcscMatrix<V> bt_piece =
                ctx.i == r ? extract_columns(bt_local, lo, hi) : DcscMatrix<V>{};
            bt_piece = bcast(ctx.col, r, bt_piece);
            pt[Phase::Broadcast] += seconds_since(t0);

            t0 = std::chrono::steady_clock::now();
            const DcscMatrix<V> b_piece = transpose_to_dcsc(bt_piece);
            flops_acc += flops_count(a_piece, b_piece);
            TripleList<V> update = heap_spgemm<SR>(a_piece, b_piece, nthreads);
            if (update.nnz() > 0) partials.push_back(std::move(update));
            pt[Phase::LocalMultiply] += seconds_since(t0);
        }
    }
    return partials;
}

}  // namespace detail

/// Sparse SUMMA on a single-layer grid. a_blocks holds the 2D-distributed A;
/// bt_blocks holds B distributed 2D and locally transposed
/// (distribute_2d(..., /*transpose_blocks=*/true)). The result stays
/// distributed like C; stage partials merge once at the end.
template <Semiring SR>
EngineRun<typename SR::value_type> summa_2d(
    Grid& grid, const std::vector<DcscMatrix<typename SR::value_type>>& a_blocks,
    const std::vector<DcscMatrix<typename SR::value_type>>& bt_blocks, GlobalDims dims,
    Summa2DConfig cfg) {
    using V = typename SR::value_type;
    cfg.validate();
    const GridShape shape = grid.shape();
    if (shape.pr != cfg.pr || shape.pc != cfg.pc || shape.pl != 1)
        throw std::invalid_argument("summa_2d: grid does not match config (needs pl == 1)");
    if (a_blocks.size() != static_cast<std::size_t>(shape.nprocs()) ||
        bt_blocks.size() != a_blocks.size())
        throw std::invalid_argument("summa_2d: one block per process required");

    BlockMap inner(dims.l, shape.pr);
    std::vector<index_t> widths;
    for (int r = 0; r < shape.pr; ++r) widths.push_back(inner.size(r));

    EngineRun<V> run;
    run.shape = shape;
    run.dims = dims;
    run.c_blocks.resize(a_blocks.size());
    run.times.resize(a_blocks.size());
    run.counters.resize(a_blocks.size());
    run.cint_nnz.resize(a_blocks.size(), 0);
    std::vector<std::uint64_t> flops_per(a_blocks.size(), 0);

    grid.reset_counters();
    run_on_grid(grid, [&](ProcessCtx& ctx) {
        const auto r = static_cast<std::size_t>(ctx.rank);
        PhaseTimes& pt = run.times[r];
        auto partials = detail::summa_stage_loop<SR>(ctx, a_blocks[r], bt_blocks[r], widths,
                                                     cfg.b, cfg.nthreads, pt, flops_per[r]);
        for (const auto& p : partials)
            run.cint_nnz[r] += static_cast<std::uint64_t>(p.nnz());

        const auto t0 = std::chrono::steady_clock::now();
        TripleList<V> c = multiway_merge<SR>(partials, cfg.nthreads);
        c.nrows = BlockMap(dims.m, shape.pr).size(ctx.i);
        c.ncols = BlockMap(dims.n, shape.pc).size(ctx.j);
        run.c_blocks[r] = std::move(c);
        pt[Phase::MergeLayer] += detail::seconds_since(t0);
    });
    for (int q = 0; q < grid.nprocs(); ++q) run.counters[static_cast<std::size_t>(q)] = grid.ctx(q).counters;
    for (auto f : flops_per) run.flops += f;
    return run;
}

/// Distributes, multiplies, returns the still-distributed run.
template <Semiring SR>
EngineRun<typename SR::value_type> summa_2d_from_global(
    Grid& grid, const TripleList<typename SR::value_type>& a,
    const TripleList<typename SR::value_type>& b, Summa2DConfig cfg) {
    if (a.ncols != b.nrows) throw std::invalid_argument("summa_2d: dimension mismatch");
    auto a_blocks = distribute_2d(a, cfg.pr, cfg.pc);
    auto bt_blocks = distribute_2d(b, cfg.pr, cfg.pc, /*transpose_blocks=*/true);
    return summa_2d<SR>(grid, a_blocks, bt_blocks, {a.nrows, a.ncols, b.ncols}, cfg);
}

}  // namespace spgemm
