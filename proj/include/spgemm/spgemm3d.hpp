#pragma once

#include "spgemm/summa2d.hpp"

namespace spgemm {

struct Split3DConfig {
    index_t b = 0;  // 0 = full local inner dimension
    int nthreads = 1;
    // When set, triples with repeated indices are reduced before the fiber
    // exchange instead of after it. Off by default: the intermediate C ships
    // unreduced and the only reduction is the final local merge.
    bool pre_reduce = false;

    void validate() const {
        if (b < 0) throw std::invalid_argument("split3d: blocking parameter must be >= 1");
        if (nthreads < 1) throw std::invalid_argument("split3d: need at least one thread");
    }
};

namespace detail {

// Slice the column range [lo, hi) out of a sorted list, rebasing columns.
template <class V>
TripleList<V> slice_columns(const TripleList<V>& t, index_t lo, index_t hi) {
    TripleList<V> out(t.nrows, hi - lo);
    const Triple<V>* p = column_lower_bound(t, lo);
    const Triple<V>* e = column_lower_bound(t, hi);
    out.triples.reserve(static_cast<std::size_t>(e - p));
    for (; p != e; ++p) out.triples.push_back({p->row, p->col - lo, p->value});
    return out;
}

}  // namespace detail

/// Split-3D SpGEMM: inputs arrive split (not replicated) across layers via
/// distribute_3d. Per process: (1) fiber all-to-all realigns B to its layer's
/// inner-dimension slice, locally transposed; (2) the layer runs SUMMA
/// stages, accumulating intermediate triples; (3) a fiber all-to-all routes
/// the intermediate C to its owners; (4) one local merge reduces it.
template <Semiring SR>
EngineRun<typename SR::value_type> split_3d_spgemm(
    Grid& grid, const std::vector<DcscMatrix<typename SR::value_type>>& a_blocks,
    const std::vector<DcscMatrix<typename SR::value_type>>& b_blocks, GlobalDims dims,
    Split3DConfig cfg) {
    using V = typename SR::value_type;
    cfg.validate();
    const GridShape shape = grid.shape();
    if (shape.pr != shape.pc)
        throw std::invalid_argument("split_3d_spgemm: layers must be square (pr == pc)");
    if (a_blocks.size() != static_cast<std::size_t>(shape.nprocs()) ||
        b_blocks.size() != a_blocks.size())
        throw std::invalid_argument("split_3d_spgemm: one block per process required");

    const BlockMap b_rows(dims.l, shape.pr);         // B's row blocks
    const ColSplit a_cols(dims.l, shape.pc, shape.pl);  // A's column slices
    const ColSplit c_cols(dims.n, shape.pc, shape.pl);  // C/B column slices
    const BlockMap c_rows(dims.m, shape.pr);

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
        const auto me = static_cast<std::size_t>(ctx.rank);
        PhaseTimes& pt = run.times[me];

        // Redistribution of B across layers: slice my rows by the fiber's
        // inner map, rebase columns from my (j,k) slice to the full block j,
        // exchange, and transpose the union so inner-dimension ranges become
        // column extractions.
        auto t0 = std::chrono::steady_clock::now();
        const BlockMap fiber_rows(b_rows.size(ctx.i), shape.pl);
        const index_t my_col_off = c_cols.inner(ctx.j).lo(ctx.k);
        const index_t nj = c_cols.outer.size(ctx.j);
        std::vector<TripleList<V>> b_out(static_cast<std::size_t>(shape.pl));
        for (int kk = 0; kk < shape.pl; ++kk) {
            auto& pkt = b_out[static_cast<std::size_t>(kk)];
            pkt.nrows = fiber_rows.size(kk);
            pkt.ncols = nj;
        }
        for (const auto& e : dcsc_to_triples(b_blocks[me]).triples) {
            const index_t kk = fiber_rows.owner(e.row);
            b_out[static_cast<std::size_t>(kk)].triples.push_back(
                {e.row - fiber_rows.lo(kk), e.col + my_col_off, e.value});
        }
        auto b_in = alltoall(ctx.fiber, std::move(b_out));
        TripleList<V> bt_list(nj, fiber_rows.size(ctx.k));
        for (auto& part : b_in)
            for (const auto& e : part.triples) bt_list.triples.push_back({e.col, e.row, e.value});
        bt_list.sort();
        const DcscMatrix<V> bt_local = triples_to_dcsc(bt_list);
        pt[Phase::AlltoAll] += detail::seconds_since(t0);

        std::vector<index_t> widths;
        for (int r = 0; r < shape.pc; ++r) widths.push_back(a_cols.size(r, ctx.k));
        auto partials = detail::summa_stage_loop<SR>(ctx, a_blocks[me], bt_local, widths, cfg.b,
                                                     cfg.nthreads, pt, flops_per[me]);

        // Pack the intermediate C by destination column ranges (the same
        // split distribute_3d uses). Runs are merged sorted; reduction, by
        // default, waits until after the exchange.
        t0 = std::chrono::steady_clock::now();
        const BlockMap dest_cols = c_cols.inner(ctx.j);
        std::vector<TripleList<V>> c_out(static_cast<std::size_t>(shape.pl));
        for (int kk = 0; kk < shape.pl; ++kk) {
            std::vector<TripleList<V>> runs;
            for (const auto& p : partials) {
                auto s = detail::slice_columns(p, dest_cols.lo(kk), dest_cols.hi(kk));
                if (s.nnz() > 0) runs.push_back(std::move(s));
            }
            auto& pkt = c_out[static_cast<std::size_t>(kk)];
            pkt = cfg.pre_reduce ? multiway_merge<SR>(runs, cfg.nthreads)
                                 : multiway_concat_sorted<SR>(runs, cfg.nthreads);
            pkt.nrows = c_rows.size(ctx.i);
            pkt.ncols = dest_cols.size(kk);
            run.cint_nnz[me] += static_cast<std::uint64_t>(pkt.nnz());
        }
        pt[Phase::MergeLayer] += detail::seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        auto c_in = alltoall(ctx.fiber, std::move(c_out));
        pt[Phase::AlltoAll] += detail::seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        TripleList<V> c = multiway_merge<SR>(c_in, cfg.nthreads);
        c.nrows = c_rows.size(ctx.i);
        c.ncols = c_cols.size(ctx.j, ctx.k);
        run.c_blocks[me] = std::move(c);
        pt[Phase::MergeFiber] += detail::seconds_since(t0);
    });
    for (int q = 0; q < grid.nprocs(); ++q)
        run.counters[static_cast<std::size_t>(q)] = grid.ctx(q).counters;
    for (auto f : flops_per) run.flops += f;
    return run;
}

template <Semiring SR>
EngineRun<typename SR::value_type> split_3d_from_global(
    Grid& grid, const TripleList<typename SR::value_type>& a,
    const TripleList<typename SR::value_type>& b, Split3DConfig cfg) {
    if (a.ncols != b.nrows) throw std::invalid_argument("split_3d_spgemm: dimension mismatch");
    auto a_blocks = distribute_3d(a, grid.shape());
    auto b_blocks = distribute_3d(b, grid.shape());
    return split_3d_spgemm<SR>(grid, a_blocks, b_blocks, {a.nrows, a.ncols, b.ncols}, cfg);
}

/// Measured nnz(C_int)/nnz(C) of a completed run; never below 1 and never
/// above flops/nnz(C), which it asserts.
template <class V>
double cint_expansion_ratio(const EngineRun<V>& run) {
    const std::uint64_t cint = run.total_cint();
    const std::uint64_t out = run.output_nnz();
    if (out == 0) return 1.0;
    const double ratio = static_cast<double>(cint) / static_cast<double>(out);
    const double bound = static_cast<double>(run.flops) / static_cast<double>(out);
    if (cint < out || cint > run.flops)
        throw std::logic_error("cint_expansion_ratio: measured ratio escapes [1, flops/nnz(C)]");
    (void)bound;
    return ratio;
}

}  // namespace spgemm
