#pragma once

#include <functional>

#include "spgemm/rng.hpp"
#include "spgemm/sparse_vector.hpp"

namespace spgemm {

namespace detail {

/// Candidate key: a random draw plus the vertex id as tiebreaker, so keys
/// are totally ordered and Luby-style progress never stalls on equal values.
struct RandKey {
    double value = 0;
    index_t id = 0;

    friend bool operator<(const RandKey& a, const RandKey& b) {
        return a.value != b.value ? a.value < b.value : a.id < b.id;
    }
    friend bool operator==(const RandKey&, const RandKey&) = default;
};

struct MinSelect2ndKey {
    using value_type = RandKey;
    static RandKey zero() {
        return {std::numeric_limits<double>::infinity(), std::numeric_limits<index_t>::max()};
    }
    static RandKey one() { return {}; }
    static RandKey add(RandKey a, RandKey b) { return b < a ? b : a; }
    static RandKey multiply(RandKey, RandKey b) { return b; }
};

// Strips the diagonal and keeps the pattern only.
template <class V>
TripleList<RandKey> offdiagonal_pattern(const TripleList<V>& t) {
    TripleList<RandKey> p(t.nrows, t.ncols);
    for (const auto& e : t.triples)
        if (e.row != e.col) p.triples.push_back({e.row, e.col, RandKey{}});
    return p;
}

}  // namespace detail

/// Distance-2 maximal independent set of the graph whose adjacency pattern
/// is `a` (diagonal entries ignored). Repeatedly: draw random values on the
/// candidates, take two (min, select2nd) matrix-vector hops to find each
/// vertex's 2-hop candidate minimum, admit the candidates that win their own
/// neighborhood, then prune the winners and their 2-hop neighborhoods from
/// the candidate set. Deterministic per seed.
///
/// Asymmetric patterns are rejected unless symmetrize is set, in which case
/// the pattern of a + a^T is used.
template <class V>
SparseVector<double> mis2(const DcscMatrix<V>& a, std::uint64_t seed, bool symmetrize = false) {
    using detail::RandKey;
    if (a.nrows != a.ncols) throw std::invalid_argument("mis2: adjacency must be square");
    const index_t n = a.nrows;

    TripleList<RandKey> pattern = detail::offdiagonal_pattern(dcsc_to_triples(a));
    {
        TripleList<RandKey> pt = transpose(pattern);
        if (pt.triples != pattern.triples) {
            if (!symmetrize) throw std::invalid_argument("mis2: adjacency pattern not symmetric");
            pattern.triples.insert(pattern.triples.end(), pt.triples.begin(), pt.triples.end());
            pattern.sort();
            pattern.reduce([](RandKey x, RandKey) { return x; });
        }
    }
    const DcscMatrix<RandKey> adj = triples_to_dcsc(pattern);

    SparseVector<RandKey> cands(n), mis(n);
    cands.entries.reserve(static_cast<std::size_t>(n));
    for (index_t v = 0; v < n; ++v) cands.entries.emplace_back(v, RandKey{});

    std::uint64_t iter = 0;
    while (cands.nnz() > 0) {
        for (auto& [v, key] : cands.entries)
            key = {counter_unit(seed, iter, static_cast<std::uint64_t>(v)), v};
        ++iter;
        if (iter > static_cast<std::uint64_t>(n) + 1)
            throw std::logic_error("mis2: no progress");  // unreachable: keys are distinct

        auto minadj1 = mxv<detail::MinSelect2ndKey>(adj, cands);
        auto minadj2 = mxv<detail::MinSelect2ndKey>(adj, minadj1);
        auto minadj =
            ewise_add(minadj1, minadj2, [](RandKey x, RandKey y) { return y < x ? y : x; });

        // A candidate joins when its own key beats every 2-hop candidate
        // key. The 2-hop minimum reaches back to the vertex itself through
        // any neighbor, so "beats" is "not strictly above"; vertices with no
        // 2-hop minimum at all (isolated) join unconditionally.
        SparseVector<RandKey> new_members(n);
        for (const auto& e : cands.entries) {
            const RandKey* m = minadj.find(e.first);
            if (!m || !(*m < e.second)) new_members.entries.push_back(e);
        }

        cands = ewise_without(cands, new_members);
        auto adj1 = mxv<detail::MinSelect2ndKey>(adj, new_members);
        auto adj2 = mxv<detail::MinSelect2ndKey>(adj, adj1);
        auto neighborhood = ewise_add(adj1, adj2, [](RandKey x, RandKey) { return x; });
        cands = ewise_without(cands, neighborhood);
        mis = ewise_add(mis, new_members, [](RandKey x, RandKey) { return x; });
    }

    SparseVector<double> out(n);
    out.entries.reserve(mis.entries.size());
    for (const auto& [v, key] : mis.entries) out.entries.emplace_back(v, 1.0);
    return out;
}

/// Restriction operator from a MIS-2: one aggregate per member, seeded by
/// the member and grown over its distance-1 neighborhood. A vertex adjacent
/// to several members joins the smallest-id member's aggregate; vertices
/// covered only at distance 2 are assigned uniformly at random for load
/// balance. R is nrows(a) x |mis2| with exactly one 1.0 per row.
template <class V>
DcscMatrix<double> build_restriction(const DcscMatrix<V>& a, const SparseVector<double>& mis2set,
                                     std::uint64_t seed) {
    if (a.nrows != a.ncols) throw std::invalid_argument("build_restriction: square input required");
    const index_t n = a.nrows;
    if (!mis2set.valid() || mis2set.len != n || (n > 0 && mis2set.nnz() == 0))
        throw std::invalid_argument("build_restriction: invalid mis2 set");
    const index_t naggs = mis2set.nnz();

    std::vector<index_t> agg(static_cast<std::size_t>(n), -1);
    for (index_t q = 0; q < naggs; ++q)
        agg[static_cast<std::size_t>(mis2set.entries[static_cast<std::size_t>(q)].first)] = q;

    // Distance-1 attachment; members come in increasing id order, so the
    // first claim is the smallest-id member.
    const auto at = transpose(dcsc_to_triples(a));  // walk rows via transposed columns
    const DcscMatrix<V> adj_t = triples_to_dcsc(at);
    for (index_t q = 0; q < naggs; ++q) {
        const index_t m = mis2set.entries[static_cast<std::size_t>(q)].first;
        const index_t jpos = adj_t.locate_column(m);
        if (jpos >= adj_t.nzc() || adj_t.jc[jpos] != m) continue;
        for (index_t p = adj_t.cp[jpos]; p < adj_t.cp[jpos + 1]; ++p) {
            const index_t v = adj_t.rowidx[p];
            if (agg[static_cast<std::size_t>(v)] < 0) agg[static_cast<std::size_t>(v)] = q;
        }
    }

    // Remaining singletons (covered only at distance 2).
    for (index_t v = 0; v < n; ++v)
        if (agg[static_cast<std::size_t>(v)] < 0)
            agg[static_cast<std::size_t>(v)] = static_cast<index_t>(
                counter_u64(seed, static_cast<std::uint64_t>(v)) %
                static_cast<std::uint64_t>(naggs));

    TripleList<double> r(n, naggs);
    r.triples.reserve(static_cast<std::size_t>(n));
    for (index_t v = 0; v < n; ++v) r.triples.push_back({v, agg[static_cast<std::size_t>(v)], 1.0});
    r.sort();
    return triples_to_dcsc(r);
}

using SpgemmEngine =
    std::function<TripleList<double>(const TripleList<double>&, const TripleList<double>&)>;

/// (R^T A, R^T A R) through any multiply engine; the transpose is a
/// triple-level swap plus re-sort.
inline std::pair<TripleList<double>, TripleList<double>> restrict_products(
    const TripleList<double>& a, const DcscMatrix<double>& r, const SpgemmEngine& engine) {
    const TripleList<double> rt = transpose(dcsc_to_triples(r));
    if (rt.ncols != a.nrows) throw std::invalid_argument("restrict_products: dimension mismatch");
    TripleList<double> rta = engine(rt, a);
    TripleList<double> rtar = engine(rta, dcsc_to_triples(r));
    return {std::move(rta), std::move(rtar)};
}

}  // namespace spgemm
