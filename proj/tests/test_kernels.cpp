#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spgemm/flops.hpp"
#include "spgemm/heap_spgemm.hpp"
#include "spgemm/multiway_merge.hpp"
#include "spgemm/spa_spgemm.hpp"
#include "test_util.hpp"

using namespace spgemm;
using testutil::concat_sort_reduce;
using testutil::dense_multiply;
using testutil::random_matrix;

namespace {

template <class V>
TripleList<V> identity(index_t n) {
    TripleList<V> t(n, n);
    for (index_t i = 0; i < n; ++i) t.triples.push_back({i, i, V{1}});
    return t;
}

const TripleList<double> kA{2, 2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 1, 3.0}}};   // [[1,2],[0,3]]
const TripleList<double> kB{2, 2, {{0, 0, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}}};   // [[1,0],[1,1]]
const TripleList<double> kC{2, 2, {{0, 0, 3.0}, {1, 0, 3.0}, {0, 1, 2.0}, {1, 1, 3.0}}};

}  // namespace

TEST_CASE("semiring laws hold on sampled scalars") {
    SeqRng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto x = static_cast<std::int64_t>(rng.bounded(1000)) - 500;
        const auto y = static_cast<std::int64_t>(rng.bounded(1000)) - 500;
        const auto z = static_cast<std::int64_t>(rng.bounded(1000)) - 500;
        using SR = PlusTimes<std::int64_t>;
        CHECK(SR::add(x, SR::add(y, z)) == SR::add(SR::add(x, y), z));
        CHECK(SR::add(x, y) == SR::add(y, x));
        CHECK(SR::add(x, SR::zero()) == x);
        CHECK(SR::multiply(x, SR::one()) == x);

        using MR = MinSelect2nd<double>;
        const double a = rng.unit(), b = rng.unit(), c = rng.unit();
        CHECK(MR::add(a, MR::add(b, c)) == MR::add(MR::add(a, b), c));
        CHECK(MR::add(a, b) == MR::add(b, a));
        CHECK(MR::add(a, MR::zero()) == a);
        CHECK(MR::multiply(a, b) == b);
    }
}

TEST_CASE("spa: zero matrix times anything is empty") {
    TripleList<double> zero(8, 8);
    SeqRng rng(1);
    auto b = random_matrix<double>(rng, 8, 8, 0.3);
    CHECK(spa_spgemm_triples<PlusTimes<double>>(zero, b).nnz() == 0);
}

TEST_CASE("spa and heap agree with the hand-computed 2x2 product") {
    auto sorted_b = kB;
    sorted_b.sort();
    auto sorted_c = kC;
    sorted_c.sort();
    CHECK(spa_spgemm_triples<PlusTimes<double>>(kA, sorted_b) == sorted_c);
    CHECK(heap_spgemm_triples<PlusTimes<double>>(kA, sorted_b) == sorted_c);
}

TEST_CASE("cancellation produces an explicit zero, which is kept") {
    TripleList<double> a(1, 2, {{0, 0, 1.0}, {0, 1, -1.0}});
    TripleList<double> b(2, 1, {{0, 0, 1.0}, {1, 0, 1.0}});
    for (const auto& c : {spa_spgemm_triples<PlusTimes<double>>(a, b),
                          heap_spgemm_triples<PlusTimes<double>>(a, b)}) {
        REQUIRE(c.nnz() == 1);
        CHECK(c.triples[0] == Triple<double>{0, 0, 0.0});
    }
    CHECK(prune_explicit_zeros(spa_spgemm_triples<PlusTimes<double>>(a, b)).nnz() == 0);
}

TEST_CASE("heap: A times the identity is A") {
    SeqRng rng(17);
    auto a = random_matrix<double>(rng, 64, 64, 0.07, false);
    CHECK(heap_spgemm_triples<PlusTimes<double>>(a, identity<double>(64)) == a);
    CHECK(heap_spgemm_triples<PlusTimes<double>>(identity<double>(64), a) == a);
}

TEST_CASE("heap == spa == dense oracle on random rectangular pairs") {
    SeqRng rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        const auto m = static_cast<index_t>(1 + rng.bounded(48));
        const auto l = static_cast<index_t>(1 + rng.bounded(48));
        const auto n = static_cast<index_t>(1 + rng.bounded(48));
        auto a = random_matrix<std::int64_t>(rng, m, l, 0.1);
        auto b = random_matrix<std::int64_t>(rng, l, n, 0.1);
        auto spa = spa_spgemm_triples<PlusTimes<std::int64_t>>(a, b);
        CHECK(heap_spgemm_triples<PlusTimes<std::int64_t>>(a, b) == spa);
        CHECK(dense_multiply(a, b) == spa);
    }
}

TEST_CASE("heap vs spa on float values: within 1e-12 relative") {
    SeqRng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_matrix<double>(rng, 64, 64, 0.08, false);
        auto b = random_matrix<double>(rng, 64, 64, 0.08, false);
        auto h = heap_spgemm_triples<PlusTimes<double>>(a, b);
        auto s = spa_spgemm_triples<PlusTimes<double>>(a, b);
        REQUIRE(h.nnz() == s.nnz());
        for (std::size_t i = 0; i < h.triples.size(); ++i) {
            CHECK(h.triples[i].row == s.triples[i].row);
            CHECK(h.triples[i].col == s.triples[i].col);
            CHECK(std::abs(h.triples[i].value - s.triples[i].value) <=
                  1e-12 * std::max(1.0, std::abs(s.triples[i].value)));
        }
    }
}

TEST_CASE("heap: hypersparse blocks, dimension far above nnz") {
    SeqRng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_matrix<std::int64_t>(rng, 4096, 4096, 0.00005);
        auto b = random_matrix<std::int64_t>(rng, 4096, 4096, 0.00005);
        CHECK(heap_spgemm_triples<PlusTimes<std::int64_t>>(a, b) ==
              spa_spgemm_triples<PlusTimes<std::int64_t>>(a, b));
    }
}

TEST_CASE("heap: bit-identical across thread counts") {
    SeqRng rng(31);
    auto a = random_matrix<double>(rng, 200, 200, 0.05, false);
    auto b = random_matrix<double>(rng, 200, 200, 0.05, false);
    auto da = triples_to_dcsc(a), db = triples_to_dcsc(b);
    const auto base = heap_spgemm<PlusTimes<double>>(da, db, 1);
    for (int t : {2, 4, 8}) CHECK(heap_spgemm<PlusTimes<double>>(da, db, t) == base);
}

TEST_CASE("heap: dimension mismatch is rejected") {
    TripleList<double> a(2, 3), b(4, 2);
    CHECK_THROWS_AS(heap_spgemm_triples<PlusTimes<double>>(a, b), std::invalid_argument);
    CHECK_THROWS_AS(spa_spgemm_triples<PlusTimes<double>>(a, b), std::invalid_argument);
}

TEST_CASE("heap: auxiliary memory stays within nnz(B)") {
    SeqRng rng(37);
    for (int t : {1, 4}) {
        auto a = random_matrix<double>(rng, 300, 300, 0.04, false);
        auto b = random_matrix<double>(rng, 300, 300, 0.04, false);
        HeapSpgemmStats stats;
        heap_spgemm<PlusTimes<double>>(triples_to_dcsc(a), triples_to_dcsc(b), t, &stats);
        CHECK(stats.peak_heap_entries.load() <= static_cast<std::uint64_t>(b.nnz()));
        CHECK(stats.peak_heap_entries.load() > 0);
        CHECK(stats.live_heap_entries.load() == 0);
    }
}

TEST_CASE("merge: k identical singleton lists reduce to k times the value") {
    std::vector<TripleList<double>> lists(6, TripleList<double>(3, 3, {{1, 1, 2.5}}));
    auto merged = multiway_merge<PlusTimes<double>>(lists);
    REQUIRE(merged.nnz() == 1);
    CHECK(merged.triples[0] == Triple<double>{1, 1, 15.0});
}

TEST_CASE("merge: disjoint lists concatenate in sorted order") {
    std::vector<TripleList<double>> lists{
        TripleList<double>(4, 4, {{0, 2, 1.0}, {3, 3, 2.0}}),
        TripleList<double>(4, 4, {{1, 0, 3.0}, {2, 2, 4.0}}),
    };
    auto merged = multiway_merge<PlusTimes<double>>(lists);
    TripleList<double> expect(4, 4, {{1, 0, 3.0}, {0, 2, 1.0}, {2, 2, 4.0}, {3, 3, 2.0}});
    CHECK(merged == expect);
}

TEST_CASE("merge equals the concatenate-sort-reduce oracle") {
    SeqRng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const auto k = 2 + rng.bounded(15);
        std::vector<TripleList<std::int64_t>> lists;
        for (std::uint64_t i = 0; i < k; ++i)
            lists.push_back(random_matrix<std::int64_t>(rng, 24, 24, 0.15));
        CHECK(multiway_merge<PlusTimes<std::int64_t>>(lists) == concat_sort_reduce(lists));
    }
}

TEST_CASE("merge handles unreduced input lists") {
    TripleList<std::int64_t> dup(2, 2);
    dup.triples = {{0, 0, 1}, {0, 0, 2}, {1, 1, 3}};  // sorted but not reduced
    std::vector<TripleList<std::int64_t>> lists{dup, dup};
    auto merged = multiway_merge<PlusTimes<std::int64_t>>(lists);
    TripleList<std::int64_t> expect(2, 2, {{0, 0, 6}, {1, 1, 6}});
    CHECK(merged == expect);
}

TEST_CASE("merge: bit-identical across thread counts, float values") {
    SeqRng rng(43);
    std::vector<TripleList<double>> lists;
    for (int i = 0; i < 12; ++i) lists.push_back(random_matrix<double>(rng, 300, 300, 0.02, false));
    const auto base = multiway_merge<PlusTimes<double>>(lists, 1);
    for (int t : {2, 4, 8}) CHECK(multiway_merge<PlusTimes<double>>(lists, t) == base);
}

TEST_CASE("merge is associative as an operation on list families") {
    SeqRng rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        auto l1 = random_matrix<std::int64_t>(rng, 20, 20, 0.2);
        auto l2 = random_matrix<std::int64_t>(rng, 20, 20, 0.2);
        auto l3 = random_matrix<std::int64_t>(rng, 20, 20, 0.2);
        auto nested = multiway_merge<PlusTimes<std::int64_t>>(
            std::vector{multiway_merge<PlusTimes<std::int64_t>>(std::vector{l1, l2}), l3});
        auto flat = multiway_merge<PlusTimes<std::int64_t>>(std::vector{l1, l2, l3});
        CHECK(nested == flat);
    }
}

TEST_CASE("merge rejects unsorted input") {
    TripleList<double> bad(3, 3);
    bad.triples = {{0, 2, 1.0}, {0, 0, 1.0}};
    std::vector<TripleList<double>> lists{bad};
    CHECK_THROWS_AS(multiway_merge<PlusTimes<double>>(lists), std::invalid_argument);
}

TEST_CASE("merge without reduction keeps duplicates in deterministic order") {
    TripleList<std::int64_t> x(2, 2, {{0, 0, 1}, {1, 1, 5}});
    TripleList<std::int64_t> y(2, 2, {{0, 0, 2}});
    auto merged = multiway_concat_sorted<PlusTimes<std::int64_t>>(std::vector{x, y});
    REQUIRE(merged.nnz() == 3);
    CHECK(merged.triples[0].value == 1);  // source order breaks the tie
    CHECK(merged.triples[1].value == 2);
    CHECK(merged.triples[2].value == 5);
}

TEST_CASE("flops: identity on the left counts nnz(B)") {
    SeqRng rng(53);
    auto b = random_matrix<double>(rng, 40, 40, 0.1);
    CHECK(flops_count_triples(identity<double>(40), b) == static_cast<std::uint64_t>(b.nnz()));
}

TEST_CASE("flops: dense times dense is n^3") {
    const index_t n = 12;
    TripleList<double> dense(n, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) dense.triples.push_back({i, j, 1.0});
    dense.sort();
    CHECK(flops_count_triples(dense, dense) == static_cast<std::uint64_t>(n * n * n));
}

TEST_CASE("flops matches the count instrumented inside spa_spgemm") {
    SeqRng rng(59);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_matrix<double>(rng, 50, 40, 0.1);
        auto b = random_matrix<double>(rng, 40, 30, 0.1);
        std::uint64_t measured = 0;
        spa_spgemm<PlusTimes<double>>(triples_to_csc(a), triples_to_csc(b), &measured);
        CHECK(flops_count_triples(a, b) == measured);
    }
}
