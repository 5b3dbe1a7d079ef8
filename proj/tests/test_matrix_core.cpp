#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "spgemm/dcsc.hpp"
#include "spgemm/matrix_market.hpp"
#include "spgemm/permute.hpp"
#include "spgemm/spa_spgemm.hpp"
#include "test_util.hpp"

using namespace spgemm;
using testutil::random_matrix;

namespace {

TripleList<double> small_example() {
    // 4x4 with entries (0,0)=1, (2,0)=2, (1,3)=3
    TripleList<double> t(4, 4);
    t.triples = {{0, 0, 1.0}, {2, 0, 2.0}, {1, 3, 3.0}};
    return t;
}

}  // namespace

TEST_CASE("dcsc from triples: empty matrix") {
    TripleList<double> t(4, 4);
    auto m = triples_to_dcsc(t);
    CHECK(m.nzc() == 0);
    CHECK(m.nnz() == 0);
    CHECK(dcsc_to_triples(m).triples.empty());
}

TEST_CASE("dcsc from triples: hand-traced pointers") {
    auto m = triples_to_dcsc(small_example());
    CHECK(m.jc == std::vector<index_t>{0, 3});
    CHECK(m.cp == std::vector<index_t>{0, 2, 3});
    CHECK(m.rowidx == std::vector<index_t>{0, 2, 1});
}

TEST_CASE("dcsc of a dense matrix degenerates to csc") {
    TripleList<double> t(2, 2);
    t.triples = {{0, 0, 1.0}, {1, 0, 1.0}, {0, 1, 1.0}, {1, 1, 1.0}};
    auto m = triples_to_dcsc(t);
    CHECK(m.jc == std::vector<index_t>{0, 1});
    CHECK(m.cp == std::vector<index_t>{0, 2, 4});
}

TEST_CASE("dcsc rejects unsorted and unreduced input") {
    TripleList<double> unsorted(4, 4);
    unsorted.triples = {{1, 3, 3.0}, {0, 0, 1.0}};
    CHECK_THROWS_AS(triples_to_dcsc(unsorted), std::invalid_argument);

    TripleList<double> dup(4, 4);
    dup.triples = {{0, 0, 1.0}, {0, 0, 2.0}};
    CHECK_THROWS_AS(triples_to_dcsc(dup), std::invalid_argument);
}

TEST_CASE("single entry round trip") {
    TripleList<double> t(7, 9);
    t.triples = {{3, 5, -2.5}};
    CHECK(dcsc_to_triples(triples_to_dcsc(t)) == t);
}

TEST_CASE("format conversions are the identity on random matrices") {
    SeqRng rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto nr = static_cast<index_t>(1 + rng.bounded(64));
        const auto nc = static_cast<index_t>(1 + rng.bounded(64));
        auto t = random_matrix<double>(rng, nr, nc, 0.08, false);
        auto csc = triples_to_csc(t);
        auto dcsc = csc_to_dcsc(csc);
        CHECK(dcsc_to_triples(dcsc) == t);
    }
}

TEST_CASE("dcsc storage stays O(nnz) for huge dimensions") {
    TripleList<double> t(1'000'000'000, 1'000'000'000);
    t.triples = {{5, 17, 1.0}, {999'999'999, 123'456'789, 2.0}};
    auto m = triples_to_dcsc(t);
    CHECK(m.nzc() == 2);
    CHECK(m.jc.size() == 2);
    CHECK(m.cp.size() == 3);
    CHECK(dcsc_to_triples(m) == t);
}

TEST_CASE("extract_columns") {
    auto m = triples_to_dcsc(small_example());

    SUBCASE("identity slice") {
        auto s = extract_columns(m, 0, m.ncols);
        CHECK(dcsc_to_triples(s) == small_example());
    }
    SUBCASE("empty column range") {
        auto s = extract_columns(m, 1, 3);
        CHECK(s.nnz() == 0);
        CHECK(s.ncols == 2);
    }
    SUBCASE("single column rebased") {
        auto s = extract_columns(m, 3, 4);
        CHECK(s.ncols == 1);
        REQUIRE(s.nnz() == 1);
        CHECK(dcsc_to_triples(s).triples[0] == Triple<double>{1, 0, 3.0});
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(extract_columns(m, 2, 5), std::invalid_argument);
        CHECK_THROWS_AS(extract_columns(m, -1, 2), std::invalid_argument);
    }
}

TEST_CASE("aux array appears on first column lookup") {
    auto m = triples_to_dcsc(small_example());
    CHECK_FALSE(m.has_aux());
    (void)extract_columns(m, 1, 3);
    CHECK(m.has_aux());
}

TEST_CASE("extract_columns equals the triple-filter oracle") {
    SeqRng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto nc = static_cast<index_t>(1 + rng.bounded(50));
        auto t = random_matrix<double>(rng, 40, nc, 0.1, false);
        auto m = triples_to_dcsc(t);
        const auto lo = static_cast<index_t>(rng.bounded(static_cast<std::uint64_t>(nc) + 1));
        const auto hi =
            lo + static_cast<index_t>(rng.bounded(static_cast<std::uint64_t>(nc - lo) + 1));
        TripleList<double> expect(t.nrows, hi - lo);
        for (const auto& e : t.triples)
            if (e.col >= lo && e.col < hi) expect.triples.push_back({e.row, e.col - lo, e.value});
        CHECK(dcsc_to_triples(extract_columns(m, lo, hi)) == expect);
    }
}

TEST_CASE("matrix market: write/read round trip") {
    SeqRng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto t = random_matrix<double>(rng, 30, 22, 0.12, false);
        std::stringstream ss;
        write_matrix_market(t, ss);
        CHECK(read_matrix_market(ss, "roundtrip") == t);
    }
}

TEST_CASE("matrix market: symmetric expansion") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "3 3 2\n"
        "2 1 5.0\n"
        "3 3 1.0\n");
    auto t = read_matrix_market(in, "sym");
    REQUIRE(t.nnz() == 3);
    CHECK(t.triples[0] == Triple<double>{1, 0, 5.0});  // lower triangle entry
    CHECK(t.triples[1] == Triple<double>{0, 1, 5.0});  // mirrored
    CHECK(t.triples[2] == Triple<double>{2, 2, 1.0});  // diagonal not duplicated
}

TEST_CASE("matrix market: explicit zero values are kept") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real general\n"
        "2 2 2\n"
        "1 1 0.0\n"
        "2 2 3.0\n");
    auto t = read_matrix_market(in, "zeros");
    REQUIRE(t.nnz() == 2);
    CHECK(t.triples[0] == Triple<double>{0, 0, 0.0});
}

TEST_CASE("matrix market: duplicates are summed") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real general\n"
        "2 2 3\n"
        "1 1 1.5\n"
        "1 1 2.5\n"
        "2 1 1.0\n");
    auto t = read_matrix_market(in, "dups");
    REQUIRE(t.nnz() == 2);
    CHECK(t.triples[0].value == 4.0);
}

TEST_CASE("matrix market: malformed inputs") {
    std::istringstream bad_header("%%MatrixMarket matrix array real general\n2 2 0\n");
    CHECK_THROWS_AS(read_matrix_market(bad_header, "bad"), MatrixMarketError);

    std::istringstream out_of_bounds(
        "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n");
    CHECK_THROWS_AS(read_matrix_market(out_of_bounds, "oob"), MatrixMarketError);

    CHECK_THROWS_AS(read_matrix_market("/nonexistent/path.mtx"), MatrixMarketError);
}

TEST_CASE("symmetric permutation: identity leaves the matrix alone") {
    auto t = small_example();
    std::vector<index_t> id{0, 1, 2, 3};
    CHECK(apply_symmetric_permutation<double>(t, id) == t);
}

TEST_CASE("symmetric permutation preserves nnz and the value multiset") {
    SeqRng rng(5);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto t = random_matrix<double>(rng, 32, 32, 0.1, false);
        auto p = random_symmetric_permute(t, seed);
        CHECK(p.nnz() == t.nnz());
        auto vals = [](const TripleList<double>& x) {
            std::vector<double> v;
            for (const auto& e : x.triples) v.push_back(e.value);
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(vals(p) == vals(t));
    }
}

TEST_CASE("permutation commutes with multiplication: (PAP^T)(PBP^T) = P(AB)P^T") {
    SeqRng rng(9);
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        auto a = random_matrix<double>(rng, 32, 32, 0.1);
        auto b = random_matrix<double>(rng, 32, 32, 0.1);
        auto pa = random_symmetric_permute(a, seed);
        auto pb = random_symmetric_permute(b, seed);
        auto lhs = spa_spgemm_triples<PlusTimes<double>>(pa, pb);
        auto rhs =
            random_symmetric_permute(spa_spgemm_triples<PlusTimes<double>>(a, b), seed);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("permutation rejects non-square matrices") {
    TripleList<double> rect(3, 4);
    CHECK_THROWS_AS(random_symmetric_permute(rect, 1), std::invalid_argument);
}
