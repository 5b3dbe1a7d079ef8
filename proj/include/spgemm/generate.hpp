#pragma once

#include <cmath>

#include "spgemm/rng.hpp"
#include "spgemm/triple.hpp"

namespace spgemm {

/// Recursive-matrix generator parameters. The matrix is 2^scale x 2^scale;
/// (a,b,c,d) are the quadrant probabilities (top-left, top-right,
/// bottom-left, bottom-right) and must sum to 1.
struct RmatParams {
    int scale = 10;
    double a = 0.57, b = 0.19, c = 0.19, d = 0.05;  // Graph500 defaults
    double avg_nnz_per_row = 16.0;
    std::uint64_t seed = 0;

    // Caps the number of drawn entries before duplicate reduction.
    std::uint64_t max_drawn_entries = std::uint64_t{1} << 26;

    void validate() const {
        if (scale < 1 || scale > 62) throw std::invalid_argument("rmat: scale out of range");
        if (a < 0 || b < 0 || c < 0 || d < 0 || std::abs(a + b + c + d - 1.0) > 1e-12)
            throw std::invalid_argument("rmat: quadrant probabilities must sum to 1");
        if (avg_nnz_per_row <= 0) throw std::invalid_argument("rmat: avg_nnz_per_row must be > 0");
    }

    static RmatParams g500(int scale, std::uint64_t seed) {
        return {scale, 0.57, 0.19, 0.19, 0.05, 16.0, seed};
    }
    static RmatParams ssca(int scale, std::uint64_t seed) {
        return {scale, 0.6, 0.4 / 3, 0.4 / 3, 0.4 / 3, 8.0, seed};
    }
    static RmatParams er(int scale, std::uint64_t seed) {
        return {scale, 0.25, 0.25, 0.25, 0.25, 16.0, seed};
    }
};

/// Draws avg_nnz_per_row * 2^scale entries, each located by `scale`
/// independent quadrant choices, then sums duplicates (so the realized nnz is
/// at most the drawn count). Entry e's randomness is keyed by (seed, e, level)
/// so the output does not depend on generation order.
inline TripleList<double> rmat_generate(const RmatParams& p) {
    p.validate();
    const index_t n = index_t{1} << p.scale;
    const auto drawn = static_cast<std::uint64_t>(p.avg_nnz_per_row * static_cast<double>(n));
    if (drawn > p.max_drawn_entries)
        throw std::invalid_argument("rmat: drawn entry count exceeds memory cap");

    TripleList<double> t(n, n);
    t.triples.reserve(drawn);
    const double ab = p.a + p.b;
    const double abc = p.a + p.b + p.c;
    for (std::uint64_t e = 0; e < drawn; ++e) {
        index_t row = 0, col = 0;
        for (int level = 0; level < p.scale; ++level) {
            const double u = counter_unit(p.seed, e, static_cast<std::uint64_t>(level));
            row <<= 1;
            col <<= 1;
            if (u < p.a) {
            } else if (u < ab) {
                col |= 1;
            } else if (u < abc) {
                row |= 1;
            } else {
                row |= 1;
                col |= 1;
            }
        }
        t.triples.push_back({row, col, 1.0});
    }
    t.sort();
    t.reduce([](double x, double y) { return x + y; });
    return t;
}

/// G(n, p) adjacency with p = d/n: every cell is present independently.
/// Column j is generated from its own counter stream, so the output is
/// deterministic and order-independent.
inline TripleList<double> er_generate(index_t n, double d, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("er: negative dimension");
    if (d < 0 || d > static_cast<double>(n)) throw std::invalid_argument("er: need 0 <= d <= n");
    TripleList<double> t(n, n);
    if (n == 0 || d == 0) return t;
    const double prob = d / static_cast<double>(n);
    if (prob >= 1.0) {
        t.triples.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (index_t j = 0; j < n; ++j)
            for (index_t i = 0; i < n; ++i) t.triples.push_back({i, j, 1.0});
        return t;
    }
    // Geometric skipping: gap between hits ~ floor(log(u)/log(1-p)).
    const double log1mp = std::log1p(-prob);
    for (index_t j = 0; j < n; ++j) {
        double pos = -1;
        std::uint64_t k = 0;
        for (;;) {
            const double u = 1.0 - counter_unit(seed, static_cast<std::uint64_t>(j), k++);
            pos += 1.0 + std::floor(std::log(u) / log1mp);
            if (pos >= static_cast<double>(n)) break;
            t.triples.push_back({static_cast<index_t>(pos), j, 1.0});
        }
    }
    t.sort();  // already sorted by construction, cheap no-op pass
    return t;
}

}  // namespace spgemm
