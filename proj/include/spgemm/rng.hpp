#pragma once

#include <cstdint>

namespace spgemm {

// splitmix64 finalizer; full-period bijective mixer.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based uniform draw keyed by (seed, a, b, c): the same key always
/// yields the same value, independent of call order or thread count.
inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t h = mix64(seed ^ 0x8badf00d5ca1ab1eULL);
    h = mix64(h ^ mix64(a));
    h = mix64(h ^ mix64(b ^ 0xd6e8feb86659fd93ULL));
    h = mix64(h ^ mix64(c ^ 0xa5a3564e3bbb2d33ULL));
    return h;
}

// Uniform in [0, 1), 53-bit resolution.
inline double u64_to_unit(std::uint64_t u) {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

inline double counter_unit(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                           std::uint64_t c = 0) {
    return u64_to_unit(counter_u64(seed, a, b, c));
}

/// Small sequential generator for shuffles and one-off choices. Deterministic
/// across platforms, unlike the standard distributions.
class SeqRng {
public:
    explicit SeqRng(std::uint64_t seed) : state_(mix64(seed ^ 0x1234567887654321ULL)) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    double unit() { return u64_to_unit(next()); }

    // Unbiased draw from [0, n) by rejection.
    std::uint64_t bounded(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t u;
        do {
            u = next();
        } while (u >= limit);
        return u % n;
    }

private:
    std::uint64_t state_;
};

}  // namespace spgemm
