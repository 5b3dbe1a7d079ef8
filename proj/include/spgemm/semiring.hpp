#pragma once

#include <limits>

namespace spgemm {

// A semiring supplies (add, zero) and (multiply, one) over value_type.
// Kernels never rely on multiply(zero, x) == zero: entries are only ever
// combined when both operands are stored nonzeros, which keeps non-numeric
// semirings like (min, select2nd) valid.
template <class SR>
concept Semiring = requires(typename SR::value_type a, typename SR::value_type b) {
    { SR::zero() } -> std::convertible_to<typename SR::value_type>;
    { SR::one() } -> std::convertible_to<typename SR::value_type>;
    { SR::add(a, b) } -> std::convertible_to<typename SR::value_type>;
    { SR::multiply(a, b) } -> std::convertible_to<typename SR::value_type>;
};

template <class T>
struct PlusTimes {
    using value_type = T;
    static constexpr T zero() { return T{}; }
    static constexpr T one() { return T{1}; }
    static constexpr T add(T a, T b) { return a + b; }
    static constexpr T multiply(T a, T b) { return a * b; }
};

/// (min, select2nd): multiplication forwards the right operand, addition
/// keeps the minimum. Drives the MIS-2 neighborhood minima.
template <class T>
struct MinSelect2nd {
    using value_type = T;
    static constexpr T zero() { return std::numeric_limits<T>::infinity(); }
    static constexpr T one() { return T{}; }  // select2nd has no right identity; unused
    static constexpr T add(T a, T b) { return b < a ? b : a; }
    static constexpr T multiply(T /*a*/, T b) { return b; }
};

}  // namespace spgemm
