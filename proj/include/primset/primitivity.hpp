/// @file primitivity.hpp
/// Primitivity (divisibility-antichain) verification and reciprocal-sum
/// diagnostics for arbitrary sets of positive integers.
#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "primset/common.hpp"

namespace primset {

/// Outcome of a primitivity check. A set is primitive when no element
/// divides another; a failing check carries the offending pair m | n.
struct PrimitivityResult {
    bool primitive;
    std::optional<std::pair<u64, u64>> witness;  // (m, n) with m | n, m != n
};

namespace detail {

inline std::vector<u64> sorted_unique(std::span<const u64> set) {
    std::vector<u64> v(set.begin(), set.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (!v.empty() && v.front() < 1)
        throw std::invalid_argument("primitivity: elements must be >= 1");
    return v;
}

}  // namespace detail

/// Quadratic check over the sorted set. Elements inside a common dyadic
/// block cannot divide one another, so for each m only candidates >= 2m
/// are scanned; the witness, if any, has the smallest m and then the
/// smallest n.
inline PrimitivityResult is_primitive_pairwise(std::span<const u64> set) {
    std::vector<u64> v = detail::sorted_unique(set);
    for (std::size_t i = 0; i < v.size(); ++i) {
        u64 m = v[i];
        auto j = std::lower_bound(v.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                  v.end(), 2 * m);
        for (; j != v.end(); ++j)
            if (*j % m == 0) return {false, std::make_pair(m, *j)};
    }
    return {true, std::nullopt};
}

/// Presence-bitmap check: every element marks its multiples up to x.
/// Same witness order as the pairwise check.
inline PrimitivityResult is_primitive_dense(std::span<const u64> set, u64 x,
                                            u64 bitmap_budget = u64(1) << 28) {
    if (x + 1 > bitmap_budget * 8)
        throw budget_error("is_primitive_dense: bitmap for x = " + std::to_string(x) +
                           " exceeds budget");
    std::vector<u64> v = detail::sorted_unique(set);
    if (!v.empty() && v.back() > x)
        throw std::invalid_argument("is_primitive_dense: element exceeds x");
    std::vector<bool> present(x + 1, false);
    for (u64 m : v) present[m] = true;
    for (u64 m : v)
        for (u64 n = 2 * m; n <= x; n += m)
            if (present[n]) return {false, std::make_pair(m, n)};
    return {true, std::nullopt};
}

/// Size-based dispatch: ad-hoc sets go through the pairwise check, dense
/// constructed sets through the bitmap.
inline PrimitivityResult is_primitive(std::span<const u64> set) {
    if (set.size() < 10000 || set.empty()) return is_primitive_pairwise(set);
    u64 x = *std::max_element(set.begin(), set.end());
    return is_primitive_dense(set, x);
}

/// Sum of 1/(n log n) over elements above 1, compensated summation,
/// natural logarithm. Finite for every primitive set.
inline double erdos_sum(std::span<const u64> set) {
    kahan_sum acc;
    for (u64 n : set)
        if (n > 1) acc.add(1.0 / (double(n) * std::log(double(n))));
    return acc.value();
}

/// Rigorous upper bound for sum of 1/(p log p) over primes p > x, by partial
/// summation against pi(t) < 1.25506 t/log t (valid for all t > 1). Used to
/// bracket the prime Erdos sum: true tail <= c/log x + (c/2)/log^2 x.
inline double erdos_sum_tail_bound(u64 x) {
    if (x < 100) throw std::invalid_argument("erdos_sum_tail_bound: need x >= 100");
    constexpr double c = 1.25506;
    double lx = std::log(double(x));
    return c / lx + 0.5 * c / (lx * lx);
}

}  // namespace primset
