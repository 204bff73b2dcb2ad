// Independent reference implementations used only to check the library.
// Everything here is deliberately naive: plain trial division and direct
// summation, sharing no code path with the implementations under test.
#pragma once

#include <cstdint>
#include <cmath>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<u64> primes_up_to(u64 x) {
    std::vector<u64> out;
    for (u64 n = 2; n <= x; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

/// (Omega(n), omega(n)) by dividing out every candidate factor in turn.
inline std::pair<int, int> omega(u64 n) {
    int big = 0, little = 0;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        ++little;
        while (n % d == 0) {
            ++big;
            n /= d;
        }
    }
    if (n > 1) {
        ++big;
        ++little;
    }
    return {big, little};
}

/// sigma_j(x) for all j at once by exhaustive factorization.
inline std::vector<u64> sigma_counts(u64 x, int j_cap = 64) {
    std::vector<u64> counts(static_cast<std::size_t>(j_cap) + 1, 0);
    for (u64 n = 1; n <= x; ++n) ++counts[static_cast<std::size_t>(omega(n).first)];
    return counts;
}

/// Uncompensated long-double Erdos sum, a second summation strategy.
inline double erdos_sum(const std::vector<u64>& set) {
    long double s = 0.0L;
    for (u64 n : set)
        if (n > 1) s += 1.0L / (static_cast<long double>(n) * std::log(static_cast<long double>(n)));
    return static_cast<double>(s);
}

}  // namespace oracle
