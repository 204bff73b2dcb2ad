/// @file common.hpp
/// Shared aliases, error types and small numeric utilities.
#pragma once

#include <cstdint>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <algorithm>

namespace primset {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Raised when a computation would exceed its configured memory/work budget.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a membership test needs a prime index beyond the computed prefix.
struct prefix_exhausted_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when no finite prefix certifies a reciprocal-sum tail below its target.
struct certificate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when adaptive quadrature cannot reach its tolerance within budget.
struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a guaranteed-by-proof property fails on verified data.
/// Either the underlying mathematics is falsified or the code is wrong,
/// so this is never a recoverable condition.
struct invariant_violation : std::logic_error {
    using std::logic_error::logic_error;
};

// --- compensated summation ---------------------------------------------

/// Kahan accumulator for long sums of small terms.
class kahan_sum {
public:
    void add(double term) {
        double y = term - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// --- iterated logarithms ------------------------------------------------

/// log_1 x = max(1, log x); guards every deeper level against values < 1.
inline double log1(double x) { return std::max(1.0, std::log(x)); }

/// log_level x with log_level = log_1 applied to the previous level.
inline double log_iter(double x, int level) {
    double v = x;
    for (int i = 0; i < level; ++i) v = log1(v);
    return v;
}

// --- integer helpers ------------------------------------------------------

/// Exact floor(sqrt(n)) for 64-bit n.
inline u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && u128(r) * r > n) --r;
    while (u128(r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Bounded uniform draw in [0, n) from raw 64-bit output (multiply-shift).
template <typename Rng>
u64 bounded_rand(Rng& rng, u64 n) {
    return static_cast<u64>((u128(rng()) * u128(n)) >> 64);
}

// --- formatting ----------------------------------------------------------

/// Floating-point value with 12 significant digits, the project-wide CSV format.
inline std::string sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    char buf[48];
    char* p = buf + sizeof buf;
    while (v > 0) {
        *--p = static_cast<char>('0' + static_cast<unsigned>(v % 10));
        v /= 10;
    }
    return std::string(p, buf + sizeof buf);
}

/// Decimal representation of 2^e for exponents beyond any machine word.
inline std::string pow2_decimal(u32 e) {
    std::string digits = "1";  // little-endian digit array as chars
    for (u32 i = 0; i < e; ++i) {
        int carry = 0;
        for (char& d : digits) {
            int v = (d - '0') * 2 + carry;
            d = static_cast<char>('0' + v % 10);
            carry = v / 10;
        }
        if (carry) digits.push_back(static_cast<char>('0' + carry));
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

}  // namespace primset
