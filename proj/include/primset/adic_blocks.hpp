/// @file adic_blocks.hpp
/// The block family A_j = { a : 2^(2^j) < a <= 2^(2^(j+1)), 2^j || a } and
/// A = union of the A_j: a density-0 set whose reciprocal sum diverges while
/// every primitive subset has a convergent one. Provides exact enumeration,
/// block reciprocal sums (exact or analytic with a tracked error), odd-part
/// antichain verification, and primitive-subset extraction.
#pragma once

#include <bit>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "primset/common.hpp"
#include "primset/primitivity.hpp"

namespace primset {

/// s split as 2^v * s_odd with s_odd odd (s_odd is the largest odd divisor).
struct OddPart {
    u64 s;
    int v;
    u64 s_odd;
};

inline OddPart odd_part(u64 s) {
    if (s < 1) throw std::invalid_argument("odd_part: need s >= 1");
    int v = std::countr_zero(s);
    return {s, v, s >> v};
}

namespace detail {

// Block j spans (2^lo_exp, 2^hi_exp] with lo_exp = 2^j, hi_exp = 2^(j+1);
// its members are 2^j * m for odd m in (2^(lo_exp - j), 2^(hi_exp - j)].
// Only j <= 5 can intersect the 64-bit range (block 6 starts above 2^64).
inline constexpr int k_max_block64 = 5;

struct BlockRange {
    u64 m_lo;  // exclusive, even
    u64 m_hi;  // inclusive; number of odd m in (m_lo, m_hi] is the block count
};

/// Odd-cofactor range of block j clipped to members <= x; empty if x below
/// the block.
inline std::optional<BlockRange> block_range(int j, u64 x) {
    u32 lo_exp = u32(1) << j;
    if (lo_exp >= 64 || x <= (u64(1) << lo_exp)) return std::nullopt;
    u64 m_lo = u64(1) << (lo_exp - u32(j));
    u64 clipped = x;
    u32 hi_exp = u32(1) << (j + 1);
    if (hi_exp <= 63) clipped = std::min(x, u64(1) << hi_exp);
    u64 m_hi = clipped >> j;
    if (m_hi <= m_lo) return std::nullopt;
    return BlockRange{m_lo, m_hi};
}

inline u64 odd_count(const BlockRange& r) { return (r.m_hi - r.m_lo + 1) >> 1; }

}  // namespace detail

/// The unique j with a in A_j, or absent.
inline std::optional<int> a_membership(u64 a) {
    if (a < 1) throw std::invalid_argument("a_membership: need a >= 1");
    int j = std::countr_zero(a);
    if (j < 1 || j > detail::k_max_block64) return std::nullopt;
    u32 lo_exp = u32(1) << j;
    if (a <= (u64(1) << lo_exp)) return std::nullopt;
    u32 hi_exp = u32(1) << (j + 1);
    if (hi_exp <= 63 && a > (u64(1) << hi_exp)) return std::nullopt;
    return j;
}

/// Exact A(x).
inline u64 count_a(u64 x) {
    u64 total = 0;
    for (int j = 1; j <= detail::k_max_block64; ++j)
        if (auto r = detail::block_range(j, x)) total += detail::odd_count(*r);
    return total;
}

/// A(x) * log x / x, the density diagnostic for A(x) ~ x/log x.
inline double a_density_ratio(u64 x) {
    return double(count_a(x)) * std::log(double(x)) / double(x);
}

/// Calls fn(a, j) for every member a <= x in ascending order.
template <typename Fn>
void for_each_a_member(u64 x, Fn&& fn) {
    for (int j = 1; j <= detail::k_max_block64; ++j)
        if (auto r = detail::block_range(j, x))
            for (u64 m = r->m_lo + 1; m <= r->m_hi; m += 2) fn(m << j, j);
}

/// The n-th member of A (0-based) in ascending order.
inline u64 a_nth(u64 n) {
    for (int j = 1; j <= detail::k_max_block64; ++j) {
        auto r = detail::block_range(j, std::numeric_limits<u64>::max());
        if (!r) break;
        u64 c = detail::odd_count(*r);
        if (n < c) return (r->m_lo + 1 + 2 * n) << j;
        n -= c;
    }
    throw std::out_of_range("a_nth: index beyond 64-bit members");
}

/// Materialized members of A in [1, x], ascending.
inline std::vector<u64> enumerate_a(u64 x, u64 budget_members = u64(1) << 25) {
    u64 c = count_a(x);
    if (c > budget_members)
        throw budget_error("enumerate_a: " + std::to_string(c) + " members exceed budget");
    std::vector<u64> out;
    out.reserve(c);
    for_each_a_member(x, [&](u64 a, int) { out.push_back(a); });
    return out;
}

// --- reciprocal sums -------------------------------------------------------

enum class BlockMethod { exact_enumeration, analytic_odd_harmonic };

inline std::string to_string(BlockMethod m) {
    return m == BlockMethod::exact_enumeration ? "exact-enumeration" : "analytic-odd-harmonic";
}

/// A_j with its reciprocal sum. Blocks through j = 4 are enumerated exactly;
/// from j = 5 on the sum over odd m in (u, v] of 1/m telescopes through
/// artanh(1/m) = (1/2) log((m+1)/(m-1)) to exactly (1/2) log(v/u) minus a
/// positive defect below 0.34 (1/(u+1)^3 + 1/(4(u+1)^2)), so every block sum
/// is log(2)/2 up to the tracked error.
struct ABlock {
    int j;
    u32 lo_exp2;  // lo = 2^lo_exp2, exclusive
    u32 hi_exp2;  // hi = 2^hi_exp2, inclusive
    u128 count;
    double reciprocal_sum;
    double error_bound;
    BlockMethod method;
};

inline ABlock block_reciprocal_sum(int j, BlockMethod method) {
    if (j < 1) throw std::invalid_argument("block_reciprocal_sum: need j >= 1");
    if (j > 6)
        throw budget_error("block_reciprocal_sum: exact counts beyond j = 6 overflow 128 bits");
    ABlock blk;
    blk.j = j;
    blk.lo_exp2 = u32(1) << j;
    blk.hi_exp2 = u32(1) << (j + 1);
    u32 eu = blk.lo_exp2 - u32(j);  // odd range (2^eu, 2^ev]
    u32 ev = blk.hi_exp2 - u32(j);
    blk.count = ((u128(1) << ev) - (u128(1) << eu)) >> 1;
    blk.method = method;
    if (method == BlockMethod::exact_enumeration) {
        if (j > 4)
            throw budget_error("block_reciprocal_sum: members beyond j = 4 reach 2^64");
        kahan_sum acc;
        u64 u = u64(1) << eu, v = u64(1) << ev;
        for (u64 m = u + 1; m <= v; m += 2) acc.add(1.0 / double(m << j));
        blk.reciprocal_sum = acc.value();
        blk.error_bound = 0.0;
    } else {
        double u1 = std::exp2(double(eu)) + 1.0;
        double defect = 0.34 * (1.0 / (u1 * u1 * u1) + 0.25 / (u1 * u1));
        blk.reciprocal_sum = 0.5 * std::log(2.0);
        blk.error_bound = defect * std::exp2(-double(j));
    }
    return blk;
}

inline ABlock block_reciprocal_sum(int j) {
    return block_reciprocal_sum(j, j <= 4 ? BlockMethod::exact_enumeration
                                          : BlockMethod::analytic_odd_harmonic);
}

/// Partial sum over a in A, a <= x, of 1/(a log a).
inline double erdos_sum_a(u64 x) {
    kahan_sum acc;
    for_each_a_member(x, [&](u64 a, int) {
        acc.add(1.0 / (double(a) * std::log(double(a))));
    });
    return acc.value();
}

// --- odd-part antichain verification ---------------------------------------

/// For a primitive subset of A the odd parts form an antichain and the map
/// s -> s_odd is injective. Verifies both; returns the odd parts.
/// Raises invalid_argument when the input is not a primitive subset of A and
/// invariant_violation when the guaranteed property itself fails.
inline std::vector<u64> verify_odd_part_antichain(std::span<const u64> subset) {
    for (u64 s : subset)
        if (!a_membership(s))
            throw std::invalid_argument("verify_odd_part_antichain: " + std::to_string(s) +
                                        " is not a member of A");
    PrimitivityResult pr = is_primitive(subset);
    if (!pr.primitive)
        throw std::invalid_argument("verify_odd_part_antichain: input subset is not primitive");

    std::vector<u64> odd;
    odd.reserve(subset.size());
    for (u64 s : subset) odd.push_back(odd_part(s).s_odd);

    std::vector<u64> sorted = odd;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw invariant_violation("odd-part map failed injectivity");
    PrimitivityResult opr = is_primitive(sorted);
    if (!opr.primitive)
        throw invariant_violation("odd parts admit a divisibility pair (" +
                                  std::to_string(opr.witness->first) + ", " +
                                  std::to_string(opr.witness->second) + ")");
    return odd;
}

/// Streamed per-member checks over A in [1, x]: the in-proof inequality
/// 2^j >= log(s) / (2 log 2) and the growth quantity s_odd log s_odd / s,
/// whose maximum is the recorded constant for s_odd log s_odd << s.
struct MemberScan {
    u64 members = 0;
    u64 inequality_violations = 0;
    double max_growth = 0.0;
};

inline MemberScan scan_members(u64 x) {
    MemberScan scan;
    const double two_log2 = 2.0 * std::log(2.0);
    for_each_a_member(x, [&](u64 a, int j) {
        ++scan.members;
        double log_a = std::log(double(a));
        if (std::exp2(double(j)) * two_log2 < log_a) ++scan.inequality_violations;
        double m = double(a) / std::exp2(double(j));
        scan.max_growth = std::max(scan.max_growth, std::log(m) / std::exp2(double(j)));
    });
    return scan;
}

// --- primitive-subset extraction --------------------------------------------

enum class ExtractStrategy { greedy_ascending, dyadic_block };

inline std::string to_string(ExtractStrategy s) {
    return s == ExtractStrategy::greedy_ascending ? "greedy-ascending" : "dyadic-block";
}

struct ExtractionResult {
    u64 x;
    ExtractStrategy strategy;
    u64 size;
    double reciprocal_sum;
    std::vector<u64> members;  // materialized only when the subset is small
};

namespace detail {

/// Global ascending index of member a within A intersected with [1, x].
struct AIndexer {
    u64 x;
    u64 offset[k_max_block64 + 1] = {};
    u64 m_lo[k_max_block64 + 1] = {};

    explicit AIndexer(u64 x_) : x(x_) {
        u64 cum = 0;
        for (int j = 1; j <= k_max_block64; ++j) {
            if (auto r = block_range(j, x)) {
                offset[j] = cum;
                m_lo[j] = r->m_lo;
                cum += odd_count(*r);
            } else {
                offset[j] = cum;
            }
        }
    }

    u64 index(u64 a, int j) const { return offset[j] + (((a >> j) - m_lo[j] - 1) >> 1); }
};

}  // namespace detail

/// Extracts a primitive subset of A in [1, x].
///
/// greedy-ascending keeps each member not divisible by a kept element,
/// marking the kept element's multiples inside A via an index bitmap;
/// dyadic-block keeps A in (x/2, x], primitive because the interval is
/// dyadic. Members are materialized when the subset stays small.
inline ExtractionResult extract_primitive_subset(u64 x, ExtractStrategy strategy,
                                                 u64 materialize_budget = u64(1) << 22) {
    ExtractionResult res{x, strategy, 0, 0.0, {}};
    kahan_sum acc;
    bool materialize = count_a(x) <= materialize_budget;

    if (strategy == ExtractStrategy::dyadic_block) {
        u64 half = x / 2;
        for_each_a_member(x, [&](u64 a, int) {
            if (a > half) {
                ++res.size;
                acc.add(1.0 / double(a));
                if (materialize) res.members.push_back(a);
            }
        });
        res.reciprocal_sum = acc.value();
        return res;
    }

    if (count_a(x) > (u64(1) << 30))
        throw budget_error("extract_primitive_subset: index bitmap for x = " +
                           std::to_string(x) + " exceeds budget");
    detail::AIndexer indexer(x);
    std::vector<bool> blocked(count_a(x), false);
    for_each_a_member(x, [&](u64 a, int j) {
        if (blocked[indexer.index(a, j)]) return;
        ++res.size;
        acc.add(1.0 / double(a));
        if (materialize) res.members.push_back(a);
        for (u64 b = 2 * a; b <= x; b += a)
            if (auto j2 = a_membership(b)) blocked[indexer.index(b, *j2)] = true;
    });
    res.reciprocal_sum = acc.value();
    return res;
}

// --- random primitive subsets ------------------------------------------------

/// Primitive by construction: sample members inside one dyadic slice
/// (y, 2y] and thin to the target size.
inline std::vector<u64> random_dyadic_subset(std::mt19937_64& rng, u64 x,
                                             std::size_t target) {
    if (x < 32) throw std::invalid_argument("random_dyadic_subset: need x >= 32");
    int max_e = 63 - std::countl_zero(x);  // floor(log2 x)
    for (int attempt = 0; attempt < 64; ++attempt) {
        int e = 4 + int(bounded_rand(rng, u64(max_e - 4)));
        u64 y = u64(1) << e;
        if (2 * y > x) continue;
        u64 below = count_a(y), upto = count_a(2 * y);
        if (upto == below) continue;
        u64 range = upto - below;
        std::set<u64> picks;
        std::size_t want = std::min<std::size_t>(target, range);
        while (picks.size() < want) picks.insert(a_nth(below + bounded_rand(rng, range)));
        return {picks.begin(), picks.end()};
    }
    throw std::runtime_error("random_dyadic_subset: no populated dyadic slice found");
}

/// Arbitrary sampling followed by a greedy repair pass that drops any
/// element divisible by an already kept one.
inline std::vector<u64> random_repaired_subset(std::mt19937_64& rng, u64 x,
                                               std::size_t target) {
    u64 total = count_a(x);
    if (total == 0) throw std::invalid_argument("random_repaired_subset: A is empty below x");
    std::set<u64> picks;
    for (std::size_t i = 0; i < 4 * target; ++i) {
        picks.insert(a_nth(bounded_rand(rng, total)));
        if (picks.size() >= target) break;
    }
    std::vector<u64> kept;
    for (u64 a : picks) {  // ascending
        bool divisible = false;
        for (u64 m : kept)
            if (a % m == 0) {
                divisible = true;
                break;
            }
        if (!divisible) kept.push_back(a);
    }
    return kept;
}

}  // namespace primset
