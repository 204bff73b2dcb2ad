/// @file sieve.hpp
/// Segmented sieves producing primes, Omega(n), omega(n) and exact
/// factorizations: the counting substrate for everything else.
#pragma once

#include <cassert>
#include <cstring>
#include <functional>
#include <future>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "primset/common.hpp"

namespace primset {

/// Inclusive integer range [lo, hi].
struct Segment {
    u64 lo;
    u64 hi;

    Segment(u64 lo_, u64 hi_) : lo(lo_), hi(hi_) {
        if (lo < 1 || hi < lo)
            throw std::invalid_argument("Segment: need 1 <= lo <= hi");
    }
    u64 size() const { return hi - lo + 1; }
};

/// Per-integer table of Omega(n) (with multiplicity) and omega(n)
/// (distinct primes) over a segment, indexed by n - lo.
struct OmegaTable {
    Segment segment;
    std::vector<u8> big_omega;
    std::vector<u8> little_omega;

    u8 big(u64 n) const { return big_omega[n - segment.lo]; }
    u8 little(u64 n) const { return little_omega[n - segment.lo]; }
};

struct SieveOptions {
    u64 segment_size = u64(1) << 22;
    unsigned threads = 1;
    // Budget for the largest monolithic byte sieve (primes_up_to).
    u64 sieve_budget_bytes = u64(1) << 31;
};

/// All primes in [2, x], strictly increasing.
inline std::vector<u64> primes_up_to(u64 x, u64 budget_bytes = SieveOptions{}.sieve_budget_bytes) {
    if (x < 2) throw std::invalid_argument("primes_up_to: need x >= 2");
    if (x >= budget_bytes)
        throw budget_error("primes_up_to: sieve of " + std::to_string(x) +
                           " bytes exceeds budget");
    std::vector<u8> composite(x + 1, 0);
    for (u64 i = 2; i * i <= x; ++i)
        if (!composite[i])
            for (u64 j = i * i; j <= x; j += i) composite[j] = 1;
    std::vector<u64> primes;
    if (x >= 10) primes.reserve(static_cast<std::size_t>(1.2 * double(x) / std::log(double(x))));
    for (u64 i = 2; i <= x; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

namespace detail {

/// Proven upper estimate for the n-th prime (Rosser--Schoenfeld for n >= 6).
inline u64 nth_prime_upper(u64 n) {
    if (n < 6) return 13;
    double dn = double(n);
    return static_cast<u64>(dn * (std::log(dn) + std::log(std::log(dn)))) + 2;
}

}  // namespace detail

/// Growable table of primes with 1-based indexing; expands its sieve on demand.
class PrimeTable {
public:
    explicit PrimeTable(u64 budget_bytes = SieveOptions{}.sieve_budget_bytes)
        : budget_(budget_bytes) {}

    /// The n-th prime, nth(1) = 2.
    u64 nth(u64 n) {
        if (n == 0) throw std::invalid_argument("PrimeTable::nth: need n >= 1");
        ensure_count(n);
        return primes_[n - 1];
    }

    std::span<const u64> known() const { return primes_; }

    /// Make at least n primes available. Growth is geometric so that
    /// incremental nth() calls amortize to a constant number of sieves.
    void ensure_count(u64 n) {
        if (primes_.size() >= n) return;
        u64 target = std::max<u64>({n, 2 * primes_.size(), 4096});
        u64 bound = detail::nth_prime_upper(target);
        while (primes_.size() < n) {
            if (bound > budget_)
                throw budget_error("PrimeTable: bound " + std::to_string(bound) +
                                   " for prime #" + std::to_string(n) + " exceeds budget");
            primes_ = primes_up_to(bound, budget_);
            bound += bound / 4;  // proven estimate can only be short by rounding
        }
    }

private:
    u64 budget_;
    std::vector<u64> primes_;
};

/// The n-th prime in increasing order; nth_prime(1) = 2.
inline u64 nth_prime(u64 n, u64 budget_bytes = SieveOptions{}.sieve_budget_bytes) {
    PrimeTable table(budget_bytes);
    return table.nth(n);
}

/// Prime factors of n with multiplicity, ascending; empty for n = 1.
inline std::vector<u64> factorize(u64 n) {
    if (n < 1) throw std::invalid_argument("factorize: need n >= 1");
    std::vector<u64> factors;
    for (u64 p : {u64(2), u64(3), u64(5)})
        while (n % p == 0) {
            factors.push_back(p);
            n /= p;
        }
    // 30-wheel over the remaining candidates
    static constexpr u64 wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    u64 d = 7;
    int w = 0;
    while (d * d <= n) {
        while (n % d == 0) {
            factors.push_back(d);
            n /= d;
        }
        d += wheel[w];
        w = (w + 1) & 7;
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

/// Exact Omega/omega over a segment given the primes up to sqrt(hi).
///
/// For each prime power p^a <= hi, Omega gains one on its multiples and
/// omega only on multiples of p itself; a cofactor array detects the at
/// most one prime factor above sqrt(hi).
inline OmegaTable omega_table(const Segment& seg, std::span<const u64> base_primes) {
    const u64 lo = seg.lo, hi = seg.hi;
    const u64 n = seg.size();
    OmegaTable table{seg, std::vector<u8>(n, 0), std::vector<u8>(n, 0)};
    std::vector<u64> cofactor(n);
    for (u64 i = 0; i < n; ++i) cofactor[i] = lo + i;

    const u64 root = isqrt(hi);
    for (u64 p : base_primes) {
        if (p > root) break;
        bool first_power = true;
        for (u64 q = p; q <= hi && q != 0; q = (q > hi / p) ? 0 : q * p) {
            u64 start = ((lo + q - 1) / q) * q;
            for (u64 m = start; m <= hi; m += q) {
                u64 i = m - lo;
                ++table.big_omega[i];
                if (first_power) ++table.little_omega[i];
                cofactor[i] /= p;
            }
            first_power = false;
        }
    }
    // whatever survives is a single prime factor > sqrt(hi)
    for (u64 i = 0; i < n; ++i)
        if (cofactor[i] > 1) {
            ++table.big_omega[i];
            ++table.little_omega[i];
        }
    return table;
}

/// Convenience overload sieving its own base primes.
inline OmegaTable omega_table(const Segment& seg) {
    u64 root = std::max<u64>(2, isqrt(seg.hi));
    return omega_table(seg, primes_up_to(root));
}

/// Streams omega tables over [lo, hi] in ascending segment order.
///
/// Segments are sieved independently (in parallel when opts.threads > 1)
/// but `fn` always observes them in index order, so any reduction done by
/// the caller is deterministic.
template <typename Fn>
void stream_omega_tables(u64 lo, u64 hi, const SieveOptions& opts, Fn&& fn) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("stream_omega_tables: bad range");
    u64 root = std::max<u64>(2, isqrt(hi));
    std::vector<u64> base = primes_up_to(root, opts.sieve_budget_bytes);
    const u64 step = std::max<u64>(1, opts.segment_size);

    std::vector<Segment> segs;
    for (u64 a = lo; a <= hi; a += step) {
        u64 b = (hi - a < step - 1) ? hi : a + step - 1;
        segs.emplace_back(a, b);
        if (b == hi) break;
    }

    if (opts.threads <= 1) {
        for (const Segment& s : segs) fn(omega_table(s, base));
        return;
    }
    for (std::size_t batch = 0; batch < segs.size(); batch += opts.threads) {
        std::size_t end = std::min(segs.size(), batch + opts.threads);
        std::vector<std::future<OmegaTable>> jobs;
        for (std::size_t i = batch; i < end; ++i)
            jobs.push_back(std::async(std::launch::async, [&, i] {
                return omega_table(segs[i], base);
            }));
        for (auto& job : jobs) fn(job.get());
    }
}

// --- binary dump ("OMT1") -----------------------------------------------

namespace detail {

inline void put_u64_le(std::ostream& out, u64 v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

inline u64 get_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= u64(b[i]) << (8 * i);
    return v;
}

}  // namespace detail

/// Writes a table as: magic "OMT1", lo, hi (little-endian u64), Omega bytes,
/// then omega bytes.
inline void write_omega_table(std::ostream& out, const OmegaTable& t) {
    out.write("OMT1", 4);
    detail::put_u64_le(out, t.segment.lo);
    detail::put_u64_le(out, t.segment.hi);
    out.write(reinterpret_cast<const char*>(t.big_omega.data()),
              static_cast<std::streamsize>(t.big_omega.size()));
    out.write(reinterpret_cast<const char*>(t.little_omega.data()),
              static_cast<std::streamsize>(t.little_omega.size()));
}

inline OmegaTable read_omega_table(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "OMT1", 4) != 0)
        throw std::invalid_argument("read_omega_table: bad magic");
    u64 lo = detail::get_u64_le(in);
    u64 hi = detail::get_u64_le(in);
    OmegaTable t{Segment(lo, hi), {}, {}};
    u64 n = t.segment.size();
    t.big_omega.resize(n);
    t.little_omega.resize(n);
    in.read(reinterpret_cast<char*>(t.big_omega.data()), static_cast<std::streamsize>(n));
    in.read(reinterpret_cast<char*>(t.little_omega.data()), static_cast<std::streamsize>(n));
    if (!in) throw std::invalid_argument("read_omega_table: truncated payload");
    return t;
}

}  // namespace primset
