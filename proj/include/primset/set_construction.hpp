/// @file set_construction.hpp
/// Builds the primitive set S = union over k of
///   S_k = { n : Omega(n) = k, p_k | n, gcd(p_1...p_{k-1}, n) = 1 }
/// over [1, x], counts it exactly, and compares the counts against the
/// asymptotic predictions.
#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "primset/common.hpp"
#include "primset/primitivity.hpp"
#include "primset/prime_sequence.hpp"
#include "primset/sieve.hpp"

namespace primset {

/// Witnessed membership of n in S_{Omega(n)}.
struct SMembership {
    u64 n;
    int k;                    // = Omega(n)
    bool pk_divides;          // p_k | n
    bool coprime_below;       // no p_j | n for j < k
};

namespace detail {

/// Membership test given k = Omega(n) >= 1. The gcd condition is evaluated
/// as direct non-divisibility by each p_j, j < k (at most ~log_2 x indices).
inline bool s_member_given_k(u64 n, int k, const PrimeSequence& seq) {
    if (u64(k) > seq.size())
        throw prefix_exhausted_error("S membership: Omega(n) = " + std::to_string(k) +
                                     " exceeds computed prefix of " +
                                     std::to_string(seq.size()) + " primes");
    if (n % seq.p(u64(k)) != 0) return false;
    for (int j = 1; j < k; ++j)
        if (n % seq.p(u64(j)) == 0) return false;
    return true;
}

}  // namespace detail

/// Membership record for n, or absent. n = 1 is never a member (Omega = 0).
inline std::optional<SMembership> member(u64 n, const PrimeSequence& seq) {
    if (n < 1) throw std::invalid_argument("member: need n >= 1");
    if (n == 1) return std::nullopt;
    int k = static_cast<int>(factorize(n).size());
    if (!detail::s_member_given_k(n, k, seq)) return std::nullopt;
    return SMembership{n, k, true, true};
}

/// All members of S in [1, x], ascending, streamed off the sieve.
inline std::vector<u64> enumerate_members(u64 x, const PrimeSequence& seq,
                                          const SieveOptions& opts = {}) {
    if (x < 1) throw std::invalid_argument("enumerate_members: need x >= 1");
    std::vector<u64> out;
    stream_omega_tables(1, x, opts, [&](const OmegaTable& t) {
        for (u64 n = t.segment.lo; n <= t.segment.hi; ++n) {
            int k = t.big(n);
            if (k >= 1 && detail::s_member_given_k(n, k, seq)) out.push_back(n);
        }
    });
    return out;
}

/// Exact counts of S over [1, x] with the bracketing data of the
/// S(x) window and the per-k ratio diagnostics
///   S_k(x) * p_k * (k-2)! * log x / (x * (log_2 x)^{k-2}),   2 <= k <= B'.
struct CountReport {
    u64 x = 0;
    u64 total = 0;                 // S(x)
    std::map<int, u64> per_k;      // k -> S_k(x), nonzero counts only
    int b = 0;                     // floor(1/2 log_2 x)
    int b_prime = 0;               // floor(3/2 log_2 x)
    double predicted = 0.0;        // x / (log_2 x * log_3 x * L(log_2 x))
    double window_low = 0.0;       // x / p_{B'}
    double window_high = 0.0;      // x / p_B (infinite when B = 0)
    std::map<int, double> ratio_diagnostics;
};

inline CountReport count_report(u64 x, const PrimeSequence& seq,
                                const SieveOptions& opts = {}) {
    if (x < 16) throw std::invalid_argument("count_report: need x >= 16");
    CountReport rep;
    rep.x = x;

    std::vector<u64> counts(65, 0);
    stream_omega_tables(1, x, opts, [&](const OmegaTable& t) {
        for (u64 n = t.segment.lo; n <= t.segment.hi; ++n) {
            int k = t.big(n);
            if (k >= 1 && detail::s_member_given_k(n, k, seq))
                ++counts[static_cast<std::size_t>(k)];
        }
    });
    for (int k = 1; k < 65; ++k)
        if (counts[static_cast<std::size_t>(k)] > 0) {
            rep.per_k[k] = counts[static_cast<std::size_t>(k)];
            rep.total += counts[static_cast<std::size_t>(k)];
        }

    double xd = double(x);
    double l2 = log_iter(xd, 2);
    rep.b = static_cast<int>(0.5 * l2);
    rep.b_prime = static_cast<int>(1.5 * l2);
    if (u64(rep.b_prime) > seq.size())
        throw prefix_exhausted_error("count_report: B' = " + std::to_string(rep.b_prime) +
                                     " exceeds computed prefix");
    rep.predicted = xd / (l2 * log_iter(xd, 3) * l_eval(seq.lspec, std::max(2.0, l2)));
    rep.window_low = xd / double(seq.p(u64(rep.b_prime)));
    rep.window_high = rep.b >= 1 ? xd / double(seq.p(u64(rep.b)))
                                 : std::numeric_limits<double>::infinity();

    for (int k = 2; k <= rep.b_prime; ++k) {
        double log_factor = std::lgamma(double(k - 1)) + std::log(double(seq.p(u64(k)))) +
                            std::log(std::log(xd)) - std::log(xd) -
                            double(k - 2) * std::log(l2);
        rep.ratio_diagnostics[k] =
            double(counts[static_cast<std::size_t>(k)]) * std::exp(log_factor);
    }
    return rep;
}

/// Enumerates S over [1, x] and runs the dense primitivity verifier.
/// A witness here would falsify the construction (or reveal a bug), so it
/// raises invariant_violation instead of returning.
inline PrimitivityResult primitivity_certificate(u64 x, const PrimeSequence& seq,
                                                 const SieveOptions& opts = {}) {
    std::vector<u64> members = enumerate_members(x, seq, opts);
    PrimitivityResult res = is_primitive_dense(members, x);
    if (!res.primitive)
        throw invariant_violation(
            "primitivity_certificate: divisibility witness (" +
            std::to_string(res.witness->first) + ", " + std::to_string(res.witness->second) +
            ") in constructed set");
    return res;
}

inline void write_count_summary_csv(std::ostream& out, const CountReport& rep) {
    out << "x,S,predicted,window_low,window_high,B,Bprime\n";
    out << rep.x << ',' << rep.total << ',' << sig12(rep.predicted) << ','
        << sig12(rep.window_low) << ',' << sig12(rep.window_high) << ',' << rep.b << ','
        << rep.b_prime << '\n';
}

inline void write_count_perk_csv(std::ostream& out, const CountReport& rep) {
    out << "x,k,S_k,lemma23_ratio\n";
    std::map<int, u64> rows = rep.per_k;
    for (const auto& [k, ratio] : rep.ratio_diagnostics) rows.emplace(k, 0);
    for (const auto& [k, count] : rows) {
        out << rep.x << ',' << k << ',' << count << ',';
        auto it = rep.ratio_diagnostics.find(k);
        if (it != rep.ratio_diagnostics.end()) out << sig12(it->second);
        out << '\n';
    }
}

}  // namespace primset
