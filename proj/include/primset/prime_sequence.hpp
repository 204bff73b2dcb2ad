/// @file prime_sequence.hpp
/// Builds the prime sequence p_1 < p_2 < ... driven by a slowly varying L,
/// together with a verified certificate that sum 1/p_k < 1/2.
///
/// The intermediate sequence takes q_k = the k-th prime for k < y0 and the
/// floor(k L(k))-th prime for k >= y0, where y0 is the least integer >= 2
/// with L(y0) >= 1. The returned sequence drops the shortest prefix k0 whose
/// removal leaves the certified sum below 1/2; p_k = q_{k0+k}.
#pragma once

#include <ostream>
#include <vector>

#include "primset/common.hpp"
#include "primset/sieve.hpp"
#include "primset/slow_variation.hpp"

namespace primset {

struct PrimeSequence {
    LSpec lspec;
    u64 y0 = 0;
    u64 k0 = 0;
    std::vector<u64> primes;  // p_1..p_K, 1-indexed via primes[k-1]
    double prefix_reciprocal_sum = 0.0;
    double tail_bound = 0.0;
    bool certified = false;  // false for ad-hoc test prefixes

    u64 size() const { return primes.size(); }
    u64 p(u64 k) const {
        if (k < 1 || k > primes.size())
            throw std::out_of_range("PrimeSequence: index " + std::to_string(k) +
                                    " beyond computed prefix");
        return primes[k - 1];
    }

    /// Ad-hoc sequence for fixtures; carries no certificate.
    static PrimeSequence from_primes(std::vector<u64> ps) {
        PrimeSequence seq;
        kahan_sum acc;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (i > 0 && ps[i] <= ps[i - 1])
                throw std::invalid_argument("from_primes: not strictly increasing");
            acc.add(1.0 / double(ps[i]));
        }
        seq.primes = std::move(ps);
        seq.prefix_reciprocal_sum = acc.value();
        seq.tail_bound = std::numeric_limits<double>::infinity();
        return seq;
    }
};

/// Least integer y >= 2 with L(y) >= 1, found by scanning.
inline u64 compute_y0(const LSpec& spec, u64 scan_cap = 10'000'000) {
    for (u64 y = 2; y <= scan_cap; ++y)
        if (l_eval(spec, double(y)) >= 1.0) return y;
    throw budget_error("compute_y0: L stays below 1 up to scan cap");
}

namespace detail {

inline u64 q_index(const LSpec& spec, u64 k, u64 y0) {
    if (k < y0) return k;
    double m = double(k) * l_eval(spec, double(k));
    if (m >= 9e15) throw budget_error("q_index: floor(k L(k)) beyond exact double range");
    return static_cast<u64>(m);
}

}  // namespace detail

/// The intermediate sequence member q_k (two-case definition above).
inline u64 build_q(const LSpec& spec, u64 k, PrimeTable& table, u64 y0) {
    if (k < 1) throw std::invalid_argument("build_q: need k >= 1");
    return table.nth(detail::q_index(spec, k, y0));
}

inline u64 build_q(const LSpec& spec, u64 k) {
    PrimeTable table;
    return build_q(spec, k, table, compute_y0(spec));
}

struct BuildBudget {
    u64 max_k0 = 100'000;
    u64 sieve_budget_bytes = SieveOptions{}.sieve_budget_bytes;
};

namespace detail {

/// Rigorous bound on sum over k > N of 1/q_k. Rosser's theorem gives
/// p_m > m log m for the index m = floor(k L(k)) >= max(k, k L(k) - 1), so
/// each term is below (N/(N-1)) / (k L(k) log k) and the decreasing sum is
/// bounded by the exact improper integral of the built-in L family.
inline double sequence_tail_bound(const LSpec& spec, u64 n_last, u64 y0) {
    if (n_last < std::max<u64>(y0, 4))
        throw std::invalid_argument("sequence_tail_bound: prefix too short");
    double slack = double(n_last) / double(n_last - 1);
    return slack * integral_tail(spec, double(n_last));
}

}  // namespace detail

/// Builds the certified K-term sequence: finds the least k0 such that
/// sum_{k0 < k <= k0+K} 1/q_k plus the Rosser tail bound at k0+K stays
/// below 1/2, then re-indexes p_k = q_{k0+k}.
inline PrimeSequence build_sequence(const LSpec& spec, u64 K, const BuildBudget& budget = {}) {
    if (K < 1) throw std::invalid_argument("build_sequence: need K >= 1");
    const u64 y0 = compute_y0(spec);
    PrimeTable table(budget.sieve_budget_bytes);

    std::vector<u64> q(1, 0);        // 1-indexed
    std::vector<double> prefix(1, 0.0);  // prefix[n] = sum_{k<=n} 1/q_k
    kahan_sum acc;
    auto extend_to = [&](u64 n) {
        while (q.size() <= n) {
            u64 k = q.size();
            u64 qk = build_q(spec, k, table, y0);
            if (k > 1 && qk <= q[k - 1])
                throw invariant_violation("build_sequence: q not strictly increasing at k = " +
                                          std::to_string(k));
            q.push_back(qk);
            acc.add(1.0 / double(qk));
            prefix.push_back(acc.value());
        }
    };

    for (u64 k0 = 0; k0 <= budget.max_k0; ++k0) {
        u64 n = k0 + K;
        extend_to(n);
        double tail = detail::sequence_tail_bound(spec, n, y0);
        double window = prefix[n] - prefix[k0];
        if (window + tail < 0.5) {
            PrimeSequence seq;
            seq.lspec = spec;
            seq.y0 = y0;
            seq.k0 = k0;
            seq.primes.assign(q.begin() + static_cast<std::ptrdiff_t>(k0 + 1),
                              q.begin() + static_cast<std::ptrdiff_t>(n + 1));
            kahan_sum exact;
            for (u64 p : seq.primes) exact.add(1.0 / double(p));
            seq.prefix_reciprocal_sum = exact.value();
            seq.tail_bound = tail;
            seq.certified = true;
            return seq;
        }
    }
    throw certificate_error("build_sequence: no k0 <= " + std::to_string(budget.max_k0) +
                            " certifies the tail below 1/2");
}

/// The sequence member at index floor(c log_2 x) together with the
/// slowly-varying prediction c log_2 x * log_3 x * L(log_2 x).
struct IndexedPrime {
    u64 index;
    u64 prime;
    double predicted;
};

inline IndexedPrime p_index_at(const PrimeSequence& seq, double c, double x) {
    double l2 = log_iter(x, 2);
    u64 index = static_cast<u64>(c * l2);
    if (index < 1) throw std::out_of_range("p_index_at: floor(c log_2 x) < 1");
    double predicted = c * l2 * log_iter(x, 3) * l_eval(seq.lspec, std::max(2.0, l2));
    return {index, seq.p(index), predicted};
}

/// CSV persistence: a comment header carrying the construction parameters
/// and certificate, then one `k,p_k` row per computed term.
inline void write_sequence_csv(std::ostream& out, const PrimeSequence& seq) {
    out << "# L.kind=" << to_string(seq.lspec.kind);
    if (seq.lspec.kind == LKind::iterated_log_product) out << " L.ell=" << seq.lspec.ell;
    if (seq.lspec.kind != LKind::custom_table) out << " L.epsilon=" << sig12(seq.lspec.epsilon);
    out << " y0=" << seq.y0 << " k0=" << seq.k0
        << " prefix_reciprocal_sum=" << sig12(seq.prefix_reciprocal_sum)
        << " tail_bound=" << sig12(seq.tail_bound) << '\n';
    out << "k,p_k\n";
    for (std::size_t i = 0; i < seq.primes.size(); ++i)
        out << (i + 1) << ',' << seq.primes[i] << '\n';
}

}  // namespace primset
