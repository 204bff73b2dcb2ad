/// @file sathe_selberg.hpp
/// The Sathe--Selberg main term H_j(x) for the count of n <= x with
/// Omega(n) = j, the Euler-product constant G(z), and exact sigma_j counts
/// streamed off the sieve for comparison.
#pragma once

#include <ostream>
#include <vector>

#include "primset/common.hpp"
#include "primset/sieve.hpp"

namespace primset {

/// G(z) = 1/Gamma(z+1) * prod_p (1 - z/p)^{-1} (1 - 1/p)^z evaluated at a
/// finite truncation P, with a rigorous bound on everything beyond it.
/// Two evaluations at truncations P < P' differ by at most tail_bound(P).
struct GEvaluation {
    double z;
    double value;
    u64 truncation;
    double tail_bound;
};

namespace detail {

/// log of the p-factor of G: -log(1 - z/p) + z log(1 - 1/p). The m = 1
/// parts of the two logarithm series cancel exactly, leaving
/// sum_{m>=2} (z^m - z)/(m p^m); summing that directly keeps full
/// precision near z = 3/2 where the naive product loses digits.
inline double g_prime_factor_log(double z, double p) {
    double acc = 0.0;
    double zp = z;         // z^m
    double pm = p;         // p^m
    for (int m = 2; m <= 512; ++m) {
        zp *= z;
        pm *= p;
        double inc = (zp - z) / (double(m) * pm);
        acc += inc;
        if (std::abs(inc) < 1e-20) break;
    }
    return acc;
}

/// Bound on |sum over p > P| of the factor logs: |z^m - z| <= z|z-1|(m-1)zt^{m-2}
/// with zt = max(z,1) collapses the per-prime series, and the prime sum uses
/// pi(t) < 1.25506 t/log t by partial summation. Vanishes at z = 0 and z = 1,
/// where the truncated product is exact at any P.
inline double g_tail_log(double z, double P) {
    double zt = std::max(z, 1.0);
    return z * std::abs(z - 1.0) / (1.0 - zt / P) * 2.0 * 1.25506 / (P * std::log(P));
}

}  // namespace detail

/// G(z) at a fixed truncation P (all primes <= P enter the product).
inline GEvaluation evaluate_g_at(double z, u64 truncation) {
    if (!(z >= 0.0 && z <= 1.5))
        throw std::domain_error("evaluate_g_at: need 0 <= z <= 3/2");
    if (truncation < 1000) throw std::invalid_argument("evaluate_g_at: truncation too small");
    kahan_sum logsum;
    for (u64 p : primes_up_to(truncation))
        logsum.add(detail::g_prime_factor_log(z, double(p)));
    double value = std::exp(logsum.value() - std::lgamma(z + 1.0));
    double tail = value * std::expm1(detail::g_tail_log(z, double(truncation)));
    return {z, value, truncation, tail};
}

/// G(z) to within `tolerance`, raising the truncation until the tail bound
/// certifies it.
inline GEvaluation evaluate_g(double z, double tolerance) {
    if (!(z >= 0.0 && z <= 1.5)) throw std::domain_error("evaluate_g: need 0 <= z <= 3/2");
    if (!(tolerance > 0)) throw std::invalid_argument("evaluate_g: tolerance must be > 0");
    const u64 budget = u64(1) << 28;
    u64 P = 1000;
    while (std::expm1(detail::g_tail_log(z, double(P))) * 2.0 >= tolerance) {
        if (P >= budget)
            throw budget_error("evaluate_g: tolerance unachievable within prime budget");
        P *= 2;
    }
    GEvaluation ev = evaluate_g_at(z, P);
    while (ev.tail_bound >= tolerance) {  // only if G(z) exceeded the a-priori cap 2
        if (P >= budget)
            throw budget_error("evaluate_g: tolerance unachievable within prime budget");
        P *= 2;
        ev = evaluate_g_at(z, P);
    }
    return ev;
}

/// H_j(x) = G((j-1)/loglog x) * x/log x * (loglog x)^{j-1}/(j-1)!, defined
/// for x >= 16 and 1 <= j <= floor(3/2 loglog x); factorial in log space.
inline double h_main_term(int j, double x, double g_tolerance = 1e-6) {
    if (!(x >= 16)) throw std::domain_error("h_main_term: need x >= 16");
    double llx = std::log(std::log(x));
    if (j < 1 || double(j) > 1.5 * llx)
        throw std::domain_error("h_main_term: j outside [1, floor(3/2 loglog x)]");
    double g = evaluate_g(double(j - 1) / llx, g_tolerance).value;
    double log_term = std::log(x) - std::log(std::log(x)) +
                      double(j - 1) * std::log(llx) - std::lgamma(double(j));
    return g * std::exp(log_term);
}

/// Counts of n <= x with Omega(n) = j for every j at once, one streaming
/// pass over the sieve. Index j of the result is sigma_j(x).
inline std::vector<u64> sigma_counts(u64 x, const SieveOptions& opts = {}) {
    if (x < 1) throw std::invalid_argument("sigma_counts: need x >= 1");
    std::vector<u64> counts(65, 0);
    stream_omega_tables(1, x, opts, [&](const OmegaTable& t) {
        for (u8 w : t.big_omega) ++counts[w];
    });
    return counts;
}

/// Exact count of n <= x with Omega(n) = j.
inline u64 sigma_exact(int j, u64 x, const SieveOptions& opts = {}) {
    if (j < 0) throw std::invalid_argument("sigma_exact: need j >= 0");
    std::vector<u64> counts = sigma_counts(x, opts);
    return j < int(counts.size()) ? counts[j] : 0;
}

/// One row of the exact-vs-main-term comparison table.
struct SigmaRow {
    int j;
    double x;
    u64 sigma_exact;
    double h_main_term;
    double ratio;
};

/// Rows j = 1..j_max comparing exact counts against H_j(x), single pass.
inline std::vector<SigmaRow> sigma_table(u64 x, int j_max, const SieveOptions& opts = {}) {
    if (x < 16) throw std::invalid_argument("sigma_table: need x >= 16");
    double llx = std::log(std::log(double(x)));
    if (j_max < 1 || double(j_max) > 1.5 * llx)
        throw std::domain_error("sigma_table: j_max outside [1, floor(3/2 loglog x)]");
    std::vector<u64> counts = sigma_counts(x, opts);
    std::vector<SigmaRow> rows;
    rows.reserve(static_cast<std::size_t>(j_max));
    for (int j = 1; j <= j_max; ++j) {
        double h = h_main_term(j, double(x));
        double count = double(counts[static_cast<std::size_t>(j)]);
        rows.push_back({j, double(x), counts[static_cast<std::size_t>(j)], h,
                        h > 0 ? count / h : 0.0});
    }
    return rows;
}

inline void write_sigma_csv(std::ostream& out, std::span<const SigmaRow> rows) {
    out << "j,x,sigma_exact,h_main_term,ratio\n";
    for (const SigmaRow& r : rows)
        out << r.j << ',' << sig12(r.x) << ',' << r.sigma_exact << ','
            << sig12(r.h_main_term) << ',' << sig12(r.ratio) << '\n';
}

}  // namespace primset
