#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "primset/prime_sequence.hpp"
#include "oracles.hpp"

using namespace primset;

TEST_CASE("y0 is computed by scanning, never assumed") {
    // (log y)^eps reaches 1 exactly at y = e, so y0 = 3 for every eps > 0
    CHECK(compute_y0(LSpec::power_of_log(1.0)) == 3);
    CHECK(compute_y0(LSpec::power_of_log(0.05)) == 3);
    // clamped iterated products are >= 1 everywhere
    CHECK(compute_y0(LSpec::iterated(4, 1.0)) == 2);
    // custom table crossing 1 between nodes
    LSpec late = LSpec::custom({{2, 0.2}, {10, 0.9}, {20, 1.5}, {1000, 3.0}});
    CHECK(compute_y0(late) == 12);
    // a table that never reaches 1 cannot drive the construction
    CHECK_THROWS_AS(compute_y0(LSpec::custom({{2, 0.3}, {10, 0.9}})), budget_error);
}

TEST_CASE("build_q: below y0 the k-th prime, above it the floor(k L(k))-th") {
    LSpec late = LSpec::custom({{2, 0.2}, {10, 0.9}, {20, 1.5}, {1000, 3.0}});
    CHECK(build_q(late, 3) == 5);  // y0 = 12, so q_3 is just the 3rd prime

    LSpec pol = LSpec::power_of_log(1.0);
    // floor(100 log 100) = 460
    auto oracle_primes = oracle::primes_up_to(4000);
    REQUIRE(oracle_primes.size() >= 460);
    CHECK(build_q(pol, 100) == oracle_primes[459]);
}

TEST_CASE("q is strictly increasing over the full computed range") {
    LSpec pol = LSpec::power_of_log(1.0);
    PrimeTable table;
    u64 y0 = compute_y0(pol);
    u64 prev = 0, violations = 0;
    for (u64 k = 1; k <= 10'000; ++k) {
        u64 qk = build_q(pol, k, table, y0);
        if (qk <= prev) ++violations;
        prev = qk;
    }
    CHECK(violations == 0);
}

TEST_CASE("build_sequence certifies the power-of-log sequence") {
    PrimeSequence seq = build_sequence(LSpec::power_of_log(1.0), 10'000);
    REQUIRE(seq.size() == 10'000);
    CHECK(seq.certified);
    CHECK(seq.y0 == 3);
    CHECK(seq.prefix_reciprocal_sum + seq.tail_bound < 0.5);
    CHECK(seq.prefix_reciprocal_sum < 0.5);

    // strictly increasing, and prime on a recheck sample
    u64 order_violations = 0;
    for (u64 k = 2; k <= seq.size(); ++k)
        if (seq.p(k) <= seq.p(k - 1)) ++order_violations;
    CHECK(order_violations == 0);
    for (u64 k = 1; k <= seq.size(); k += 97) CHECK(oracle::is_prime(seq.p(k)));

    // re-indexing: p_k = q_{k0+k}
    PrimeTable table;
    for (u64 k : {u64(1), u64(17), u64(500), u64(10'000)})
        CHECK(seq.p(k) == build_q(seq.lspec, seq.k0 + k, table, seq.y0));
}

TEST_CASE("sequence ratios against k log k L(k) settle toward 1") {
    // the proposition fixes no convergence rate; the ratios are reported and
    // must only descend toward 1 (about 1.4 at k = 10^4, the log(kL)/log k gap)
    PrimeSequence seq = build_sequence(LSpec::power_of_log(1.0), 10'000);
    double prev_gap = std::numeric_limits<double>::max();
    for (u64 k : {u64(100), u64(1000), u64(10'000)}) {
        double denom = double(k) * std::log(double(k)) *
                       l_eval(seq.lspec, double(k));
        double ratio = double(seq.p(k)) / denom;
        CHECK(ratio > 1.0);
        double gap = std::abs(ratio - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.45);  // observed 0.41 at k = 10^4
}

TEST_CASE("Rosser bound sanity: nth_prime(n) > n log n for all sieved n") {
    auto primes = primes_up_to(1'400'000);
    REQUIRE(primes.size() >= 100'000);
    u64 violations = 0;
    for (u64 n = 1; n <= 100'000; ++n)
        if (double(primes[n - 1]) <= double(n) * std::log(double(n))) ++violations;
    CHECK(violations == 0);
}

TEST_CASE("deeper iterated products certify with a large dropped prefix") {
    PrimeSequence seq = build_sequence(LSpec::iterated(4, 1.0), 2000);
    CHECK(seq.certified);
    CHECK(seq.k0 > 500);  // the tail 1/log_2 N forces N = k0 + K past e^(e^2)
    CHECK(seq.prefix_reciprocal_sum + seq.tail_bound < 0.5);
    CHECK(seq.k0 + 2000 > 1618);
}

TEST_CASE("hopeless L families fail the certificate honestly") {
    BuildBudget tiny;
    tiny.max_k0 = 500;
    // ell = 5 needs k0 beyond e^(e^(e^2)): unattainable at desk scale
    CHECK_THROWS_AS(build_sequence(LSpec::iterated(5, 1.0), 100, tiny), certificate_error);
    // custom tables extend flat, so no finite tail bound exists at all
    LSpec table = LSpec::custom({{2, 1.5}, {100, 2.0}});
    CHECK_THROWS_AS(build_sequence(table, 100, tiny), certificate_error);
}

TEST_CASE("p_index_at resolves floor(c log_2 x)") {
    PrimeSequence seq = build_sequence(LSpec::power_of_log(1.0), 100);

    // x = 2000: log_2 x = 2.028, half of it floors to 1
    IndexedPrime low = p_index_at(seq, 0.5, 2000.0);
    CHECK(low.index == 1);
    CHECK(low.prime == seq.p(1));

    // x = 10^8: floor(1.5 * 2.9135) = 4
    IndexedPrime four = p_index_at(seq, 1.5, 1e8);
    CHECK(four.index == 4);
    CHECK(four.prime == seq.p(4));

    for (double x : {1e6, 1e8}) {
        IndexedPrime ip = p_index_at(seq, 1.0, x);
        CHECK(ip.predicted > 0.0);
        CHECK(std::isfinite(double(ip.prime) / ip.predicted));
    }

    CHECK_THROWS_AS(p_index_at(seq, 0.5, 20.0), std::out_of_range);   // index 0
    CHECK_THROWS_AS(p_index_at(seq, 60.0, 1e9), std::out_of_range);   // beyond prefix
}

TEST_CASE("fixture sequences carry no certificate") {
    PrimeSequence seq = PrimeSequence::from_primes({2, 3, 5});
    CHECK_FALSE(seq.certified);
    CHECK(seq.size() == 3);
    CHECK(seq.p(2) == 3);
    CHECK(std::isinf(seq.tail_bound));
    CHECK_THROWS_AS(PrimeSequence::from_primes({2, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(seq.p(4), std::out_of_range);
}

TEST_CASE("sequence CSV carries the certificate header") {
    PrimeSequence seq = build_sequence(LSpec::power_of_log(1.0), 50);
    std::ostringstream out;
    write_sequence_csv(out, seq);
    std::string text = out.str();
    CHECK(text.starts_with("# L.kind=power-of-log"));
    CHECK(text.find("k0=") != std::string::npos);
    CHECK(text.find("prefix_reciprocal_sum=") != std::string::npos);
    CHECK(text.find("\nk,p_k\n") != std::string::npos);
    CHECK(text.find("\n1," + std::to_string(seq.p(1)) + "\n") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 52);
}
