#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "primset/sathe_selberg.hpp"
#include "oracles.hpp"

using namespace primset;

TEST_CASE("G(0) and G(1) are exactly 1") {
    GEvaluation g0 = evaluate_g(0.0, 1e-9);
    CHECK(std::abs(g0.value - 1.0) < 1e-9);
    CHECK(g0.tail_bound == 0.0);  // every product term vanishes at z = 0

    GEvaluation g1 = evaluate_g(1.0, 1e-9);
    CHECK(std::abs(g1.value - 1.0) < 1e-9);
}

TEST_CASE("evaluate_g domain and tolerance validation") {
    CHECK_THROWS_AS(evaluate_g(-0.1, 1e-6), std::domain_error);
    CHECK_THROWS_AS(evaluate_g(1.6, 1e-6), std::domain_error);
    CHECK_THROWS_AS(evaluate_g(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_g(1.5, 1e-14), budget_error);
}

TEST_CASE("truncations are consistent within the tracked tail bound") {
    for (double z : {0.5, 1.25, 1.5}) {
        GEvaluation e3 = evaluate_g_at(z, 1000);
        GEvaluation e4 = evaluate_g_at(z, 10'000);
        GEvaluation e5 = evaluate_g_at(z, 100'000);
        CHECK(std::abs(e4.value - e3.value) <= e3.tail_bound);
        CHECK(std::abs(e5.value - e4.value) <= e4.tail_bound);
        CHECK(std::abs(e5.value - e3.value) <= e3.tail_bound);
        CHECK(e3.tail_bound > e4.tail_bound);
        CHECK(e3.value > 0.0);
    }
}

TEST_CASE("requested tolerance drives the truncation") {
    GEvaluation e = evaluate_g(0.5, 1e-7);
    CHECK(e.tail_bound < 1e-7);
    GEvaluation tighter = evaluate_g(0.5, 1e-9);
    CHECK(tighter.tail_bound < 1e-9);
    CHECK(tighter.truncation > e.truncation);
    CHECK(std::abs(tighter.value - e.value) <= e.tail_bound);
}

TEST_CASE("h_main_term: j = 1 collapses to x/log x") {
    for (double x : {16.0, 1e4, 1e8})
        CHECK(h_main_term(1, x) == Catch::Approx(x / std::log(x)).epsilon(1e-7));
}

TEST_CASE("h_main_term: j = 2 recomputed from evaluate_g") {
    double x = 1e6;
    double llx = std::log(std::log(x));
    double expected = evaluate_g(1.0 / llx, 1e-9).value * (x / std::log(x)) * llx;
    CHECK(h_main_term(2, x) == Catch::Approx(expected).epsilon(1e-5));
}

TEST_CASE("h_main_term: finite, positive, monotone in x") {
    double prev = 0.0;
    for (double x : {1e6, 1e7, 1e8, 1e9}) {
        double h = h_main_term(3, x);
        CHECK(std::isfinite(h));
        CHECK(h > prev);
        prev = h;
    }
}

TEST_CASE("h_main_term range enforcement") {
    CHECK_THROWS_AS(h_main_term(0, 1e6), std::domain_error);
    CHECK_THROWS_AS(h_main_term(4, 1e6), std::domain_error);  // floor(1.5 loglog 1e6) = 3
    CHECK_THROWS_AS(h_main_term(1, 8.0), std::domain_error);
    CHECK_NOTHROW(h_main_term(4, 1e7));  // floor(1.5 loglog 1e7) = 4
}

TEST_CASE("sigma_exact small cases") {
    CHECK(sigma_exact(0, 100) == 1);   // only n = 1
    CHECK(sigma_exact(1, 100) == 25);  // exactly the primes
    auto counts30 = oracle::sigma_counts(30);
    CHECK(sigma_exact(2, 30) == counts30[2]);
}

TEST_CASE("sigma_exact equals exhaustive factorization for every j") {
    const u64 x = 3000;
    auto expected = oracle::sigma_counts(x);
    auto counts = sigma_counts(x);
    for (int j = 0; j < 20; ++j) CHECK(counts[j] == expected[j]);
}

TEST_CASE("sigma partition identity") {
    for (u64 x : {u64(1000), u64(10'000), u64(100'000)}) {
        auto counts = sigma_counts(x);
        u64 total = 0;
        for (u64 c : counts) total += c;
        CHECK(total == x);
    }
}

TEST_CASE("sigma_j vanishes when 2^j exceeds x") {
    CHECK(sigma_exact(11, 2000) == 0);  // 2^11 > 2000
    CHECK(sigma_exact(40, 100'000) == 0);
}

TEST_CASE("sigma_table rows are coherent") {
    auto rows = sigma_table(10'000, 3);
    REQUIRE(rows.size() == 3);
    for (const SigmaRow& r : rows) {
        CHECK(r.ratio > 0.0);
        CHECK(std::isfinite(r.ratio));
        CHECK(r.ratio == Catch::Approx(double(r.sigma_exact) / r.h_main_term));
    }
    CHECK_THROWS_AS(sigma_table(1'000'000, 4), std::domain_error);
    CHECK_THROWS_AS(sigma_table(10, 1), std::invalid_argument);
}

TEST_CASE("ratio identity at j = 1: sigma_1/H_1 = pi(x) log x / x") {
    const u64 x = 10'000'000;
    auto rows = sigma_table(x, 1);
    u64 pi_x = primes_up_to(x).size();
    CHECK(rows[0].sigma_exact == pi_x);
    double identity = double(pi_x) * std::log(double(x)) / double(x);
    CHECK(rows[0].ratio == Catch::Approx(identity).epsilon(1e-7));
}

TEST_CASE("exact-to-main-term ratios stay inside the coarse window") {
    // the error term is 1 + O(1/loglog x): only [0.5, 2] is asserted at desk scale
    for (u64 x : {u64(10'000), u64(1'000'000), u64(100'000'000)}) {
        auto rows = sigma_table(x, 3);
        for (const SigmaRow& r : rows) {
            CHECK(r.ratio > 0.5);
            CHECK(r.ratio < 2.0);
        }
    }
}

TEST_CASE("sigma CSV emission") {
    auto rows = sigma_table(10'000, 2);
    std::ostringstream out;
    write_sigma_csv(out, rows);
    std::string text = out.str();
    CHECK(text.starts_with("j,x,sigma_exact,h_main_term,ratio\n"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text.find("1,10000,1229,") != std::string::npos);  // pi(10^4) = 1229
}
