#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "primset/set_construction.hpp"
#include "oracles.hpp"

using namespace primset;

namespace {

const PrimeSequence& small_fixture() {
    static PrimeSequence seq = PrimeSequence::from_primes({2, 3, 5, 7, 11});
    return seq;
}

const PrimeSequence& built_sequence() {
    static PrimeSequence seq = build_sequence(LSpec::power_of_log(1.0), 10'000);
    return seq;
}

}  // namespace

TEST_CASE("membership on hand-checked cases") {
    const PrimeSequence& seq = small_fixture();

    auto m2 = member(2, seq);  // S_1 = {p_1}: Omega = 1 and p_1 | n forces n = p_1
    REQUIRE(m2.has_value());
    CHECK(m2->k == 1);
    CHECK(m2->pk_divides);
    CHECK(m2->coprime_below);

    auto m15 = member(15, seq);  // Omega = 2, 3 | 15, gcd(2, 15) = 1
    REQUIRE(m15.has_value());
    CHECK(m15->k == 2);

    CHECK_FALSE(member(10, seq).has_value());  // Omega = 2 but 2 | 10
    CHECK_FALSE(member(1, seq).has_value());   // Omega(1) = 0, no S_0
    CHECK_FALSE(member(97, PrimeSequence::from_primes({3})).has_value());
}

TEST_CASE("membership beyond the computed prefix aborts") {
    PrimeSequence tiny = PrimeSequence::from_primes({2, 3, 5});
    CHECK_THROWS_AS(member(16, tiny), prefix_exhausted_error);          // Omega = 4
    CHECK_THROWS_AS(enumerate_members(16, tiny), prefix_exhausted_error);
    CHECK_NOTHROW(enumerate_members(15, tiny));
}

TEST_CASE("enumerate matches the hand example at x = 25") {
    CHECK(enumerate_members(25, small_fixture()) == std::vector<u64>{2, 9, 15, 21});
}

TEST_CASE("below p_1 the set is empty") {
    CHECK(enumerate_members(4, PrimeSequence::from_primes({5, 7})).empty());
    const PrimeSequence& seq = built_sequence();
    CHECK(enumerate_members(seq.p(1) - 1, seq).empty());
    CHECK(enumerate_members(seq.p(1), seq) == std::vector<u64>{seq.p(1)});
}

TEST_CASE("primitivity holds even for uncertified fixture prefixes") {
    // the primitivity proof needs only distinct increasing primes
    std::vector<u64> members = enumerate_members(15, PrimeSequence::from_primes({2, 3, 5}));
    CHECK(members == std::vector<u64>{2, 9, 15});
    CHECK(is_primitive_pairwise(members).primitive);
}

TEST_CASE("member filter and streamed enumeration agree at 10^5") {
    const PrimeSequence& seq = built_sequence();
    std::vector<u64> streamed = enumerate_members(100'000, seq);
    std::vector<u64> filtered;
    for (u64 n = 1; n <= 100'000; ++n)
        if (member(n, seq)) filtered.push_back(n);
    CHECK(streamed == filtered);
}

TEST_CASE("every enumerated member reports exactly its own k") {
    const PrimeSequence& seq = built_sequence();
    std::vector<u64> members = enumerate_members(50'000, seq);
    CHECK_FALSE(members.empty());
    for (u64 n : members) {
        auto m = member(n, seq);
        REQUIRE(m.has_value());
        CHECK(u64(m->k) == factorize(n).size());
    }
}

TEST_CASE("S_1 is exactly {p_1}") {
    const PrimeSequence& seq = built_sequence();
    std::vector<u64> members = enumerate_members(200'000, seq);
    std::vector<u64> k1;
    for (u64 n : members)
        if (member(n, seq)->k == 1) k1.push_back(n);
    CHECK(k1 == std::vector<u64>{seq.p(1)});
}

TEST_CASE("count_report bookkeeping at 10^4, 10^5 and 10^6") {
    const PrimeSequence& seq = built_sequence();
    for (u64 x : {u64(10'000), u64(100'000), u64(1'000'000)}) {
        CountReport rep = count_report(x, seq);
        u64 sum = 0;
        for (const auto& [k, c] : rep.per_k) sum += c;
        CHECK(rep.total == sum);
        CHECK(rep.b <= rep.b_prime);
        CHECK(rep.window_low <= rep.window_high);
        CHECK(rep.predicted > 0.0);
        // consistency with the materialized enumeration
        CHECK(rep.total == enumerate_members(x, seq).size());
        // wide empirical window; the absolute constants are unknown at desk scale
        for (int k = 2; k <= rep.b_prime; ++k) {
            REQUIRE(rep.ratio_diagnostics.count(k) == 1);
            double ratio = rep.ratio_diagnostics.at(k);
            CHECK(ratio >= 0.05);
            CHECK(ratio <= 20.0);
        }
    }
}

TEST_CASE("count_report on the tiny fixture") {
    PrimeSequence seq = PrimeSequence::from_primes({2, 3, 5, 7, 11});
    CountReport rep = count_report(20, seq);
    CHECK(rep.total == 3);  // {2, 9, 15}
    CHECK(rep.per_k.at(1) == 1);
    CHECK(rep.per_k.at(2) == 2);
    CHECK(rep.b == 0);
    CHECK(rep.b_prime == 1);
    CHECK(rep.window_low == Catch::Approx(10.0));
    CHECK(std::isinf(rep.window_high));  // B = 0: no finite upper bracket
    CHECK(rep.ratio_diagnostics.empty());
}

TEST_CASE("primitivity certificate passes and the injected control is caught") {
    const PrimeSequence& seq = built_sequence();
    PrimitivityResult res = primitivity_certificate(100'000, seq);
    CHECK(res.primitive);

    std::vector<u64> members = enumerate_members(100'000, seq);
    u64 control = seq.p(1) * seq.p(1);
    members.push_back(control);
    PrimitivityResult bad = is_primitive_dense(members, std::max(u64(100'000), control));
    REQUIRE_FALSE(bad.primitive);
    CHECK(bad.witness == std::make_pair(seq.p(1), control));
}

TEST_CASE("count report CSV emission") {
    PrimeSequence seq = PrimeSequence::from_primes({2, 3, 5, 7, 11});
    CountReport rep = count_report(20, seq);

    std::ostringstream summary;
    write_count_summary_csv(summary, rep);
    CHECK(summary.str().starts_with("x,S,predicted,window_low,window_high,B,Bprime\n"));
    CHECK(summary.str().find("20,3,") != std::string::npos);

    std::ostringstream perk;
    write_count_perk_csv(perk, rep);
    CHECK(perk.str() == "x,k,S_k,lemma23_ratio\n20,1,1,\n20,2,2,\n");
}
