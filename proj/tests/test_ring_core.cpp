#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rvw/fq.hpp"
#include "rvw/numeric.hpp"

using namespace rvw;

TEST_CASE("p_valuation on integers") {
    CHECK(p_valuation(Int(8), Int(2)) == 3);
    CHECK(p_valuation(Int(8), Int(3)) == 0);
    CHECK(p_valuation(Int(-12), Int(2)) == 2);
    CHECK_THROWS_AS(p_valuation(Int(0), Int(2)), std::domain_error);
}

TEST_CASE("p_valuation on rationals") {
    Rat x(12, 5);
    CHECK(p_valuation(x, Int(2)) == 2);
    CHECK(p_valuation(Rat(1, 3), Int(3)) == -1);
    CHECK_THROWS_AS(p_valuation(Rat(0), Int(2)), std::domain_error);
}

TEST_CASE("valuation is additive") {
    std::mt19937_64 rng(7);
    PLocalDomain local(Int(3));
    for (int trial = 0; trial < 200; ++trial) {
        long n1 = static_cast<long>(rng() % 2000) - 1000;
        long n2 = static_cast<long>(rng() % 2000) - 1000;
        long d1 = static_cast<long>(rng() % 50) + 1;
        long d2 = static_cast<long>(rng() % 50) + 1;
        if (n1 == 0 || n2 == 0 || d1 % 3 == 0 || d2 % 3 == 0) continue;
        Rat x = local.make(Int(n1), Int(d1));
        Rat y = local.make(Int(n2), Int(d2));
        CHECK(p_valuation(Rat(x * y), Int(3)) ==
              p_valuation(x, Int(3)) + p_valuation(y, Int(3)));
    }
}

TEST_CASE("p-local construction rejects denominators divisible by p") {
    PLocalDomain local(Int(5));
    CHECK_THROWS_AS(local.make(Int(1), Int(10)), std::invalid_argument);
    CHECK(local.make(Int(10), Int(4)) == Rat(5, 2));
    // canonicalization can rescue a denominator that shares the factor
    CHECK(local.make(Int(5), Int(15)) == Rat(1, 3));
    CHECK_THROWS_AS(PLocalDomain(Int(6)), std::invalid_argument);
}

TEST_CASE("p-local residues") {
    PLocalDomain local(Int(3));
    CHECK(local.residue(Rat(1, 2), 1) == 2);  // 2^{-1} = 2 mod 3
    CHECK(local.residue(Rat(-1), 1) == 2);
    CHECK(local.residue(Rat(5, 2), 2) == 7);  // 5 * 5 = 25 = 7 mod 9
}

TEST_CASE("fq_build small fields") {
    auto F2 = fq_build(Int(2), 1);
    CHECK(F2.q() == 2);
    CHECK(F2.modulus() == std::vector<std::uint64_t>{0, 1});  // x

    auto F4 = fq_build(Int(2), 2);
    CHECK(F4.q() == 4);
    CHECK(F4.modulus() == std::vector<std::uint64_t>{1, 1, 1});  // x^2+x+1

    auto F9 = fq_build(Int(3), 2);
    CHECK(F9.q() == 9);
    CHECK(F9.modulus() == std::vector<std::uint64_t>{1, 0, 1});  // x^2+1

    CHECK_THROWS_AS(fq_build(Int(4), 1), std::invalid_argument);
    CHECK_THROWS_AS(fq_build(Int(2), 0), std::invalid_argument);
    CHECK_THROWS_AS(fq_build(Int(2), 5), std::invalid_argument);
}

TEST_CASE("GF(4) arithmetic through the modulus root") {
    auto F4 = fq_build(Int(2), 2);
    FqElem g = F4.generator_root();
    CHECK(g * g == g + F4.one());      // g^2 = g + 1
    CHECK(fq_pow(g, Int(3)) == F4.one());
    CHECK(fq_pow(g, Int(4)) == g);
    CHECK(fq_pow(F4.zero(), Int(0)) == F4.one());
}

TEST_CASE("a^q = a in every built field") {
    for (auto [p, ell] : {std::pair<int, int>{2, 1}, {2, 2}, {2, 3},
                          {3, 1}, {3, 2}, {5, 1}, {2, 4}}) {
        auto F = fq_build(Int(p), ell);
        for (const auto& a : F.all_elements())
            CHECK(fq_pow(a, F.q()) == a);
    }
}

TEST_CASE("field axioms, exhaustive for small orders") {
    for (auto [p, ell] : {std::pair<int, int>{2, 2}, {3, 1}, {2, 3}, {3, 2}}) {
        auto F = fq_build(Int(p), ell);
        auto elems = F.all_elements();
        REQUIRE(elems.size() <= 9);
        for (const auto& a : elems) {
            CHECK(a + F.zero() == a);
            CHECK(a * F.one() == a);
            if (!a.is_zero()) {
                FqElem inv = F.inverse(a);
                CHECK(a * inv == F.one());
                // inverse is unique
                int count = 0;
                for (const auto& b : elems)
                    if (a * b == F.one()) ++count;
                CHECK(count == 1);
            }
            for (const auto& b : elems) {
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                for (const auto& c : elems) {
                    CHECK((a + b) + c == a + (b + c));
                    CHECK((a * b) * c == a * (b * c));
                    CHECK(a * (b + c) == a * b + a * c);
                }
            }
        }
    }
}

TEST_CASE("element index round trip") {
    auto F8 = fq_build(Int(2), 3);
    for (std::uint64_t i = 0; i < 8; ++i)
        CHECK(F8.from_index(i).index() == Int(static_cast<unsigned long>(i)));
    CHECK_THROWS_AS(F8.from_index(8), std::out_of_range);
}
