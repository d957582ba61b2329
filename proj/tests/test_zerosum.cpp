#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "rvw/instance_gen.hpp"
#include "rvw/poly_parser.hpp"
#include "rvw/zerosum.hpp"

using namespace rvw;
using namespace rvw::zerosum;

namespace {
std::vector<Int> ints(std::initializer_list<long> xs) {
    return std::vector<Int>(xs.begin(), xs.end());
}
}  // namespace

TEST_CASE("group encoding round trips") {
    GroupSpec G(Int(2), {1, 2});  // Z/2 + Z/4
    CHECK(G.order() == 8);
    CHECK(G.davenport_lower() == 5);
    CHECK(G.exponent() == 4);
    for (std::uint64_t i = 0; i < G.order(); ++i)
        CHECK(G.encode(G.decode(i)) == i);
    CHECK(G.add(G.generator(0), G.generator(0)) == 0);
    CHECK(G.scale(Int(3), G.generator(1)) == G.encode({0, 3}));
    CHECK_THROWS_AS(GroupSpec(Int(2), {2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec(Int(2), {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}),
                    std::domain_error);
}

TEST_CASE("davenport constants of small p-groups") {
    auto D = [](long p, std::vector<unsigned> exps) {
        return davenport_constant(GroupSpec(Int(p), exps)).constant;
    };
    CHECK(D(2, {1}) == 2);
    CHECK(D(2, {1, 1}) == 3);
    CHECK(D(3, {2}) == 9);  // cyclic: D = #G
    CHECK(D(2, {1, 2}) == 5);

    auto res = davenport_constant(GroupSpec(Int(2), {1, 1}));
    CHECK(res.extremal.size() == 2);
    // witness must be zero-sum-free: e1, e2 up to ordering
    GroupSpec G(Int(2), {1, 1});
    std::vector<std::uint64_t> expected{G.generator(0), G.generator(1)};
    std::sort(expected.begin(), expected.end());
    CHECK(res.extremal == expected);
}

TEST_CASE("gsum counts") {
    GroupSpec Z2(Int(2), {1});
    GSequence x(Z2, {1, 1, 1});
    CHECK(gsum_count(x, 0) == 4);
    CHECK(gsum_count(x, 1) == 4);

    GroupSpec Z3(Int(3), {1});
    CHECK(gsum_count(GSequence(Z3, {1, 1}), 2) == 1);

    // the empty subset always contributes to g = 0
    GSequence longer(Z3, {1, 2, 2, 1});
    CHECK(gsum_count(longer, 0) >= 1);
}

TEST_CASE("gsum matches subset enumeration") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 30; ++trial) {
        GroupSpec G(Int(trial % 2 == 0 ? 2 : 3),
                    trial % 3 == 0 ? std::vector<unsigned>{1, 1}
                                   : std::vector<unsigned>{2});
        unsigned n = 1 + rng() % 8;
        std::vector<std::uint64_t> entries;
        for (unsigned i = 0; i < n; ++i) entries.push_back(rng() % G.order());
        GSequence x(G, entries);
        std::uint64_t g = rng() % G.order();
        CHECK(gsum_count(x, g) == oracle::gsum_count_reference(x, g));
    }
}

TEST_CASE("gsum is invariant under permutations") {
    GroupSpec G(Int(3), {1, 1});
    std::vector<std::uint64_t> entries{1, 4, 7, 2};
    Int base = gsum_count(GSequence(G, entries), 5);
    std::sort(entries.begin(), entries.end());
    do {
        CHECK(gsum_count(GSequence(G, entries), 5) == base);
    } while (std::next_permutation(entries.begin(), entries.end()));
}

TEST_CASE("ng bound report") {
    GroupSpec Z2(Int(2), {1});
    auto rep = ng_bound_report(GSequence(Z2, {1, 1, 1}), 1);
    CHECK(rep.count == 4);
    CHECK(rep.bound == 4);  // 2^{3-1}
    CHECK(rep.verdict == Verdict::HOLDS);

    GroupSpec Z4(Int(2), {2});
    auto vac = ng_bound_report(GSequence(Z4, {0, 0}), 1);
    CHECK(vac.count == 0);
    CHECK(vac.verdict == Verdict::VACUOUS);
}

TEST_CASE("minimum of N_0 over sequences") {
    GroupSpec Z2(Int(2), {1});
    auto res = min_n0_over_sequences(Z2, 3);
    CHECK(res.minimum == 4);  // max(1, 2^{3+1-2})

    GroupSpec Z3(Int(3), {1});
    CHECK(min_n0_over_sequences(Z3, 2).minimum == 1);
    CHECK(min_n0_over_sequences(Z3, 3).minimum == 2);
}

TEST_CASE("generalized counts") {
    GroupSpec Z2(Int(2), {1});
    GSequence x(Z2, {1, 1});
    RestrictedBox box(Int(2), {ints({0, 1}), ints({0, 1})});
    CHECK(generalized_count(x, 0, box) == 2);
    auto rep = generalized_report(x, 0, box);
    CHECK(rep.report.bound == 2);  // m(2,2;4-1)
    CHECK(rep.report.verdict == Verdict::HOLDS);

    GroupSpec Z3(Int(3), {1});
    GSequence y(Z3, {1, 2});
    RestrictedBox full(Int(3), {ints({0, 1, 2}), ints({0, 1, 2})});
    CHECK(generalized_count(y, 0, full) == 3);

    // singleton weights make the count 1 without violating anything
    RestrictedBox single(Int(2), {ints({0}), ints({0})});
    auto rep_single = generalized_report(x, 0, single);
    CHECK(rep_single.report.count == 1);
    CHECK_FALSE(rep_single.chevalley_hypothesis);
}

TEST_CASE("generalized count matches grid enumeration") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 30; ++trial) {
        auto inst = gen::random_weighted_instance(rng);
        CHECK(generalized_count(inst.x, inst.g, inst.box) ==
              oracle::generalized_count_reference(inst.x, inst.g, inst.box));
    }
}

TEST_CASE("union polynomial") {
    SetSystem disjoint{{{1}, {2}}};
    CHECK(union_poly(disjoint) == parse_poly("t1 + t2"));

    SetSystem shared{{{1}, {1}}};
    CHECK(union_poly(shared) == parse_poly("t1 + t2 - t1*t2"));

    SetSystem empty{};
    CHECK(union_poly(empty).is_zero());
}

TEST_CASE("union polynomial matches direct unions pointwise") {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 25; ++trial) {
        unsigned n = 1 + rng() % 6;
        SetSystem F = gen::random_setsystem(rng, n, 3);
        MultiPoly<Int> h = union_poly(F);
        CHECK(h.total_degree() <=
              Degree::of(std::max<std::int64_t>(F.max_degree(), 0)));
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
            std::vector<Int> point(n);
            for (unsigned i = 0; i < n; ++i) point[i] = (mask >> i) & 1;
            std::vector<std::uint32_t> uni;
            for (unsigned i = 0; i < n; ++i)
                if (mask >> i & 1)
                    for (auto a : F.sets[i]) uni.push_back(a);
            std::sort(uni.begin(), uni.end());
            uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
            CHECK(h.evaluate(point) == Int(static_cast<long>(uni.size())));
        }
    }
}

TEST_CASE("set system counting") {
    SetSystem shared{{{1}, {1}}};
    CHECK(setsystem_count(shared, Int(2), Int(0)) == 1);
    auto rep = setsystem_report(shared, Int(2), Int(0));
    CHECK(rep.max_degree == 2);
    CHECK(rep.report.bound == 1);
    CHECK(rep.report.verdict == Verdict::HOLDS);

    SetSystem disjoint{{{1}, {2}}};
    CHECK(setsystem_count(disjoint, Int(2), Int(0)) == 2);
    auto rep2 = setsystem_report(disjoint, Int(2), Int(0));
    CHECK(rep2.report.bound == 2);
    CHECK(rep2.report.verdict == Verdict::HOLDS);

    // m = 1: every subset qualifies
    SetSystem F = disjoint;
    CHECK(setsystem_count(F, Int(1), Int(0)) == 4);

    // non prime powers are counted but carry no verdict
    auto rep6 = setsystem_report(disjoint, Int(6), Int(0));
    CHECK_FALSE(rep6.prime_power_modulus);
    CHECK(rep6.report.verdict == Verdict::NOT_APPLICABLE);
}

TEST_CASE("extremal set systems dodge divisibility") {
    for (auto [d, m] : {std::pair<unsigned, unsigned>{1, 2},
                        {2, 2},
                        {1, 3},
                        {1, 4},
                        {2, 3}}) {
        SetSystem F = extremal_setsystem(d, m);
        CHECK(F.length() == d * (m - 1));
        CHECK(F.max_degree() == (m > 1 ? d : 0));
        CHECK(setsystem_count(F, Int(m), Int(0)) == 1);
    }
    // d=1, m=3: two sets of size 4, pair union of size 8
    SetSystem F13 = extremal_setsystem(1, 3);
    REQUIRE(F13.length() == 2);
    CHECK(F13.sets[0].size() == 4);
    CHECK(F13.sets[1].size() == 4);
}

TEST_CASE("indicator polynomial for weight sets") {
    auto C01 = indicator_poly(ints({0, 1}), Int(3));
    CHECK(C01 == to_rational(parse_poly("t1")));

    auto C = indicator_poly(ints({0, 1, 2}), Int(5));
    CHECK(C.total_degree() == Degree::of(2));
    CHECK(C.evaluate(std::vector<Rat>{Rat(0)}) == 0);
    CHECK(C.evaluate(std::vector<Rat>{Rat(1)}) == 1);
    CHECK(C.evaluate(std::vector<Rat>{Rat(2)}) == 1);

    auto C0 = indicator_poly(ints({0}), Int(3));
    CHECK(C0.is_zero());

    CHECK_THROWS_AS(indicator_poly(ints({1, 2}), Int(5)),
                    std::invalid_argument);
}

TEST_CASE("egz counts") {
    GroupSpec Z2(Int(2), {1});
    WeightBox A(RestrictedBox(Int(2), {ints({0, 1}), ints({0, 1})}));
    GSequence x(Z2, {1, 1});
    CHECK(egz_count(x, A, 1, 0) == 2);
    auto rep = egz_report(x, A, 1, 0);
    CHECK(rep.bound == 1);  // m(2,2;2)
    CHECK(rep.verdict == Verdict::HOLDS);

    WeightBox A3(RestrictedBox(
        Int(2), {ints({0, 1}), ints({0, 1}), ints({0, 1})}));
    GSequence x3(Z2, {1, 1, 1});
    CHECK(egz_count(x3, A3, 1, 0) == 4);

    // no representation: nonzero g over the zero sequence
    GSequence zeros(Z2, {0, 0});
    CHECK(egz_count(zeros, A, 1, 1) == 0);
    CHECK(egz_report(zeros, A, 1, 1).verdict == Verdict::VACUOUS);
}

TEST_CASE("egz matches grid enumeration") {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 30; ++trial) {
        auto inst = gen::random_weighted_instance(rng);
        WeightBox A(inst.box);
        CHECK(egz_count(inst.x, A, inst.k, inst.g) ==
              oracle::egz_count_reference(inst.x, A, inst.k, inst.g));
    }
}

TEST_CASE("support cross-check through the indicator polynomials") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = gen::random_weighted_instance(rng);
        WeightBox A(inst.box);
        CHECK(egz_support_cross_check(inst.x, A, inst.k));
    }
}

TEST_CASE("classic EGZ verification") {
    for (unsigned m : {2u, 3u}) {
        auto rep = egz_classic_verify(m);
        CHECK(rep.all_pass);
        CHECK(rep.extremal_confirmed);
    }
    CHECK(egz_classic_verify(2).multisets_checked == 4);
    CHECK(egz_classic_verify(3).multisets_checked == 21);
    CHECK_THROWS_AS(egz_classic_verify(6), std::domain_error);
}

TEST_CASE("dags report") {
    GroupSpec Z2(Int(2), {1});
    WeightBox A(RestrictedBox(
        Int(2), {ints({0, 1}), ints({0, 1}), ints({0, 1})}));
    GSequence x(Z2, {1, 1, 1});
    auto rep = dags_report(x, A);
    CHECK(rep.applicable);
    CHECK(rep.report.count == 4);
    CHECK(rep.report.bound == 2);
    CHECK(rep.report.verdict == Verdict::HOLDS);

    // below the length hypothesis
    WeightBox A2(RestrictedBox(Int(2), {ints({0, 1}), ints({0, 1})}));
    GSequence x2(Z2, {1, 1});
    auto na = dags_report(x2, A2);
    CHECK_FALSE(na.applicable);
    CHECK(na.report.verdict == Verdict::NOT_APPLICABLE);

    // Z/3 with five entries: support and sum conditions coincide
    GroupSpec Z3(Int(3), {1});
    std::vector<std::vector<Int>> sets(5, ints({0, 1}));
    WeightBox A5(RestrictedBox(Int(3), sets));
    GSequence x5(Z3, {1, 1, 1, 1, 1});
    auto rep5 = dags_report(x5, A5);
    CHECK(rep5.applicable);
    CHECK(rep5.report.count == 11);  // empty tuple + C(5,3) supports
    CHECK(rep5.report.bound == 2);
    CHECK(rep5.report.verdict == Verdict::HOLDS);
}

TEST_CASE("dags bound agrees with the balls-in-bins route") {
    // (R+1) a^(n+1-expG+floor((1-D)/(a-1))) must equal
    // m(a,...,a; na - (D-1) - (a-1)(expG-1)) whenever the report applies
    struct Case {
        long p;
        std::vector<unsigned> exps;
        unsigned n;
        unsigned a;
    };
    for (const auto& c :
         {Case{2, {1}, 3, 2}, Case{2, {1}, 5, 2}, Case{3, {1}, 5, 2},
          Case{3, {1}, 6, 3}, Case{2, {1, 1}, 4, 2}, Case{2, {2}, 7, 2}}) {
        GroupSpec G(Int(c.p), c.exps);
        std::vector<Int> weights;
        for (unsigned v = 0; v < c.a; ++v) weights.emplace_back(v);
        std::vector<std::vector<Int>> sets(c.n, weights);
        WeightBox A(RestrictedBox(Int(c.p), sets));
        std::vector<std::uint64_t> entries(c.n, 1 % G.order());
        auto rep = dags_report(GSequence(G, entries), A);
        if (!rep.applicable) continue;
        Int D = G.davenport_lower();
        Int N = Int(c.n) * Int(c.a) - (D - 1) -
                (Int(c.a) - 1) * (G.exponent() - 1);
        bins::BinProfile prof(std::vector<Int>(c.n, Int(c.a)));
        CHECK(rep.report.bound == bins::min_product(prof, N));
    }
}

TEST_CASE("subset-sum counts respect the power-of-two bound") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 80; ++trial) {
        unsigned v = 1 + static_cast<unsigned>(trial % 2);
        GroupSpec G(Int(trial % 2 == 0 ? 2 : 3),
                    trial % 5 == 0 ? std::vector<unsigned>{1, 1}
                                   : std::vector<unsigned>{v});
        unsigned n = 1 + rng() % 7;
        std::vector<std::uint64_t> entries;
        for (unsigned i = 0; i < n; ++i) entries.push_back(rng() % G.order());
        auto rep = ng_bound_report(GSequence(G, entries), rng() % G.order());
        INFO("trial " << trial);
        CHECK(rep.verdict != Verdict::VIOLATED);
    }
}

TEST_CASE("weighted counts are invariant under paired permutations") {
    GroupSpec G(Int(3), {1});
    std::vector<std::uint64_t> entries{1, 2, 0, 1};
    std::vector<std::vector<Int>> sets{
        ints({0, 1}), ints({0, 1, 2}), ints({0}), ints({0, 2})};
    Int base = generalized_count(GSequence(G, entries),
                                 1, RestrictedBox(Int(3), sets));
    std::vector<size_t> order{0, 1, 2, 3};
    do {
        std::vector<std::uint64_t> perm_entries;
        std::vector<std::vector<Int>> perm_sets;
        for (size_t i : order) {
            perm_entries.push_back(entries[i]);
            perm_sets.push_back(sets[i]);
        }
        CHECK(generalized_count(GSequence(G, perm_entries), 1,
                                RestrictedBox(Int(3), perm_sets)) == base);
    } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("weighted sweeps never violate their bounds") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 60; ++trial) {
        auto inst = gen::random_weighted_instance(rng);
        auto grep = generalized_report(inst.x, inst.g, inst.box);
        INFO("trial " << trial);
        CHECK(grep.report.verdict != Verdict::VIOLATED);
        if (grep.chevalley_hypothesis) CHECK_FALSE(grep.count_is_one);
        WeightBox A(inst.box);
        auto erep = egz_report(inst.x, A, inst.k, inst.g);
        CHECK(erep.verdict != Verdict::VIOLATED);
        // the all-equal form required by the dags bound
        WeightBox equal(RestrictedBox(
            inst.box.prime(),
            std::vector<std::vector<Int>>(inst.x.length(),
                                          inst.box.set(0))));
        auto drep = dags_report(inst.x, equal);
        CHECK(drep.report.verdict != Verdict::VIOLATED);
    }
}
