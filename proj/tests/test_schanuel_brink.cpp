#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rvw/instance_gen.hpp"
#include "rvw/poly_parser.hpp"
#include "rvw/schanuel_brink.hpp"

using namespace rvw;

namespace {
std::vector<Int> ints(std::initializer_list<long> xs) {
    return std::vector<Int>(xs.begin(), xs.end());
}
}  // namespace

TEST_CASE("box construction enforces incongruence") {
    CHECK_THROWS_AS(RestrictedBox(Int(2), {ints({0, 2})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RestrictedBox(Int(2), {ints({0, 1, 2})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RestrictedBox(Int(2), {{}}), std::invalid_argument);
    CHECK_THROWS_AS(RestrictedBox(Int(4), {ints({0, 1})}),
                    std::invalid_argument);
    RestrictedBox ok(Int(3), {ints({0, 4, 2})});  // 0,1,2 mod 3
    CHECK(ok.n() == 1);
}

TEST_CASE("context construction") {
    SECTION("p=2, A={0,1}: tau = 0, sigma = x^2") {
        auto ctx = sb::build_context(RestrictedBox(Int(2), {ints({0, 1})}));
        CHECK(ctx.taus[0].is_zero());
        MultiPoly<Rat> x2(1);
        x2.add_term(Monomial{{2}}, Rat(1));
        CHECK(ctx.sigmas[0] == x2);
    }
    SECTION("p=3, A={0,1,2}: tau = -x^2+x, sigma = x^3-3x^2+3x") {
        auto ctx = sb::build_context(RestrictedBox(Int(3), {ints({0, 1, 2})}));
        MultiPoly<Rat> tau(1);
        tau.add_term(Monomial{{2}}, Rat(-1));
        tau.add_term(Monomial{{1}}, Rat(1));
        CHECK(ctx.taus[0] == tau);
        CHECK(ctx.sigmas[0] ==
              to_rational(parse_poly("t1^3 - 3*t1^2 + 3*t1")));
    }
    SECTION("p=3, A={0,1}: tau = 0, sigma = x^3") {
        auto ctx = sb::build_context(RestrictedBox(Int(3), {ints({0, 1})}));
        CHECK(ctx.taus[0].is_zero());
        MultiPoly<Rat> x3(1);
        x3.add_term(Monomial{{3}}, Rat(1));
        CHECK(ctx.sigmas[0] == x3);
    }
}

TEST_CASE("sigma fixes the set and reduces to x^p") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        auto inst = gen::random_sb_instance(rng);
        auto ctx = sb::build_context(inst.box);
        const Int& p = inst.box.prime();
        for (int i = 0; i < inst.box.n(); ++i) {
            for (const Int& a : inst.box.set(i))
                CHECK(ctx.sigmas[i].evaluate(std::vector<Rat>{Rat(a)}) ==
                      Rat(a));
            // sigma - x^p vanishes mod p
            MultiPoly<Rat> xp(1);
            xp.add_term(
                Monomial{{static_cast<std::uint32_t>(p.get_ui())}}, Rat(1));
            CHECK(reduce_mod(MultiPoly<Rat>(ctx.sigmas[i] - xp), p).is_zero());
            CHECK(ctx.taus[i].total_degree() <
                  Degree::of(static_cast<std::int64_t>(p.get_ui())));
        }
    }
}

TEST_CASE("delta on simple inputs") {
    auto box2 = RestrictedBox(Int(2), {ints({0, 1}), ints({0, 1})});
    auto ctx2 = sb::build_context(box2);
    CHECK(sb::delta(to_rational(parse_poly("t1 + t2")), ctx2) ==
          to_rational(parse_poly("t1*t2")));
    CHECK(sb::delta(MultiPoly<Rat>(2), ctx2).is_zero());

    auto box3 = RestrictedBox(Int(3), {ints({0, 1, 2})});
    auto ctx3 = sb::build_context(box3);
    // constants: (c^p - c)/p
    CHECK(sb::delta(MultiPoly<Rat>::constant(1, Rat(3)), ctx3) ==
          MultiPoly<Rat>::constant(1, Rat(8)));
}

TEST_CASE("delta_power") {
    auto box = RestrictedBox(Int(2), {ints({0, 1}), ints({0, 1})});
    auto ctx = sb::build_context(box);
    auto f = to_rational(parse_poly("t1 + t2"));
    CHECK(sb::delta_power(f, ctx, 0) == f);
    CHECK(sb::delta_power(f, ctx, 1) == to_rational(parse_poly("t1*t2")));
    CHECK_THROWS_AS(sb::delta_power(f, ctx, 5), std::domain_error);
}

TEST_CASE("constant valuation drops by one per application") {
    for (long p : {2L, 3L, 5L}) {
        auto ctx = sb::build_context(RestrictedBox(Int(p), {ints({0, 1})}));
        for (Rat c : {Rat(p), Rat(p * p), Rat(2 * p * p * p)}) {
            long v = p_valuation(c, Int(p));
            Rat cur = c;
            for (long i = 0; i < v; ++i) {
                auto img = sb::delta(MultiPoly<Rat>::constant(1, cur), ctx);
                REQUIRE_FALSE(img.is_zero());
                Rat next = img.terms().begin()->second;
                CHECK(p_valuation(next, Int(p)) ==
                      p_valuation(cur, Int(p)) - 1);
                cur = next;
            }
        }
    }
}

TEST_CASE("degree bound and p-integrality of delta images") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        auto inst = gen::random_sb_instance(rng);
        auto ctx = sb::build_context(inst.box);
        PLocalDomain local(inst.box.prime());
        auto img = sb::delta(inst.f, ctx);
        CHECK(img.total_degree() <=
              inst.f.total_degree().times(inst.box.prime().get_si()));
        for (const auto& [mon, c] : img.terms()) CHECK(local.is_integral(c));
    }
}

TEST_CASE("delta evaluates to the difference quotient on box points") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        auto inst = gen::random_sb_instance(rng);
        auto ctx = sb::build_context(inst.box);
        auto img = sb::delta(inst.f, ctx);
        const Int& p = inst.box.prime();
        GridShape shape = inst.box.grid_shape();
        std::vector<std::uint32_t> idx;
        for (std::uint64_t k = 0; k < shape.total(); ++k) {
            shape.decode(k, idx);
            std::vector<Rat> point;
            for (const Int& v : inst.box.point_values(idx))
                point.emplace_back(v);
            Rat fa = inst.f.evaluate(point);
            Rat expected = Rat(1);
            for (unsigned long e = 1; e < p.get_ui(); ++e) expected *= fa;
            expected = (expected * fa - fa) / Rat(p);
            CHECK(img.evaluate(point) == expected);
        }
    }
}

TEST_CASE("congruence equivalence, hand instance") {
    auto box = RestrictedBox(Int(2), {ints({0, 1}), ints({0, 1})});
    auto ctx = sb::build_context(box);
    auto f = to_rational(parse_poly("t1 + t2"));
    auto rep = sb::congruence_equiv_check(f, ctx, 2);
    CHECK(rep.pass);
    CHECK(rep.points_checked == 4);
}

TEST_CASE("congruence equivalence, v=1 degenerates to a tautology") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = gen::random_sb_instance(rng);
        auto ctx = sb::build_context(inst.box);
        CHECK(sb::congruence_equiv_check(inst.f, ctx, 1).pass);
    }
}

TEST_CASE("congruence equivalence, seeded sweep") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        auto inst = gen::random_sb_instance(rng);
        auto ctx = sb::build_context(inst.box);
        auto rep = sb::congruence_equiv_check(inst.f, ctx, inst.v);
        INFO("trial " << trial);
        CHECK(rep.pass);
    }
}

TEST_CASE("worker count does not change the equivalence result") {
    std::mt19937_64 rng(47);
    auto inst = gen::random_sb_instance(rng);
    auto ctx = sb::build_context(inst.box);
    auto one = sb::congruence_equiv_check(inst.f, ctx, inst.v, 1);
    auto four = sb::congruence_equiv_check(inst.f, ctx, inst.v, 4);
    CHECK(one.pass == four.pass);
    CHECK(one.points_checked == four.points_checked);
    CHECK(one.counterexample == four.counterexample);
}
