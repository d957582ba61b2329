#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "rvw/instance_gen.hpp"
#include "rvw/poly_parser.hpp"
#include "rvw/warning_verify.hpp"

using namespace rvw;
using verify::CongruenceSystem;
using verify::FqSystem;

namespace {
std::vector<Int> ints(std::initializer_list<long> xs) {
    return std::vector<Int>(xs.begin(), xs.end());
}
}  // namespace

TEST_CASE("count_zeros_box basics") {
    RestrictedBox box(Int(2), {ints({0, 1}), ints({0, 1})});
    CongruenceSystem sys(Int(2), {parse_poly("t1 + t2")}, {1});
    CHECK(verify::count_zeros_box(sys, box) == 2);

    RestrictedBox box3(Int(3), {ints({0, 1, 2}), ints({0, 1, 2})});
    CongruenceSystem sys3(Int(3), {parse_poly("t1", 2)}, {1});
    CHECK(verify::count_zeros_box(sys3, box3) == 3);

    RestrictedBox box1(Int(3), {ints({0, 1, 2})});
    CongruenceSystem nores(Int(3), {parse_poly("t1^2 + 1")}, {1});
    CHECK(verify::count_zeros_box(nores, box1) == 0);

    CHECK_THROWS_AS(verify::count_zeros_box(sys3, box), std::invalid_argument);
}

TEST_CASE("count matches the big-integer reference on random instances") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 60; ++trial) {
        auto inst = gen::random_rvw2_instance(rng);
        CHECK(verify::count_zeros_box(inst.sys, inst.box) ==
              oracle::count_zeros_reference(inst.sys, inst.box));
    }
}

TEST_CASE("count_zeros_fq basics") {
    auto F3 = fq_build(Int(3), 1);
    MultiPoly<FqElem> t1(2);
    t1.add_term(Monomial{{1, 0}}, F3.one());
    FqSystem sys(F3, {t1});
    CHECK(verify::count_zeros_fq(sys, verify::full_grid(F3, 2)) == 3);

    auto F4 = fq_build(Int(2), 2);
    MultiPoly<FqElem> cubes(1);
    cubes.add_term(Monomial{{3}}, F4.one());
    cubes.add_term(Monomial{{0}}, -F4.one());  // t^3 - 1
    FqSystem sys4(F4, {cubes});
    CHECK(verify::count_zeros_fq(sys4, verify::full_grid(F4, 1)) == 3);

    MultiPoly<FqElem> one = MultiPoly<FqElem>::constant(1, F4.one());
    FqSystem unit(F4, {one});
    CHECK(verify::count_zeros_fq(unit, verify::full_grid(F4, 1)) == 0);
}

TEST_CASE("rvw2 report on hand instances") {
    SECTION("sharp boolean instance") {
        for (int n = 1; n <= 4; ++n) {
            std::string expr = "t1";
            for (int i = 2; i <= n; ++i) expr += " + t" + std::to_string(i);
            CongruenceSystem sys(Int(2), {parse_poly(expr, n)}, {1});
            std::vector<std::vector<Int>> sets(n, ints({0, 1}));
            RestrictedBox box(Int(2), sets);
            auto rep = verify::rvw2_report(sys, box);
            CHECK(rep.count == pow_int(2, n - 1));
            CHECK(rep.bound == pow_int(2, n - 1));
            CHECK(rep.verdict == Verdict::HOLDS);
            REQUIRE(rep.boolean_bound.has_value());
            CHECK(*rep.boolean_bound == rep.bound);
        }
    }
    SECTION("full grid equal caps records q^(n-d)") {
        auto F3 = fq_build(Int(3), 1);
        MultiPoly<FqElem> t1(2);
        t1.add_term(Monomial{{1, 0}}, F3.one());
        FqSystem sys(F3, {t1});
        auto rep = verify::rvw2_report(sys, verify::full_grid(F3, 2));
        CHECK(rep.count == 3);
        CHECK(rep.bound == 3);
        CHECK(rep.verdict == Verdict::HOLDS);
        REQUIRE(rep.full_grid_bound.has_value());
        CHECK(*rep.full_grid_bound == 3);
    }
    SECTION("unsatisfiable constant is vacuous") {
        CongruenceSystem sys(Int(2), {parse_poly("1", 1)}, {1});
        RestrictedBox box(Int(2), {ints({0, 1})});
        auto rep = verify::rvw2_report(sys, box);
        CHECK(rep.count == 0);
        CHECK(rep.verdict == Verdict::VACUOUS);
    }
}

TEST_CASE("rvw2 sweep never yields VIOLATED") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 120; ++trial) {
        auto inst = gen::random_rvw2_instance(rng);
        auto rep = verify::rvw2_report(inst.sys, inst.box);
        INFO("trial " << trial);
        CHECK(rep.verdict != Verdict::VIOLATED);
    }
}

TEST_CASE("delta reduction preserves solution sets") {
    SECTION("v=1 systems pass through") {
        CongruenceSystem sys(Int(2), {parse_poly("t1 + t2")}, {1});
        RestrictedBox box(Int(2), {ints({0, 1}), ints({0, 1})});
        auto ctx = sb::build_context(box);
        auto red = verify::delta_reduce_system(sys, ctx);
        CHECK(red.polys.size() == 1);
        CHECK(red.polys[0] == reduce_mod(sys.polys[0], Int(2)));
    }
    SECTION("hand instance mod 4") {
        CongruenceSystem sys(Int(2), {parse_poly("t1 + t2")}, {2});
        RestrictedBox box(Int(2), {ints({0, 1}), ints({0, 1})});
        auto ctx = sb::build_context(box);
        auto red = verify::delta_reduce_system(sys, ctx);
        REQUIRE(red.polys.size() == 2);
        CHECK(red.polys[0] == parse_poly("t1 + t2"));
        CHECK(red.polys[1] == parse_poly("t1*t2"));
        CHECK(verify::count_zeros_box(sys, box) == 1);
        CHECK(verify::count_zeros_box(red, box) == 1);
    }
    SECTION("constant congruences reduce correctly") {
        // 3 == 0 mod 9 is false; the reduction must stay unsatisfiable
        CongruenceSystem sys(Int(3), {parse_poly("3", 1)}, {2});
        RestrictedBox box(Int(3), {ints({0, 1, 2})});
        auto ctx = sb::build_context(box);
        auto red = verify::delta_reduce_system(sys, ctx);
        CHECK(verify::count_zeros_box(sys, box) == 0);
        CHECK(verify::count_zeros_box(red, box) == 0);
    }
    SECTION("random systems") {
        std::mt19937_64 rng(61);
        for (int trial = 0; trial < 50; ++trial) {
            auto inst = gen::random_rvw2_instance(rng);
            auto ctx = sb::build_context(inst.box);
            auto red = verify::delta_reduce_system(inst.sys, ctx);
            for (unsigned v : red.exps) CHECK(v == 1);
            CHECK(verify::count_zeros_box(red, inst.box) ==
                  verify::count_zeros_box(inst.sys, inst.box));
            // reduced budget stays within the step-2 sum
            Rat allowance(0);
            for (size_t j = 0; j < inst.sys.polys.size(); ++j) {
                Degree d = inst.sys.polys[j].total_degree();
                if (d.is_neg_infinity()) continue;
                allowance += Rat(Int(d.value()) *
                                 (pow_int(inst.sys.p, inst.sys.exps[j]) - 1)) /
                             Rat(inst.sys.p - 1);
            }
            Int mod_p_degree_sum = 0;
            for (const auto& f : red.polys) {
                Degree d = f.total_degree();
                if (!d.is_neg_infinity()) mod_p_degree_sum += Int(d.value());
            }
            CHECK(Rat(mod_p_degree_sum) <= allowance);
        }
    }
}

TEST_CASE("alon furedi report") {
    RestrictedBox box(Int(2), {ints({0, 1}), ints({0, 1})});
    auto rep = verify::alon_furedi_report(parse_poly("t1", 2), box);
    CHECK(rep.count == 2);
    CHECK(rep.bound == 2);
    CHECK(rep.verdict == Verdict::HOLDS);

    auto rep_const = verify::alon_furedi_report(parse_poly("1", 2), box);
    CHECK(rep_const.count == 4);
    CHECK(rep_const.bound == 4);  // deg 0 keeps the whole grid
    CHECK(rep_const.verdict == Verdict::HOLDS);

    // vanishing product over the box
    auto vanishing = parse_poly("(t1)*(t1-1)*(t2)*(t2-1)");
    auto rep_zero = verify::alon_furedi_report(vanishing, box);
    CHECK(rep_zero.count == 0);
    CHECK(rep_zero.verdict == Verdict::VACUOUS);
}

TEST_CASE("chevalley indicator") {
    auto F2 = fq_build(Int(2), 1);
    MultiPoly<FqElem> t1(1);
    t1.add_term(Monomial{{1}}, F2.one());
    auto ind2 = verify::chevalley_indicator(FqSystem(F2, {t1}));
    MultiPoly<FqElem> expected2(1);
    expected2.add_term(Monomial{{0}}, F2.one());
    expected2.add_term(Monomial{{1}}, F2.one());  // 1 + t over F2
    CHECK(ind2 == expected2);

    auto F3 = fq_build(Int(3), 1);
    MultiPoly<FqElem> u1(1);
    u1.add_term(Monomial{{1}}, F3.one());
    auto ind3 = verify::chevalley_indicator(FqSystem(F3, {u1}));
    MultiPoly<FqElem> expected3(1);
    expected3.add_term(Monomial{{0}}, F3.one());
    expected3.add_term(Monomial{{2}}, -F3.one());  // 1 - t^2
    CHECK(ind3 == expected3);
}

TEST_CASE("indicator nonzeros equal system zeros, exhaustively") {
    std::mt19937_64 rng(67);
    for (auto [p, ell] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}}) {
        auto F = fq_build(Int(p), ell);
        auto elems = F.all_elements();
        for (int trial = 0; trial < 10; ++trial) {
            int n = 1 + static_cast<int>(rng() % 2);
            MultiPoly<FqElem> f(n);
            for (int t = 0; t < 3; ++t) {
                std::vector<std::uint32_t> e(n, 0);
                for (int d = static_cast<int>(rng() % 3); d > 0; --d)
                    e[rng() % n] += 1;
                f.add_term(Monomial{std::move(e)},
                           elems[rng() % elems.size()]);
            }
            FqSystem sys(F, {f});
            verify::FqBox box = verify::full_grid(F, n);
            MultiPoly<FqElem> ind;
            try {
                ind = verify::chevalley_indicator(sys);
            } catch (const std::domain_error&) {
                continue;  // guard hit, nothing to compare
            }
            auto af = verify::alon_furedi_report(ind, box);
            CHECK(af.count == verify::count_zeros_fq(sys, box));
        }
    }
}

TEST_CASE("restricted chevalley: z != 1 under the degree hypothesis") {
    std::mt19937_64 rng(71);
    for (auto [p, ell] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}}) {
        auto F = fq_build(Int(p), ell);
        auto elems = F.all_elements();
        for (int trial = 0; trial < 40; ++trial) {
            int n = 2 + static_cast<int>(rng() % 2);
            MultiPoly<FqElem> f(n);
            std::vector<std::uint32_t> e(n, 0);
            e[rng() % n] = 1;
            f.add_term(Monomial{std::move(e)}, elems[1 + rng() % (elems.size() - 1)]);
            FqSystem sys(F, {f});
            // random sub-boxes
            verify::FqBox box;
            Int slack = 0;
            for (int i = 0; i < n; ++i) {
                std::vector<FqElem> s;
                for (const auto& a : elems)
                    if (rng() % 2 == 0) s.push_back(a);
                if (s.empty()) s.push_back(elems[0]);
                slack += Int(s.size()) - 1;
                box.push_back(std::move(s));
            }
            if (sys.degree_budget() >= slack) continue;  // hypothesis unmet
            Int z = verify::count_zeros_fq(sys, box);
            CHECK(z != 1);
        }
    }
}

TEST_CASE("boolean bound beats the combinatorial deduction for odd p") {
    // exponent comparison in exact integer arithmetic:
    // n - (p-1)d  vs  ceil(n - log2(p)(p-1)d) = n - floor(log2 p^{(p-1)d})
    for (long p : {3L, 5L, 7L}) {
        for (long d = 1; d <= 3; ++d) {
            Int power = pow_int(Int(p), (p - 1) * d);
            long l = static_cast<long>(mpz_sizeinbase(power.get_mpz_t(), 2)) - 1;
            for (long n = 1; n <= 20; ++n) {
                if (n <= (p - 1) * d) continue;
                CHECK(n - (p - 1) * d > n - l);
            }
        }
    }
}

TEST_CASE("schanuel box expansion") {
    SECTION("boolean split finds the nonzero witness") {
        CongruenceSystem sys(Int(2), {parse_poly("t1 + t2")}, {1});
        auto rep = verify::schanuel_box_expand(sys, {Int(1), Int(1)});
        CHECK(rep.hypothesis_split);
        CHECK(rep.verdict_box == Verdict::HOLDS);
        REQUIRE(rep.witness_nonzero.has_value());
        CHECK(*rep.witness_nonzero == ints({1, 1}));
        CHECK(rep.boolean_cross_check);
    }
    SECTION("cap 2 on one variable: nonzero witness exists, unit does not") {
        CongruenceSystem sys(Int(2), {parse_poly("t1")}, {1});
        auto rep = verify::schanuel_box_expand(sys, {Int(2)});
        CHECK(rep.hypothesis_split);
        CHECK(rep.verdict_box == Verdict::HOLDS);
        REQUIRE(rep.witness_nonzero.has_value());
        CHECK(*rep.witness_nonzero == ints({2}));
        CHECK_FALSE(rep.witness_unit.has_value());
        CHECK(rep.boolean_cross_check);
    }
    SECTION("constant term is rejected") {
        CongruenceSystem sys(Int(2), {parse_poly("t1 + 1")}, {1});
        CHECK_THROWS_AS(verify::schanuel_box_expand(sys, {Int(1)}),
                        std::invalid_argument);
    }
    SECTION("residue-grid form holds under its hypothesis") {
        CongruenceSystem sys(Int(3), {parse_poly("t1 + t2", 2)}, {1});
        auto rep = verify::schanuel_box_expand(sys, {Int(1), Int(1)});
        CHECK(rep.hypothesis_residue);
        CHECK(rep.verdict_residue == Verdict::HOLDS);
    }
    SECTION("expanded system degree matches (p-1) deg") {
        CongruenceSystem sys(Int(3), {parse_poly("t1*t2")}, {1});
        auto rep = verify::schanuel_box_expand(sys, {Int(2), Int(1)});
        CHECK(rep.expanded.polys[0].nvars() == 3);
        CHECK(rep.expanded.polys[0].total_degree() == Degree::of(4));
        CHECK(rep.boolean_cross_check);
    }
}

TEST_CASE("fq boxes reject repeated elements") {
    auto F3 = fq_build(Int(3), 1);
    MultiPoly<FqElem> t1(1);
    t1.add_term(Monomial{{1}}, F3.one());
    FqSystem sys(F3, {t1});
    verify::FqBox bad{{F3.from_index(0), F3.from_index(0)}};
    CHECK_THROWS_AS(verify::count_zeros_fq(sys, bad), std::invalid_argument);
    CHECK_THROWS_AS(verify::alon_furedi_report(t1, bad),
                    std::invalid_argument);
}

TEST_CASE("grid guard raises instead of sampling") {
    CongruenceSystem sys(Int(2), {parse_poly("t1")}, {1});
    RestrictedBox box(Int(2), {ints({0, 1})});
    CHECK_THROWS_AS(verify::count_zeros_box(sys, box, 1, /*guard=*/1),
                    std::domain_error);
}

TEST_CASE("worker partitioning keeps counts identical") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        auto inst = gen::random_rvw2_instance(rng);
        CHECK(verify::count_zeros_box(inst.sys, inst.box, 1) ==
              verify::count_zeros_box(inst.sys, inst.box, 5));
    }
}
