#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rvw/grid.hpp"
#include "rvw/modeval.hpp"
#include "rvw/multipoly.hpp"
#include "rvw/numeric.hpp"

namespace rvw {

// Product set A = A_1 x ... x A_n of allowed integer values per variable;
// within each A_i the elements are pairwise incongruent mod p.
class RestrictedBox {
  public:
    RestrictedBox(Int p, std::vector<std::vector<Int>> sets)
        : p_(std::move(p)), sets_(std::move(sets)) {
        if (!is_prime(p_)) throw std::invalid_argument("p must be prime");
        for (const auto& set : sets_) {
            if (set.empty())
                throw std::invalid_argument("empty restriction set");
            if (Int(set.size()) > p_)
                throw std::invalid_argument("set larger than residue count");
            for (size_t i = 0; i < set.size(); ++i)
                for (size_t j = i + 1; j < set.size(); ++j)
                    if (mod_floor(set[i] - set[j], p_) == 0)
                        throw std::invalid_argument(
                            "set elements congruent mod p");
        }
    }

    const Int& prime() const { return p_; }
    int n() const { return static_cast<int>(sets_.size()); }
    const std::vector<std::vector<Int>>& sets() const { return sets_; }
    const std::vector<Int>& set(int i) const { return sets_[i]; }

    GridShape grid_shape() const {
        std::vector<std::uint64_t> radix;
        radix.reserve(sets_.size());
        for (const auto& s : sets_) radix.push_back(s.size());
        return GridShape(std::move(radix));
    }

    std::vector<Int> point_values(const std::vector<std::uint32_t>& idx) const {
        std::vector<Int> vals(sets_.size());
        for (size_t i = 0; i < sets_.size(); ++i) vals[i] = sets_[i][idx[i]];
        return vals;
    }

  private:
    Int p_;
    std::vector<std::vector<Int>> sets_;
};

namespace sb {

// Per-variable interpolation data for the operator Delta on a fixed box:
// tau_i interpolates (a - a^p)/p on A_i, sigma_i = x^p + p*tau_i fixes A_i
// pointwise and reduces to x^p mod p.
struct SBContext {
    RestrictedBox box;
    Int p;
    std::vector<MultiPoly<Rat>> taus;    // univariate, degree < p
    std::vector<MultiPoly<Rat>> sigmas;  // univariate, degree = p
};

inline SBContext build_context(const RestrictedBox& box) {
    const Int& p = box.prime();
    const unsigned long pu = to_ulong_checked(p, "prime");
    PLocalDomain local(p);
    SBContext ctx{box, p, {}, {}};
    for (int i = 0; i < box.n(); ++i) {
        const auto& set = box.set(i);
        std::vector<Rat> points, values;
        points.reserve(set.size());
        values.reserve(set.size());
        for (const Int& a : set) {
            points.emplace_back(a);
            values.emplace_back(Rat(a - pow_int(a, pu)) / Rat(p));
        }
        MultiPoly<Rat> tau = lagrange_interpolate(points, values);
        for (const auto& [mon, c] : tau.terms())
            if (!local.is_integral(c))
                throw std::logic_error("incongruence certificate violated");
        if (tau.total_degree() >= Degree::of(static_cast<std::int64_t>(pu)))
            throw std::logic_error("tau degree exceeds p - 1");

        MultiPoly<Rat> sigma(1);
        sigma.add_term(Monomial{{static_cast<std::uint32_t>(pu)}}, Rat(1));
        sigma = sigma + tau.scaled(Rat(p));
        if (!(sigma.total_degree() == Degree::of(pu)))
            throw std::logic_error("sigma degree must equal p");
        for (const Int& a : set) {
            if (sigma.evaluate(std::vector<Rat>{Rat(a)}) != Rat(a))
                throw std::logic_error("sigma does not fix the set");
        }
        ctx.taus.push_back(std::move(tau));
        ctx.sigmas.push_back(std::move(sigma));
    }
    return ctx;
}

// Delta f = (f^p - f(sigma_1(t_1),...,sigma_n(t_n))) / p.  The numerator has
// p-integral coefficients all divisible by p; deg Delta f <= p * deg f.
inline MultiPoly<Rat> delta(const MultiPoly<Rat>& f, const SBContext& ctx) {
    if (f.nvars() != ctx.box.n())
        throw std::invalid_argument("polynomial arity mismatch with context");
    const unsigned long pu = to_ulong_checked(ctx.p, "prime");
    PLocalDomain local(ctx.p);
    for (const auto& [mon, c] : f.terms())
        if (!local.is_integral(c))
            throw std::invalid_argument("coefficient not p-integral");

    std::vector<MultiPoly<Rat>> subs;
    subs.reserve(f.nvars());
    for (int i = 0; i < f.nvars(); ++i)
        subs.push_back(embed_univariate(ctx.sigmas[i], f.nvars(), i));
    MultiPoly<Rat> numerator =
        f.pow(static_cast<unsigned>(pu)) - compose_per_variable(f, subs);

    MultiPoly<Rat> result(f.nvars());
    for (const auto& [mon, c] : numerator.terms()) {
        if (local.valuation(c) < 1)
            throw std::logic_error("delta numerator not divisible by p");
        result.add_term(mon, c / Rat(ctx.p));
    }
    if (result.total_degree() >
        f.total_degree().times(static_cast<std::int64_t>(pu)))
        throw std::logic_error("delta degree bound violated");
    return result;
}

inline MultiPoly<Rat> delta_power(const MultiPoly<Rat>& f,
                                  const SBContext& ctx, unsigned i) {
    if (i > 4) throw std::domain_error("iteration count exceeds guard");
    MultiPoly<Rat> g = f;
    for (unsigned k = 0; k < i; ++k) g = delta(g, ctx);
    return g;
}

struct EquivReport {
    bool pass = true;
    std::uint64_t points_checked = 0;
    // lexicographically first failing box point, as values
    std::optional<std::vector<Int>> counterexample;
};

// Checks, for every a in the box, that f(a) == 0 mod p^v holds exactly when
// (Delta^i f)(a) == 0 mod p for all 0 <= i <= v-1.
inline EquivReport congruence_equiv_check(const MultiPoly<Rat>& f,
                                          const SBContext& ctx, unsigned v,
                                          int workers = 1,
                                          std::uint64_t grid_guard = 1000000) {
    if (v == 0 || v > 4) throw std::domain_error("v out of range");
    GridShape shape = ctx.box.grid_shape();
    if (shape.total() > grid_guard)
        throw std::domain_error("grid size " + std::to_string(shape.total()) +
                                " exceeds guard");

    const Int pv = pow_int(ctx.p, v);
    std::vector<detail::ModBoxEvaluator> evals;
    evals.emplace_back(reduce_mod(f, pv), pv, ctx.box.sets());
    MultiPoly<Rat> g = f;
    for (unsigned i = 0; i < v; ++i) {
        evals.emplace_back(reduce_mod(g, ctx.p), ctx.p, ctx.box.sets());
        if (i + 1 < v) g = delta(g, ctx);
    }

    struct Partial {
        std::uint64_t first_bad = UINT64_MAX;
    };
    auto chunk = [&](std::uint64_t b, std::uint64_t e) {
        Partial part;
        std::vector<std::uint32_t> idx;
        for (std::uint64_t k = b; k < e; ++k) {
            shape.decode(k, idx);
            const bool lhs = evals[0].eval(idx) == 0;
            bool rhs = true;
            for (unsigned i = 0; i < v && rhs; ++i)
                rhs = evals[1 + i].eval(idx) == 0;
            if (lhs != rhs) {
                part.first_bad = k;
                break;
            }
        }
        return part;
    };
    auto merge = [](Partial a, Partial b) {
        return a.first_bad <= b.first_bad ? a : b;
    };
    Partial result =
        parallel_fold<Partial>(shape.total(), workers, chunk, merge, Partial{});

    EquivReport report;
    report.points_checked = shape.total();
    if (result.first_bad != UINT64_MAX) {
        report.pass = false;
        std::vector<std::uint32_t> idx;
        shape.decode(result.first_bad, idx);
        report.counterexample = ctx.box.point_values(idx);
    }
    return report;
}

}  // namespace sb
}  // namespace rvw
