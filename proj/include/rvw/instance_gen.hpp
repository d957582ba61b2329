#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rvw/multipoly.hpp"
#include "rvw/numeric.hpp"
#include "rvw/schanuel_brink.hpp"
#include "rvw/warning_verify.hpp"
#include "rvw/zerosum.hpp"

namespace rvw {
namespace gen {

// All generators draw from a caller-owned mt19937_64 so a recorded 64-bit
// seed reproduces every instance.

inline std::uint64_t pick(std::mt19937_64& rng, std::uint64_t lo,
                          std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

inline Int pick_int(std::mt19937_64& rng, long lo, long hi) {
    return Int(static_cast<long>(pick(rng, 0, hi - lo)) + lo);
}

// Restriction set: distinct residues mod p, shifted by small multiples of p
// so the sets exercise non-residue representatives.
inline std::vector<Int> random_restriction_set(std::mt19937_64& rng,
                                               const Int& p, unsigned size,
                                               bool force_zero) {
    unsigned long pu = p.get_ui();
    std::vector<unsigned long> residues(pu);
    for (unsigned long i = 0; i < pu; ++i) residues[i] = i;
    for (unsigned long i = pu; i > 1; --i)
        std::swap(residues[i - 1], residues[pick(rng, 0, i - 1)]);
    std::vector<Int> set;
    for (unsigned i = 0; i < size; ++i) {
        Int value = Int(residues[i]) + p * pick_int(rng, -2, 2);
        set.push_back(value);
    }
    if (force_zero) {
        bool has0 = false;
        for (const Int& v : set) has0 |= (v == 0);
        if (!has0) {
            // replace the entry congruent to 0 if present, else the first
            size_t at = 0;
            for (size_t i = 0; i < set.size(); ++i)
                if (mod_floor(set[i], p) == 0) at = i;
            set[at] = 0;
        }
    }
    return set;
}

inline RestrictedBox random_box(std::mt19937_64& rng, const Int& p, int n,
                                unsigned max_size, bool force_zero = false) {
    std::vector<std::vector<Int>> sets;
    unsigned cap = std::min<unsigned>(max_size, p.get_ui());
    for (int i = 0; i < n; ++i)
        sets.push_back(
            random_restriction_set(rng, p, pick(rng, 1, cap), force_zero));
    return RestrictedBox(p, std::move(sets));
}

// Random integer polynomial of total degree <= deg_max with small
// coefficients (possibly zero).
inline MultiPoly<Int> random_poly(std::mt19937_64& rng, int nvars,
                                  unsigned deg_max, unsigned terms = 4) {
    MultiPoly<Int> f(nvars);
    for (unsigned t = 0; t < terms; ++t) {
        std::vector<std::uint32_t> e(nvars, 0);
        unsigned budget = pick(rng, 0, deg_max);
        for (unsigned d = 0; d < budget; ++d)
            e[pick(rng, 0, nvars - 1)] += 1;
        f.add_term(Monomial{std::move(e)}, pick_int(rng, -4, 4));
    }
    return f;
}

// Rational polynomial with p-integral coefficients: integer numerators over
// denominators prime to p.
inline MultiPoly<Rat> random_plocal_poly(std::mt19937_64& rng, int nvars,
                                         unsigned deg_max, const Int& p,
                                         unsigned terms = 4) {
    MultiPoly<Rat> f(nvars);
    for (unsigned t = 0; t < terms; ++t) {
        std::vector<std::uint32_t> e(nvars, 0);
        unsigned budget = pick(rng, 0, deg_max);
        for (unsigned d = 0; d < budget; ++d)
            e[pick(rng, 0, nvars - 1)] += 1;
        Int den = 1;
        if (pick(rng, 0, 3) == 0) {
            den = pick_int(rng, 2, 5);
            while (mod_floor(den, p) == 0) den += 1;
        }
        Rat c(pick_int(rng, -4, 4), den);
        c.canonicalize();
        f.add_term(Monomial{std::move(e)}, c);
    }
    return f;
}

struct SBInstance {
    RestrictedBox box;
    MultiPoly<Rat> f;
    unsigned v;
};

inline SBInstance random_sb_instance(std::mt19937_64& rng) {
    static const unsigned long primes[] = {2, 3, 5};
    Int p(primes[pick(rng, 0, 2)]);
    int n = static_cast<int>(pick(rng, 1, 3));
    RestrictedBox box = random_box(rng, p, n, p.get_ui());
    MultiPoly<Rat> f = random_plocal_poly(rng, n, pick(rng, 0, 3), p);
    unsigned v = static_cast<unsigned>(pick(rng, 1, 3));
    return SBInstance{std::move(box), std::move(f), v};
}

struct Rvw2Instance {
    verify::CongruenceSystem sys;
    RestrictedBox box;
};

inline Rvw2Instance random_rvw2_instance(std::mt19937_64& rng) {
    static const unsigned long primes[] = {2, 3};
    Int p(primes[pick(rng, 0, 1)]);
    int n = static_cast<int>(pick(rng, 1, 4));
    unsigned r = static_cast<unsigned>(pick(rng, 1, 2));
    std::vector<MultiPoly<Int>> polys;
    std::vector<unsigned> exps;
    for (unsigned j = 0; j < r; ++j) {
        polys.push_back(random_poly(rng, n, pick(rng, 0, 2)));
        exps.push_back(static_cast<unsigned>(pick(rng, 1, 2)));
    }
    verify::CongruenceSystem sys(p, std::move(polys), std::move(exps));
    RestrictedBox box = random_box(rng, p, n, p.get_ui());
    return Rvw2Instance{std::move(sys), std::move(box)};
}

// Set system of length n with maximal degree <= d_cap over a small atom
// pool (degree enforced by per-atom usage counts).
inline zerosum::SetSystem random_setsystem(std::mt19937_64& rng, unsigned n,
                                           unsigned d_cap) {
    zerosum::SetSystem F;
    const std::uint32_t pool = 12;
    std::vector<unsigned> used(pool, 0);
    for (unsigned i = 0; i < n; ++i) {
        std::vector<std::uint32_t> s;
        unsigned size = pick(rng, 0, 4);
        for (unsigned t = 0; t < size; ++t) {
            std::uint32_t a = static_cast<std::uint32_t>(pick(rng, 0, pool - 1));
            if (used[a] >= d_cap) continue;
            bool dup = false;
            for (auto b : s) dup |= (b == a);
            if (dup) continue;
            used[a] += 1;
            s.push_back(a);
        }
        F.sets.push_back(std::move(s));
    }
    return F;
}

struct WeightedInstance {
    zerosum::GSequence x;
    RestrictedBox box;
    unsigned k;
    std::uint64_t g;
};

// Weighted zero-sum instance: p-group of order <= 27, weight sets of size
// <= 3 containing 0, sequence length <= 6.
inline WeightedInstance random_weighted_instance(std::mt19937_64& rng) {
    static const unsigned long primes[] = {2, 3};
    Int p(primes[pick(rng, 0, 1)]);
    std::vector<unsigned> exps;
    if (p == 2) {
        static const std::vector<unsigned> shapes[] = {
            {1}, {2}, {1, 1}, {1, 2}, {1, 1, 1}, {3}, {2, 2}, {1, 1, 2}};
        exps = shapes[pick(rng, 0, 7)];
    } else {
        static const std::vector<unsigned> shapes[] = {
            {1}, {2}, {1, 1}, {3}, {1, 2}, {1, 1, 1}};
        exps = shapes[pick(rng, 0, 5)];
    }
    zerosum::GroupSpec G(p, exps);
    unsigned n = static_cast<unsigned>(pick(rng, 1, 6));
    std::vector<std::uint64_t> entries;
    for (unsigned i = 0; i < n; ++i)
        entries.push_back(pick(rng, 0, G.order() - 1));
    zerosum::GSequence x(G, std::move(entries));
    RestrictedBox box = random_box(rng, p, n, 3, /*force_zero=*/true);
    unsigned k = static_cast<unsigned>(pick(rng, 1, exps.back()));
    std::uint64_t g = pick(rng, 0, G.order() - 1);
    return WeightedInstance{std::move(x), std::move(box), k, g};
}

}  // namespace gen
}  // namespace rvw
