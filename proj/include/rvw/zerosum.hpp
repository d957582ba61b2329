#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rvw/balls_bins.hpp"
#include "rvw/grid.hpp"
#include "rvw/multipoly.hpp"
#include "rvw/numeric.hpp"
#include "rvw/report.hpp"
#include "rvw/schanuel_brink.hpp"

namespace rvw {
namespace zerosum {

// Finite commutative p-group as a direct sum of Z/p^{v_i} with v_1 <= ... <=
// v_r.  Elements are encoded as mixed-radix integers, first coordinate least
// significant.
class GroupSpec {
  public:
    GroupSpec(Int p, std::vector<unsigned> exps)
        : p_(std::move(p)), exps_(std::move(exps)) {
        if (!is_prime(p_)) throw std::invalid_argument("p must be prime");
        if (exps_.empty()) throw std::invalid_argument("rank must be >= 1");
        if (!std::is_sorted(exps_.begin(), exps_.end()))
            throw std::invalid_argument("exponents must be nondecreasing");
        Int order = 1;
        for (unsigned v : exps_) {
            if (v == 0) throw std::invalid_argument("exponent must be >= 1");
            Int m = pow_int(p_, v);
            order *= m;
            if (order > 16384)
                throw std::domain_error("group order exceeds guard 2^14");
            moduli_.push_back(m.get_ui());
        }
        order_ = order.get_ui();
    }

    const Int& p() const { return p_; }
    const std::vector<unsigned>& exps() const { return exps_; }
    size_t rank() const { return exps_.size(); }
    std::uint64_t order() const { return order_; }
    const std::vector<std::uint64_t>& moduli() const { return moduli_; }

    // 1 + sum (p^{v_i} - 1): Olson's value of the Davenport constant for
    // p-groups, and a lower bound in general.
    Int davenport_lower() const {
        Int d = 1;
        for (auto m : moduli_) d += Int(static_cast<unsigned long>(m)) - 1;
        return d;
    }
    Int exponent() const {
        return Int(static_cast<unsigned long>(moduli_.back()));
    }

    std::uint64_t encode(const std::vector<std::uint64_t>& coords) const {
        if (coords.size() != moduli_.size())
            throw std::invalid_argument("coordinate rank mismatch");
        std::uint64_t idx = 0, base = 1;
        for (size_t i = 0; i < moduli_.size(); ++i) {
            if (coords[i] >= moduli_[i])
                throw std::out_of_range("coordinate out of range");
            idx += coords[i] * base;
            base *= moduli_[i];
        }
        return idx;
    }
    std::vector<std::uint64_t> decode(std::uint64_t idx) const {
        if (idx >= order_) throw std::out_of_range("element index");
        std::vector<std::uint64_t> coords(moduli_.size());
        for (size_t i = 0; i < moduli_.size(); ++i) {
            coords[i] = idx % moduli_[i];
            idx /= moduli_[i];
        }
        return coords;
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t r = 0, base = 1;
        for (auto m : moduli_) {
            std::uint64_t ca = a % m, cb = b % m;
            a /= m;
            b /= m;
            r += ((ca + cb) % m) * base;
            base *= m;
        }
        return r;
    }
    // k*x for an integer weight k (reduced per component).
    std::uint64_t scale(const Int& k, std::uint64_t x) const {
        std::uint64_t r = 0, base = 1;
        for (auto m : moduli_) {
            std::uint64_t cx = x % m;
            x /= m;
            Int mm(static_cast<unsigned long>(m));
            std::uint64_t ck = mod_floor(k, mm).get_ui();
            r += ((ck * cx) % m) * base;
            base *= m;
        }
        return r;
    }
    std::uint64_t generator(size_t i) const {
        std::vector<std::uint64_t> c(moduli_.size(), 0);
        c[i] = 1;
        return encode(c);
    }

  private:
    Int p_;
    std::vector<unsigned> exps_;
    std::vector<std::uint64_t> moduli_;
    std::uint64_t order_ = 0;
};

struct GSequence {
    GroupSpec group;
    std::vector<std::uint64_t> entries;  // encoded elements

    GSequence(GroupSpec g, std::vector<std::uint64_t> es)
        : group(std::move(g)), entries(std::move(es)) {
        for (auto e : entries)
            if (e >= group.order())
                throw std::out_of_range("sequence entry out of range");
    }
    size_t length() const { return entries.size(); }
};

namespace detail_zs {

// Does some nonempty sub-multiset sum to zero?
inline bool has_zero_sum_submultiset(const GroupSpec& G,
                                     const std::vector<std::uint64_t>& xs) {
    std::vector<char> reach(G.order(), 0);
    for (auto x : xs) {
        if (x == 0) return true;
        std::vector<char> next = reach;
        next[x] = 1;
        for (std::uint64_t s = 0; s < G.order(); ++s)
            if (reach[s]) next[G.add(s, x)] = 1;
        if (next[0]) return true;
        reach.swap(next);
    }
    return false;
}

// Number of multisets of size d over a set of n elements, clamped.
inline double multiset_count_estimate(std::uint64_t n, std::uint64_t d) {
    double r = 1;
    for (std::uint64_t i = 0; i < d; ++i) {
        r *= static_cast<double>(n + i) / static_cast<double>(i + 1);
        if (r > 1e18) return 1e18;
    }
    return r;
}

// Visits nondecreasing index tuples of length d; stops early when the
// visitor returns false.
template <typename Visit>
bool for_each_multiset(std::uint64_t n, unsigned d, Visit visit) {
    std::vector<std::uint64_t> tuple(d, 0);
    auto rec = [&](auto&& self, unsigned pos, std::uint64_t lo) -> bool {
        if (pos == d) return visit(tuple);
        for (std::uint64_t v = lo; v < n; ++v) {
            tuple[pos] = v;
            if (!self(self, pos + 1, v)) return false;
        }
        return true;
    };
    return rec(rec, 0, 0);
}

}  // namespace detail_zs

struct DavenportResult {
    Int constant;  // D(G)
    // Extremal sequence of length D(G)-1 with no nonempty zero-sum
    // sub-multiset, encoded elements in nondecreasing order.
    std::vector<std::uint64_t> extremal;
};

// Least d such that every multiset of size d over G has a nonempty zero-sum
// sub-multiset.  Scans upward from the structural lower bound; each failed
// level is certified by an explicit zero-sum-free multiset.
inline DavenportResult davenport_constant(const GroupSpec& G,
                                          double work_guard = 2e8) {
    if (G.order() > 256)
        throw std::domain_error("group order exceeds Davenport guard");
    Int d_low = G.davenport_lower();
    if (d_low > 13)
        throw std::domain_error("structural bound exceeds Davenport guard");

    // The canonical candidate: each generator repeated p^{v_i} - 1 times.
    // If it is zero-sum-free, every truncation certifies the levels below
    // the structural bound.
    std::vector<std::uint64_t> canonical;
    for (size_t i = 0; i < G.rank(); ++i)
        for (std::uint64_t k = 1; k < G.moduli()[i]; ++k)
            canonical.push_back(G.generator(i));
    if (detail_zs::has_zero_sum_submultiset(G, canonical))
        throw std::logic_error("canonical extremal sequence is not zero-sum-free");

    std::vector<std::uint64_t> extremal = canonical;
    const unsigned start = static_cast<unsigned>(d_low.get_ui());
    for (unsigned d = start;; ++d) {
        if (Int(d) > Int(static_cast<unsigned long>(G.order())) )
            throw std::logic_error("Davenport scan passed the group order");
        if (detail_zs::multiset_count_estimate(G.order(), d) > work_guard)
            throw std::domain_error("Davenport search too large");
        std::optional<std::vector<std::uint64_t>> found_free;
        detail_zs::for_each_multiset(
            G.order(), d, [&](const std::vector<std::uint64_t>& tuple) {
                if (!detail_zs::has_zero_sum_submultiset(G, tuple)) {
                    found_free = tuple;
                    return false;
                }
                return true;
            });
        if (!found_free) {
            DavenportResult res{Int(d), std::move(extremal)};
            if (res.constant < d_low ||
                res.constant > Int(static_cast<unsigned long>(G.order())))
                throw std::logic_error("Davenport constant out of bounds");
            return res;
        }
        extremal = *found_free;
    }
}

// N_g(x): number of subsets of positions whose entries sum to g.  The empty
// subset counts toward g = 0.
inline Int gsum_count(const GSequence& x, std::uint64_t g) {
    if (x.length() > 24)
        throw std::domain_error("sequence length exceeds subset guard");
    if (g >= x.group.order()) throw std::out_of_range("target element");
    std::vector<Int> cnt(x.group.order(), 0);
    cnt[0] = 1;
    for (auto e : x.entries) {
        std::vector<Int> next = cnt;
        for (std::uint64_t s = 0; s < x.group.order(); ++s)
            if (cnt[s] != 0) next[x.group.add(s, e)] += cnt[s];
        cnt.swap(next);
    }
    return cnt[g];
}

// Verdict on N_g(x) = 0 or N_g(x) >= 2^{n - sum (p^{v_i} - 1)}, the p-group
// sharpening of the 2^{n+1-D(G)} bound.
inline CountReport ng_bound_report(const GSequence& x, std::uint64_t g) {
    const size_t n = x.length();
    Int budget = x.group.davenport_lower() - 1;
    CountReport rep;
    rep.count = gsum_count(x, g);
    rep.degree_budget = budget;
    bins::BinProfile twos(std::vector<Int>(n, 2));
    rep.bound = bins::min_product(twos, Int(2 * n) - budget);
    rep.boolean_bound = rep.bound;
    rep.verdict = classify_count(rep.count, rep.bound);
    return rep;
}

struct MinN0Result {
    Int minimum;
    std::vector<std::uint64_t> argmin;  // multiset attaining it
};

// Exhaustive minimum of N_0 over length-n sequences (up to permutation).
inline MinN0Result min_n0_over_sequences(const GroupSpec& G, unsigned n,
                                         double work_guard = 2e8) {
    if (detail_zs::multiset_count_estimate(G.order(), n) > work_guard)
        throw std::domain_error("sequence sweep too large");
    std::optional<MinN0Result> best;
    detail_zs::for_each_multiset(
        G.order(), n, [&](const std::vector<std::uint64_t>& tuple) {
            Int c = gsum_count(GSequence(G, tuple), 0);
            if (!best || c < best->minimum) best = MinN0Result{c, tuple};
            return true;
        });
    if (!best) throw std::logic_error("empty sweep");
    return *best;
}

// N_{g,A}(x): number of weight tuples a in A with a_1 x_1 + ... + a_n x_n =
// g.  Computed by a per-position fold over the group, which matches direct
// grid enumeration.
inline Int generalized_count(const GSequence& x, std::uint64_t g,
                             const RestrictedBox& box,
                             std::uint64_t grid_guard = 10000000) {
    if (box.prime() != x.group.p())
        throw std::invalid_argument("box prime differs from group prime");
    if (static_cast<size_t>(box.n()) != x.length())
        throw std::invalid_argument("box arity differs from sequence length");
    if (box.grid_shape().total() > grid_guard)
        throw std::domain_error("weight grid exceeds guard");
    if (g >= x.group.order()) throw std::out_of_range("target element");

    std::vector<Int> cnt(x.group.order(), 0);
    cnt[0] = 1;
    for (size_t i = 0; i < x.length(); ++i) {
        std::vector<std::uint64_t> steps;
        for (const Int& a : box.set(static_cast<int>(i)))
            steps.push_back(x.group.scale(a, x.entries[i]));
        std::vector<Int> next(x.group.order(), 0);
        for (std::uint64_t s = 0; s < x.group.order(); ++s) {
            if (cnt[s] == 0) continue;
            for (auto st : steps) next[x.group.add(s, st)] += cnt[s];
        }
        cnt.swap(next);
    }
    return cnt[g];
}

struct GeneralizedReport {
    CountReport report;
    // Restricted Chevalley side conditions: when sum (#A_i - 1) exceeds the
    // budget the count cannot be exactly 1, and with 0 in every A_i and
    // g = 0 a nonzero solution must exist.
    bool chevalley_hypothesis = false;
    bool count_is_one = false;
    std::optional<std::vector<Int>> nonzero_witness;
};

inline GeneralizedReport generalized_report(const GSequence& x,
                                            std::uint64_t g,
                                            const RestrictedBox& box,
                                            std::uint64_t grid_guard =
                                                10000000) {
    GeneralizedReport out;
    Int count = generalized_count(x, g, box, grid_guard);
    Int budget = x.group.davenport_lower() - 1;

    std::vector<Int> caps;
    Int cap_sum = 0;
    for (const auto& s : box.sets()) {
        caps.emplace_back(static_cast<unsigned long>(s.size()));
        cap_sum += Int(s.size());
    }
    bins::BinProfile profile(caps);
    out.report.count = count;
    out.report.degree_budget = budget;
    out.report.bound = bins::min_product(profile, cap_sum - budget);
    out.report.verdict = classify_count(count, out.report.bound);

    Int slack = cap_sum - Int(static_cast<long>(box.n()));
    out.chevalley_hypothesis = slack > budget;
    out.count_is_one = (count == 1);

    bool zero_in_all = true;
    for (const auto& s : box.sets()) {
        bool has0 = false;
        for (const Int& a : s) has0 |= (a == 0);
        zero_in_all &= has0;
    }
    if (out.chevalley_hypothesis && zero_in_all && g == 0) {
        GridShape shape = box.grid_shape();
        std::vector<std::uint32_t> idx;
        for (std::uint64_t k = 0; k < shape.total(); ++k) {
            shape.decode(k, idx);
            std::vector<Int> vals = box.point_values(idx);
            bool nonzero = false;
            for (const Int& v : vals) nonzero |= (v != 0);
            if (!nonzero) continue;
            std::uint64_t s = 0;
            for (size_t i = 0; i < vals.size(); ++i)
                s = x.group.add(s, x.group.scale(vals[i], x.entries[i]));
            if (s == g) {
                out.nonzero_witness = vals;
                break;
            }
        }
    }
    return out;
}

// --- set systems ---

struct SetSystem {
    // Each set is a list of atom ids (non-negative integers).
    std::vector<std::vector<std::uint32_t>> sets;

    size_t length() const { return sets.size(); }

    // Largest number of member sets sharing one atom.
    std::uint32_t max_degree() const {
        std::vector<std::uint32_t> atoms;
        for (const auto& s : sets)
            for (auto a : s) atoms.push_back(a);
        std::sort(atoms.begin(), atoms.end());
        std::uint32_t best = 0, run = 0;
        for (size_t i = 0; i < atoms.size(); ++i) {
            run = (i > 0 && atoms[i] == atoms[i - 1]) ? run + 1 : 1;
            best = std::max(best, run);
        }
        return best;
    }
};

namespace detail_zs {

// Compact bitset representation with an atom-id compression pass.
struct PackedSets {
    size_t words = 0;
    std::vector<std::vector<std::uint64_t>> masks;

    explicit PackedSets(const SetSystem& F) {
        std::vector<std::uint32_t> atoms;
        for (const auto& s : F.sets)
            for (auto a : s) atoms.push_back(a);
        std::sort(atoms.begin(), atoms.end());
        atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
        words = (atoms.size() + 63) / 64;
        masks.assign(F.sets.size(), std::vector<std::uint64_t>(words, 0));
        for (size_t i = 0; i < F.sets.size(); ++i) {
            for (auto a : F.sets[i]) {
                size_t pos = std::lower_bound(atoms.begin(), atoms.end(), a) -
                             atoms.begin();
                masks[i][pos / 64] |= std::uint64_t(1) << (pos % 64);
            }
        }
    }
};

}  // namespace detail_zs

// Union-cardinality polynomial via inclusion-exclusion: h(t) =
// sum over nonempty J of (-1)^{#J+1} #(intersection) prod_{j in J} t_j.
// On 0/1 points h gives the cardinality of the indicated union.
inline MultiPoly<Int> union_poly(const SetSystem& F) {
    const size_t n = F.length();
    if (n > 16) throw std::domain_error("inclusion-exclusion guard exceeded");
    detail_zs::PackedSets packed(F);
    MultiPoly<Int> h(static_cast<int>(n));
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        std::vector<std::uint64_t> inter(packed.words, ~std::uint64_t(0));
        for (size_t i = 0; i < n; ++i)
            if (mask >> i & 1)
                for (size_t w = 0; w < packed.words; ++w)
                    inter[w] &= packed.masks[i][w];
        std::int64_t size = 0;
        for (size_t w = 0; w < packed.words; ++w)
            size += __builtin_popcountll(inter[w]);
        if (size == 0) continue;
        int bits = __builtin_popcountll(mask);
        std::vector<std::uint32_t> e(n, 0);
        for (size_t i = 0; i < n; ++i)
            if (mask >> i & 1) e[i] = 1;
        h.add_term(Monomial{std::move(e)},
                   (bits % 2 == 1) ? Int(size) : Int(-size));
    }
    return h;
}

// N_F(m, g): subsets J with #(union of F_i, i in J) == g mod m.  The empty
// subset has union cardinality 0.
inline Int setsystem_count(const SetSystem& F, const Int& m, const Int& g) {
    const size_t n = F.length();
    if (n > 24) throw std::domain_error("subset guard exceeded");
    if (m < 1) throw std::invalid_argument("modulus must be >= 1");
    detail_zs::PackedSets packed(F);
    const std::uint64_t mu = to_ulong_checked(m, "modulus");
    const std::uint64_t gu = mod_floor(g, m).get_ui();
    std::uint64_t count = 0;
    std::vector<std::uint64_t> uni(packed.words, 0);
    std::vector<std::vector<std::uint64_t>> saved_stack(
        n, std::vector<std::uint64_t>(packed.words));
    auto rec = [&](auto&& self, size_t i, std::uint64_t size) -> void {
        if (i == n) {
            if (size % mu == gu) ++count;
            return;
        }
        self(self, i + 1, size);
        auto& saved = saved_stack[i];
        std::uint64_t added = 0;
        for (size_t w = 0; w < packed.words; ++w) {
            saved[w] = uni[w];
            std::uint64_t nw = uni[w] | packed.masks[i][w];
            added += __builtin_popcountll(nw ^ uni[w]);
            uni[w] = nw;
        }
        self(self, i + 1, size + added);
        for (size_t w = 0; w < packed.words; ++w) uni[w] = saved[w];
    };
    rec(rec, 0, 0);
    return Int(static_cast<unsigned long>(count));
}

struct SetSystemReport {
    CountReport report;
    std::uint32_t max_degree = 0;
    bool prime_power_modulus = false;
};

inline std::optional<std::pair<Int, unsigned>> prime_power_split(const Int& m) {
    if (m < 2) return std::nullopt;
    Int p = 2;
    while (p * p <= m) {
        if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) break;
        p += 1;
    }
    if (p * p > m) p = m;  // m itself prime
    Int rest = m;
    unsigned v = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
        rest /= p;
        ++v;
    }
    if (rest != 1) return std::nullopt;
    return std::make_pair(p, v);
}

// Count plus, for prime-power m, the verdict on N = 0 or N >= 2^{n - d(m-1)}.
inline SetSystemReport setsystem_report(const SetSystem& F, const Int& m,
                                        const Int& g) {
    SetSystemReport out;
    out.max_degree = F.max_degree();
    out.report.count = setsystem_count(F, m, g);
    auto pp = prime_power_split(m);
    out.prime_power_modulus = pp.has_value();
    if (!pp) {
        out.report.bound = 1;
        out.report.verdict = Verdict::NOT_APPLICABLE;
        return out;
    }
    const size_t n = F.length();
    Int budget = Int(out.max_degree) * (m - 1);
    out.report.degree_budget = budget;
    if (n == 0) {
        out.report.bound = 1;
    } else {
        bins::BinProfile twos(std::vector<Int>(n, 2));
        out.report.bound = bins::min_product(twos, Int(2 * n) - budget);
    }
    out.report.boolean_bound = out.report.bound;
    out.report.verdict = classify_count(out.report.count, out.report.bound);
    return out;
}

// The extremal construction: d(m-1) sets A_ij union {v_i} with the A_ij
// pairwise disjoint of cardinality m and fresh marker atoms v_i.  No
// nonempty subfamily has union cardinality divisible by m.
inline SetSystem extremal_setsystem(unsigned d, unsigned m) {
    if (d < 1 || m < 1) throw std::invalid_argument("d and m must be >= 1");
    if (d * (m - 1) > 16) throw std::domain_error("extremal guard exceeded");
    SetSystem F;
    std::uint32_t next_atom = 0;
    std::vector<std::uint32_t> markers;
    for (unsigned i = 0; i + 1 < m; ++i) markers.push_back(next_atom++);
    for (unsigned i = 0; i + 1 < m; ++i) {
        for (unsigned j = 0; j < d; ++j) {
            std::vector<std::uint32_t> s;
            for (unsigned k = 0; k < m; ++k) s.push_back(next_atom++);
            s.push_back(markers[i]);
            F.sets.push_back(std::move(s));
        }
    }
    return F;
}

// --- EGZ-type counts ---

// Weight box: a restricted box with 0 in every component set.
class WeightBox {
  public:
    explicit WeightBox(RestrictedBox box) : box_(std::move(box)) {
        for (const auto& s : box_.sets()) {
            bool has0 = false;
            for (const Int& a : s) has0 |= (a == 0);
            if (!has0)
                throw std::invalid_argument("weight set must contain 0");
        }
    }
    const RestrictedBox& box() const { return box_; }
    Int max_cap() const {
        std::uint64_t m = 0;
        for (const auto& s : box_.sets()) m = std::max<std::uint64_t>(m, s.size());
        return Int(static_cast<unsigned long>(m));
    }

  private:
    RestrictedBox box_;
};

// Support indicator polynomial C_A with C_A(0) = 0 and C_A(a) = 1 for
// nonzero a in A; degree #A - 1 and p-integral coefficients.
inline MultiPoly<Rat> indicator_poly(const std::vector<Int>& A, const Int& p) {
    PLocalDomain local(p);
    bool has0 = false;
    for (const Int& a : A) has0 |= (a == 0);
    if (!has0) throw std::invalid_argument("set must contain 0");

    MultiPoly<Rat> prod = MultiPoly<Rat>::constant(1, Rat(1));
    for (const Int& a : A) {
        if (a == 0) continue;
        // (a - t)/a
        MultiPoly<Rat> lin(1);
        lin.add_term(Monomial{{0}}, Rat(1));
        lin.add_term(Monomial{{1}}, Rat(-1) / Rat(a));
        prod = prod * lin;
    }
    MultiPoly<Rat> C = MultiPoly<Rat>::constant(1, Rat(1)) - prod;
    for (const auto& [mon, c] : C.terms())
        if (!local.is_integral(c))
            throw std::logic_error("indicator coefficient not p-integral");
    return C;
}

// EGZ_{A,k}(x): weight tuples a in A with sum a_i x_i = g and p^k dividing
// the support size #{i : a_i != 0}.
inline Int egz_count(const GSequence& x, const WeightBox& A, unsigned k,
                     std::uint64_t g, std::uint64_t grid_guard = 10000000) {
    const RestrictedBox& box = A.box();
    if (box.prime() != x.group.p())
        throw std::invalid_argument("box prime differs from group prime");
    if (static_cast<size_t>(box.n()) != x.length())
        throw std::invalid_argument("box arity differs from sequence length");
    if (box.grid_shape().total() > grid_guard)
        throw std::domain_error("weight grid exceeds guard");
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    if (g >= x.group.order()) throw std::out_of_range("target element");

    const size_t n = x.length();
    const Int pk = pow_int(x.group.p(), k);
    // State: (group element, support size mod p^k).  Support never exceeds
    // n, so the class count caps at n + 1.
    const std::uint64_t nclasses =
        pk <= Int(static_cast<unsigned long>(n)) ? pk.get_ui() : n + 1;
    std::vector<std::vector<Int>> cnt(
        x.group.order(), std::vector<Int>(nclasses, 0));
    cnt[0][0] = 1;
    for (size_t i = 0; i < n; ++i) {
        std::vector<std::pair<std::uint64_t, bool>> steps;
        for (const Int& a : box.set(static_cast<int>(i)))
            steps.emplace_back(x.group.scale(a, x.entries[i]), a != 0);
        std::vector<std::vector<Int>> next(
            x.group.order(), std::vector<Int>(nclasses, 0));
        for (std::uint64_t s = 0; s < x.group.order(); ++s)
            for (std::uint64_t c = 0; c < nclasses; ++c) {
                if (cnt[s][c] == 0) continue;
                for (const auto& [st, nz] : steps)
                    next[x.group.add(s, st)][(c + (nz ? 1 : 0)) % nclasses] +=
                        cnt[s][c];
            }
        cnt.swap(next);
    }
    // class 0 collects exactly the tuples with p^k dividing the support
    return cnt[g][0];
}

inline CountReport egz_report(const GSequence& x, const WeightBox& A,
                              unsigned k, std::uint64_t g,
                              std::uint64_t grid_guard = 10000000) {
    CountReport rep;
    rep.count = egz_count(x, A, k, g, grid_guard);
    Int cap_sum = 0;
    std::vector<Int> caps;
    for (const auto& s : A.box().sets()) {
        caps.emplace_back(static_cast<unsigned long>(s.size()));
        cap_sum += Int(s.size());
    }
    Int budget = (x.group.davenport_lower() - 1) +
                 (A.max_cap() - 1) * (pow_int(x.group.p(), k) - 1);
    rep.degree_budget = budget;
    bins::BinProfile profile(caps);
    rep.bound = bins::min_product(profile, cap_sum - budget);
    rep.verdict = classify_count(rep.count, rep.bound);
    return rep;
}

// Pointwise agreement of the polynomial support test with direct support
// counting: sum_i C_{A_i}(a_i) is the support size on every weight tuple,
// so divisibility by p^k matches on both routes.
inline bool egz_support_cross_check(const GSequence& x, const WeightBox& A,
                                    unsigned k,
                                    std::uint64_t grid_guard = 1000000) {
    const RestrictedBox& box = A.box();
    GridShape shape = box.grid_shape();
    if (shape.total() > grid_guard)
        throw std::domain_error("cross-check grid exceeds guard");
    const Int pk = pow_int(x.group.p(), k);
    std::vector<MultiPoly<Rat>> indicators;
    for (const auto& s : box.sets())
        indicators.push_back(indicator_poly(s, x.group.p()));
    std::vector<std::uint32_t> idx;
    for (std::uint64_t pt = 0; pt < shape.total(); ++pt) {
        shape.decode(pt, idx);
        std::vector<Int> vals = box.point_values(idx);
        Rat poly_sum(0);
        long support = 0;
        for (size_t i = 0; i < vals.size(); ++i) {
            poly_sum += indicators[i].evaluate(std::vector<Rat>{Rat(vals[i])});
            if (vals[i] != 0) ++support;
        }
        if (poly_sum != Rat(support)) return false;
        bool poly_div = mod_floor(Int(poly_sum.get_num()), pk) == 0;
        bool direct_div = mod_floor(Int(support), pk) == 0;
        if (poly_div != direct_div) return false;
    }
    return true;
}

struct EgzClassicReport {
    bool all_pass = false;
    std::uint64_t multisets_checked = 0;
    bool extremal_confirmed = false;
};

// Every length (2m-1) multiset over Z/m has a zero-sum subsequence of length
// exactly m, and the canonical length (2m-2) sequence has none.
inline EgzClassicReport egz_classic_verify(unsigned m) {
    if (m < 1 || m > 5) throw std::domain_error("m exceeds guard");
    EgzClassicReport rep;

    auto has_msum = [&](const std::vector<std::uint64_t>& seq) {
        const size_t len = seq.size();
        std::vector<size_t> pick(m);
        auto rec = [&](auto&& self, size_t pos, size_t lo,
                       std::uint64_t sum) -> bool {
            if (pos == m) return sum % m == 0;
            for (size_t i = lo; i + (m - pos) <= len; ++i) {
                if (self(self, pos + 1, i + 1, sum + seq[i])) return true;
            }
            return false;
        };
        return rec(rec, 0, 0, 0);
    };

    bool ok = true;
    std::uint64_t checked = 0;
    detail_zs::for_each_multiset(
        m, 2 * m - 1, [&](const std::vector<std::uint64_t>& tuple) {
            ++checked;
            if (!has_msum(tuple)) {
                ok = false;
                return false;
            }
            return true;
        });
    rep.all_pass = ok;
    rep.multisets_checked = checked;

    if (m >= 2) {
        std::vector<std::uint64_t> extremal;
        for (unsigned i = 0; i + 1 < m; ++i) extremal.push_back(0);
        for (unsigned i = 0; i + 1 < m; ++i) extremal.push_back(1);
        rep.extremal_confirmed = !has_msum(extremal);
    } else {
        rep.extremal_confirmed = true;  // empty extremal sequence
    }
    return rep;
}

struct DagsReport {
    CountReport report;
    bool applicable = false;
    Int exponent_k = 0;  // the p-power index used (v_r)
};

// Zero-sum generalized subsequences with support length divisible by exp G,
// for equal weight sets containing 0.  Applicable when
// n >= exp G - 1 + D(G)/(a-1); the bound is (R+1) a^{n+1-exp G +
// floor((1-D)/(a-1))} with R = -(D-1) mod (a-1).
inline DagsReport dags_report(const GSequence& x, const WeightBox& A,
                              std::uint64_t grid_guard = 10000000) {
    const RestrictedBox& box = A.box();
    for (int i = 1; i < box.n(); ++i)
        if (box.set(i) != box.set(0))
            throw std::invalid_argument("weight sets must all be equal");

    DagsReport out;
    out.exponent_k = Int(static_cast<unsigned long>(x.group.exps().back()));
    const Int a(static_cast<unsigned long>(box.set(0).size()));
    const Int n(static_cast<unsigned long>(x.length()));
    const Int D = x.group.davenport_lower();  // Olson: exact for p-groups
    const Int expG = x.group.exponent();

    if (a < 2) {
        out.report.verdict = Verdict::NOT_APPLICABLE;
        return out;
    }
    // n >= exp G - 1 + D/(a-1), as integers
    out.applicable = (n - expG + 1) * (a - 1) >= D;
    if (!out.applicable) {
        out.report.verdict = Verdict::NOT_APPLICABLE;
        return out;
    }

    out.report.count =
        egz_count(x, A, x.group.exps().back(), 0, grid_guard);
    Int R = mod_floor(-(D - 1), a - 1);
    Int exponent = n + 1 - expG + floor_div(Int(1) - D, a - 1);
    if (exponent < 0) throw std::logic_error("negative bound exponent");
    out.report.bound =
        (R + 1) * pow_int(a, to_ulong_checked(exponent, "bound exponent"));
    out.report.degree_budget =
        (D - 1) + (a - 1) * (pow_int(x.group.p(),
                                     x.group.exps().back()) -
                             1);
    // Existence of a nonempty tuple on top of the empty one also requires
    // count >= 2.
    out.report.verdict = (out.report.count >= out.report.bound &&
                          out.report.count >= 2)
                             ? Verdict::HOLDS
                             : Verdict::VIOLATED;
    return out;
}

}  // namespace zerosum
}  // namespace rvw
