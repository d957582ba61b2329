#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rvw/degree.hpp"
#include "rvw/fq.hpp"
#include "rvw/numeric.hpp"

namespace rvw {

struct Monomial {
    std::vector<std::uint32_t> e;

    std::int64_t degree() const {
        std::int64_t s = 0;
        for (auto x : e) s += x;
        return s;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) = default;
};

// Graded lexicographic: lower total degree first, then lexicographic on the
// exponent vector.  Gives a canonical term order for serialization and
// equality.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.e < b.e;
    }
};

// Coefficient-domain glue.  Everything MultiPoly needs from a ring: zero
// tests and identity elements (FqElem can only produce those from a witness
// carrying its field).
template <typename C>
struct ring_traits {
    static bool is_zero(const C& c) { return c == 0; }
    static C zero_like(const C&) { return C(0); }
    static C one_like(const C&) { return C(1); }
    static constexpr bool has_default_zero = true;
    static C default_zero() { return C(0); }
};

template <>
struct ring_traits<FqElem> {
    static bool is_zero(const FqElem& c) { return c.is_zero(); }
    static FqElem zero_like(const FqElem& w) {
        return FqField(w.rep_ptr()).zero();
    }
    static FqElem one_like(const FqElem& w) {
        return FqField(w.rep_ptr()).one();
    }
    static constexpr bool has_default_zero = false;
    static FqElem default_zero() {
        throw std::logic_error("field element needs a field");
    }
};

// Sparse multivariate polynomial with a fixed variable count.  Terms map
// monomials to nonzero coefficients; the zero polynomial stores nothing.
template <typename C>
class MultiPoly {
  public:
    using Terms = std::map<Monomial, C, GradedLexLess>;

    explicit MultiPoly(int nvars = 0) : nvars_(nvars) {
        if (nvars < 0) throw std::invalid_argument("negative variable count");
    }

    static MultiPoly zero(int nvars) { return MultiPoly(nvars); }

    static MultiPoly constant(int nvars, C c) {
        MultiPoly f(nvars);
        f.add_term(Monomial{std::vector<std::uint32_t>(nvars, 0)},
                   std::move(c));
        return f;
    }

    // t_i with 0-based slot i.
    static MultiPoly variable(int nvars, int i, const C& one) {
        if (i < 0 || i >= nvars) throw std::out_of_range("variable index");
        MultiPoly f(nvars);
        std::vector<std::uint32_t> e(nvars, 0);
        e[i] = 1;
        f.add_term(Monomial{std::move(e)}, one);
        return f;
    }

    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(Monomial m, C c) {
        if (static_cast<int>(m.e.size()) != nvars_)
            throw std::invalid_argument("monomial arity mismatch");
        if (ring_traits<C>::is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), std::move(c));
        } else {
            it->second = it->second + c;
            if (ring_traits<C>::is_zero(it->second)) terms_.erase(it);
        }
    }

    Degree total_degree() const {
        if (terms_.empty()) return Degree::neg_infinity();
        // graded order: the last term has maximal degree
        return Degree::of(terms_.rbegin()->first.degree());
    }

    std::uint32_t max_exponent(int var) const {
        std::uint32_t m = 0;
        for (const auto& [mon, c] : terms_) m = std::max(m, mon.e[var]);
        return m;
    }

    C coefficient_or(const Monomial& m, const C& dflt) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? dflt : it->second;
    }

    // Constant term (coefficient of the all-zero monomial).
    bool has_constant_term() const {
        return terms_.count(Monomial{std::vector<std::uint32_t>(nvars_, 0)}) >
               0;
    }

    C evaluate(std::span<const C> point) const {
        if (static_cast<int>(point.size()) != nvars_)
            throw std::invalid_argument("evaluation point arity mismatch");
        C acc = zero_witnessed(point);
        for (const auto& [mon, coeff] : terms_) {
            C term = coeff;
            for (int i = 0; i < nvars_; ++i)
                for (std::uint32_t k = 0; k < mon.e[i]; ++k)
                    term = term * point[i];
            acc = acc + term;
        }
        return acc;
    }
    C evaluate(const std::vector<C>& point) const {
        return evaluate(std::span<const C>(point));
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_)
            r.add_term(m, ring_traits<C>::zero_like(c) - c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a) {
        MultiPoly r(a.nvars_);
        for (const auto& [m, c] : a.terms_)
            r.add_term(m, ring_traits<C>::zero_like(c) - c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                m.e.resize(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) m.e[i] = ma.e[i] + mb.e[i];
                r.add_term(std::move(m), ca * cb);
            }
        }
        return r;
    }
    MultiPoly scaled(const C& s) const {
        MultiPoly r(nvars_);
        for (const auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }
    MultiPoly pow(unsigned k) const {
        if (k == 0) {
            if (terms_.empty()) {
                if constexpr (ring_traits<C>::has_default_zero)
                    return constant(nvars_, C(1));
                else
                    throw std::logic_error("0^0 over a field needs a witness");
            }
            return constant(nvars_,
                            ring_traits<C>::one_like(terms_.begin()->second));
        }
        MultiPoly base = *this;
        MultiPoly result = base;
        for (unsigned remaining = k - 1; remaining > 0;) {
            if (remaining & 1) result = result * base;
            remaining >>= 1;
            if (remaining) base = base * base;
        }
        return result;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    // General substitution: variable i is replaced by images[i], a polynomial
    // in a common target variable space.
    static MultiPoly substitute(const MultiPoly& f,
                                const std::vector<MultiPoly>& images) {
        if (static_cast<int>(images.size()) != f.nvars_)
            throw std::invalid_argument("substitution arity mismatch");
        int target_nvars = f.nvars_ == 0 ? 0 : images[0].nvars();
        for (const auto& g : images)
            if (g.nvars() != target_nvars)
                throw std::invalid_argument(
                    "substitution images disagree on arity");
        MultiPoly result(target_nvars);
        // cache powers of each image
        std::vector<std::vector<MultiPoly>> pow_cache(f.nvars_);
        auto image_power = [&](int i, std::uint32_t k) -> const MultiPoly& {
            auto& cache = pow_cache[i];
            if (cache.empty()) cache.push_back(images[i]);  // k = 1 at [0]
            while (cache.size() < k) cache.push_back(cache.back() * images[i]);
            return cache[k - 1];
        };
        for (const auto& [mon, coeff] : f.terms_) {
            MultiPoly term = constant(target_nvars, coeff);
            for (int i = 0; i < f.nvars_; ++i)
                if (mon.e[i] > 0) term = term * image_power(i, mon.e[i]);
            result = result + term;
        }
        return result;
    }

    // Coefficient-wise map into another domain; zero images are dropped.
    template <typename D, typename Fn>
    MultiPoly<D> map_coefficients(Fn&& fn) const {
        MultiPoly<D> r(nvars_);
        for (const auto& [m, c] : terms_) r.add_term(m, fn(c));
        return r;
    }

  private:
    void check_arity(const MultiPoly& o) const {
        if (nvars_ != o.nvars_)
            throw std::invalid_argument("polynomial arity mismatch");
    }
    C zero_witnessed(std::span<const C> point) const {
        if (!terms_.empty())
            return ring_traits<C>::zero_like(terms_.begin()->second);
        if (!point.empty()) return ring_traits<C>::zero_like(point[0]);
        return ring_traits<C>::default_zero();
    }

    int nvars_;
    Terms terms_;
};

// Per-variable composition f(s_1(t_1),...,s_n(t_n)): each substitution must
// mention only its own slot.
template <typename C>
MultiPoly<C> compose_per_variable(const MultiPoly<C>& f,
                                  const std::vector<MultiPoly<C>>& subs) {
    if (static_cast<int>(subs.size()) != f.nvars())
        throw std::invalid_argument("composition arity mismatch");
    for (int i = 0; i < f.nvars(); ++i) {
        if (subs[i].nvars() != f.nvars())
            throw std::invalid_argument("composition arity mismatch");
        for (const auto& [m, c] : subs[i].terms())
            for (int j = 0; j < f.nvars(); ++j)
                if (j != i && m.e[j] != 0)
                    throw std::invalid_argument(
                        "substitution mentions a foreign variable");
    }
    return MultiPoly<C>::substitute(f, subs);
}

// Embed a univariate polynomial into an n-variable space at the given slot.
template <typename C>
MultiPoly<C> embed_univariate(const MultiPoly<C>& f, int nvars, int slot) {
    if (f.nvars() != 1) throw std::invalid_argument("expected univariate");
    if (slot < 0 || slot >= nvars) throw std::out_of_range("slot");
    MultiPoly<C> r(nvars);
    for (const auto& [m, c] : f.terms()) {
        std::vector<std::uint32_t> e(nvars, 0);
        e[slot] = m.e[0];
        r.add_term(Monomial{std::move(e)}, c);
    }
    return r;
}

// Unique rational polynomial of degree < #points through the given values.
inline MultiPoly<Rat> lagrange_interpolate(const std::vector<Rat>& points,
                                           const std::vector<Rat>& values) {
    if (points.size() != values.size())
        throw std::invalid_argument("points/values length mismatch");
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("duplicate interpolation points");
    MultiPoly<Rat> result(1);
    for (size_t i = 0; i < points.size(); ++i) {
        if (values[i] == 0) continue;
        MultiPoly<Rat> basis = MultiPoly<Rat>::constant(1, Rat(1));
        Rat denom(1);
        for (size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            // (x - points[j])
            MultiPoly<Rat> lin(1);
            lin.add_term(Monomial{{1}}, Rat(1));
            lin.add_term(Monomial{{0}}, -points[j]);
            basis = basis * lin;
            denom *= points[i] - points[j];
        }
        result = result + basis.scaled(values[i] / denom);
    }
    return result;
}

// Reduction of an integer polynomial modulo m, coefficients in [0, m).
inline MultiPoly<Int> reduce_mod(const MultiPoly<Int>& f, const Int& m) {
    return f.map_coefficients<Int>([&](const Int& c) {
        return mod_floor(c, m);
    });
}

// Reduction of a rational polynomial modulo m: num * den^{-1} mod m.
// Denominators must be invertible mod m.
inline MultiPoly<Int> reduce_mod(const MultiPoly<Rat>& f, const Int& m) {
    return f.map_coefficients<Int>([&](const Rat& c) {
        Int den_inv;
        if (mpz_invert(den_inv.get_mpz_t(), c.get_den().get_mpz_t(),
                       m.get_mpz_t()) == 0)
            throw std::domain_error("denominator not invertible mod m");
        return mod_floor(Int(c.get_num()) * den_inv, m);
    });
}

inline MultiPoly<Rat> to_rational(const MultiPoly<Int>& f) {
    return f.map_coefficients<Rat>([](const Int& c) { return Rat(c); });
}

}  // namespace rvw
