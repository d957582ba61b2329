#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "rvw/numeric.hpp"

namespace rvw {

namespace detail {

// Immutable field data shared by all elements of one field.
struct FqRep {
    std::uint64_t p = 0;
    int ell = 0;
    // Monic modulus, little-endian, length ell+1, top coefficient 1.
    // For ell = 1 the modulus is x, so elements are residues mod p.
    std::vector<std::uint64_t> modulus;
    Int q;

    bool same_field(const FqRep& o) const {
        return p == o.p && ell == o.ell && modulus == o.modulus;
    }
};

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b,
                                std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

}  // namespace detail

// Element of F_q as a residue-coefficient vector of length ell, little-endian
// in the modulus root.  Carries a handle to its field so ring operations are
// self-contained.
class FqElem {
  public:
    FqElem() = default;
    FqElem(std::shared_ptr<const detail::FqRep> rep,
           std::vector<std::uint64_t> coeffs)
        : rep_(std::move(rep)), c_(std::move(coeffs)) {}

    bool valid() const { return rep_ != nullptr; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    const detail::FqRep& rep() const {
        if (!rep_) throw std::logic_error("use of default FqElem");
        return *rep_;
    }
    std::shared_ptr<const detail::FqRep> rep_ptr() const { return rep_; }

    bool is_zero() const {
        for (auto v : c_)
            if (v != 0) return false;
        return true;
    }

    // Index encoding: sum of coeffs[i] * p^i.
    Int index() const {
        Int idx = 0;
        Int pw = 1;
        for (int i = 0; i < rep().ell; ++i) {
            idx += Int(static_cast<unsigned long>(c_[i])) * pw;
            pw *= Int(static_cast<unsigned long>(rep().p));
        }
        return idx;
    }

    friend FqElem operator+(const FqElem& a, const FqElem& b) {
        a.check_same(b);
        std::vector<std::uint64_t> r(a.c_.size());
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = (a.c_[i] + b.c_[i]) % a.rep().p;
        return FqElem(a.rep_, std::move(r));
    }
    friend FqElem operator-(const FqElem& a, const FqElem& b) {
        a.check_same(b);
        std::vector<std::uint64_t> r(a.c_.size());
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = (a.c_[i] + a.rep().p - b.c_[i]) % a.rep().p;
        return FqElem(a.rep_, std::move(r));
    }
    friend FqElem operator-(const FqElem& a) {
        std::vector<std::uint64_t> r(a.c_.size());
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = (a.rep().p - a.c_[i]) % a.rep().p;
        return FqElem(a.rep_, std::move(r));
    }
    friend FqElem operator*(const FqElem& a, const FqElem& b) {
        a.check_same(b);
        const auto& rep = a.rep();
        const std::uint64_t p = rep.p;
        const int ell = rep.ell;
        // Schoolbook product then reduction by the monic modulus.
        std::vector<std::uint64_t> prod(2 * ell - 1, 0);
        for (int i = 0; i < ell; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < ell; ++j)
                prod[i + j] =
                    (prod[i + j] + detail::mulmod_u64(a.c_[i], b.c_[j], p)) % p;
        }
        for (int k = 2 * ell - 2; k >= ell; --k) {
            std::uint64_t top = prod[k];
            if (top == 0) continue;
            prod[k] = 0;
            // x^ell = -(modulus minus leading term)
            for (int i = 0; i < ell; ++i) {
                std::uint64_t sub = detail::mulmod_u64(top, rep.modulus[i], p);
                prod[k - ell + i] = (prod[k - ell + i] + p - sub) % p;
            }
        }
        prod.resize(ell);
        return FqElem(a.rep_, std::move(prod));
    }
    friend bool operator==(const FqElem& a, const FqElem& b) {
        return a.rep().same_field(b.rep()) && a.c_ == b.c_;
    }

  private:
    void check_same(const FqElem& o) const {
        if (!rep().same_field(o.rep()))
            throw std::invalid_argument("elements of different fields");
    }

    std::shared_ptr<const detail::FqRep> rep_;
    std::vector<std::uint64_t> c_;
};

// Handle to a finite field F_{p^ell}.  The modulus is selected
// deterministically (see fq_build), so two builds with equal parameters are
// interchangeable.
class FqField {
  public:
    explicit FqField(std::shared_ptr<const detail::FqRep> rep)
        : rep_(std::move(rep)) {}

    std::uint64_t p() const { return rep_->p; }
    int ell() const { return rep_->ell; }
    const Int& q() const { return rep_->q; }
    std::uint64_t order_u64() const { return rep_->q.get_ui(); }
    const std::vector<std::uint64_t>& modulus() const { return rep_->modulus; }

    FqElem zero() const {
        return FqElem(rep_, std::vector<std::uint64_t>(rep_->ell, 0));
    }
    FqElem one() const {
        std::vector<std::uint64_t> c(rep_->ell, 0);
        c[0] = 1;
        return FqElem(rep_, std::move(c));
    }
    FqElem generator_root() const {
        if (rep_->ell < 2)
            throw std::domain_error("prime field has no extension root");
        std::vector<std::uint64_t> c(rep_->ell, 0);
        c[1] = 1;
        return FqElem(rep_, std::move(c));
    }

    FqElem from_coeffs(std::vector<std::uint64_t> c) const {
        if (static_cast<int>(c.size()) != rep_->ell)
            throw std::invalid_argument("coefficient count must equal ell");
        for (auto& v : c) v %= rep_->p;
        return FqElem(rep_, std::move(c));
    }

    // Inverse of index(): base-p digits, little-endian.
    FqElem from_index(std::uint64_t idx) const {
        if (idx >= order_u64())
            throw std::out_of_range("element index out of range");
        std::vector<std::uint64_t> c(rep_->ell, 0);
        for (int i = 0; i < rep_->ell; ++i) {
            c[i] = idx % rep_->p;
            idx /= rep_->p;
        }
        return FqElem(rep_, std::move(c));
    }

    // Image of an integer under Z -> F_q (lands in the prime subfield).
    FqElem from_int(const Int& v) const {
        Int r = mod_floor(v, Int(static_cast<unsigned long>(rep_->p)));
        std::vector<std::uint64_t> c(rep_->ell, 0);
        c[0] = r.get_ui();
        return FqElem(rep_, std::move(c));
    }

    std::vector<FqElem> all_elements() const {
        std::vector<FqElem> out;
        const std::uint64_t n = order_u64();
        out.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) out.push_back(from_index(i));
        return out;
    }

    FqElem inverse(const FqElem& a) const {
        if (a.is_zero()) throw std::domain_error("inverse of zero");
        return fq_pow_impl(a, rep_->q - 2);
    }

    bool same_field(const FqField& o) const {
        return rep_->same_field(*o.rep_);
    }

    static FqElem fq_pow_impl(const FqElem& a, Int k) {
        if (k < 0) throw std::invalid_argument("negative exponent");
        // square-and-multiply; a^0 = 1
        std::vector<std::uint64_t> c(a.rep().ell, 0);
        c[0] = 1;
        FqElem result(a.rep_ptr(), std::move(c));
        FqElem base = a;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) result = result * base;
            base = base * base;
            k >>= 1;
        }
        return result;
    }

  private:
    std::shared_ptr<const detail::FqRep> rep_;
};

namespace detail {

// Divisibility test for univariate polynomials over F_p (dense little-endian
// coefficient vectors, divisor monic).
inline bool divides_mod_p(const std::vector<std::uint64_t>& divisor,
                          std::vector<std::uint64_t> f, std::uint64_t p) {
    const int dd = static_cast<int>(divisor.size()) - 1;
    for (int k = static_cast<int>(f.size()) - 1; k >= dd; --k) {
        std::uint64_t top = f[k];
        if (top == 0) continue;
        f[k] = 0;
        for (int i = 0; i < dd; ++i) {
            std::uint64_t sub = mulmod_u64(top, divisor[i], p);
            f[k - dd + i] = (f[k - dd + i] + p - sub) % p;
        }
    }
    for (auto v : f)
        if (v != 0) return false;
    return true;
}

// No monic factor of degree 1..deg/2 means irreducible (deg <= 4).
inline bool is_irreducible_mod_p(const std::vector<std::uint64_t>& f,
                                 std::uint64_t p) {
    const int deg = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
        std::vector<std::uint64_t> g(d + 1, 0);
        g[d] = 1;
        // odometer over the d lower coefficients
        while (true) {
            if (divides_mod_p(g, f, p)) return false;
            int i = 0;
            while (i < d && ++g[i] == p) g[i++] = 0;
            if (i == d) break;
        }
    }
    return true;
}

}  // namespace detail

// Deterministic field constructor: the modulus is the lexicographically
// smallest monic irreducible of degree ell over F_p, coefficient tuples
// compared constant term first.  ell = 1 uses modulus x, so elements are
// residues mod p.
inline FqField fq_build(const Int& p, int ell) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (ell < 1 || ell > 4)
        throw std::invalid_argument("ell must be between 1 and 4");
    if (!p.fits_ulong_p() || p > Int("2147483647"))
        throw std::invalid_argument("p too large for this workbench");

    auto rep = std::make_shared<detail::FqRep>();
    rep->p = p.get_ui();
    rep->ell = ell;
    rep->q = pow_int(p, static_cast<unsigned long>(ell));

    std::vector<std::uint64_t> mod(ell + 1, 0);
    mod[ell] = 1;
    if (ell == 1) {
        rep->modulus = mod;  // x
        return FqField(rep);
    }
    // Scan coefficient tuples (c0,...,c_{ell-1}) in lexicographic order,
    // c0 most significant.
    while (true) {
        if (detail::is_irreducible_mod_p(mod, rep->p)) {
            rep->modulus = mod;
            return FqField(rep);
        }
        int i = ell - 1;
        while (i >= 0 && ++mod[i] == rep->p) mod[i--] = 0;
        if (i < 0) break;
    }
    throw std::logic_error("no irreducible polynomial found");
}

inline FqElem fq_pow(const FqElem& a, const Int& k) {
    return FqField::fq_pow_impl(a, k);
}

}  // namespace rvw
