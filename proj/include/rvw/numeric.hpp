#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rvw {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Floor division (toward -infinity), matching the usual convention for
// exponents like floor((1 - D)/(a - 1)).
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Non-negative remainder a mod b, b > 0.
inline Int mod_floor(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline unsigned long to_ulong_checked(const Int& x, const char* what) {
    if (x < 0 || !x.fits_ulong_p())
        throw std::overflow_error(std::string(what) + " out of machine range");
    return x.get_ui();
}

// Exponent of p in a nonzero integer.
inline long p_valuation(const Int& x, const Int& p) {
    if (x == 0) throw std::domain_error("valuation of zero undefined");
    Int cofactor;
    return static_cast<long>(
        mpz_remove(cofactor.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

// Exponent of p in a nonzero rational: v(num) - v(den).
inline long p_valuation(const Rat& x, const Int& p) {
    if (x == 0) throw std::domain_error("valuation of zero undefined");
    return p_valuation(Int(x.get_num()), p) - p_valuation(Int(x.get_den()), p);
}

// The rationals with denominator prime to p, i.e. the localization of the
// integers at (p).  Values are plain canonical rationals; this domain object
// carries the prime and performs the p-specific checks and reductions.
class PLocalDomain {
  public:
    explicit PLocalDomain(Int p) : p_(std::move(p)) {
        if (!is_prime(p_)) throw std::invalid_argument("p must be prime");
    }

    const Int& prime() const { return p_; }

    // Denominator prime to p (canonical form assumed, as mpq maintains).
    bool is_integral(const Rat& x) const {
        return mpz_divisible_p(x.get_den().get_mpz_t(), p_.get_mpz_t()) == 0;
    }

    // Checked construction: denominator must not be divisible by p.
    Rat make(const Int& num, const Int& den) const {
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rat x(num, den);
        x.canonicalize();
        if (!is_integral(x))
            throw std::invalid_argument("denominator divisible by p");
        return x;
    }

    long valuation(const Rat& x) const { return p_valuation(x, p_); }

    // Residue of a p-integral rational modulo p^v, in [0, p^v).
    Int residue(const Rat& x, unsigned v = 1) const {
        if (!is_integral(x))
            throw std::domain_error("residue of non-p-integral rational");
        Int m = pow_int(p_, v);
        Int den_inv;
        if (mpz_invert(den_inv.get_mpz_t(), x.get_den().get_mpz_t(),
                       m.get_mpz_t()) == 0)
            throw std::domain_error("denominator not invertible");
        return mod_floor(Int(x.get_num()) * den_inv, m);
    }

  private:
    Int p_;
};

}  // namespace rvw
