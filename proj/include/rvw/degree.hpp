#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace rvw {

// Total degree of a polynomial.  The zero polynomial gets a negative-infinity
// value that compares below every finite degree, so "deg f < bound" tests are
// total.
class Degree {
  public:
    static Degree neg_infinity() { return Degree(); }
    static Degree of(std::int64_t v) {
        Degree d;
        d.finite_ = true;
        d.value_ = v;
        return d;
    }

    bool is_neg_infinity() const { return !finite_; }
    std::int64_t value() const {
        if (!finite_) throw std::domain_error("degree is -infinity");
        return value_;
    }
    std::int64_t value_or(std::int64_t dflt) const {
        return finite_ ? value_ : dflt;
    }

    // -infinity scaled or shifted stays -infinity.
    Degree times(std::int64_t m) const {
        return finite_ ? of(value_ * m) : neg_infinity();
    }
    Degree plus(std::int64_t m) const {
        return finite_ ? of(value_ + m) : neg_infinity();
    }

    friend bool operator==(const Degree& a, const Degree& b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
        if (a.finite_ != b.finite_)
            return a.finite_ ? std::strong_ordering::greater
                             : std::strong_ordering::less;
        if (!a.finite_) return std::strong_ordering::equal;
        return a.value_ <=> b.value_;
    }
    friend bool operator==(const Degree& a, std::int64_t v) {
        return a.finite_ && a.value_ == v;
    }
    friend std::strong_ordering operator<=>(const Degree& a, std::int64_t v) {
        if (!a.finite_) return std::strong_ordering::less;
        return a.value_ <=> v;
    }

  private:
    Degree() = default;
    bool finite_ = false;
    std::int64_t value_ = 0;
};

}  // namespace rvw
