#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rvw/numeric.hpp"

namespace rvw {
namespace bins {

// Bin capacities a_1 >= ... >= a_n >= 1, kept sorted descending with the
// sorting permutation retained so results can be reported in the caller's
// original order.
class BinProfile {
  public:
    explicit BinProfile(std::vector<Int> caps) : original_(std::move(caps)) {
        if (original_.empty())
            throw std::invalid_argument("at least one bin required");
        for (const auto& a : original_)
            if (a < 1) throw std::invalid_argument("bin capacity must be >= 1");
        perm_.resize(original_.size());
        std::iota(perm_.begin(), perm_.end(), size_t{0});
        std::stable_sort(perm_.begin(), perm_.end(), [&](size_t i, size_t j) {
            return original_[i] > original_[j];
        });
        sorted_.reserve(original_.size());
        for (size_t i : perm_) sorted_.push_back(original_[i]);
    }

    size_t n() const { return sorted_.size(); }
    const std::vector<Int>& sorted_caps() const { return sorted_; }
    const std::vector<Int>& original_caps() const { return original_; }
    // perm()[k] = original index of the k-th largest cap
    const std::vector<size_t>& perm() const { return perm_; }

    Int sum() const {
        Int s = 0;
        for (const auto& a : sorted_) s += a;
        return s;
    }
    Int product() const {
        Int p = 1;
        for (const auto& a : sorted_) p *= a;
        return p;
    }
    std::optional<Int> equal_cap() const {
        for (const auto& a : sorted_)
            if (a != sorted_.front()) return std::nullopt;
        return sorted_.front();
    }

  private:
    std::vector<Int> original_;
    std::vector<Int> sorted_;
    std::vector<size_t> perm_;
};

// A distribution of N balls with 1 <= y_i <= a_i and sum y_i = N, reported in
// the caller's original bin order.
struct Distribution {
    std::vector<Int> counts;
    Int target;

    Int product() const {
        Int p = 1;
        for (const auto& y : counts) p *= y;
        return p;
    }
};

// One ball per bin, then fill bins to capacity left to right in
// descending-cap order.  This configuration attains the minimum product.
inline Distribution greedy_distribution(const BinProfile& profile,
                                        const Int& N) {
    const size_t n = profile.n();
    if (N < static_cast<long>(n) || N > profile.sum())
        throw std::domain_error("no distribution exists");
    std::vector<Int> y(n, 1);
    Int remaining = N - static_cast<long>(n);
    for (size_t i = 0; i < n && remaining > 0; ++i) {
        Int take = std::min(remaining, Int(profile.sorted_caps()[i] - 1));
        y[i] += take;
        remaining -= take;
    }
    Distribution d;
    d.counts.resize(n);
    for (size_t k = 0; k < n; ++k) d.counts[profile.perm()[k]] = y[k];
    d.target = N;
    return d;
}

namespace detail {

// Closed form for equal caps a >= 2 and n <= N <= an:
// (R+1) * a^floor((N-n)/(a-1)) with R = (N-n) mod (a-1).
inline Int equal_cap_min_product(const Int& a, size_t n, const Int& N) {
    Int span = N - static_cast<long>(n);
    Int k = floor_div(span, a - 1);
    Int R = mod_floor(span, a - 1);
    return (R + 1) * pow_int(a, to_ulong_checked(k, "power exponent"));
}

}  // namespace detail

// Minimum product over all distributions, extended constantly: 1 below the
// feasible range, full product above it.  Total in N.
inline Int min_product(const BinProfile& profile, const Int& N) {
    const size_t n = profile.n();
    if (N < static_cast<long>(n)) return 1;
    if (N > profile.sum()) return profile.product();
    if (auto a = profile.equal_cap(); a && *a >= 2)
        return detail::equal_cap_min_product(*a, n, N);
    return greedy_distribution(profile, N).product();
}

// Exhaustive minimum over all distributions; the oracle for the greedy path.
inline Int brute_force_min_product(const BinProfile& profile, const Int& N) {
    const size_t n = profile.n();
    if (n > 8 || profile.sum() > 40)
        throw std::domain_error("profile too large for brute force");
    if (N < static_cast<long>(n)) return 1;
    if (N > profile.sum()) return profile.product();

    std::optional<Int> best;
    std::vector<Int> suffix_min(n + 1, 0), suffix_sum(n + 1, 0);
    for (size_t i = n; i-- > 0;) {
        suffix_min[i] = suffix_min[i + 1] + 1;
        suffix_sum[i] = suffix_sum[i + 1] + profile.sorted_caps()[i];
    }
    std::vector<Int> y(n);
    auto rec = [&](auto&& self, size_t i, Int remaining, Int prod) -> void {
        if (i == n) {
            if (remaining == 0 && (!best || prod < *best)) best = prod;
            return;
        }
        for (Int v = 1; v <= profile.sorted_caps()[i]; ++v) {
            Int rest = remaining - v;
            if (rest < suffix_min[i + 1] || rest > suffix_sum[i + 1]) continue;
            self(self, i + 1, rest, prod * v);
        }
    };
    rec(rec, 0, N, Int(1));
    if (!best) throw std::logic_error("feasible range had no distribution");
    return *best;
}

}  // namespace bins
}  // namespace rvw
