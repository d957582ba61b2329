#pragma once

#include <cstdint>
#include <vector>

#include "rvw/grid.hpp"
#include "rvw/multipoly.hpp"
#include "rvw/numeric.hpp"

namespace rvw {
namespace detail {

// Fast evaluator for one congruence "P == 0 mod m" over a finite box of
// integer values per variable.  Coefficients and box values are reduced to
// machine words up front; per-variable power tables make each grid-point
// evaluation a handful of mulmods.  Moduli are assumed to fit well below
// 2^63 so products fit in 128 bits.
class ModBoxEvaluator {
  public:
    ModBoxEvaluator(const MultiPoly<Int>& poly, const Int& modulus,
                    const std::vector<std::vector<Int>>& box)
        : m_(to_ulong_checked(modulus, "modulus")) {
        const int n = poly.nvars();
        pow_.resize(n);
        for (int i = 0; i < n; ++i) {
            const std::uint32_t maxe = poly.max_exponent(i);
            pow_[i].resize(box[i].size());
            for (size_t j = 0; j < box[i].size(); ++j) {
                auto& row = pow_[i][j];
                row.resize(maxe + 1);
                row[0] = 1 % m_;
                const std::uint64_t v =
                    mod_floor(box[i][j], modulus).get_ui();
                for (std::uint32_t k = 1; k <= maxe; ++k)
                    row[k] = mulmod_u64(row[k - 1], v, m_);
            }
        }
        for (const auto& [mon, c] : poly.terms()) {
            Term t;
            t.c = mod_floor(c, modulus).get_ui();
            if (t.c == 0) continue;
            for (int i = 0; i < n; ++i)
                if (mon.e[i] > 0) t.vars.emplace_back(i, mon.e[i]);
            terms_.push_back(std::move(t));
        }
    }

    // point = per-variable box element indices
    std::uint64_t eval(const std::vector<std::uint32_t>& point) const {
        std::uint64_t acc = 0;
        for (const auto& t : terms_) {
            std::uint64_t val = t.c;
            for (auto [var, exp] : t.vars)
                val = mulmod_u64(val, pow_[var][point[var]][exp], m_);
            acc += val;
            if (acc >= m_) acc -= m_;
        }
        return acc;
    }

    std::uint64_t modulus() const { return m_; }

  private:
    struct Term {
        std::uint64_t c;
        std::vector<std::pair<int, std::uint32_t>> vars;
    };
    std::uint64_t m_;
    std::vector<Term> terms_;
    std::vector<std::vector<std::vector<std::uint64_t>>> pow_;  // var, elem, exp
};

}  // namespace detail
}  // namespace rvw
