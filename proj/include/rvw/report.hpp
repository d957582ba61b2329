#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rvw/numeric.hpp"

namespace rvw {

// VACUOUS marks the count-zero case, where the theorems claim nothing; it is
// deliberately distinct from HOLDS so unsatisfiable instances cannot pad a
// pass rate.  NOT_APPLICABLE marks an unmet hypothesis.
enum class Verdict { HOLDS, VACUOUS, VIOLATED, NOT_APPLICABLE };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::HOLDS: return "HOLDS";
        case Verdict::VACUOUS: return "VACUOUS";
        case Verdict::VIOLATED: return "VIOLATED";
        case Verdict::NOT_APPLICABLE: return "NOT_APPLICABLE";
    }
    return "?";
}

inline Verdict classify_count(const Int& count, const Int& bound) {
    if (count == 0) return Verdict::VACUOUS;
    return count >= bound ? Verdict::HOLDS : Verdict::VIOLATED;
}

struct CountReport {
    Int count = 0;
    Int bound = 0;
    Int degree_budget = 0;
    Verdict verdict = Verdict::VACUOUS;
    // Equal-cap full-grid specialization q^{n-d}, when it applies.
    std::optional<Int> full_grid_bound;
    // Boolean-box specialization 2^{n - budget}, when the box is {0,1}^n.
    std::optional<Int> boolean_bound;
    std::optional<std::vector<Int>> witness;
    std::optional<std::uint64_t> seed;
};

}  // namespace rvw
