#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcg/game.hpp"

namespace tcg {

// Exact rational with normalized sign and gcd-reduced terms.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;
};

struct ClassicalOptimum {
    Rational probability;
    ClassicalStrategy witness;       // constants sized to dual_loop_size
    uint64_t strategies_scored = 0;  // search effort
};

// Exhaustive search over deterministic strategies: per-team response tables
// plus one aggregate constant for the non-intersection dual-loop players
// (swept explicitly whenever dual_loop_size > num_teams). Scores are exact
// counts over the promised inputs; ties break to the lexicographically first
// flattened table. Throws budget_error when the sweep would be too large.
ClassicalOptimum optimal_classical(int num_teams, int modulus, int dual_loop_size);

// 1/2 + 2^{-ceil(T/2)}, the known optimum for the modulus-2 game.
Rational closed_form_classical(int num_teams);

}  // namespace tcg
