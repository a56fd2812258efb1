#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "support/boyer_oracle.hpp"
#include "tcg/classical.hpp"
#include "tcg/errors.hpp"

using namespace tcg;

TEST_SUITE_BEGIN("classical");

TEST_CASE("closed form values") {
    CHECK(closed_form_classical(3) == Rational(3, 4));
    CHECK(closed_form_classical(4) == Rational(3, 4));
    CHECK(closed_form_classical(5) == Rational(5, 8));
    CHECK(closed_form_classical(6) == Rational(5, 8));
    // Monotone non-increasing toward 1/2.
    Rational prev = closed_form_classical(2);
    for (int t = 3; t <= 40; ++t) {
        Rational cur = closed_form_classical(t);
        CHECK(!(prev < cur));
        prev = cur;
    }
    CHECK(closed_form_classical(40).value() == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("exhaustive optimum equals the closed form for T = 3..6 (M=2)") {
    for (int t : {3, 4, 5, 6}) {
        ClassicalOptimum opt = optimal_classical(t, 2, t);
        CHECK(opt.probability == closed_form_classical(t));
    }
}

TEST_CASE("the witness achieves its score when replayed") {
    ClassicalOptimum opt = optimal_classical(3, 2, 3);
    int64_t wins = 0;
    std::vector<std::vector<int>> inputs = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    for (const auto& a : inputs) {
        int sum_in = std::accumulate(a.begin(), a.end(), 0);
        int sum_out = 0;
        for (int i = 0; i < 3; ++i) sum_out += opt.witness.tables[i][a[i]];
        for (int c : opt.witness.constants) sum_out += c;
        if (sum_out % 2 == (sum_in / 2) % 2) ++wins;
    }
    CHECK(Rational(wins, 4) == opt.probability);
}

TEST_CASE("optimum is invariant under the dual loop size") {
    for (int t : {3, 4}) {
        Rational tight = optimal_classical(t, 2, t).probability;
        Rational padded = optimal_classical(t, 2, t + 2).probability;
        CHECK(tight == padded);
    }
    CHECK(optimal_classical(3, 3, 3).probability == optimal_classical(3, 3, 5).probability);
}

TEST_CASE("M=3 optimum matches the independent enumerator and is nontrivial") {
    ClassicalOptimum opt = optimal_classical(3, 3, 3);
    auto oracle = boyer_oracle::optimal(3, 3);
    CHECK(opt.probability == Rational(oracle.best_wins, oracle.num_inputs));
    CHECK(opt.probability < Rational(1, 1));
    CHECK(!(opt.probability < Rational(1, 3)));

    auto oracle22 = boyer_oracle::optimal(2, 3);
    CHECK(optimal_classical(2, 3, 2).probability ==
          Rational(oracle22.best_wins, oracle22.num_inputs));
}

TEST_CASE("budget refusal carries a work estimate") {
    CHECK_THROWS_WITH_AS(optimal_classical(5, 3, 5), doctest::Contains("2^"), budget_error);
    CHECK_THROWS_AS(optimal_classical(1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(optimal_classical(3, 2, 2), std::invalid_argument);
}

TEST_CASE("rational arithmetic basics") {
    CHECK(Rational(6, 8) == Rational(3, 4));
    CHECK(Rational(3, 4).str() == "3/4");
    CHECK(Rational(1, 2) < Rational(3, 4));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_SUITE_END();
