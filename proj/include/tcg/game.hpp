#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tcg/dense.hpp"
#include "tcg/lattice.hpp"
#include "tcg/rng.hpp"
#include "tcg/tableau.hpp"

namespace tcg {

// Team inputs a_i in Z_M with sum a_i = 0 mod M (the promise).
struct InputVector {
    std::vector<int> a;
};

InputVector sample_promised_input(int num_teams, int modulus, Rng& rng);
std::vector<InputVector> enumerate_promised_inputs(int num_teams, int modulus);

// r = (sum a_i) / M mod M, exact integer division. Throws
// std::invalid_argument if the promise is violated.
int referee_target(const InputVector& input, int modulus);

struct RoundResult {
    std::vector<int> outcomes;  // y_b per dual-loop bond, in loop order
    int target = 0;
    bool won = false;
};

struct WinStats {
    uint64_t rounds = 0;
    uint64_t wins = 0;
    std::optional<double> exact_probability;
    std::map<std::vector<int>, std::pair<uint64_t, uint64_t>> per_input;  // (rounds, wins)

    double win_rate() const { return rounds ? double(wins) / double(rounds) : 0.0; }
    // 95% Wilson score interval for the sampled win rate.
    std::pair<double, double> wilson_interval() const;
};

// One quantum round on a mutable backend prepared as the cat state for the
// instance. The tableau path is modulus-2 only; the dense path uses the
// fractional-power sign convention +a/2 for M = 2 and -a/M for M > 2.
RoundResult play_round_quantum(const GameInstance& inst, Tableau& backend,
                               const InputVector& input, Rng& rng);
RoundResult play_round_quantum(const GameInstance& inst, DenseState& backend,
                               const InputVector& input, Rng& rng);

enum class BackendKind { tableau, dense };

struct PlayOptions {
    uint64_t rounds = 1;
    uint64_t seed = 0;
    std::ostream* log = nullptr;  // JSON-lines round log
};

// Plays sampled rounds: prepares the cat backend once, clones it per round,
// derives the round RNG from (seed, round index). Deterministic for a fixed
// (instance, options).
WinStats play_rounds_quantum(const GameInstance& inst, BackendKind backend, PlayOptions options);

// Exact average win probability of the prepared state over the uniform
// promised-input distribution (dense backend only; no sampling noise).
double win_probability_quantum_exact(const GameInstance& inst, const DenseState& prepared);
// Per-input breakdown of the same quantity.
std::vector<std::pair<InputVector, double>> win_probability_quantum_by_input(
    const GameInstance& inst, const DenseState& prepared);

// Deterministic classical strategy: a response table per team for the player
// at the intersection bond, fixed outputs for every other dual-loop player.
struct ClassicalStrategy {
    std::vector<std::vector<int>> tables;  // tables[i][a] in Z_M, one per team
    std::vector<int> constants;            // per dual-loop bond; intersection entries ignored
};

RoundResult play_round_classical(const GameInstance& inst, const ClassicalStrategy& strategy,
                                 const InputVector& input);

// Simultaneous dual-direction play on one shared full-cat state (modulus 2).
// The two instances must use disjoint dual loops.
std::pair<RoundResult, RoundResult> play_simultaneous(const GameInstance& vertical,
                                                      const GameInstance& horizontal,
                                                      const InputVector& input_v,
                                                      const InputVector& input_h,
                                                      DenseState& full_cat, Rng& rng);

// Exact joint win probability for one input pair on the full cat state.
double simultaneous_win_probability_exact(const GameInstance& vertical,
                                          const GameInstance& horizontal,
                                          const InputVector& input_v, const InputVector& input_h,
                                          const DenseState& full_cat);

std::string round_log_line(uint64_t round, const InputVector& input, const RoundResult& result);

}  // namespace tcg
