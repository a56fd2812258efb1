#include "tcg/game.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tcg {

namespace {

int mod(long a, int m) { return static_cast<int>(((a % m) + m) % m); }

void check_backend_match(const GameInstance& inst, int backend_sites, int backend_modulus) {
    if (backend_sites != inst.lattice.bonds()) {
        throw std::invalid_argument("backend size does not match the instance lattice");
    }
    if (backend_modulus != inst.modulus) {
        throw std::invalid_argument("backend modulus does not match the instance");
    }
}

int wilson_root_sign(int modulus) { return modulus == 2 ? 1 : -1; }

}  // namespace

InputVector sample_promised_input(int num_teams, int modulus, Rng& rng) {
    if (num_teams < 1) throw std::invalid_argument("need at least one team");
    InputVector input;
    input.a.resize(num_teams);
    long sum = 0;
    for (int i = 0; i + 1 < num_teams; ++i) {
        input.a[i] = static_cast<int>(rng.uniform_u32(static_cast<uint32_t>(modulus)));
        sum += input.a[i];
    }
    input.a[num_teams - 1] = mod(-sum, modulus);
    return input;
}

std::vector<InputVector> enumerate_promised_inputs(int num_teams, int modulus) {
    std::vector<InputVector> out;
    uint64_t count = 1;
    for (int i = 0; i + 1 < num_teams; ++i) count *= static_cast<uint64_t>(modulus);
    out.reserve(count);
    for (uint64_t code = 0; code < count; ++code) {
        InputVector input;
        input.a.resize(num_teams);
        uint64_t c = code;
        long sum = 0;
        for (int i = 0; i + 1 < num_teams; ++i) {
            input.a[i] = static_cast<int>(c % modulus);
            c /= modulus;
            sum += input.a[i];
        }
        input.a[num_teams - 1] = mod(-sum, modulus);
        out.push_back(std::move(input));
    }
    return out;
}

int referee_target(const InputVector& input, int modulus) {
    long sum = std::accumulate(input.a.begin(), input.a.end(), 0L);
    if (sum % modulus != 0) {
        throw std::invalid_argument("input violates the promise: sum not divisible by modulus");
    }
    return mod(sum / modulus, modulus);
}

std::pair<double, double> WinStats::wilson_interval() const {
    if (rounds == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // 95%
    double n = static_cast<double>(rounds);
    double p = win_rate();
    double denom = 1.0 + z * z / n;
    double center = (p + z * z / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

RoundResult play_round_quantum(const GameInstance& inst, Tableau& backend,
                               const InputVector& input, Rng& rng) {
    if (inst.modulus != 2) {
        throw std::invalid_argument("tableau backend supports modulus 2 only");
    }
    check_backend_match(inst, backend.num_qubits(), 2);
    if (input.a.size() != inst.teams.size()) {
        throw std::invalid_argument("input size does not match the team count");
    }
    int target = referee_target(input, 2);
    for (size_t i = 0; i < inst.teams.size(); ++i) {
        apply_half_wilson(backend, inst.teams[i], input.a[i]);
    }
    RoundResult result;
    result.target = target;
    int sum = 0;
    for (int bond : inst.dual_loop.bonds) {
        int y = measure_x(backend, bond, rng);
        result.outcomes.push_back(y);
        sum += y;
    }
    result.won = (mod(sum, 2) == target);
    return result;
}

RoundResult play_round_quantum(const GameInstance& inst, DenseState& backend,
                               const InputVector& input, Rng& rng) {
    check_backend_match(inst, backend.sites(), backend.modulus());
    if (input.a.size() != inst.teams.size()) {
        throw std::invalid_argument("input size does not match the team count");
    }
    const int m = inst.modulus;
    int target = referee_target(input, m);
    int sign = wilson_root_sign(m);
    for (size_t i = 0; i < inst.teams.size(); ++i) {
        apply_wilson_root(backend, inst.teams[i], input.a[i], sign);
    }
    RoundResult result;
    result.target = target;
    result.outcomes = sample_shift_outcomes(backend, inst.dual_loop.bonds, rng);
    long sum = std::accumulate(result.outcomes.begin(), result.outcomes.end(), 0L);
    result.won = (mod(sum, m) == target);
    return result;
}

WinStats play_rounds_quantum(const GameInstance& inst, BackendKind backend, PlayOptions options) {
    WinStats stats;
    const int T = static_cast<int>(inst.teams.size());

    std::optional<Tableau> base_tableau;
    std::optional<DenseState> base_dense;
    if (backend == BackendKind::tableau) {
        if (inst.modulus != 2) {
            throw std::invalid_argument("tableau backend supports modulus 2 only");
        }
        base_tableau = prepare_cat_tableau(inst.lattice, +1);
    } else {
        base_dense = prepare_cat_dense(inst.lattice, inst.modulus);
    }

    for (uint64_t round = 0; round < options.rounds; ++round) {
        Rng rng = Rng::for_round(options.seed, round);
        InputVector input = sample_promised_input(T, inst.modulus, rng);
        RoundResult result;
        if (backend == BackendKind::tableau) {
            Tableau t = *base_tableau;
            result = play_round_quantum(inst, t, input, rng);
        } else {
            DenseState s = *base_dense;
            result = play_round_quantum(inst, s, input, rng);
        }
        stats.rounds++;
        if (result.won) stats.wins++;
        auto& cell = stats.per_input[input.a];
        cell.first++;
        if (result.won) cell.second++;
        if (options.log) {
            *options.log << round_log_line(round, input, result) << "\n";
        }
    }
    return stats;
}

std::vector<std::pair<InputVector, double>> win_probability_quantum_by_input(
    const GameInstance& inst, const DenseState& prepared) {
    check_backend_match(inst, prepared.sites(), prepared.modulus());
    const int m = inst.modulus;
    int sign = wilson_root_sign(m);
    std::vector<std::pair<InputVector, double>> out;
    for (const InputVector& input : enumerate_promised_inputs(
             static_cast<int>(inst.teams.size()), m)) {
        DenseState state = prepared;
        for (size_t i = 0; i < inst.teams.size(); ++i) {
            apply_wilson_root(state, inst.teams[i], input.a[i], sign);
        }
        std::vector<double> dist = dual_outcome_distribution(state, inst.dual_loop);
        out.emplace_back(input, dist[referee_target(input, m)]);
    }
    return out;
}

double win_probability_quantum_exact(const GameInstance& inst, const DenseState& prepared) {
    auto by_input = win_probability_quantum_by_input(inst, prepared);
    double acc = 0.0;
    for (const auto& [input, p] : by_input) acc += p;
    return acc / static_cast<double>(by_input.size());
}

RoundResult play_round_classical(const GameInstance& inst, const ClassicalStrategy& strategy,
                                 const InputVector& input) {
    const int m = inst.modulus;
    const size_t T = inst.teams.size();
    if (strategy.tables.size() != T) {
        throw std::invalid_argument("strategy table count does not match the team count");
    }
    for (const auto& table : strategy.tables) {
        if (table.size() != static_cast<size_t>(m)) {
            throw std::invalid_argument("strategy table must have one entry per input value");
        }
    }
    if (strategy.constants.size() != inst.dual_loop.bonds.size()) {
        throw std::invalid_argument("strategy constants do not match the dual loop size");
    }
    if (input.a.size() != T) {
        throw std::invalid_argument("input size does not match the team count");
    }

    RoundResult result;
    result.target = referee_target(input, m);
    long sum = 0;
    for (size_t pos = 0; pos < inst.dual_loop.bonds.size(); ++pos) {
        int bond = inst.dual_loop.bonds[pos];
        int y = mod(strategy.constants[pos], m);
        for (size_t i = 0; i < T; ++i) {
            if (inst.intersections[i] == bond) {
                y = mod(strategy.tables[i][input.a[i]], m);
                break;
            }
        }
        result.outcomes.push_back(y);
        sum += y;
    }
    result.won = (mod(sum, m) == result.target);
    return result;
}

namespace {

void check_simultaneous(const GameInstance& vertical, const GameInstance& horizontal) {
    if (vertical.modulus != 2 || horizontal.modulus != 2) {
        throw std::invalid_argument("simultaneous play is defined for modulus 2");
    }
    if (!(vertical.lattice == horizontal.lattice)) {
        throw std::invalid_argument("simultaneous play needs one shared lattice");
    }
    if (!loop_intersection(vertical.dual_loop, horizontal.dual_loop).empty()) {
        throw std::invalid_argument("dual loops of the two games overlap");
    }
    auto violations_v = validate_instance(vertical, TeamAxis::vertical);
    auto violations_h = validate_instance(horizontal, TeamAxis::horizontal);
    if (!violations_v.empty()) {
        throw std::invalid_argument("vertical instance invalid: " + violations_v.front());
    }
    if (!violations_h.empty()) {
        throw std::invalid_argument("horizontal instance invalid: " + violations_h.front());
    }
}

}  // namespace

std::pair<RoundResult, RoundResult> play_simultaneous(const GameInstance& vertical,
                                                      const GameInstance& horizontal,
                                                      const InputVector& input_v,
                                                      const InputVector& input_h,
                                                      DenseState& full_cat, Rng& rng) {
    check_simultaneous(vertical, horizontal);
    check_backend_match(vertical, full_cat.sites(), full_cat.modulus());

    for (size_t i = 0; i < vertical.teams.size(); ++i) {
        apply_wilson_root(full_cat, vertical.teams[i], input_v.a[i], 1);
    }
    for (size_t i = 0; i < horizontal.teams.size(); ++i) {
        apply_wilson_root(full_cat, horizontal.teams[i], input_h.a[i], 1);
    }

    RoundResult rv, rh;
    rv.target = referee_target(input_v, 2);
    rh.target = referee_target(input_h, 2);
    rv.outcomes = sample_shift_outcomes(full_cat, vertical.dual_loop.bonds, rng);
    rh.outcomes = sample_shift_outcomes(full_cat, horizontal.dual_loop.bonds, rng);
    long sv = std::accumulate(rv.outcomes.begin(), rv.outcomes.end(), 0L);
    long sh = std::accumulate(rh.outcomes.begin(), rh.outcomes.end(), 0L);
    rv.won = (mod(sv, 2) == rv.target);
    rh.won = (mod(sh, 2) == rh.target);
    return {rv, rh};
}

double simultaneous_win_probability_exact(const GameInstance& vertical,
                                          const GameInstance& horizontal,
                                          const InputVector& input_v, const InputVector& input_h,
                                          const DenseState& full_cat) {
    check_simultaneous(vertical, horizontal);
    check_backend_match(vertical, full_cat.sites(), full_cat.modulus());

    DenseState state = full_cat;
    for (size_t i = 0; i < vertical.teams.size(); ++i) {
        apply_wilson_root(state, vertical.teams[i], input_v.a[i], 1);
    }
    for (size_t i = 0; i < horizontal.teams.size(); ++i) {
        apply_wilson_root(state, horizontal.teams[i], input_h.a[i], 1);
    }

    // Joint character sum over both plain dual operators (disjoint supports).
    const int m = 2;
    ClockShiftString v_op = identity_op(m, state.sites());
    for (int b : vertical.dual_loop.bonds) v_op.shift[b] = 1;
    ClockShiftString h_op = identity_op(m, state.sites());
    for (int b : horizontal.dual_loop.bonds) h_op.shift[b] = 1;

    int rv = referee_target(input_v, m);
    int rh = referee_target(input_h, m);
    double acc = 0.0;
    for (int t = 0; t < m; ++t) {
        for (int u = 0; u < m; ++u) {
            DenseState tmp = state;
            for (int i = 0; i < t; ++i) apply(tmp, v_op);
            for (int i = 0; i < u; ++i) apply(tmp, h_op);
            double character = (t * rv + u * rh) % 2 == 0 ? 1.0 : -1.0;
            acc += character * inner(state, tmp).real();
        }
    }
    return std::min(1.0, std::max(0.0, acc / (m * m)));
}

std::string round_log_line(uint64_t round, const InputVector& input, const RoundResult& result) {
    std::ostringstream os;
    os << "{\"round\":" << round << ",\"input\":[";
    for (size_t i = 0; i < input.a.size(); ++i) {
        if (i) os << ",";
        os << input.a[i];
    }
    os << "],\"outcomes\":[";
    for (size_t i = 0; i < result.outcomes.size(); ++i) {
        if (i) os << ",";
        os << result.outcomes[i];
    }
    os << "],\"target\":" << result.target << ",\"won\":" << (result.won ? "true" : "false")
       << "}";
    return os.str();
}

}  // namespace tcg
