#include "tcg/classical.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tcg/errors.hpp"

namespace tcg {

Rational::Rational(int64_t n, int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string Rational::str() const {
    std::ostringstream os;
    os << num << "/" << den;
    return os.str();
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

ClassicalOptimum optimal_classical(int num_teams, int modulus, int dual_loop_size) {
    if (num_teams < 2) throw std::invalid_argument("need at least 2 teams");
    if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
    if (dual_loop_size < num_teams) {
        throw std::invalid_argument("dual loop must reach every team");
    }

    const int T = num_teams;
    const int m = modulus;
    const bool sweep_constant = dual_loop_size > T;

    // Work estimate: strategies * inputs, with the aggregate constant swept
    // explicitly when non-intersection players exist.
    double log2_work = (m * T) * std::log2(double(m)) + (T - 1) * std::log2(double(m)) +
                       (sweep_constant ? std::log2(double(m)) : 0.0);
    if (log2_work > 28.5) {
        std::ostringstream msg;
        msg << "exhaustive search refused: ~2^" << log2_work
            << " strategy evaluations required (budget 2^28.5); T=" << T << " M=" << m;
        throw budget_error(msg.str());
    }

    const auto inputs = enumerate_promised_inputs(T, m);
    std::vector<int> targets;
    targets.reserve(inputs.size());
    for (const auto& input : inputs) targets.push_back(referee_target(input, m));

    uint64_t table_space = 1;
    for (int i = 0; i < m * T; ++i) table_space *= static_cast<uint64_t>(m);

    // Flattened tables: code digit (i*m + a), base m, least significant digit
    // varies fastest, giving lexicographic order over (table[0][0],
    // table[0][1], ..., table[T-1][m-1]) as the code increases... the digits
    // must be read most-significant-first for that, so decode accordingly.
    std::vector<int> flat(m * T, 0);
    auto decode = [&](uint64_t code) {
        for (int d = m * T - 1; d >= 0; --d) {
            flat[d] = static_cast<int>(code % m);
            code /= m;
        }
    };

    int64_t best_wins = -1;
    int best_constant = 0;
    std::vector<int> best_flat;
    uint64_t scored = 0;

    const int constant_values = sweep_constant ? m : 1;
    for (uint64_t code = 0; code < table_space; ++code) {
        decode(code);
        for (int c = 0; c < constant_values; ++c) {
            int64_t wins = 0;
            for (size_t k = 0; k < inputs.size(); ++k) {
                long sum = c;
                for (int i = 0; i < T; ++i) sum += flat[i * m + inputs[k].a[i]];
                if (sum % m == targets[k]) ++wins;
            }
            ++scored;
            if (wins > best_wins) {
                best_wins = wins;
                best_flat = flat;
                best_constant = c;
            }
        }
    }

    ClassicalOptimum out;
    out.probability = Rational(best_wins, static_cast<int64_t>(inputs.size()));
    out.strategies_scored = scored;
    out.witness.tables.assign(T, std::vector<int>(m, 0));
    for (int i = 0; i < T; ++i) {
        for (int a = 0; a < m; ++a) out.witness.tables[i][a] = best_flat[i * m + a];
    }
    out.witness.constants.assign(dual_loop_size, 0);
    if (sweep_constant) {
        // The aggregate offset is realized on the first non-intersection
        // player; positions [0, T) are the intersection slots by convention.
        out.witness.constants[T] = best_constant;
    }
    return out;
}

Rational closed_form_classical(int num_teams) {
    if (num_teams < 2) throw std::invalid_argument("need at least 2 teams");
    int half_up = (num_teams + 1) / 2;
    int64_t den = int64_t(1) << half_up;
    return Rational(den / 2 + 1, den);
}

}  // namespace tcg
