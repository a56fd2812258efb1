#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>
#include <tuple>
#include <vector>

#include "tcg/dense.hpp"
#include "tcg/errors.hpp"
#include "tcg/lattice.hpp"

using namespace tcg;
using cd = std::complex<double>;

namespace {

cd root_of_unity(int m, int k) { return std::polar(1.0, 2.0 * M_PI * k / m); }

// Explicit M x M clock and shift matrices.
std::vector<std::vector<cd>> clock_matrix(int m) {
    std::vector<std::vector<cd>> c(m, std::vector<cd>(m, 0.0));
    for (int k = 0; k < m; ++k) c[k][k] = root_of_unity(m, k);
    return c;
}

std::vector<std::vector<cd>> shift_matrix(int m) {
    std::vector<std::vector<cd>> s(m, std::vector<cd>(m, 0.0));
    for (int k = 0; k < m; ++k) s[(k + 1) % m][k] = 1.0;
    return s;
}

std::vector<std::vector<cd>> matmul(const std::vector<std::vector<cd>>& a,
                                    const std::vector<std::vector<cd>>& b) {
    int m = static_cast<int>(a.size());
    std::vector<std::vector<cd>> c(m, std::vector<cd>(m, 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

std::vector<cd> matvec(const std::vector<std::vector<cd>>& a, const std::vector<cd>& v) {
    int m = static_cast<int>(a.size());
    std::vector<cd> out(m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out[i] += a[i][j] * v[j];
    return out;
}

std::vector<std::vector<cd>> matpow(std::vector<std::vector<cd>> a, int p) {
    int m = static_cast<int>(a.size());
    std::vector<std::vector<cd>> out(m, std::vector<cd>(m, 0.0));
    for (int i = 0; i < m; ++i) out[i][i] = 1.0;
    for (int i = 0; i < p; ++i) out = matmul(out, a);
    return out;
}

double max_abs_diff(const DenseState& a, const DenseState& b) {
    double d = 0.0;
    for (uint64_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a.amps()[i] - b.amps()[i]));
    return d;
}

}  // namespace

TEST_SUITE_BEGIN("dense");

TEST_CASE("single-site clock/shift strings match the explicit matrices") {
    for (int m = 2; m <= 5; ++m) {
        auto c_mat = clock_matrix(m);
        auto s_mat = shift_matrix(m);
        // C S = w S C
        auto cs = matmul(c_mat, s_mat);
        auto sc = matmul(s_mat, c_mat);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                CHECK(std::abs(cs[i][j] - root_of_unity(m, 1) * sc[i][j]) < 1e-12);

        Rng rng(7 * m);
        for (int trial = 0; trial < 20; ++trial) {
            int ce = static_cast<int>(rng.uniform_u32(m));
            int se = static_cast<int>(rng.uniform_u32(m));
            ClockShiftString op = identity_op(m, 1);
            op.clock[0] = ce;
            op.shift[0] = se;

            DenseState state(m, 1);
            std::vector<cd> vec(m);
            for (int k = 0; k < m; ++k) {
                state.amps()[k] = rng.gaussian();
                vec[k] = state.amps()[k];
            }
            apply(state, op);
            auto want = matvec(matmul(matpow(c_mat, ce), matpow(s_mat, se)), vec);
            for (int k = 0; k < m; ++k) CHECK(std::abs(state.amps()[k] - want[k]) < 1e-12);
        }
    }
}

TEST_CASE("clock/shift string multiplication and dagger agree with matrices") {
    const int m = 3;
    auto c_mat = clock_matrix(m);
    auto s_mat = shift_matrix(m);
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        ClockShiftString a = identity_op(m, 1), b = identity_op(m, 1);
        a.clock[0] = static_cast<int>(rng.uniform_u32(m));
        a.shift[0] = static_cast<int>(rng.uniform_u32(m));
        b.clock[0] = static_cast<int>(rng.uniform_u32(m));
        b.shift[0] = static_cast<int>(rng.uniform_u32(m));

        DenseState v(m, 1);
        for (int k = 0; k < m; ++k) v.amps()[k] = rng.gaussian();

        DenseState via_product = v;
        apply(via_product, a * b);
        DenseState via_sequential = v;
        apply(via_sequential, b);
        apply(via_sequential, a);
        CHECK(max_abs_diff(via_product, via_sequential) < 1e-12);

        DenseState via_dagger = v;
        apply(via_dagger, a.dagger());
        apply(via_dagger, a);
        CHECK(max_abs_diff(via_dagger, v) < 1e-12);  // unitary
    }
}

TEST_CASE("unitary strings preserve the norm on random states") {
    for (int m : {2, 3, 4}) {
        TorusLattice lat(2, 2);
        Rng rng(101 + m);
        DenseState state = random_unit_state(m, lat.bonds(), rng);
        apply(state, plaquette_op(lat, m, 0, 1));
        apply(state, star_op(lat, m, 1, 0));
        apply(state, clock_loop_op(lat, m, column_loop(lat, 0)));
        apply(state, shift_loop_op(lat, m, row_dual_loop(lat, 1)));
        CHECK(std::abs(state.norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("plaquette, star and loop operators commute as the conventions require") {
    for (int m : {2, 3, 4}) {
        TorusLattice lat(2, 2);
        Rng rng(55 + m);
        DenseState state = random_unit_state(m, lat.bonds(), rng);

        auto commutator_phase = [&](const ClockShiftString& a, const ClockShiftString& b) {
            // z with a b |psi> = z * b a |psi>; nan if not proportional.
            DenseState ab = state, ba = state;
            apply(ab, b);
            apply(ab, a);
            apply(ba, a);
            apply(ba, b);
            cd z = inner(ba, ab);  // both unit norm for unitary strings
            DenseState scaled = ba;
            for (auto& amp : scaled.amps()) amp *= z;
            REQUIRE(max_abs_diff(ab, scaled) < 1e-10);
            return z;
        };

        std::vector<ClockShiftString> commuting;
        for (int y = 0; y < 2; ++y) {
            for (int x = 0; x < 2; ++x) {
                commuting.push_back(plaquette_op(lat, m, x, y));
                commuting.push_back(star_op(lat, m, x, y));
            }
        }
        ClockShiftString w_y = clock_loop_op(lat, m, column_loop(lat, 0));
        ClockShiftString w_x = clock_loop_op(lat, m, row_loop(lat, 0));
        ClockShiftString v_x = shift_loop_op(lat, m, row_dual_loop(lat, 0));
        ClockShiftString v_y = shift_loop_op(lat, m, column_dual_loop(lat, 0));

        // Every loop operator commutes with every plaquette and star.
        for (const auto& op : {w_y, w_x, v_x, v_y}) {
            for (const auto& ps : commuting) {
                CHECK(std::abs(commutator_phase(op, ps) - cd(1.0)) < 1e-10);
            }
        }
        // Plaquettes and stars commute among themselves.
        for (size_t i = 0; i < commuting.size(); ++i)
            for (size_t j = i + 1; j < commuting.size(); ++j)
                CHECK(std::abs(commutator_phase(commuting[i], commuting[j]) - cd(1.0)) < 1e-10);
        // Loops of matching homology commute; the crossing pairs pick up
        // exactly one root of unity, which is what the strategy exploits.
        CHECK(std::abs(commutator_phase(w_x, v_x) - cd(1.0)) < 1e-10);
        CHECK(std::abs(commutator_phase(w_y, v_y) - cd(1.0)) < 1e-10);
        CHECK(std::abs(commutator_phase(w_y, v_x) - root_of_unity(m, 1)) < 1e-10);
        CHECK(std::abs(commutator_phase(w_x, v_y) - root_of_unity(m, 1)) < 1e-10);
    }
}

TEST_CASE("ground states carry the advertised quantum numbers (M=2)") {
    TorusLattice lat(3, 2);
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            DenseState s = prepare_ground_state(lat, 2, j, k);
            CHECK(std::abs(s.norm() - 1.0) < 1e-9);
            for (int y = 0; y < 2; ++y) {
                for (int x = 0; x < 3; ++x) {
                    CHECK(std::abs(expectation(s, plaquette_op(lat, 2, x, y)) - 1.0) < 1e-9);
                    CHECK(std::abs(expectation(s, star_op(lat, 2, x, y)) - 1.0) < 1e-9);
                }
            }
            cd wx = expectation(s, clock_loop_op(lat, 2, row_loop(lat, 0)));
            cd wy = expectation(s, clock_loop_op(lat, 2, column_loop(lat, 0)));
            CHECK(std::abs(wx - cd(j ? -1.0 : 1.0)) < 1e-9);
            CHECK(std::abs(wy - cd(k ? -1.0 : 1.0)) < 1e-9);
        }
    }
}

TEST_CASE("ground states carry the advertised quantum numbers (M=3)") {
    TorusLattice lat(2, 2);
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            DenseState s = prepare_ground_state(lat, 3, j, k);
            for (int y = 0; y < 2; ++y) {
                for (int x = 0; x < 2; ++x) {
                    CHECK(std::abs(expectation(s, plaquette_op(lat, 3, x, y)) - 1.0) < 1e-9);
                    CHECK(std::abs(expectation(s, star_op(lat, 3, x, y)) - 1.0) < 1e-9);
                }
            }
            cd wx = expectation(s, clock_loop_op(lat, 3, row_loop(lat, 0)));
            cd wy = expectation(s, clock_loop_op(lat, 3, column_loop(lat, 0)));
            CHECK(std::abs(wx - root_of_unity(3, j)) < 1e-9);
            CHECK(std::abs(wy - root_of_unity(3, k)) < 1e-9);
        }
    }
}

TEST_CASE("ground states are pairwise orthogonal") {
    for (auto [m, lx, ly] : {std::tuple{2, 3, 2}, std::tuple{3, 2, 2}}) {
        TorusLattice lat(lx, ly);
        std::vector<DenseState> states;
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) states.push_back(prepare_ground_state(lat, m, j, k));
        for (size_t i = 0; i < states.size(); ++i) {
            for (size_t l = 0; l < states.size(); ++l) {
                double want = (i == l) ? 1.0 : 0.0;
                CHECK(std::abs(std::abs(inner(states[i], states[l])) - want) < 1e-9);
            }
        }
    }
}

TEST_CASE("cat state is a +1 eigenstate of the dual loop") {
    for (auto [m, lx, ly] : {std::tuple{2, 3, 2}, std::tuple{3, 2, 2}}) {
        TorusLattice lat(lx, ly);
        DenseState cat = prepare_cat_dense(lat, m);
        CHECK(std::abs(expectation(cat, shift_loop_op(lat, m, row_dual_loop(lat, 0))) - 1.0) <
              1e-9);
        // It is the uniform superposition of the |0k> ground states.
        for (int k = 0; k < m; ++k) {
            DenseState gk = prepare_ground_state(lat, m, 0, k);
            CHECK(std::abs(inner(gk, cat) - cd(1.0 / std::sqrt(double(m)))) < 1e-9);
        }
    }
}

TEST_CASE("wilson root: zero power is the identity") {
    TorusLattice lat(3, 2);
    DenseState cat = prepare_cat_dense(lat, 2);
    DenseState copy = cat;
    apply_wilson_root(copy, column_loop(lat, 0), 0, +1);
    CHECK(max_abs_diff(copy, cat) == 0.0);
    Loop dual = row_dual_loop(lat, 0);
    CHECK_THROWS_AS(apply_wilson_root(copy, dual, 1, +1), std::invalid_argument);
}

TEST_CASE("wilson root: two half powers flip the dual eigenvalue (M=2)") {
    TorusLattice lat(3, 2);
    DenseState state = prepare_cat_dense(lat, 2);
    apply_wilson_root(state, column_loop(lat, 0), 1, +1);
    apply_wilson_root(state, column_loop(lat, 1), 1, +1);
    // Relative phase of the odd sector becomes i^2 = -1: V_x eigenvalue -1.
    cd v = expectation(state, shift_loop_op(lat, 2, row_dual_loop(lat, 0)));
    CHECK(std::abs(v - cd(-1.0)) < 1e-9);
    // Explicit amplitude check against (|00> - |01>)/sqrt(2).
    DenseState odd = prepare_ground_state(lat, 2, 0, 0);
    DenseState g01 = prepare_ground_state(lat, 2, 0, 1);
    for (uint64_t i = 0; i < odd.dim(); ++i) {
        odd.amps()[i] = (odd.amps()[i] - g01.amps()[i]) / std::sqrt(2.0);
    }
    CHECK(std::abs(std::abs(inner(odd, state)) - 1.0) < 1e-9);
}

TEST_CASE("wilson root: M=3 strategy phases produce the expected eigenvalue") {
    TorusLattice lat(3, 2);
    DenseState state = prepare_cat_dense(lat, 3);
    for (int x = 0; x < 3; ++x) {
        apply_wilson_root(state, column_loop(lat, x), 1, -1);  // a = (1,1,1)
    }
    cd v = expectation(state, shift_loop_op(lat, 3, row_dual_loop(lat, 0)));
    CHECK(std::abs(v - root_of_unity(3, 1)) < 1e-9);  // r = (1+1+1)/3 = 1
}

TEST_CASE("dual outcome distribution fixed points") {
    TorusLattice lat(3, 2);
    Loop dual = row_dual_loop(lat, 0);

    DenseState cat = prepare_cat_dense(lat, 2);
    auto d_cat = dual_outcome_distribution(cat, dual);
    CHECK(d_cat[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d_cat[1] == doctest::Approx(0.0).epsilon(1e-9));

    DenseState plus(2, lat.bonds());
    double amp = std::pow(2.0, -0.5 * lat.bonds());
    for (auto& a : plus.amps()) a = amp;
    auto d_plus = dual_outcome_distribution(plus, dual);
    CHECK(d_plus[0] == doctest::Approx(1.0).epsilon(1e-9));

    DenseState zero(2, lat.bonds());
    auto d_zero = dual_outcome_distribution(zero, dual);
    CHECK(d_zero[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(d_zero[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("sampled shift outcomes aggregate to the exact distribution") {
    TorusLattice lat(2, 2);
    Loop dual = row_dual_loop(lat, 0);
    DenseState zero(2, lat.bonds());
    Rng rng(4242);
    const int kRounds = 4000;
    int ones = 0;
    for (int round = 0; round < kRounds; ++round) {
        DenseState s = zero;
        auto ys = sample_shift_outcomes(s, dual.bonds, rng);
        int r = 0;
        for (int y : ys) r ^= y;
        ones += r;
    }
    // r' is a fair coin on |0...0>: 3 sigma around 2000.
    double sigma = std::sqrt(kRounds * 0.25);
    CHECK(std::abs(ones - kRounds / 2) <= 3.0 * sigma);
}

TEST_CASE("expectation and inner trivial values") {
    TorusLattice lat(3, 2);
    DenseState g = prepare_ground_state(lat, 2, 1, 0);
    CHECK(std::abs(expectation(g, identity_op(2, lat.bonds())) - 1.0) < 1e-12);
    CHECK(std::abs(inner(g, g) - cd(1.0)) < 1e-12);
    ClockShiftString mismatched = identity_op(2, 4);
    CHECK_THROWS_AS(expectation(g, mismatched), std::invalid_argument);
}

TEST_CASE("cat fidelities") {
    TorusLattice lat(3, 2);
    Loop dual = row_dual_loop(lat, 0);
    const uint64_t sigma = 0;
    uint64_t flip = 0;
    for (int b : dual.bonds) flip |= uint64_t(1) << b;

    DenseState phi_plus(2, lat.bonds());
    phi_plus.amps()[sigma] = 1.0 / std::sqrt(2.0);
    phi_plus.amps()[sigma ^ flip] = 1.0 / std::sqrt(2.0);
    auto [fp, fm] = cat_fidelities(phi_plus, dual, sigma);
    CHECK(fp == doctest::Approx(1.0));
    CHECK(fm == doctest::Approx(0.0));

    DenseState basis(2, lat.bonds());
    auto [bp, bm] = cat_fidelities(basis, dual, sigma);
    CHECK(bp == doctest::Approx(0.5));
    CHECK(bm == doctest::Approx(0.5));

    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        DenseState r = random_unit_state(2, lat.bonds(), rng);
        auto [rp, rm] = cat_fidelities(r, dual, sigma);
        CHECK(rp + rm <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(cat_fidelities(basis, dual, uint64_t(1) << lat.bonds()), std::out_of_range);
}

TEST_CASE("memory budget is enforced") {
    CHECK_THROWS_AS(DenseState(2, 40), budget_error);
    CHECK_THROWS_AS(prepare_ground_state(TorusLattice(8, 8), 2, 0, 0), budget_error);
}

TEST_CASE("amplitude dump round trip") {
    TorusLattice lat(2, 2);
    Rng rng(77);
    DenseState state = random_unit_state(3, lat.bonds(), rng);
    std::stringstream buf;
    save_amplitudes(state, buf);
    DenseState loaded = load_amplitudes(buf);
    CHECK(loaded.modulus() == 3);
    CHECK(loaded.sites() == lat.bonds());
    CHECK(max_abs_diff(state, loaded) == 0.0);
}

TEST_SUITE_END();
