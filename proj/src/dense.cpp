#include "tcg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "tcg/errors.hpp"

namespace tcg {

namespace {

std::vector<cplx> roots_of_unity(int m) {
    std::vector<cplx> w(m);
    for (int k = 0; k < m; ++k) {
        w[k] = std::polar(1.0, 2.0 * M_PI * k / m);
    }
    return w;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

bool ClockShiftString::is_identity() const {
    for (int c : clock)
        if (c) return false;
    for (int s : shift)
        if (s) return false;
    return std::abs(scalar - cplx(1.0)) < 1e-15;
}

ClockShiftString ClockShiftString::dagger() const {
    // (C^c S^s)^dag = S^-s C^-c = w^{-cs} C^-c S^-s per site.
    ClockShiftString out = *this;
    int exponent = 0;
    for (int i = 0; i < sites(); ++i) {
        exponent = mod(exponent - clock[i] * shift[i], modulus);
        out.clock[i] = mod(-clock[i], modulus);
        out.shift[i] = mod(-shift[i], modulus);
    }
    out.scalar = std::conj(scalar) * roots_of_unity(modulus)[exponent];
    return out;
}

ClockShiftString& ClockShiftString::operator*=(const ClockShiftString& rhs) {
    if (modulus != rhs.modulus || sites() != rhs.sites()) {
        throw std::invalid_argument("clock/shift string dimension mismatch");
    }
    // Moving S^{s_lhs} past C^{c_rhs} costs w^{-c_rhs * s_lhs} per site.
    int exponent = 0;
    for (int i = 0; i < sites(); ++i) {
        exponent = mod(exponent - rhs.clock[i] * shift[i], modulus);
        clock[i] = mod(clock[i] + rhs.clock[i], modulus);
        shift[i] = mod(shift[i] + rhs.shift[i], modulus);
    }
    scalar *= rhs.scalar * roots_of_unity(modulus)[exponent];
    return *this;
}

ClockShiftString identity_op(int modulus, int sites) {
    ClockShiftString op;
    op.modulus = modulus;
    op.clock.assign(sites, 0);
    op.shift.assign(sites, 0);
    return op;
}

ClockShiftString clock_loop_op(const TorusLattice& lat, int modulus, const Loop& loop) {
    if (loop.kind != LoopKind::direct) {
        throw std::invalid_argument("clock loop requires a direct-kind loop");
    }
    ClockShiftString op = identity_op(modulus, lat.bonds());
    for (size_t i = 0; i < loop.bonds.size(); ++i) {
        op.clock[loop.bonds[i]] = mod(loop.signs[i], modulus);
    }
    return op;
}

ClockShiftString shift_loop_op(const TorusLattice& lat, int modulus, const Loop& loop) {
    if (loop.kind != LoopKind::dual) {
        throw std::invalid_argument("shift loop requires a dual-kind loop");
    }
    ClockShiftString op = identity_op(modulus, lat.bonds());
    for (size_t i = 0; i < loop.bonds.size(); ++i) {
        op.shift[loop.bonds[i]] = mod(loop.signs[i], modulus);
    }
    return op;
}

ClockShiftString shift_loop_plain_op(const TorusLattice& lat, int modulus, const Loop& loop) {
    ClockShiftString op = identity_op(modulus, lat.bonds());
    for (int b : loop.bonds) op.shift[b] = 1;
    return op;
}

ClockShiftString plaquette_op(const TorusLattice& lat, int modulus, int x, int y) {
    Loop b = plaquette_boundary(lat, x, y);
    return clock_loop_op(lat, modulus, b);
}

ClockShiftString star_op(const TorusLattice& lat, int modulus, int x, int y) {
    Loop b = star_boundary(lat, x, y);
    return shift_loop_op(lat, modulus, b);
}

DenseState::DenseState(int modulus, int sites) : modulus_(modulus), sites_(sites) {
    if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
    if (sites < 1) throw std::invalid_argument("need at least one site");
    uint64_t dim = 1;
    for (int i = 0; i < sites; ++i) {
        if (dim > kDefaultAmplitudeBudget / static_cast<uint64_t>(modulus)) {
            throw budget_error("dense state would exceed the amplitude budget of 2^28");
        }
        dim *= static_cast<uint64_t>(modulus);
    }
    strides_.resize(sites);
    uint64_t s = 1;
    for (int i = 0; i < sites; ++i) {
        strides_[i] = s;
        s *= static_cast<uint64_t>(modulus);
    }
    amps_.assign(dim, cplx(0.0));
    amps_[0] = 1.0;
}

double DenseState::norm() const {
    double n2 = 0.0;
    for (const cplx& a : amps_) n2 += std::norm(a);
    return std::sqrt(n2);
}

void DenseState::normalize() {
    double n = norm();
    if (n < 1e-300) throw std::runtime_error("cannot normalize a zero state");
    for (cplx& a : amps_) a /= n;
}

void apply(DenseState& state, const ClockShiftString& op) {
    if (op.modulus != state.modulus() || op.sites() != state.sites()) {
        throw std::invalid_argument("operator/state dimension mismatch");
    }
    const int m = state.modulus();
    auto roots = roots_of_unity(m);

    std::vector<int> active;
    for (int i = 0; i < op.sites(); ++i) {
        if (op.clock[i] || op.shift[i]) active.push_back(i);
    }

    const std::vector<cplx>& in = state.amps();
    std::vector<cplx> out(in.size(), cplx(0.0));
    for (uint64_t idx = 0; idx < in.size(); ++idx) {
        if (in[idx] == cplx(0.0)) continue;
        uint64_t target = idx;
        int exponent = 0;
        for (int site : active) {
            int v = state.site_value(idx, site);
            int shifted = mod(v + op.shift[site], m);
            target += (static_cast<uint64_t>(shifted) - static_cast<uint64_t>(v)) *
                      state.site_stride(site);
            exponent = mod(exponent + op.clock[site] * shifted, m);
        }
        out[target] += op.scalar * roots[exponent] * in[idx];
    }
    state.amps() = std::move(out);
}

cplx inner(const DenseState& a, const DenseState& b) {
    if (a.modulus() != b.modulus() || a.sites() != b.sites()) {
        throw std::invalid_argument("state dimension mismatch");
    }
    cplx acc = 0.0;
    for (uint64_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amps()[i]) * b.amps()[i];
    return acc;
}

cplx expectation(const DenseState& state, const ClockShiftString& op) {
    DenseState tmp = state;
    apply(tmp, op);
    return inner(state, tmp);
}

DenseState random_unit_state(int modulus, int sites, Rng& rng) {
    DenseState state(modulus, sites);
    for (cplx& a : state.amps()) a = rng.gaussian();
    state.normalize();
    return state;
}

DenseState prepare_ground_state(const TorusLattice& lat, int modulus, int j, int k) {
    DenseState state(modulus, lat.bonds());  // |all C=1> = |0...0>
    // Project into the invariant subspace of every star: (1/M) sum_r U_s^r.
    for (int y = 0; y < lat.ly(); ++y) {
        for (int x = 0; x < lat.lx(); ++x) {
            ClockShiftString u = star_op(lat, modulus, x, y);
            DenseState acc = state;
            DenseState powed = state;
            for (int r = 1; r < modulus; ++r) {
                apply(powed, u);
                for (uint64_t i = 0; i < acc.dim(); ++i) acc.amps()[i] += powed.amps()[i];
            }
            for (cplx& a : acc.amps()) a /= static_cast<double>(modulus);
            state = std::move(acc);
        }
    }
    if (state.norm() < 1e-12) {
        throw std::runtime_error("star projection annihilated the state");
    }
    state.normalize();

    ClockShiftString vx = shift_loop_op(lat, modulus, row_dual_loop(lat, 0));
    ClockShiftString vy = shift_loop_op(lat, modulus, column_dual_loop(lat, 0));
    for (int t = 0; t < mod(j, modulus); ++t) apply(state, vy);
    for (int t = 0; t < mod(k, modulus); ++t) apply(state, vx);
    return state;
}

DenseState prepare_cat_dense(const TorusLattice& lat, int modulus) {
    DenseState zero = prepare_ground_state(lat, modulus, 0, 0);
    ClockShiftString vx = shift_loop_op(lat, modulus, row_dual_loop(lat, 0));
    DenseState acc = zero;
    DenseState shifted = zero;
    for (int k = 1; k < modulus; ++k) {
        apply(shifted, vx);
        for (uint64_t i = 0; i < acc.dim(); ++i) acc.amps()[i] += shifted.amps()[i];
    }
    acc.normalize();
    return acc;
}

DenseState prepare_full_cat_dense(const TorusLattice& lat, int modulus) {
    DenseState cat = prepare_cat_dense(lat, modulus);
    ClockShiftString vy = shift_loop_op(lat, modulus, column_dual_loop(lat, 0));
    DenseState acc = cat;
    DenseState shifted = cat;
    for (int jq = 1; jq < modulus; ++jq) {
        apply(shifted, vy);
        for (uint64_t i = 0; i < acc.dim(); ++i) acc.amps()[i] += shifted.amps()[i];
    }
    acc.normalize();
    return acc;
}

void apply_wilson_root(DenseState& state, const Loop& team_loop, int a, int sign) {
    if (team_loop.kind != LoopKind::direct) {
        throw std::invalid_argument("wilson root requires a direct-kind team loop");
    }
    const int m = state.modulus();
    a = mod(a, m);
    if (a == 0) return;
    // Phase table over the canonical charge w in {0..M-1}: the branch of the
    // fractional power assigns exp(sign * 2*pi*i * a * w / M^2) to the w-th
    // eigenspace.
    std::vector<cplx> phase(m);
    for (int w = 0; w < m; ++w) {
        phase[w] = std::polar(1.0, sign * 2.0 * M_PI * a * w / (m * m));
    }
    for (uint64_t idx = 0; idx < state.dim(); ++idx) {
        if (state.amps()[idx] == cplx(0.0)) continue;
        int w = 0;
        for (size_t i = 0; i < team_loop.bonds.size(); ++i) {
            w = mod(w + team_loop.signs[i] * state.site_value(idx, team_loop.bonds[i]), m);
        }
        state.amps()[idx] *= phase[w];
    }
}

std::vector<double> dual_outcome_distribution(const DenseState& state, const Loop& dual_loop) {
    const int m = state.modulus();
    if (std::abs(state.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("dual_outcome_distribution requires a unit state");
    }
    // P(r') is the character sum (1/M) sum_t w^{-t r'} <V^t> with V the plain
    // product of shifts over the loop.
    auto roots = roots_of_unity(m);
    ClockShiftString v = identity_op(m, state.sites());
    for (int b : dual_loop.bonds) v.shift[b] = 1;

    std::vector<cplx> char_values(m);
    char_values[0] = 1.0;
    DenseState powed = state;
    for (int t = 1; t < m; ++t) {
        apply(powed, v);
        char_values[t] = inner(state, powed);
    }
    std::vector<double> probs(m, 0.0);
    for (int r = 0; r < m; ++r) {
        cplx acc = 0.0;
        for (int t = 0; t < m; ++t) {
            acc += std::conj(roots[mod(t * r, m)]) * char_values[t];
        }
        double p = acc.real() / m;
        probs[r] = std::min(1.0, std::max(0.0, p));
    }
    return probs;
}

std::vector<double> marginal_shift_outcome(const DenseState& state, int site) {
    const int m = state.modulus();
    auto roots = roots_of_unity(m);
    std::vector<double> probs(m, 0.0);
    const uint64_t stride = state.site_stride(site);
    // <y-tilde|k> = (1/sqrt M) w^{yk}
    for (uint64_t idx = 0; idx < state.dim(); ++idx) {
        if (state.site_value(idx, site) != 0) continue;
        for (int y = 0; y < m; ++y) {
            cplx amp = 0.0;
            for (int k = 0; k < m; ++k) {
                amp += roots[mod(y * k, m)] * state.amps()[idx + k * stride];
            }
            probs[y] += std::norm(amp) / m;
        }
    }
    return probs;
}

std::vector<int> sample_shift_outcomes(DenseState& state, const std::vector<int>& sites,
                                       Rng& rng) {
    const int m = state.modulus();
    auto roots = roots_of_unity(m);
    std::vector<int> outcomes;
    outcomes.reserve(sites.size());
    for (int site : sites) {
        std::vector<double> probs = marginal_shift_outcome(state, site);
        double u = rng.uniform_double();
        int y = 0;
        double acc = 0.0;
        for (; y < m - 1; ++y) {
            acc += probs[y];
            if (u < acc) break;
        }
        if (probs[y] < 1e-12) {
            // rounding pushed u past the total mass; take the likeliest outcome
            y = static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
        }
        outcomes.push_back(y);
        // Collapse: project site onto |y-tilde> and keep the computational
        // basis representation.
        const uint64_t stride = state.site_stride(site);
        std::vector<cplx>& amps = state.amps();
        for (uint64_t idx = 0; idx < state.dim(); ++idx) {
            if (state.site_value(idx, site) != 0) continue;
            cplx chi = 0.0;
            for (int k = 0; k < m; ++k) {
                chi += roots[mod(y * k, m)] * amps[idx + k * stride];
            }
            chi /= std::sqrt(static_cast<double>(m));
            // |y-tilde> has components (1/sqrt M) w^{-yk} on |k>.
            for (int k = 0; k < m; ++k) {
                amps[idx + k * stride] =
                    chi * std::conj(roots[mod(y * k, m)]) / std::sqrt(static_cast<double>(m));
            }
        }
        state.normalize();
    }
    return outcomes;
}

std::pair<double, double> cat_fidelities(const DenseState& state, const Loop& dual_loop,
                                         uint64_t sigma) {
    if (state.modulus() != 2) {
        throw std::invalid_argument("cat_fidelities is defined for modulus 2");
    }
    if (sigma >= state.dim()) throw std::out_of_range("basis state out of range");
    uint64_t flip = 0;
    for (int b : dual_loop.bonds) flip ^= state.site_stride(b);  // stride = bit value for M=2
    uint64_t partner = sigma ^ flip;
    cplx c1 = state.amps()[sigma];
    cplx c2 = state.amps()[partner];
    double f_plus = std::norm(c1 + c2) / 2.0;
    double f_minus = std::norm(c1 - c2) / 2.0;
    return {f_plus, f_minus};
}

void save_amplitudes(const DenseState& state, std::ostream& out) {
    uint32_t m = static_cast<uint32_t>(state.modulus());
    uint32_t sites = static_cast<uint32_t>(state.sites());
    out.write(reinterpret_cast<const char*>(&m), sizeof m);
    out.write(reinterpret_cast<const char*>(&sites), sizeof sites);
    for (const cplx& a : state.amps()) {
        double re = a.real(), im = a.imag();
        out.write(reinterpret_cast<const char*>(&re), sizeof re);
        out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
}

DenseState load_amplitudes(std::istream& in) {
    uint32_t m = 0, sites = 0;
    in.read(reinterpret_cast<char*>(&m), sizeof m);
    in.read(reinterpret_cast<char*>(&sites), sizeof sites);
    if (!in) throw std::runtime_error("amplitude dump header truncated");
    DenseState state(static_cast<int>(m), static_cast<int>(sites));
    for (cplx& a : state.amps()) {
        double re = 0, im = 0;
        in.read(reinterpret_cast<char*>(&re), sizeof re);
        in.read(reinterpret_cast<char*>(&im), sizeof im);
        a = {re, im};
    }
    if (!in) throw std::runtime_error("amplitude dump truncated");
    return state;
}

}  // namespace tcg
