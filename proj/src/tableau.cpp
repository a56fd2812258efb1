#include "tcg/tableau.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "tcg/errors.hpp"

namespace tcg {

namespace {

// GF(2) linear solver on rows of packed words; used to complete destabilizers.
struct BitMatrix {
    int rows = 0, cols = 0, words = 0;
    std::vector<uint64_t> data;  // row-major

    BitMatrix(int r, int c) : rows(r), cols(c), words((c + 63) / 64), data(size_t(r) * words, 0) {}

    uint64_t* row(int r) { return &data[size_t(r) * words]; }
    const uint64_t* row(int r) const { return &data[size_t(r) * words]; }
    bool get(int r, int c) const { return (row(r)[c >> 6] >> (c & 63)) & 1; }
    void set(int r, int c, bool v) {
        if (v)
            row(r)[c >> 6] |= uint64_t(1) << (c & 63);
        else
            row(r)[c >> 6] &= ~(uint64_t(1) << (c & 63));
    }
    void xor_rows(int dst, int src) {
        for (int w = 0; w < words; ++w) row(dst)[w] ^= row(src)[w];
    }
};

// Reduced row echelon form over GF(2), augmented columns included. Returns
// pivot column per row (-1 for zero rows).
std::vector<int> rref(BitMatrix& m, int main_cols) {
    std::vector<int> pivot_of_row(m.rows, -1);
    int r = 0;
    for (int c = 0; c < main_cols && r < m.rows; ++c) {
        int pr = -1;
        for (int i = r; i < m.rows; ++i) {
            if (m.get(i, c)) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != r) {
            for (int w = 0; w < m.words; ++w) std::swap(m.row(pr)[w], m.row(r)[w]);
        }
        for (int i = 0; i < m.rows; ++i) {
            if (i != r && m.get(i, c)) m.xor_rows(i, r);
        }
        pivot_of_row[r] = c;
        ++r;
    }
    return pivot_of_row;
}

int symplectic_product(const PauliString& a, const PauliString& b) {
    return a.commutes_with(b) ? 0 : 1;
}

}  // namespace

Tableau Tableau::from_stabilizers(std::vector<PauliString> generators) {
    if (generators.empty()) throw std::invalid_argument("no stabilizer generators");
    const int n = generators[0].num_qubits();
    if (static_cast<int>(generators.size()) != n) {
        throw std::invalid_argument("need exactly one stabilizer generator per qubit");
    }
    for (size_t i = 0; i < generators.size(); ++i) {
        generators[i].hermitian_sign_bit();  // throws if not Hermitian
        for (size_t j = i + 1; j < generators.size(); ++j) {
            if (!generators[i].commutes_with(generators[j])) {
                throw std::invalid_argument("stabilizer generators do not commute");
            }
        }
    }

    // Solve <d_i, S_j> = delta_ij over GF(2). In symplectic coordinates
    // d = (d_x | d_z), the product with S_j is d_x . S_j.z + d_z . S_j.x,
    // so the system matrix rows are (S_j.z | S_j.x), augmented with I.
    BitMatrix sys(n, 2 * n + n);
    for (int j = 0; j < n; ++j) {
        for (int q = 0; q < n; ++q) {
            sys.set(j, q, generators[j].z_bit(q));
            sys.set(j, n + q, generators[j].x_bit(q));
        }
        sys.set(j, 2 * n + j, true);
    }
    std::vector<int> pivots = rref(sys, 2 * n);
    for (int r = 0; r < n; ++r) {
        if (pivots[r] < 0) {
            throw std::invalid_argument("stabilizer generators are not independent");
        }
    }

    // Particular solution for each RHS e_i: set the pivot variables from the
    // reduced rows whose augmented part contains i.
    std::vector<PauliString> destab(n, PauliString(n));
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < n; ++r) {
            if (!sys.get(r, 2 * n + i)) continue;
            int c = pivots[r];
            if (c < n)
                destab[i].set_x(c, !destab[i].x_bit(c));
            else
                destab[i].set_z(c - n, !destab[i].z_bit(c - n));
        }
        // Canonical "+" Hermitian phase: i^{y_count} corrects the XZ products
        // on Y sites.
        destab[i].set_phase(static_cast<uint8_t>(destab[i].y_count_mod4()));
    }

    // Pairwise symplectic orthogonalization of the destabilizers.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (symplectic_product(destab[i], destab[j])) {
                destab[j] *= generators[i];
            }
        }
    }

    Tableau t;
    t.n_ = n;
    t.stab_ = std::move(generators);
    t.destab_ = std::move(destab);
    t.check_invariants();
    return t;
}

void Tableau::check_invariants() const {
    for (int i = 0; i < n_; ++i) {
        stab_[i].hermitian_sign_bit();
        for (int j = i + 1; j < n_; ++j) {
            if (!stab_[i].commutes_with(stab_[j])) {
                throw std::logic_error("stabilizer rows do not commute");
            }
            if (!destab_[i].commutes_with(destab_[j])) {
                throw std::logic_error("destabilizer rows do not commute");
            }
        }
        for (int j = 0; j < n_; ++j) {
            int want = (i == j) ? 1 : 0;
            if (symplectic_product(destab_[i], stab_[j]) != want) {
                throw std::logic_error("destabilizer/stabilizer pairing broken");
            }
        }
    }
}

std::string Tableau::str() const {
    std::ostringstream os;
    for (int i = 0; i < n_; ++i) os << "D" << i << " " << destab_[i].str() << "\n";
    for (int i = 0; i < n_; ++i) os << "S" << i << " " << stab_[i].str() << "\n";
    return os.str();
}

int tableau_expectation_sign(const Tableau& t, const PauliString& p) {
    const int n = t.num_qubits();
    for (int i = 0; i < n; ++i) {
        if (!t.stabilizers()[i].commutes_with(p)) return 0;
    }
    PauliString acc(n);
    for (int i = 0; i < n; ++i) {
        if (symplectic_product(t.destabilizers()[i], p)) {
            acc *= t.stabilizers()[i];
        }
    }
    if (!acc.same_mask(p)) {
        throw std::logic_error("operator commutes with the group but is not in it");
    }
    int diff = (acc.phase() - p.phase()) & 3;
    if (diff == 0) return 1;
    if (diff == 2) return -1;
    throw std::logic_error("non-Hermitian phase relation in expectation");
}

Tableau prepare_cat_tableau(const TorusLattice& lat, int w_x_sign) {
    if (w_x_sign != 1 && w_x_sign != -1) {
        throw std::invalid_argument("w_x_sign must be +1 or -1");
    }
    const int n = lat.bonds();
    std::vector<PauliString> gens;
    gens.reserve(n);
    for (int y = 0; y < lat.ly(); ++y) {
        for (int x = 0; x < lat.lx(); ++x) {
            if (x == lat.lx() - 1 && y == lat.ly() - 1) continue;  // product of all = 1
            auto pb = lat.plaquette_bonds(x, y);
            gens.push_back(PauliString::z_string(n, pb));
        }
    }
    for (int y = 0; y < lat.ly(); ++y) {
        for (int x = 0; x < lat.lx(); ++x) {
            if (x == lat.lx() - 1 && y == lat.ly() - 1) continue;
            auto sb = lat.star_bonds(x, y);
            gens.push_back(PauliString::x_string(n, sb));
        }
    }
    gens.push_back(PauliString::z_string(n, row_loop(lat, 0).bonds,
                                         w_x_sign == 1 ? 0 : 2));
    gens.push_back(PauliString::x_string(n, row_dual_loop(lat, 0).bonds));
    return Tableau::from_stabilizers(std::move(gens));
}

void apply_half_wilson(Tableau& t, const Loop& team_loop, int a) {
    if (team_loop.kind != LoopKind::direct) {
        throw std::invalid_argument("half-power Wilson update needs a direct-kind loop");
    }
    if (a % 2 == 0) return;
    PauliString w = PauliString::z_string(t.num_qubits(), team_loop.bonds);
    auto update = [&](PauliString& row) {
        if (row.commutes_with(w)) return;
        row *= w;
        row.set_phase(static_cast<uint8_t>((row.phase() + 1) & 3));
    };
    for (auto& row : t.stabilizers()) update(row);
    for (auto& row : t.destabilizers()) update(row);
}

int measure_x(Tableau& t, int bond, Rng& rng) {
    const int n = t.num_qubits();
    if (bond < 0 || bond >= n) throw std::out_of_range("bond out of range");

    int p = -1;
    for (int i = 0; i < n; ++i) {
        if (t.stabilizers()[i].z_bit(bond)) {  // anticommutes with X_bond
            p = i;
            break;
        }
    }

    if (p >= 0) {
        // Random outcome: collapse onto +-X_bond.
        PauliString old = t.stabilizers()[p];
        for (int i = 0; i < n; ++i) {
            if (i != p && t.stabilizers()[i].z_bit(bond)) t.stabilizers()[i] *= old;
            if (t.destabilizers()[i].z_bit(bond)) t.destabilizers()[i] *= old;
        }
        t.destabilizers()[p] = old;
        int y = rng.coin() ? 1 : 0;
        PauliString meas = PauliString::single_x(n, bond);
        meas.set_phase(y ? 2 : 0);
        t.stabilizers()[p] = meas;
        return y;
    }

    // Deterministic outcome: X_bond is in the group up to sign; reconstruct it
    // from the stabilizer rows flagged by the destabilizers.
    PauliString acc(n);
    for (int i = 0; i < n; ++i) {
        if (t.destabilizers()[i].z_bit(bond)) acc *= t.stabilizers()[i];
    }
    PauliString target = PauliString::single_x(n, bond);
    if (!acc.same_mask(target)) {
        throw std::logic_error("deterministic X measurement reconstruction failed");
    }
    int diff = acc.phase() & 3;
    if (diff == 0) return 0;
    if (diff == 2) return 1;
    throw std::logic_error("deterministic X measurement has non-real sign");
}

DenseState tableau_to_dense(const Tableau& t) {
    const int n = t.num_qubits();
    if (n > 20) throw budget_error("dense conversion capped at 20 qubits");
    const uint64_t dim = uint64_t(1) << n;

    for (uint64_t attempt = 0; attempt < 64; ++attempt) {
        DenseState state(2, n);
        // Start from a +-1 vector so projector arithmetic stays exact.
        Rng rng(splitmix64(0x7ab1eau ^ attempt));
        for (uint64_t i = 0; i < dim; ++i) {
            state.amps()[i] = rng.coin() ? -1.0 : 1.0;
        }
        bool dead = false;
        for (const PauliString& s : t.stabilizers()) {
            // psi <- (psi + S psi) / 2 with S|sigma> = i^phase (-1)^{z.sigma} |sigma ^ x>
            uint64_t xmask = 0, zmask = 0;
            for (int q = 0; q < n; ++q) {
                if (s.x_bit(q)) xmask |= uint64_t(1) << q;
                if (s.z_bit(q)) zmask |= uint64_t(1) << q;
            }
            static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            cplx sp = kIPow[s.phase() & 3];
            std::vector<cplx> out(dim);
            const std::vector<cplx>& in = state.amps();
            for (uint64_t idx = 0; idx < dim; ++idx) {
                cplx sign = (std::popcount(idx & zmask) & 1) ? -sp : sp;
                out[idx ^ xmask] = 0.5 * (in[idx ^ xmask] + sign * in[idx]);
            }
            state.amps() = std::move(out);
            double norm = state.norm();
            if (norm < 1e-6) {
                dead = true;
                break;
            }
        }
        if (dead) continue;
        state.normalize();
        // Canonical global phase: first nonzero amplitude real positive.
        for (uint64_t i = 0; i < dim; ++i) {
            cplx a = state.amps()[i];
            if (std::abs(a) > 1e-9) {
                cplx rot = std::conj(a) / std::abs(a);
                for (cplx& amp : state.amps()) amp *= rot;
                break;
            }
        }
        return state;
    }
    throw std::runtime_error("could not find a start vector overlapping the stabilized state");
}

}  // namespace tcg
