#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "tcg/dense.hpp"
#include "tcg/lattice.hpp"

namespace tcg {

// The projector an instance imposes on perfect-strategy states (modulus 2):
// P = (1+V)/2 * (prod_j (1+W_j)/2 + prod_j (1-W_j)/2), i.e. keep the
// V-symmetric part of the all-even / all-odd team-charge sectors.
struct InstanceProjector {
    std::vector<uint64_t> team_masks;
    uint64_t dual_mask = 0;

    static InstanceProjector from_instance(const GameInstance& inst);
    void apply(DenseState& state) const;  // in place, unnormalized
};

// Quantum win probability from the closed-form fidelity sum: 1/2 plus the
// summed even/odd dual-cat fidelity differences over basis states with zero
// team charge. Modulus 2 only; agrees with direct round simulation.
double fidelity_win_probability(const DenseState& state, const GameInstance& inst);

DenseState apply_instance_projector(const DenseState& state, const GameInstance& inst);

struct UniquenessOptions {
    int probes = 6;
    double tol = 1e-8;         // relative singular-value cutoff
    int max_sweeps = 5000;
    double sweep_tol = 1e-13;  // Gram stabilization threshold
    int polish_sweeps = 32;    // extra sweeps after stabilization, so that
                               // decaying transients fall well below tol
    uint64_t seed = 20240901;
};

struct UniquenessReport {
    bool converged = false;
    int sweeps = 0;
    int dimension = 0;
    bool dimension_is_lower_bound = false;  // probes saturated
    double max_residual = 0.0;
    std::vector<double> singular_values;
    std::vector<DenseState> basis;
    double cat_even_residual = 0.0;  // cycle residual of the even cat state
    double cat_odd_residual = 0.0;
    double cat_even_span_residual = 0.0;  // distance from span(basis)
    double cat_odd_span_residual = 0.0;
    std::string family_description;
};

// Certifies the fixed subspace of the instance-projector cycle: evolves random
// probes through all projectors until the Gram matrix stabilizes, then reports
// the numerical rank, an orthonormal basis, and residuals, and checks that
// both topological cat states are fixed points.
UniquenessReport uniqueness_certificate(const TorusLattice& lat,
                                        const std::vector<GameInstance>& family,
                                        UniquenessOptions options = {});

// Constrained product sum: lhs enumerates all y with sum y = r mod 2 directly,
// rhs is the closed form (prod(1+z) + (-1)^r prod(1-z)) / 2.
std::pair<std::complex<double>, std::complex<double>> parity_identity_check(
    const std::vector<std::complex<double>>& z, int r, int modulus = 2);

}  // namespace tcg
