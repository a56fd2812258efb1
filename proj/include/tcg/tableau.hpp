#pragma once

#include <string>
#include <vector>

#include "tcg/dense.hpp"
#include "tcg/lattice.hpp"
#include "tcg/pauli.hpp"
#include "tcg/rng.hpp"

namespace tcg {

// Stabilizer tableau with maintained destabilizers, for modulus-2 states.
// Phases are tracked mod 4 because the half-power Wilson update multiplies
// anticommuting rows by i.
class Tableau {
  public:
    static Tableau from_stabilizers(std::vector<PauliString> generators);

    int num_qubits() const { return n_; }
    const std::vector<PauliString>& stabilizers() const { return stab_; }
    const std::vector<PauliString>& destabilizers() const { return destab_; }
    std::vector<PauliString>& stabilizers() { return stab_; }
    std::vector<PauliString>& destabilizers() { return destab_; }

    // Throws std::logic_error on any violated tableau invariant.
    void check_invariants() const;

    std::string str() const;  // one "+XIZY..." line per row

  private:
    int n_ = 0;
    std::vector<PauliString> stab_, destab_;
};

// Expectation of a Hermitian Pauli in the tableau state: +1 or -1 when
// (+-)P is in the stabilizer group, 0 when P anticommutes with some
// stabilizer, and throws if P is not in the group up to sign.
int tableau_expectation_sign(const Tableau& t, const PauliString& p);

// Cat tableau: all plaquettes and stars but one each, the w_x_sign * (row
// Wilson loop of Z's), and the +1 row dual loop of X's. w_x_sign = +1 gives
// the even cat state, -1 the odd one.
Tableau prepare_cat_tableau(const TorusLattice& lat, int w_x_sign);

// Half-power Wilson loop as a Clifford row update: rows anticommuting with
// W = prod Z_b over the team loop become i * row * W. a = 0 is the identity.
void apply_half_wilson(Tableau& t, const Loop& team_loop, int a);

// Measures X on one bond; deterministic outcomes read off via destabilizers,
// random ones collapse the tableau. Returns y_b with outcome (-1)^{y_b}.
int measure_x(Tableau& t, int bond, Rng& rng);

// Dense amplitudes of the stabilized state (unit norm, first nonzero
// amplitude rotated real positive). Capped at 20 qubits.
DenseState tableau_to_dense(const Tableau& t);

}  // namespace tcg
