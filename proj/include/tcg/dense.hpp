#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "tcg/lattice.hpp"
#include "tcg/rng.hpp"

namespace tcg {

using cplx = std::complex<double>;

// Product of per-site clock and shift powers, C^c S^s on each site, times a
// scalar phase. For M = 2 this is a Pauli string (C = Z, S = X).
struct ClockShiftString {
    int modulus = 2;
    std::vector<int> clock;  // exponent mod M per site
    std::vector<int> shift;  // exponent mod M per site
    cplx scalar = 1.0;

    int sites() const { return static_cast<int>(clock.size()); }
    bool is_identity() const;

    ClockShiftString dagger() const;
    ClockShiftString& operator*=(const ClockShiftString& rhs);
    friend ClockShiftString operator*(ClockShiftString lhs, const ClockShiftString& rhs) {
        lhs *= rhs;
        return lhs;
    }
};

ClockShiftString identity_op(int modulus, int sites);
// W along a direct loop: clock exponents = orientation signs.
ClockShiftString clock_loop_op(const TorusLattice& lat, int modulus, const Loop& loop);
// V along a dual loop: shift exponents = orientation signs.
ClockShiftString shift_loop_op(const TorusLattice& lat, int modulus, const Loop& loop);
// Same but ignoring orientation (all +1); this is the operator whose
// eigenvalue the summed shift-basis outcomes report.
ClockShiftString shift_loop_plain_op(const TorusLattice& lat, int modulus, const Loop& loop);
// Oriented face circulation C+C+C-C- and vertex divergence S+S+S-S-; the
// exponent pattern makes all plaquette and star operators commute for any M.
ClockShiftString plaquette_op(const TorusLattice& lat, int modulus, int x, int y);
ClockShiftString star_op(const TorusLattice& lat, int modulus, int x, int y);

// Dense amplitude vector over M^sites basis states; site value sigma_b is the
// base-M digit of the index at position b (bond-id order).
class DenseState {
  public:
    static constexpr uint64_t kDefaultAmplitudeBudget = uint64_t(1) << 28;

    DenseState(int modulus, int sites);  // |0...0>

    int modulus() const { return modulus_; }
    int sites() const { return sites_; }
    uint64_t dim() const { return static_cast<uint64_t>(amps_.size()); }

    std::vector<cplx>& amps() { return amps_; }
    const std::vector<cplx>& amps() const { return amps_; }

    uint64_t site_stride(int site) const { return strides_[site]; }
    int site_value(uint64_t index, int site) const {
        return static_cast<int>((index / strides_[site]) % modulus_);
    }

    double norm() const;
    void normalize();

  private:
    int modulus_;
    int sites_;
    std::vector<cplx> amps_;
    std::vector<uint64_t> strides_;
};

void apply(DenseState& state, const ClockShiftString& op);
cplx inner(const DenseState& a, const DenseState& b);  // <a|b>
cplx expectation(const DenseState& state, const ClockShiftString& op);

DenseState random_unit_state(int modulus, int sites, Rng& rng);

// Ground state |jk>: star-projected all-clock-1 product state, then shift
// loops V_y^j V_x^k. Throws budget_error over the amplitude budget and
// runtime_error if the projection annihilates the state.
DenseState prepare_ground_state(const TorusLattice& lat, int modulus, int j, int k);
// (1/sqrt(M)) sum_k |0k>
DenseState prepare_cat_dense(const TorusLattice& lat, int modulus);
// (1/M) sum_jk |jk>; the shared state for simultaneous dual-direction play.
DenseState prepare_full_cat_dense(const TorusLattice& lat, int modulus);

// Fractional Wilson-loop power by eigenspace projection: multiplies each basis
// amplitude by exp(sign * 2*pi*i * a * w / M^2) where w in {0..M-1} is the
// canonical loop charge sum_{b in loop} sign_b * sigma_b mod M.
void apply_wilson_root(DenseState& state, const Loop& team_loop, int a, int sign);

// Exact distribution of r' = sum of shift-basis outcomes over the loop, mod M.
std::vector<double> dual_outcome_distribution(const DenseState& state, const Loop& dual_loop);
// Shift-basis marginal of a single site.
std::vector<double> marginal_shift_outcome(const DenseState& state, int site);
// Measures the listed sites in the shift basis (collapsing the state).
std::vector<int> sample_shift_outcomes(DenseState& state, const std::vector<int>& sites, Rng& rng);

// Overlaps with the even/odd dual-loop cat pair built on basis state sigma
// (M = 2 only): |phi+-> = (|sigma> +- V|sigma>)/sqrt(2).
std::pair<double, double> cat_fidelities(const DenseState& state, const Loop& dual_loop,
                                         uint64_t sigma);

// Raw amplitude dump: uint32 M, uint32 sites, then dim * (re, im) float64,
// all little-endian.
void save_amplitudes(const DenseState& state, std::ostream& out);
DenseState load_amplitudes(std::istream& in);

}  // namespace tcg
