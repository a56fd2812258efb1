#include "tcg/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tcg {

namespace {

uint64_t loop_mask(const Loop& loop) {
    uint64_t mask = 0;
    for (int b : loop.bonds) mask |= uint64_t(1) << b;
    return mask;
}

void check_m2(const DenseState& state) {
    if (state.modulus() != 2) {
        throw std::invalid_argument("analysis operations are defined for modulus 2");
    }
    if (state.sites() > 63) {
        throw std::invalid_argument("analysis operations are capped at 63 sites");
    }
}

double axpy_norm(const DenseState& a, const DenseState& b) {
    double acc = 0.0;
    for (uint64_t i = 0; i < a.dim(); ++i) acc += std::norm(a.amps()[i] - b.amps()[i]);
    return std::sqrt(acc);
}

}  // namespace

InstanceProjector InstanceProjector::from_instance(const GameInstance& inst) {
    if (inst.modulus != 2) {
        throw std::invalid_argument("instance projector is defined for modulus 2");
    }
    InstanceProjector p;
    for (const Loop& team : inst.teams) {
        uint64_t mask = 0;
        for (int b : team.bonds) mask |= uint64_t(1) << b;
        p.team_masks.push_back(mask);
    }
    for (int b : inst.dual_loop.bonds) p.dual_mask |= uint64_t(1) << b;
    return p;
}

void InstanceProjector::apply(DenseState& state) const {
    check_m2(state);
    std::vector<cplx>& amps = state.amps();
    const uint64_t dim = state.dim();
    // Zero out every basis state whose team charges are not all equal, then
    // symmetrize under the dual flip.
    for (uint64_t idx = 0; idx < dim; ++idx) {
        bool all0 = true, all1 = true;
        for (uint64_t mask : team_masks) {
            if (std::popcount(idx & mask) & 1)
                all0 = false;
            else
                all1 = false;
        }
        if (!all0 && !all1) amps[idx] = 0.0;
    }
    for (uint64_t idx = 0; idx < dim; ++idx) {
        uint64_t partner = idx ^ dual_mask;
        if (partner < idx) continue;
        cplx avg = 0.5 * (amps[idx] + amps[partner]);
        amps[idx] = avg;
        amps[partner] = avg;
    }
}

double fidelity_win_probability(const DenseState& state, const GameInstance& inst) {
    check_m2(state);
    if (state.sites() != inst.lattice.bonds()) {
        throw std::invalid_argument("state size does not match the instance lattice");
    }
    std::vector<uint64_t> team_masks;
    for (const Loop& team : inst.teams) team_masks.push_back(loop_mask(team));

    double acc = 0.0;
    for (uint64_t sigma = 0; sigma < state.dim(); ++sigma) {
        bool zero_charge = true;
        for (uint64_t mask : team_masks) {
            if (std::popcount(sigma & mask) & 1) {
                zero_charge = false;
                break;
            }
        }
        if (!zero_charge) continue;
        // Each (sigma, sigma^dual) pair appears once here: flipping the dual
        // loop toggles every team charge because of the single intersections.
        auto [f_plus, f_minus] = cat_fidelities(state, inst.dual_loop, sigma);
        acc += 0.5 * (f_plus - f_minus);
    }
    return 0.5 + acc;
}

DenseState apply_instance_projector(const DenseState& state, const GameInstance& inst) {
    DenseState out = state;
    InstanceProjector::from_instance(inst).apply(out);
    return out;
}

UniquenessReport uniqueness_certificate(const TorusLattice& lat,
                                        const std::vector<GameInstance>& family,
                                        UniquenessOptions options) {
    if (family.empty()) throw std::invalid_argument("instance family is empty");
    std::vector<InstanceProjector> projectors;
    projectors.reserve(family.size());
    size_t deformed_dual = 0, deformed_team = 0, straight = 0;
    for (const GameInstance& inst : family) {
        projectors.push_back(InstanceProjector::from_instance(inst));
        bool dual_straight = inst.dual_loop.bonds.size() == static_cast<size_t>(lat.lx());
        bool teams_straight = true;
        for (const Loop& t : inst.teams) {
            if (t.bonds.size() != static_cast<size_t>(lat.ly())) teams_straight = false;
        }
        if (dual_straight && teams_straight)
            ++straight;
        else if (!dual_straight)
            ++deformed_dual;
        else
            ++deformed_team;
    }

    UniquenessReport report;
    {
        std::ostringstream os;
        os << lat.lx() << "x" << lat.ly() << " torus, " << family.size() << " instances ("
           << straight << " straight, " << deformed_dual << " deformed-dual, " << deformed_team
           << " deformed-team)";
        report.family_description = os.str();
    }

    auto cycle = [&](DenseState& state) {
        for (const InstanceProjector& p : projectors) p.apply(state);
    };

    // Random-sign probes, never renormalized during the sweeps: every
    // projector operation (sector zeroing, pair averaging) is then exact
    // dyadic arithmetic, so converged probes sit in the fixed subspace with
    // no rounding floor and the rank decision has orders of magnitude of
    // slack. The Gram matrix and the rank threshold are scale-free.
    Rng rng(options.seed);
    std::vector<DenseState> probes;
    for (int i = 0; i < options.probes; ++i) {
        DenseState probe(2, lat.bonds());
        for (cplx& a : probe.amps()) a = rng.coin() ? -1.0 : 1.0;
        probes.push_back(std::move(probe));
    }

    const int k = options.probes;
    int polish_left = -1;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        double movement = 0.0, total = 0.0;
        for (DenseState& probe : probes) {
            DenseState before = probe;
            cycle(probe);
            for (uint64_t idx = 0; idx < probe.dim(); ++idx) {
                movement += std::norm(probe.amps()[idx] - before.amps()[idx]);
                total += std::norm(probe.amps()[idx]);
            }
        }
        report.sweeps = sweep + 1;
        if (polish_left < 0 && sweep > 0 &&
            (movement == 0.0 || movement < options.sweep_tol * std::max(total, 1e-30))) {
            report.converged = true;
            polish_left = options.polish_sweeps;
        }
        if (polish_left >= 0 && polish_left-- == 0) break;
    }

    // Singular values of the converged probe set by one-sided Jacobi on the
    // probe columns themselves: no Gram matrix is ever formed, so tiny
    // directions come out at the eps scale instead of sqrt(eps) and the rank
    // threshold has orders of magnitude of slack.
    std::vector<DenseState> cols = probes;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < k; ++p) {
            for (int qi = p + 1; qi < k; ++qi) {
                double a = 0.0, b = 0.0;
                for (const cplx& v : cols[p].amps()) a += std::norm(v);
                for (const cplx& v : cols[qi].amps()) b += std::norm(v);
                if (a < 1e-280 || b < 1e-280) continue;
                cplx c = inner(cols[p], cols[qi]);
                if (std::norm(c) <= 1e-60 * a * b) continue;
                rotated = true;
                cplx phase = c / std::abs(c);  // make <p, phase*q> real positive
                double tau = (b - a) / (2.0 * std::abs(c));
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double cs = 1.0 / std::sqrt(1.0 + t * t);
                double sn = t * cs;
                for (uint64_t idx = 0; idx < cols[p].dim(); ++idx) {
                    cplx vp = cols[p].amps()[idx];
                    cplx vq = phase * cols[qi].amps()[idx];
                    cols[p].amps()[idx] = cs * vp - sn * vq;
                    cols[qi].amps()[idx] = sn * vp + cs * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<std::pair<double, int>> norms;
    for (int i = 0; i < k; ++i) {
        double n = 0.0;
        for (const cplx& v : cols[i].amps()) n += std::norm(v);
        norms.emplace_back(std::sqrt(n), i);
    }
    std::sort(norms.begin(), norms.end(), std::greater<>());
    for (const auto& [s, i] : norms) report.singular_values.push_back(s);

    double smax = report.singular_values.empty() ? 0.0 : report.singular_values[0];
    int rank = 0;
    for (double s : report.singular_values) {
        if (smax > 0 && s >= options.tol * smax) ++rank;
    }
    report.dimension = rank;
    report.dimension_is_lower_bound = (rank == k);

    for (int c = 0; c < rank; ++c) {
        DenseState b = cols[norms[c].second];
        for (cplx& a : b.amps()) a /= norms[c].first;
        report.basis.push_back(std::move(b));
    }

    report.max_residual = 0.0;
    for (const DenseState& b : report.basis) {
        DenseState cycled = b;
        cycle(cycled);
        report.max_residual = std::max(report.max_residual, axpy_norm(cycled, b));
    }

    auto cat_checks = [&](int sign, double& cycle_residual, double& span_residual) {
        DenseState cat = prepare_cat_dense(lat, 2);
        if (sign < 0) {
            ClockShiftString vy = shift_loop_op(lat, 2, column_dual_loop(lat, 0));
            apply(cat, vy);
        }
        DenseState cycled = cat;
        cycle(cycled);
        cycle_residual = axpy_norm(cycled, cat);
        DenseState projected(2, lat.bonds());
        for (cplx& a : projected.amps()) a = 0.0;
        for (const DenseState& b : report.basis) {
            cplx coeff = inner(b, cat);
            for (uint64_t idx = 0; idx < projected.dim(); ++idx) {
                projected.amps()[idx] += coeff * b.amps()[idx];
            }
        }
        span_residual = axpy_norm(projected, cat);
    };
    cat_checks(+1, report.cat_even_residual, report.cat_even_span_residual);
    cat_checks(-1, report.cat_odd_residual, report.cat_odd_span_residual);

    return report;
}

std::pair<std::complex<double>, std::complex<double>> parity_identity_check(
    const std::vector<std::complex<double>>& z, int r, int modulus) {
    if (modulus != 2) {
        throw std::invalid_argument("parity identity is stated for modulus 2");
    }
    const int n = static_cast<int>(z.size());
    if (n > 30) throw std::invalid_argument("direct summation capped at 30 factors");

    std::complex<double> lhs = 0.0;
    for (uint64_t y = 0; y < (uint64_t(1) << n); ++y) {
        if ((std::popcount(y) & 1) != (r & 1)) continue;
        std::complex<double> term = 1.0;
        for (int j = 0; j < n; ++j) {
            if ((y >> j) & 1) term *= z[j];
        }
        lhs += term;
    }

    std::complex<double> prod_plus = 1.0, prod_minus = 1.0;
    for (int j = 0; j < n; ++j) {
        prod_plus *= 1.0 + z[j];
        prod_minus *= 1.0 - z[j];
    }
    std::complex<double> rhs = 0.5 * (prod_plus + ((r & 1) ? -1.0 : 1.0) * prod_minus);
    return {lhs, rhs};
}

}  // namespace tcg
