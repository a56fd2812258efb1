#include "tcg/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tcg {

TorusLattice::TorusLattice(int lx, int ly) : lx_(lx), ly_(ly) {
    if (lx < 2 || ly < 2) {
        throw std::invalid_argument("torus lattice needs lx >= 2 and ly >= 2");
    }
}

int TorusLattice::bond(BondKind o, int x, int y) const {
    x = ((x % lx_) + lx_) % lx_;
    y = ((y % ly_) + ly_) % ly_;
    return static_cast<int>(o) * faces() + y * lx_ + x;
}

BondCoord TorusLattice::coord(int bond) const {
    if (bond < 0 || bond >= bonds()) {
        throw std::out_of_range("bond id out of range");
    }
    int o = bond / faces();
    int r = bond % faces();
    return {static_cast<BondKind>(o), r % lx_, r / lx_};
}

std::array<int, 4> TorusLattice::plaquette_bonds(int x, int y) const {
    if (x < 0 || x >= lx_ || y < 0 || y >= ly_) {
        throw std::out_of_range("plaquette coordinates out of range");
    }
    return {bond(BondKind::horizontal, x, y), bond(BondKind::horizontal, x, y + 1),
            bond(BondKind::vertical, x, y), bond(BondKind::vertical, x + 1, y)};
}

std::array<int, 4> TorusLattice::star_bonds(int x, int y) const {
    if (x < 0 || x >= lx_ || y < 0 || y >= ly_) {
        throw std::out_of_range("star coordinates out of range");
    }
    return {bond(BondKind::horizontal, x - 1, y), bond(BondKind::horizontal, x, y),
            bond(BondKind::vertical, x, y - 1), bond(BondKind::vertical, x, y)};
}

bool Loop::contains(int bond) const {
    return std::find(bonds.begin(), bonds.end(), bond) != bonds.end();
}

Loop column_loop(const TorusLattice& lat, int x) {
    if (x < 0 || x >= lat.lx()) throw std::out_of_range("column out of range");
    Loop loop;
    loop.kind = LoopKind::direct;
    for (int y = 0; y < lat.ly(); ++y) {
        loop.bonds.push_back(lat.bond(BondKind::vertical, x, y));
        loop.signs.push_back(1);
    }
    return loop;
}

Loop row_loop(const TorusLattice& lat, int y) {
    if (y < 0 || y >= lat.ly()) throw std::out_of_range("row out of range");
    Loop loop;
    loop.kind = LoopKind::direct;
    for (int x = 0; x < lat.lx(); ++x) {
        loop.bonds.push_back(lat.bond(BondKind::horizontal, x, y));
        loop.signs.push_back(1);
    }
    return loop;
}

Loop row_dual_loop(const TorusLattice& lat, int y) {
    if (y < 0 || y >= lat.ly()) throw std::out_of_range("row out of range");
    Loop loop;
    loop.kind = LoopKind::dual;
    for (int x = 0; x < lat.lx(); ++x) {
        loop.bonds.push_back(lat.bond(BondKind::vertical, x, y));
        loop.signs.push_back(1);
    }
    return loop;
}

Loop column_dual_loop(const TorusLattice& lat, int x) {
    if (x < 0 || x >= lat.lx()) throw std::out_of_range("column out of range");
    Loop loop;
    loop.kind = LoopKind::dual;
    for (int y = 0; y < lat.ly(); ++y) {
        loop.bonds.push_back(lat.bond(BondKind::horizontal, x, y));
        loop.signs.push_back(1);
    }
    return loop;
}

Loop plaquette_boundary(const TorusLattice& lat, int x, int y) {
    Loop loop;
    loop.kind = LoopKind::direct;
    // Counterclockwise circulation: east along the bottom, north up the right
    // side, west along the top, south down the left side.
    loop.bonds = {lat.bond(BondKind::horizontal, x, y), lat.bond(BondKind::vertical, x + 1, y),
                  lat.bond(BondKind::horizontal, x, y + 1), lat.bond(BondKind::vertical, x, y)};
    loop.signs = {1, 1, -1, -1};
    return loop;
}

Loop star_boundary(const TorusLattice& lat, int x, int y) {
    Loop loop;
    loop.kind = LoopKind::dual;
    // Small dual cycle around vertex (x,y). Dual signs are the algebraic shift
    // exponents, carrying the intersection form (the sign flips on horizontal
    // bonds relative to naive traversal); this exact pattern is what makes
    // every star commute with every oriented plaquette for any modulus.
    loop.bonds = {lat.bond(BondKind::horizontal, x - 1, y), lat.bond(BondKind::vertical, x, y - 1),
                  lat.bond(BondKind::horizontal, x, y), lat.bond(BondKind::vertical, x, y)};
    loop.signs = {1, 1, -1, -1};
    return loop;
}

namespace {

// Endpoints of a bond in the graph the loop kind lives on: lattice vertices
// for direct loops, faces for dual loops. Tail -> head is the canonical
// orientation (h east / v north; dual crossings east / north).
std::pair<int, int> bond_endpoints(const TorusLattice& lat, LoopKind kind, int bond) {
    BondCoord c = lat.coord(bond);
    auto vid = [&](int x, int y) {
        x = ((x % lat.lx()) + lat.lx()) % lat.lx();
        y = ((y % lat.ly()) + lat.ly()) % lat.ly();
        return y * lat.lx() + x;
    };
    if (kind == LoopKind::direct) {
        if (c.orientation == BondKind::horizontal) return {vid(c.x, c.y), vid(c.x + 1, c.y)};
        return {vid(c.x, c.y), vid(c.x, c.y + 1)};
    }
    if (c.orientation == BondKind::vertical) return {vid(c.x - 1, c.y), vid(c.x, c.y)};
    return {vid(c.x, c.y - 1), vid(c.x, c.y)};
}

int sign_of(const Loop& loop, int bond) {
    for (size_t i = 0; i < loop.bonds.size(); ++i) {
        if (loop.bonds[i] == bond) return loop.signs[i];
    }
    throw std::logic_error("bond not in loop");
}

// Chain coefficient that makes every bond shared between a and b cancel in
// a + c*b; throws if the shared bonds disagree.
int cancel_sign(const Loop& a, const Loop& b) {
    int cancel = 0;
    for (int bond : loop_intersection(a, b)) {
        int c = -sign_of(a, bond) * sign_of(b, bond);
        if (cancel == 0) cancel = c;
        if (cancel != c) throw std::invalid_argument("shared bonds cannot all cancel");
    }
    return cancel == 0 ? 1 : cancel;
}

}  // namespace

bool is_closed(const TorusLattice& lat, const Loop& loop) {
    std::map<int, int> degree;
    for (int b : loop.bonds) {
        auto [t, h] = bond_endpoints(lat, loop.kind, b);
        degree[t]++;
        degree[h]++;
    }
    for (const auto& [v, d] : degree) {
        (void)v;
        if (d % 2 != 0) return false;
    }
    return true;
}

Loop signed_sum(const TorusLattice& lat, const Loop& a, const Loop& b, int b_sign) {
    (void)lat;
    if (a.kind != b.kind) throw std::invalid_argument("signed_sum: loop kinds differ");
    std::map<int, int> coeff;
    for (size_t i = 0; i < a.bonds.size(); ++i) coeff[a.bonds[i]] += a.signs[i];
    for (size_t i = 0; i < b.bonds.size(); ++i) coeff[b.bonds[i]] += b_sign * b.signs[i];
    Loop out;
    out.kind = a.kind;
    for (const auto& [bond, c] : coeff) {
        if (c == 0) continue;
        if (c != 1 && c != -1) {
            throw std::invalid_argument("signed_sum: shared bond does not cancel");
        }
        out.bonds.push_back(bond);
        out.signs.push_back(static_cast<int8_t>(c));
    }
    return out;
}

Loop orient_loop(const TorusLattice& lat, LoopKind kind, std::vector<int> bonds) {
    std::sort(bonds.begin(), bonds.end());
    bonds.erase(std::unique(bonds.begin(), bonds.end()), bonds.end());

    std::map<int, std::vector<int>> incident;  // vertex -> bonds
    for (int b : bonds) {
        auto [t, h] = bond_endpoints(lat, kind, b);
        incident[t].push_back(b);
        incident[h].push_back(b);
    }
    for (const auto& [v, bs] : incident) {
        (void)v;
        if (bs.size() != 2) {
            throw std::invalid_argument("orient_loop: not a disjoint union of simple cycles");
        }
    }

    Loop out;
    out.kind = kind;
    std::set<int> seen;
    for (int start : bonds) {
        if (seen.count(start)) continue;
        auto [tail, head] = bond_endpoints(lat, kind, start);
        (void)tail;
        int cur_bond = start;
        int cur_vertex = head;  // traverse the start bond tail -> head
        int8_t cur_sign = 1;
        while (true) {
            seen.insert(cur_bond);
            out.bonds.push_back(cur_bond);
            out.signs.push_back(cur_sign);
            const auto& at = incident.at(cur_vertex);
            int next = (at[0] == cur_bond) ? at[1] : at[0];
            if (next == start) break;
            auto [t, h] = bond_endpoints(lat, kind, next);
            cur_sign = (t == cur_vertex) ? int8_t(1) : int8_t(-1);
            cur_vertex = (t == cur_vertex) ? h : t;
            cur_bond = next;
        }
    }
    if (kind == LoopKind::dual) {
        // Dual signs are algebraic shift exponents, which carry the
        // intersection form: flip the traversal sign on horizontal bonds.
        for (size_t i = 0; i < out.bonds.size(); ++i) {
            if (lat.coord(out.bonds[i]).orientation == BondKind::horizontal) {
                out.signs[i] = static_cast<int8_t>(-out.signs[i]);
            }
        }
    }
    return out;
}

std::pair<int, int> homology_class(const TorusLattice& lat, const Loop& loop, int modulus) {
    if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
    if (!is_closed(lat, loop)) throw std::invalid_argument("homology_class: loop is not closed");
    std::vector<int8_t> signs = loop.signs;
    if (signs.size() != loop.bonds.size()) {
        signs.assign(loop.bonds.size(), 1);
    }
    // Signed crossings of one vertical and one horizontal cut. Direct loops
    // cross through the wrap-around bonds at x = lx-1 / y = ly-1; dual loops
    // wrap through the x = 0 / y = 0 seams instead.
    long wx = 0, wy = 0;
    for (size_t i = 0; i < loop.bonds.size(); ++i) {
        BondCoord c = lat.coord(loop.bonds[i]);
        int s = signs[i];
        if (loop.kind == LoopKind::direct) {
            if (c.orientation == BondKind::horizontal && c.x == lat.lx() - 1) wx += s;
            if (c.orientation == BondKind::vertical && c.y == lat.ly() - 1) wy += s;
        } else {
            if (c.orientation == BondKind::vertical && c.x == 0) wx += s;
            if (c.orientation == BondKind::horizontal && c.y == 0) wy += s;
        }
    }
    auto reduce = [modulus](long w) {
        return static_cast<int>(((w % modulus) + modulus) % modulus);
    };
    return {reduce(wx), reduce(wy)};
}

std::vector<int> loop_intersection(const Loop& a, const Loop& b) {
    std::vector<int> sa = a.bonds, sb = b.bonds;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::vector<int> out;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
    return out;
}

namespace {

GameInstance finalize_instance(const TorusLattice& lat, int modulus, std::vector<Loop> teams,
                               Loop dual) {
    GameInstance inst{lat, modulus, std::move(teams), std::move(dual), {}};
    for (const Loop& team : inst.teams) {
        auto shared = loop_intersection(team, inst.dual_loop);
        inst.intersections.push_back(shared.size() == 1 ? shared[0] : -1);
    }
    return inst;
}

}  // namespace

GameInstance make_straight_instance(const TorusLattice& lat, int modulus,
                                    const std::vector<int>& team_columns, int dual_row) {
    std::vector<Loop> teams;
    for (int x : team_columns) teams.push_back(column_loop(lat, x));
    return finalize_instance(lat, modulus, std::move(teams), row_dual_loop(lat, dual_row));
}

GameInstance make_reflected_instance(const TorusLattice& lat, int modulus,
                                     const std::vector<int>& team_rows, int dual_column) {
    std::vector<Loop> teams;
    for (int y : team_rows) teams.push_back(row_loop(lat, y));
    return finalize_instance(lat, modulus, std::move(teams), column_dual_loop(lat, dual_column));
}

std::vector<std::string> validate_instance(const GameInstance& inst, TeamAxis axis) {
    std::vector<std::string> violations;
    const TorusLattice& lat = inst.lattice;
    const int M = inst.modulus;
    auto note = [&](const std::string& s) { violations.push_back(s); };

    if (M < 2) note("modulus must be >= 2");
    if (inst.teams.size() < 2) note("fewer than 2 teams; game not playable");

    auto in_range = [&](const Loop& loop) {
        for (int b : loop.bonds)
            if (b < 0 || b >= lat.bonds()) return false;
        return true;
    };
    auto is_unit = [&](int w) { return w == 1 || w == M - 1; };
    // Vertical-axis games wind teams along (0,+-1) and the dual along (+-1,0);
    // the reflected (horizontal) game swaps the two conditions.
    auto team_wind_ok = [&](std::pair<int, int> w) {
        return axis == TeamAxis::vertical ? (w.first == 0 && is_unit(w.second))
                                          : (is_unit(w.first) && w.second == 0);
    };
    auto dual_wind_ok = [&](std::pair<int, int> w) {
        return axis == TeamAxis::vertical ? (is_unit(w.first) && w.second == 0)
                                          : (w.first == 0 && is_unit(w.second));
    };

    for (size_t i = 0; i < inst.teams.size(); ++i) {
        const Loop& team = inst.teams[i];
        std::string tag = "team " + std::to_string(i);
        if (team.kind != LoopKind::direct) note(tag + " is not a direct loop");
        if (!in_range(team)) {
            note(tag + " has bond ids out of range");
            continue;
        }
        if (!is_closed(lat, team)) {
            note(tag + " is not closed");
            continue;
        }
        if (!team_wind_ok(homology_class(lat, team, M))) {
            note(tag + " has the wrong homology class");
        }
        auto shared = loop_intersection(team, inst.dual_loop);
        if (shared.size() != 1) {
            note(tag + " intersection count != 1 (got " + std::to_string(shared.size()) + ")");
        } else if (i < inst.intersections.size() && inst.intersections[i] != shared[0]) {
            note(tag + " recorded intersection bond is wrong");
        }
    }

    for (size_t i = 0; i < inst.teams.size(); ++i) {
        for (size_t j = i + 1; j < inst.teams.size(); ++j) {
            if (!loop_intersection(inst.teams[i], inst.teams[j]).empty()) {
                note("teams not disjoint: " + std::to_string(i) + " and " + std::to_string(j));
            }
        }
    }

    if (inst.dual_loop.kind != LoopKind::dual) {
        note("dual loop is not dual kind");
    } else if (!in_range(inst.dual_loop)) {
        note("dual loop has bond ids out of range");
    } else if (!is_closed(lat, inst.dual_loop)) {
        note("dual loop is not closed");
    } else if (!dual_wind_ok(homology_class(lat, inst.dual_loop, M))) {
        note("dual loop has the wrong homology class");
    }

    return violations;
}

std::vector<GameInstance> enumerate_instances(const TorusLattice& lat, int T, int modulus,
                                              EnumerateOptions options) {
    if (T > lat.lx()) {
        std::ostringstream msg;
        msg << "cannot place " << T << " disjoint column teams on " << lat.lx() << " columns";
        throw std::invalid_argument(msg.str());
    }
    if (T < 2) throw std::invalid_argument("need at least 2 teams");

    std::vector<GameInstance> out;

    std::vector<int> cols(T);
    for (int i = 0; i < T; ++i) cols[i] = i;
    std::vector<std::vector<int>> subsets;
    while (true) {
        subsets.push_back(cols);
        int i = T - 1;
        while (i >= 0 && cols[i] == lat.lx() - T + i) --i;
        if (i < 0) break;
        ++cols[i];
        for (int j = i + 1; j < T; ++j) cols[j] = cols[j - 1] + 1;
    }

    for (const auto& subset : subsets) {
        for (int y = 0; y < lat.ly(); ++y) {
            out.push_back(make_straight_instance(lat, modulus, subset, y));
        }
    }
    const std::vector<GameInstance> straight = out;

    if (options.deform_duals) {
        for (const GameInstance& base : straight) {
            int y = lat.coord(base.dual_loop.bonds.front()).y;
            // Stars sharing exactly one bond with dual row y sit at (x, y) and
            // (x, y+1).
            for (int dy = 0; dy <= 1; ++dy) {
                for (int x = 0; x < lat.lx(); ++x) {
                    Loop star = star_boundary(lat, x, (y + dy) % lat.ly());
                    if (loop_intersection(base.dual_loop, star).size() != 1) continue;
                    GameInstance inst = base;
                    inst.dual_loop =
                        signed_sum(lat, base.dual_loop, star, cancel_sign(base.dual_loop, star));
                    inst.intersections.clear();
                    for (const Loop& team : inst.teams) {
                        auto s = loop_intersection(team, inst.dual_loop);
                        inst.intersections.push_back(s.size() == 1 ? s[0] : -1);
                    }
                    if (validate_instance(inst).empty()) out.push_back(std::move(inst));
                }
            }
        }
    }

    if (options.deform_teams) {
        for (const GameInstance& base : straight) {
            for (size_t ti = 0; ti < base.teams.size(); ++ti) {
                int x = lat.coord(base.teams[ti].bonds.front()).x;
                for (int y = 0; y < lat.ly(); ++y) {
                    for (int side = 0; side <= 1; ++side) {
                        // side 0: detour east around face (x,y); side 1: west
                        // around face (x-1,y).
                        int px = side == 0 ? x : (x - 1 + lat.lx()) % lat.lx();
                        Loop plaq = plaquette_boundary(lat, px, y);
                        Loop deformed = signed_sum(lat, base.teams[ti], plaq,
                                                   cancel_sign(base.teams[ti], plaq));
                        std::vector<Loop> teams;
                        teams.push_back(deformed);
                        for (size_t tj = 0; tj < base.teams.size(); ++tj) {
                            if (tj == ti) continue;
                            if (loop_intersection(deformed, base.teams[tj]).empty()) {
                                teams.push_back(base.teams[tj]);
                            }
                        }
                        if (teams.size() < 2) continue;
                        GameInstance inst =
                            finalize_instance(lat, modulus, std::move(teams), base.dual_loop);
                        if (validate_instance(inst).empty()) out.push_back(std::move(inst));
                    }
                }
            }
        }
    }

    return out;
}

}  // namespace tcg
