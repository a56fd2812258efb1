#include <doctest.h>

#include <map>
#include <set>
#include <stdexcept>

#include "tcg/lattice.hpp"

using namespace tcg;

namespace {

std::set<int> bond_set(const Loop& loop) { return {loop.bonds.begin(), loop.bonds.end()}; }

std::set<int> sym_diff(const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out;
    for (int x : a)
        if (!b.count(x)) out.insert(x);
    for (int x : b)
        if (!a.count(x)) out.insert(x);
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("lattice");

TEST_CASE("bond counting") {
    TorusLattice lat(3, 2);
    CHECK(lat.bonds() == 12);
    CHECK(lat.faces() == 6);
    CHECK(TorusLattice(2, 2).bonds() == 8);
    CHECK_THROWS_AS(TorusLattice(1, 4), std::invalid_argument);
}

TEST_CASE("bond index bijection") {
    for (auto [lx, ly] : {std::pair{3, 2}, std::pair{4, 5}}) {
        TorusLattice lat(lx, ly);
        std::set<int> seen;
        for (int o = 0; o < 2; ++o) {
            for (int y = 0; y < ly; ++y) {
                for (int x = 0; x < lx; ++x) {
                    int b = lat.bond(static_cast<BondKind>(o), x, y);
                    CHECK(seen.insert(b).second);
                    BondCoord c = lat.coord(b);
                    CHECK(static_cast<int>(c.orientation) == o);
                    CHECK(c.x == x);
                    CHECK(c.y == y);
                }
            }
        }
        CHECK(static_cast<int>(seen.size()) == lat.bonds());
    }
}

TEST_CASE("plaquette convention on 3x2") {
    TorusLattice lat(3, 2);
    auto pb = lat.plaquette_bonds(0, 0);
    std::set<int> want = {lat.bond(BondKind::horizontal, 0, 0), lat.bond(BondKind::horizontal, 0, 1),
                          lat.bond(BondKind::vertical, 0, 0), lat.bond(BondKind::vertical, 1, 0)};
    CHECK(std::set<int>(pb.begin(), pb.end()) == want);
    CHECK_THROWS_AS(lat.plaquette_bonds(3, 0), std::out_of_range);
}

TEST_CASE("plaquette wraps on 2x2") {
    TorusLattice lat(2, 2);
    auto pb = lat.plaquette_bonds(1, 1);
    std::set<int> got(pb.begin(), pb.end());
    CHECK(got.count(lat.bond(BondKind::horizontal, 1, 0)));  // y+1 wraps
    CHECK(got.count(lat.bond(BondKind::vertical, 0, 1)));    // x+1 wraps
}

TEST_CASE("star convention on 3x2") {
    TorusLattice lat(3, 2);
    auto sb = lat.star_bonds(0, 0);
    std::set<int> want = {lat.bond(BondKind::horizontal, 2, 0), lat.bond(BondKind::horizontal, 0, 0),
                          lat.bond(BondKind::vertical, 0, 1), lat.bond(BondKind::vertical, 0, 0)};
    CHECK(std::set<int>(sb.begin(), sb.end()) == want);
}

TEST_CASE("every bond sits in exactly two plaquettes and two stars") {
    TorusLattice lat(3, 2);
    std::map<int, int> plaq_count, star_count;
    for (int y = 0; y < lat.ly(); ++y) {
        for (int x = 0; x < lat.lx(); ++x) {
            for (int b : lat.plaquette_bonds(x, y)) plaq_count[b]++;
            for (int b : lat.star_bonds(x, y)) star_count[b]++;
        }
    }
    for (int b = 0; b < lat.bonds(); ++b) {
        CHECK(plaq_count[b] == 2);  // product of all plaquette ops = identity
        CHECK(star_count[b] == 2);  // product of all star ops = identity
    }
}

TEST_CASE("stars share 0 or 2 bonds with plaquettes") {
    TorusLattice lat(3, 2);
    for (int sy = 0; sy < 2; ++sy)
        for (int sx = 0; sx < 3; ++sx)
            for (int py = 0; py < 2; ++py)
                for (int px = 0; px < 3; ++px) {
                    auto s = lat.star_bonds(sx, sy);
                    auto p = lat.plaquette_bonds(px, py);
                    std::set<int> ss(s.begin(), s.end());
                    int shared = 0;
                    for (int b : p) shared += ss.count(b);
                    CHECK((shared == 0 || shared == 2));
                }
}

TEST_CASE("straight loops and their intersections") {
    TorusLattice lat(3, 2);
    CHECK(column_loop(lat, 0).size() == 2);
    CHECK(row_dual_loop(lat, 1).size() == 3);
    for (int x = 0; x < 3; ++x) {
        for (int y = 0; y < 2; ++y) {
            auto shared = loop_intersection(column_loop(lat, x), row_dual_loop(lat, y));
            REQUIRE(shared.size() == 1);
            CHECK(shared[0] == lat.bond(BondKind::vertical, x, y));
        }
    }
    CHECK_THROWS_AS(column_loop(lat, 3), std::out_of_range);
}

TEST_CASE("homology classes") {
    TorusLattice lat(3, 2);
    CHECK(homology_class(lat, column_loop(lat, 0), 2) == std::pair{0, 1});
    CHECK(homology_class(lat, row_dual_loop(lat, 1), 2) == std::pair{1, 0});
    CHECK(homology_class(lat, plaquette_boundary(lat, 2, 1), 2) == std::pair{0, 0});
    CHECK(homology_class(lat, star_boundary(lat, 0, 0), 2) == std::pair{0, 0});
    CHECK(homology_class(lat, row_loop(lat, 0), 2) == std::pair{1, 0});
    CHECK(homology_class(lat, column_dual_loop(lat, 0), 2) == std::pair{0, 1});

    // Signed windings survive a larger modulus.
    TorusLattice lat3(3, 3);
    CHECK(homology_class(lat3, column_loop(lat3, 1), 3) == std::pair{0, 1});
    CHECK(homology_class(lat3, plaquette_boundary(lat3, 2, 2), 3) == std::pair{0, 0});
    CHECK(homology_class(lat3, star_boundary(lat3, 0, 0), 3) == std::pair{0, 0});

    Loop open;
    open.kind = LoopKind::direct;
    open.bonds = {lat.bond(BondKind::vertical, 0, 0)};
    open.signs = {1};
    CHECK_THROWS_AS(homology_class(lat, open, 2), std::invalid_argument);
}

TEST_CASE("orient_loop recovers straight and deformed cycles") {
    TorusLattice lat(3, 3);
    Loop col = column_loop(lat, 1);
    Loop oriented = orient_loop(lat, LoopKind::direct, col.bonds);
    CHECK(homology_class(lat, oriented, 3) == std::pair{0, 1});

    Loop deformed = signed_sum(lat, col, plaquette_boundary(lat, 1, 0), 1);
    Loop re_oriented = orient_loop(lat, LoopKind::direct, deformed.bonds);
    auto w = homology_class(lat, re_oriented, 3);
    CHECK(w.first == 0);
    CHECK((w.second == 1 || w.second == 2));  // traversal direction is free
}

TEST_CASE("direct/dual intersection parity matches homology pairing") {
    for (auto [lx, ly] : {std::pair{3, 2}, std::pair{3, 3}}) {
        TorusLattice lat(lx, ly);
        std::vector<Loop> direct, dual;
        for (int x = 0; x < lx; ++x) direct.push_back(column_loop(lat, x));
        for (int y = 0; y < ly; ++y) direct.push_back(row_loop(lat, y));
        for (int y = 0; y < ly; ++y)
            for (int x = 0; x < lx; ++x) direct.push_back(plaquette_boundary(lat, x, y));
        direct.push_back(signed_sum(lat, column_loop(lat, 0), plaquette_boundary(lat, 0, 0), 1));
        for (int y = 0; y < ly; ++y) dual.push_back(row_dual_loop(lat, y));
        for (int x = 0; x < lx; ++x) dual.push_back(column_dual_loop(lat, x));
        for (int y = 0; y < ly; ++y)
            for (int x = 0; x < lx; ++x) dual.push_back(star_boundary(lat, x, y));
        dual.push_back(signed_sum(lat, row_dual_loop(lat, 0), star_boundary(lat, 0, 0), 1));

        for (const Loop& a : direct) {
            auto [ax, ay] = homology_class(lat, a, 2);
            for (const Loop& b : dual) {
                auto [bx, by] = homology_class(lat, b, 2);
                int pairing = (ax * by + ay * bx) % 2;
                int shared = static_cast<int>(loop_intersection(a, b).size()) % 2;
                CHECK(shared == pairing);
            }
        }
    }
}

TEST_CASE("validate straight instance") {
    TorusLattice lat(3, 2);
    GameInstance inst = make_straight_instance(lat, 2, {0, 1, 2}, 0);
    CHECK(validate_instance(inst).empty());
    CHECK(inst.nonlocal());
    CHECK(inst.intersections ==
          std::vector<int>{lat.bond(BondKind::vertical, 0, 0), lat.bond(BondKind::vertical, 1, 0),
                           lat.bond(BondKind::vertical, 2, 0)});
}

TEST_CASE("validate reports every violation") {
    TorusLattice lat(3, 2);
    GameInstance inst = make_straight_instance(lat, 2, {0, 1, 2}, 0);

    SUBCASE("shared team bond") {
        inst.teams[1] = inst.teams[0];
        auto v = validate_instance(inst);
        bool found = false;
        for (const auto& s : v)
            if (s.find("not disjoint") != std::string::npos) found = true;
        CHECK(found);
    }

    SUBCASE("bad intersection count") {
        // A dual loop winding oddly over a team: use the column dual loop of
        // the same column so it misses the vertical team bonds entirely.
        inst.dual_loop = row_dual_loop(lat, 0);
        inst.dual_loop.bonds.push_back(lat.bond(BondKind::vertical, 0, 1));
        inst.dual_loop.signs.push_back(1);
        auto v = validate_instance(inst);
        bool found = false;
        for (const auto& s : v)
            if (s.find("intersection count != 1") != std::string::npos ||
                s.find("not closed") != std::string::npos)
                found = true;
        CHECK(found);
    }

    SUBCASE("wrong homology") {
        inst.teams[0] = plaquette_boundary(lat, 0, 0);
        auto v = validate_instance(inst);
        bool found = false;
        for (const auto& s : v)
            if (s.find("homology") != std::string::npos) found = true;
        CHECK(found);
    }
}

TEST_CASE("enumerate straight instances") {
    TorusLattice lat(3, 2);
    auto straight = enumerate_instances(lat, 3, 2);
    CHECK(straight.size() == 2);  // one column subset x two dual rows
    for (const auto& inst : straight) CHECK(validate_instance(inst).empty());
    CHECK_THROWS_AS(enumerate_instances(lat, 4, 2), std::invalid_argument);
}

TEST_CASE("enumerate deformations") {
    TorusLattice lat(3, 2);
    EnumerateOptions opts;
    opts.deform_duals = true;
    opts.deform_teams = true;
    auto family = enumerate_instances(lat, 3, 2, opts);
    CHECK(family.size() > 2);
    for (const auto& inst : family) CHECK(validate_instance(inst).empty());

    // Every star-deformed dual differs from its straight parent by exactly
    // the four bonds of one star.
    int deformed_duals = 0;
    for (const auto& inst : family) {
        if (inst.dual_loop.size() == 3) continue;  // straight
        ++deformed_duals;
        int parent_row = -1;
        std::set<int> diff;
        for (int y = 0; y < 2 && parent_row < 0; ++y) {
            diff = sym_diff(bond_set(inst.dual_loop), bond_set(row_dual_loop(lat, y)));
            if (diff.size() == 4) parent_row = y;
        }
        REQUIRE(parent_row >= 0);
        bool matches_star = false;
        for (int y = 0; y < 2 && !matches_star; ++y) {
            for (int x = 0; x < 3 && !matches_star; ++x) {
                auto sb = lat.star_bonds(x, y);
                if (std::set<int>(sb.begin(), sb.end()) == diff) matches_star = true;
            }
        }
        CHECK(matches_star);
    }
    CHECK(deformed_duals > 0);

    // Deformed-team instances exist and keep at least two disjoint teams.
    int deformed_teams = 0;
    for (const auto& inst : family) {
        for (const auto& team : inst.teams) {
            if (team.size() != 2) {
                ++deformed_teams;
                CHECK(inst.teams.size() >= 2);
                break;
            }
        }
    }
    CHECK(deformed_teams > 0);
}

TEST_SUITE_END();
