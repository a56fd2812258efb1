#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tcg {

enum class BondKind : uint8_t { horizontal = 0, vertical = 1 };
enum class LoopKind : uint8_t { direct, dual };  // direct = clock/Z-type, dual = shift/X-type

struct BondCoord {
    BondKind orientation;
    int x;
    int y;
};

// Square lattice on a torus. Bond id = orientation * (lx*ly) + y*lx + x with
// horizontal = 0, vertical = 1, so decode is O(1) arithmetic.
//
// Geometry conventions (used consistently everywhere):
//   vertex (x,y); h(x,y) runs from vertex (x,y) to (x+1,y); v(x,y) from (x,y)
//   to (x,y+1). Face (x,y) has corners (x,y)..(x+1,y+1).
class TorusLattice {
  public:
    TorusLattice(int lx, int ly);

    int lx() const { return lx_; }
    int ly() const { return ly_; }
    int faces() const { return lx_ * ly_; }  // also the number of stars
    int bonds() const { return 2 * lx_ * ly_; }

    int bond(BondKind o, int x, int y) const;  // wraps coordinates
    BondCoord coord(int bond) const;

    // Bonds of face (x,y): h(x,y), h(x,y+1), v(x,y), v(x+1,y).
    std::array<int, 4> plaquette_bonds(int x, int y) const;
    // Bonds at vertex (x,y): h(x-1,y), h(x,y), v(x,y-1), v(x,y).
    std::array<int, 4> star_bonds(int x, int y) const;

    bool operator==(const TorusLattice& o) const { return lx_ == o.lx_ && ly_ == o.ly_; }

  private:
    int lx_;
    int ly_;
};

// A loop is a signed 1-chain of bonds: orientation signs are +1 along the
// canonical bond direction (h east, v north; dual crossings east/north) and
// -1 against it. Only modulus > 2 contexts consume the signs.
struct Loop {
    LoopKind kind = LoopKind::direct;
    std::vector<int> bonds;     // traversal order
    std::vector<int8_t> signs;  // aligned with bonds

    bool contains(int bond) const;
    size_t size() const { return bonds.size(); }
};

Loop column_loop(const TorusLattice& lat, int x);    // direct, homology (0,1)
Loop row_loop(const TorusLattice& lat, int y);       // direct, homology (1,0)
Loop row_dual_loop(const TorusLattice& lat, int y);  // dual, homology (1,0)
Loop column_dual_loop(const TorusLattice& lat, int x);  // dual, homology (0,1)

// Contractible boundaries, oriented (counterclockwise curl / outward divergence).
Loop plaquette_boundary(const TorusLattice& lat, int x, int y);
Loop star_boundary(const TorusLattice& lat, int x, int y);

// Closed-loop condition: direct loops touch every vertex an even number of
// times, dual loops cross every face an even number of times.
bool is_closed(const TorusLattice& lat, const Loop& loop);

// Signed chain sum a + b_sign*b; every shared bond must cancel exactly.
Loop signed_sum(const TorusLattice& lat, const Loop& a, const Loop& b, int b_sign);

// Assigns traversal orientation signs to a bare bond set (each component must
// be a simple cycle). Deterministic: starts each component at its smallest
// bond id, traversed tail-to-head.
Loop orient_loop(const TorusLattice& lat, LoopKind kind, std::vector<int> bonds);

// Winding numbers (wx, wy) mod modulus, from signed crossings of a fixed
// vertical and horizontal cut. Throws std::invalid_argument on open loops.
std::pair<int, int> homology_class(const TorusLattice& lat, const Loop& loop, int modulus);

std::vector<int> loop_intersection(const Loop& a, const Loop& b);

// One playable configuration: T direct team loops, one dual loop, modulus M.
struct GameInstance {
    TorusLattice lattice;
    int modulus = 2;
    std::vector<Loop> teams;
    Loop dual_loop;
    std::vector<int> intersections;  // bond t_i shared by teams[i] and dual_loop

    size_t team_count() const { return teams.size(); }
    bool nonlocal() const { return teams.size() >= 3; }
};

// Straight instance: column teams plus one straight dual row.
GameInstance make_straight_instance(const TorusLattice& lat, int modulus,
                                    const std::vector<int>& team_columns, int dual_row);

// Reflected instance for simultaneous play: row teams plus one dual column.
GameInstance make_reflected_instance(const TorusLattice& lat, int modulus,
                                     const std::vector<int>& team_rows, int dual_column);

enum class TeamAxis { vertical, horizontal };

// Checks every instance invariant and returns all violations (empty = ok).
std::vector<std::string> validate_instance(const GameInstance& inst,
                                           TeamAxis axis = TeamAxis::vertical);

struct EnumerateOptions {
    bool deform_duals = false;  // one elementary star deformation of the dual loop
    bool deform_teams = false;  // one elementary plaquette deformation of a team
};

// Straight instances (all size-T column subsets x all dual rows), plus the
// requested elementary deformations. Deformed-team instances drop any straight
// team that would overlap the deformed loop and are emitted only if at least
// two teams remain.
std::vector<GameInstance> enumerate_instances(const TorusLattice& lat, int T, int modulus,
                                              EnumerateOptions options = {});

}  // namespace tcg
