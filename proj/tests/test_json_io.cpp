#include <doctest.h>

#include <stdexcept>

#include "tcg/game.hpp"
#include "tcg/json_io.hpp"
#include "tcg/lattice.hpp"

using namespace tcg;

TEST_SUITE_BEGIN("json_io");

TEST_CASE("instance round trip") {
    TorusLattice lat(3, 2);
    GameInstance inst = make_straight_instance(lat, 2, {0, 2}, 1);
    GameInstance back = instance_from_json(instance_to_json(inst));
    CHECK(back.lattice.lx() == 3);
    CHECK(back.lattice.ly() == 2);
    CHECK(back.modulus == 2);
    REQUIRE(back.teams.size() == 2);
    CHECK(back.teams[0].bonds == inst.teams[0].bonds);
    CHECK(back.dual_loop.bonds == inst.dual_loop.bonds);
    CHECK(back.intersections == inst.intersections);
    CHECK(validate_instance(back).empty());
}

TEST_CASE("qudit instances re-orient their loops on parse") {
    TorusLattice lat(2, 2);
    GameInstance inst = make_straight_instance(lat, 3, {0, 1}, 0);
    GameInstance back = instance_from_json(instance_to_json(inst));
    CHECK(validate_instance(back).empty());
    for (const Loop& team : back.teams) {
        CHECK(team.signs.size() == team.bonds.size());
    }
}

TEST_CASE("malformed instances are rejected") {
    CHECK_THROWS_AS(instance_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(instance_from_json("{\"lx\":3}"), std::invalid_argument);
    CHECK_THROWS_AS(
        instance_from_json(
            "{\"lx\":3,\"ly\":2,\"M\":2,\"teams\":[[99]],\"dual_loop\":[0]}"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        instance_from_json(
            "{\"lx\":3,\"ly\":2,\"M\":1,\"teams\":[[0]],\"dual_loop\":[0]}"),
        std::invalid_argument);
}

TEST_CASE("config hash is stable and order-sensitive") {
    CHECK(config_hash_hex("abc") == config_hash_hex("abc"));
    CHECK(config_hash_hex("abc") != config_hash_hex("acb"));
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
}

TEST_CASE("round log line layout") {
    RoundResult r;
    r.outcomes = {1, 0, 1};
    r.target = 0;
    r.won = true;
    InputVector input{{1, 1, 0}};
    CHECK(round_log_line(3, input, r) ==
          "{\"round\":3,\"input\":[1,1,0],\"outcomes\":[1,0,1],\"target\":0,\"won\":true}");
}

TEST_SUITE_END();
