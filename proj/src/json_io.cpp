#include "tcg/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tcg {

using nlohmann::ordered_json;

std::string instance_to_json(const GameInstance& inst) {
    ordered_json j;
    j["lx"] = inst.lattice.lx();
    j["ly"] = inst.lattice.ly();
    j["M"] = inst.modulus;
    ordered_json teams = ordered_json::array();
    for (const Loop& team : inst.teams) teams.push_back(team.bonds);
    j["teams"] = std::move(teams);
    j["dual_loop"] = inst.dual_loop.bonds;
    return j.dump();
}

GameInstance instance_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("instance JSON parse error: ") + e.what());
    }
    for (const char* key : {"lx", "ly", "M", "teams", "dual_loop"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(std::string("instance JSON missing key: ") + key);
        }
    }
    int lx = j.at("lx").get<int>();
    int ly = j.at("ly").get<int>();
    int modulus = j.at("M").get<int>();
    if (modulus < 2) throw std::invalid_argument("instance JSON: M must be >= 2");
    TorusLattice lat(lx, ly);

    auto build_loop = [&](const ordered_json& arr, LoopKind kind) {
        std::vector<int> bonds;
        for (const auto& b : arr) {
            int bond = b.get<int>();
            if (bond < 0 || bond >= lat.bonds()) {
                throw std::invalid_argument("instance JSON: bond id out of range");
            }
            bonds.push_back(bond);
        }
        if (modulus == 2) {
            Loop loop;
            loop.kind = kind;
            loop.bonds = std::move(bonds);
            loop.signs.assign(loop.bonds.size(), 1);
            return loop;
        }
        return orient_loop(lat, kind, std::move(bonds));
    };

    std::vector<Loop> teams;
    for (const auto& arr : j.at("teams")) teams.push_back(build_loop(arr, LoopKind::direct));
    Loop dual = build_loop(j.at("dual_loop"), LoopKind::dual);

    GameInstance inst{lat, modulus, std::move(teams), std::move(dual), {}};
    for (const Loop& team : inst.teams) {
        auto shared = loop_intersection(team, inst.dual_loop);
        inst.intersections.push_back(shared.size() == 1 ? shared[0] : -1);
    }
    return inst;
}

GameInstance instance_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_hash_hex(const std::string& canonical_config) {
    uint64_t h = fnv1a64(canonical_config);
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace tcg
