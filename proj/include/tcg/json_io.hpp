#pragma once

#include <cstdint>
#include <string>

#include "tcg/lattice.hpp"

namespace tcg {

inline constexpr const char* kArtifactVersion = "1.0.0";

// Instance schema:
// {"lx":int,"ly":int,"M":int,"teams":[[bond,...],...],"dual_loop":[bond,...]}
std::string instance_to_json(const GameInstance& inst);

// Parses and orients the loops (modulus > 2 needs simple cycles to infer
// orientation signs; modulus 2 takes them all +1). Throws
// std::invalid_argument on malformed input.
GameInstance instance_from_json(const std::string& text);
GameInstance instance_from_json_file(const std::string& path);

// FNV-1a over a canonical serialization; embedded in every output artifact.
uint64_t fnv1a64(const std::string& data);
std::string config_hash_hex(const std::string& canonical_config);

}  // namespace tcg
