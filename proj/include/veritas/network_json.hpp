#pragma once
// File formats, tagged {"format": "veritas-net/1"}:
//   network:  {"nodes":[{"id":str,"states":[str],"parents":[str],"cpt":[[num]]}]}
//   findings: {"findings":{"<node>":"<state>"}}
// CPT entries may also be written as exact fraction strings such as "5/6".

#include <span>
#include <string>
#include <vector>

#include "veritas/inference.hpp"
#include "veritas/json_util.hpp"
#include "veritas/network.hpp"

namespace veritas {

inline constexpr const char* kFormatTag = "veritas-net/1";

NetworkSpec network_spec_from_json(const Json& doc);
Network network_from_json(const Json& doc);
Json network_to_json(const Network& net);

std::vector<Finding> findings_from_json(const Json& doc);
Json findings_to_json(std::span<const Finding> findings);

Json posterior_to_json(const Posterior& posterior);

/// Throws IoError when unreadable and ValidationError when not valid JSON.
Json read_json_file(const std::string& path);

}  // namespace veritas
