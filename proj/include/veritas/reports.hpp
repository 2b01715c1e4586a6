#pragma once
// JSON encodings shared by the C API, the CLI and the service.

#include <cstddef>

#include "veritas/evidence.hpp"
#include "veritas/generators.hpp"
#include "veritas/json_util.hpp"
#include "veritas/propagation.hpp"
#include "veritas/testimony.hpp"

namespace veritas {

Json belief_json(double odds);
Json jl_table_json();
Json uncertain_jl_json(const UncertainJL& value);
Json weights_json(const DiscreteWeight& w);
DiscreteWeight weights_from_json(const Json& doc);
Json testimony_table_json(const TestimonyTable& table);

GaussianPair gaussian_pair_from_json(const Json& doc);
Json gaussian_pair_json(const GaussianPair& g);
Json evidence_table_json(const GaussianPair& g, int lo = -6, int hi = 6);
/// Per-draw moments for both generators plus their n-draw scaling.
Json walk_statistics_json(const GaussianPair& g, std::size_t n);
Json walks_json(const WalkResult& walks, bool include_trajectories);
Json propagation_json(const PropagationStats& stats, bool include_histogram);

}  // namespace veritas
