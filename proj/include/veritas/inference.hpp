#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "veritas/network.hpp"
#include "veritas/rational.hpp"

namespace veritas {

/// Exact posterior marginals of every node by variable elimination (min-degree order).
/// Findings' nodes get a point mass on the observed state. Throws
/// ImpossibleEvidenceError when P(findings) = 0.
Posterior infer_marginals(const Network& net, std::span<const Finding> findings);

/// P(target | findings).
double query_conditional(const Network& net, const Finding& target, std::span<const Finding> findings);

/// P(findings), by variable elimination. Zero is returned, not thrown.
double evidence_probability(const Network& net, std::span<const Finding> findings);

/// Largest joint state space enumerate_joint accepts.
inline constexpr double kMaxEnumerationStates = 1e7;

/// Brute-force posterior over the full joint distribution. Throws NumericError when
/// the joint state space exceeds kMaxEnumerationStates.
Posterior enumerate_joint(const Network& net, std::span<const Finding> findings);

struct ExactPosterior {
    std::vector<std::string> nodes;
    std::vector<std::vector<Rational>> marginals;
    Rational evidence_probability;

    const std::vector<Rational>& of(std::string_view node) const;
};

/// Enumeration in exact rational arithmetic on the CPTs' exact entries.
ExactPosterior enumerate_joint_exact(const Network& net, std::span<const Finding> findings);

/// Min-degree elimination order for the given variables over the network's moral graph
/// restricted to the non-evidence nodes (ties broken by node index).
std::vector<std::size_t> min_degree_order(const Network& net, std::span<const std::size_t> variables,
                                          std::span<const std::size_t> evidence_nodes);

}  // namespace veritas
