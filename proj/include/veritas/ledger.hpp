#pragma once
// Log-odds of a hypothesis pair (states of one node) decomposed finding by finding.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veritas/builtin.hpp"
#include "veritas/json_util.hpp"
#include "veritas/network.hpp"

namespace veritas {

struct LedgerEntry {
    std::optional<Finding> finding;  // empty for the prior
    double delta_jl;
    double jl;
};

struct TargetLedger {
    TargetPair target;
    std::vector<LedgerEntry> entries;
    double jl;
    /// "numerator" or "denominator" once that hypothesis has probability zero.
    std::optional<std::string> falsified;
};

/// Checks that the node and both states exist and differ; throws ValidationError.
void validate_target(const Network& net, const TargetPair& target);

/// Parses "Node:numerator:denominator".
TargetPair parse_target(std::string_view text);

/// Prior leaning followed by JL-after minus JL-before for each finding in the given order.
/// Once the pair is falsified the leaning stays infinite and later deltas are 0.
TargetLedger target_ledger(const Network& net, std::span<const Finding> findings, const TargetPair& target);

Json to_json(const TargetLedger& ledger);

}  // namespace veritas
