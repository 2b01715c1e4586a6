#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "veritas/network.hpp"
#include "veritas/rational.hpp"

namespace veritas {

/// Box of unknown composition (B1: all white; B2: `white_in_b2` white out of `balls`),
/// `n_extractions` draws with replacement E1..En (states W, B), and a witness report
/// EiT for each draw that is truthful with probability p_truth.
/// Node order: Box, E1..En, E1T..EnT.
Network box_testimony_network(std::size_t n_extractions, const Rational& p_truth, unsigned white_in_b2 = 1,
                              unsigned balls = 13);

/// Hypothesis pair whose log-odds a session tracks, e.g. Box: B1 versus B2.
struct TargetPair {
    std::string node;
    std::string numerator;
    std::string denominator;
};

struct BuiltinNetwork {
    std::string name;
    std::string description;
    Network network;
    std::optional<TargetPair> target;
};

std::vector<std::string> builtin_names();

/// Throws NotFoundError for unknown names.
BuiltinNetwork builtin_network(std::string_view name);

}  // namespace veritas
