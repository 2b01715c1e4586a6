#pragma once
// Discrete Bayesian networks: nodes with named states, conditional probability
// tables and hard findings.
//
// CPT row order: parent-state combinations enumerate with the FIRST listed parent
// varying slowest (row-major over the parent list). Each row is a distribution
// over the node's own states, in declaration order.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veritas/rational.hpp"

namespace veritas {

struct Node {
    std::string id;
    std::vector<std::string> states;
    std::vector<std::string> parents;
};

/// Authoring form of a node. CPT entries are exact; JSON doubles convert exactly.
struct NodeSpec {
    Node node;
    std::vector<std::vector<Rational>> cpt;
};

struct NetworkSpec {
    std::vector<NodeSpec> nodes;
};

class Cpt {
public:
    Cpt() = default;
    Cpt(std::size_t rows, std::size_t states, std::vector<Rational> exact);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t states() const noexcept { return states_; }
    double at(std::size_t row, std::size_t state) const { return values_[row * states_ + state]; }
    const Rational& exact_at(std::size_t row, std::size_t state) const { return exact_[row * states_ + state]; }
    std::span<const double> row(std::size_t r) const { return {values_.data() + r * states_, states_}; }

private:
    std::size_t rows_ = 0;
    std::size_t states_ = 0;
    std::vector<double> values_;
    std::vector<Rational> exact_;
};

/// Validated, immutable network. Construct with build_network().
class Network {
public:
    std::size_t size() const noexcept { return nodes_.size(); }
    const Node& node(std::size_t i) const { return nodes_.at(i); }
    const Cpt& cpt(std::size_t i) const { return cpts_.at(i); }
    std::span<const std::size_t> parent_indices(std::size_t i) const { return parents_.at(i); }
    std::span<const std::size_t> topological_order() const noexcept { return topo_; }
    std::size_t cardinality(std::size_t i) const { return nodes_.at(i).states.size(); }

    std::optional<std::size_t> find(std::string_view id) const;
    /// Throws NotFoundError.
    std::size_t index_of(std::string_view id) const;
    /// Throws NotFoundError.
    std::size_t state_index(std::size_t node, std::string_view state) const;

    /// CPT row for the given parent states (one entry per parent, in parent order).
    std::size_t row_index(std::size_t node, std::span<const std::size_t> parent_states) const;

    /// Authoring form, suitable for serialization.
    NetworkSpec spec() const;

private:
    friend Network build_network(NetworkSpec spec);
    std::vector<Node> nodes_;
    std::vector<Cpt> cpts_;
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::size_t> topo_;
};

/// Validates and freezes a description. Rows are checked, never renormalized:
/// a row whose sum differs from 1 by more than 1e-9 is rejected. All problems
/// are reported together in one ValidationError.
Network build_network(NetworkSpec spec);

inline constexpr double kRowSumTolerance = 1e-9;

struct Finding {
    std::string node;
    std::string state;

    bool operator==(const Finding&) const = default;
};

struct ResolvedFinding {
    std::size_t node;
    std::size_t state;
};

/// Resolves names; unknown nodes/states or two findings on one node raise ValidationError.
std::vector<ResolvedFinding> resolve_findings(const Network& net, std::span<const Finding> findings);

/// Parses "Node=State".
Finding parse_finding(std::string_view text);

struct Posterior {
    std::vector<std::string> nodes;
    std::vector<std::vector<std::string>> states;
    std::vector<std::vector<double>> marginals;
    /// P(findings) under the network.
    double evidence_probability = 1.0;

    std::span<const double> of(std::string_view node) const;
    double probability(std::string_view node, std::string_view state) const;
};

}  // namespace veritas
