#include "veritas/network.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "veritas/error.hpp"

namespace veritas {

Cpt::Cpt(std::size_t rows, std::size_t states, std::vector<Rational> exact)
    : rows_(rows), states_(states), exact_(std::move(exact)) {
    values_.reserve(exact_.size());
    for (const auto& e : exact_) values_.push_back(to_double(e));
}

std::optional<std::size_t> Network::find(std::string_view id) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].id == id) return i;
    return std::nullopt;
}

std::size_t Network::index_of(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw NotFoundError("unknown node '" + std::string(id) + "'");
}

std::size_t Network::state_index(std::size_t node, std::string_view state) const {
    const auto& states = nodes_.at(node).states;
    const auto it = std::find(states.begin(), states.end(), state);
    if (it == states.end()) {
        throw NotFoundError("node '" + nodes_[node].id + "' has no state '" + std::string(state) + "'");
    }
    return static_cast<std::size_t>(it - states.begin());
}

std::size_t Network::row_index(std::size_t node, std::span<const std::size_t> parent_states) const {
    const auto& parents = parents_.at(node);
    std::size_t row = 0;
    for (std::size_t k = 0; k < parents.size(); ++k) row = row * cardinality(parents[k]) + parent_states[k];
    return row;
}

NetworkSpec Network::spec() const {
    NetworkSpec out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        NodeSpec ns{nodes_[i], {}};
        const Cpt& c = cpts_[i];
        for (std::size_t r = 0; r < c.rows(); ++r) {
            std::vector<Rational> row;
            for (std::size_t s = 0; s < c.states(); ++s) row.push_back(c.exact_at(r, s));
            ns.cpt.push_back(std::move(row));
        }
        out.nodes.push_back(std::move(ns));
    }
    return out;
}

Network build_network(NetworkSpec spec) {
    std::vector<ValidationIssue> issues;
    auto issue = [&](const char* kind, const std::string& node, std::string msg) {
        issues.push_back({kind, node, std::move(msg)});
    };

    if (spec.nodes.empty()) issue("empty", "", "network has no nodes");

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
        const Node& n = spec.nodes[i].node;
        if (n.id.empty()) issue("bad_id", "", "node #" + std::to_string(i) + " has an empty id");
        if (!index.emplace(n.id, i).second) issue("duplicate_node", n.id, "duplicate node id");
        if (n.states.size() < 2) issue("too_few_states", n.id, "a node needs at least two states");
        std::set<std::string> seen;
        for (const auto& s : n.states) {
            if (s.empty()) issue("bad_state", n.id, "empty state label");
            if (!seen.insert(s).second) issue("duplicate_state", n.id, "duplicate state '" + s + "'");
        }
    }

    std::vector<std::vector<std::size_t>> parents(spec.nodes.size());
    for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
        const Node& n = spec.nodes[i].node;
        std::set<std::string> seen;
        for (const auto& p : n.parents) {
            if (!seen.insert(p).second) issue("duplicate_parent", n.id, "parent '" + p + "' listed twice");
            const auto it = index.find(p);
            if (it == index.end()) {
                issue("dangling_parent", n.id, "parent '" + p + "' does not exist");
                continue;
            }
            if (it->second == i) issue("cycle", n.id, "node lists itself as a parent");
            parents[i].push_back(it->second);
        }
    }

    // Kahn's algorithm over the resolvable edges; whatever is left over sits on a cycle.
    std::vector<std::size_t> topo;
    {
        std::vector<std::size_t> indegree(spec.nodes.size(), 0);
        std::vector<std::vector<std::size_t>> children(spec.nodes.size());
        for (std::size_t i = 0; i < parents.size(); ++i)
            for (std::size_t p : parents[i]) {
                children[p].push_back(i);
                ++indegree[i];
            }
        std::vector<std::size_t> ready;
        for (std::size_t i = 0; i < indegree.size(); ++i)
            if (indegree[i] == 0) ready.push_back(i);
        std::size_t head = 0;
        while (head < ready.size()) {
            const std::size_t n = ready[head++];
            topo.push_back(n);
            for (std::size_t c : children[n])
                if (--indegree[c] == 0) ready.push_back(c);
        }
        if (topo.size() != spec.nodes.size()) {
            std::string members;
            for (std::size_t i = 0; i < indegree.size(); ++i)
                if (indegree[i] > 0) members += (members.empty() ? "" : ", ") + spec.nodes[i].node.id;
            issue("cycle", "", "directed cycle through {" + members + "}");
        }
    }

    // CPT shape and content, only meaningful for nodes whose parents all resolve.
    std::vector<Cpt> cpts;
    {
        for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
            const NodeSpec& ns = spec.nodes[i];
            if (parents[i].size() != ns.node.parents.size()) {
                cpts.emplace_back();
                continue;
            }
            std::size_t rows = 1;
            for (std::size_t p : parents[i]) rows *= std::max<std::size_t>(spec.nodes[p].node.states.size(), 1);
            const std::size_t cols = ns.node.states.size();
            if (ns.cpt.size() != rows) {
                issue("cpt_shape", ns.node.id,
                      "expected " + std::to_string(rows) + " CPT rows, got " + std::to_string(ns.cpt.size()));
                cpts.emplace_back();
                continue;
            }
            std::vector<Rational> flat;
            bool ok = true;
            for (std::size_t r = 0; r < rows; ++r) {
                const auto& row = ns.cpt[r];
                if (row.size() != cols) {
                    issue("cpt_shape", ns.node.id,
                          "row " + std::to_string(r) + " has " + std::to_string(row.size()) + " entries, expected " +
                              std::to_string(cols));
                    ok = false;
                    continue;
                }
                Rational sum = 0;
                for (const auto& v : row) {
                    if (v < 0 || v > 1) {
                        issue("cpt_range", ns.node.id, "row " + std::to_string(r) + " has an entry outside [0,1]");
                        ok = false;
                    }
                    sum += v;
                    flat.push_back(v);
                }
                const double deviation = std::abs(to_double(sum - 1));
                if (deviation > kRowSumTolerance) {
                    issue("row_sum", ns.node.id,
                          "row " + std::to_string(r) + " sums to " + std::to_string(to_double(sum)) + ", not 1");
                    ok = false;
                }
            }
            cpts.push_back(ok ? Cpt(rows, cols, std::move(flat)) : Cpt());
        }
    }

    if (!issues.empty()) throw ValidationError(std::move(issues));

    Network net;
    for (auto& ns : spec.nodes) net.nodes_.push_back(std::move(ns.node));
    net.cpts_ = std::move(cpts);
    net.parents_ = std::move(parents);
    net.topo_ = std::move(topo);
    return net;
}

std::vector<ResolvedFinding> resolve_findings(const Network& net, std::span<const Finding> findings) {
    std::vector<ValidationIssue> issues;
    std::vector<ResolvedFinding> out;
    std::set<std::size_t> used;
    for (const auto& f : findings) {
        const auto node = net.find(f.node);
        if (!node) {
            issues.push_back({"unknown_node", f.node, "finding names an unknown node"});
            continue;
        }
        const auto& states = net.node(*node).states;
        const auto it = std::find(states.begin(), states.end(), f.state);
        if (it == states.end()) {
            issues.push_back({"unknown_state", f.node, "node has no state '" + f.state + "'"});
            continue;
        }
        if (!used.insert(*node).second) {
            issues.push_back({"duplicate_finding", f.node, "more than one finding on the node"});
            continue;
        }
        out.push_back({*node, static_cast<std::size_t>(it - states.begin())});
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return out;
}

Finding parse_finding(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == text.size()) {
        throw ValidationError("bad_finding", "", "expected NODE=STATE, got '" + std::string(text) + "'");
    }
    return {std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

std::span<const double> Posterior::of(std::string_view node) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == node) return marginals[i];
    throw NotFoundError("unknown node '" + std::string(node) + "'");
}

double Posterior::probability(std::string_view node, std::string_view state) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] != node) continue;
        for (std::size_t s = 0; s < states[i].size(); ++s)
            if (states[i][s] == state) return marginals[i][s];
        throw NotFoundError("node '" + std::string(node) + "' has no state '" + std::string(state) + "'");
    }
    throw NotFoundError("unknown node '" + std::string(node) + "'");
}

}  // namespace veritas
