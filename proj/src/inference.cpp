#include "veritas/inference.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

#include "veritas/error.hpp"

namespace veritas {

namespace {

// Table over `vars` laid out row-major, first variable slowest.
struct Factor {
    std::vector<std::size_t> vars;
    std::vector<std::size_t> card;
    std::vector<double> values;

    bool contains(std::size_t v) const { return std::find(vars.begin(), vars.end(), v) != vars.end(); }
};

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& card) {
    std::vector<std::size_t> s(card.size(), 1);
    for (std::size_t i = card.size(); i-- > 1;) s[i - 1] = s[i] * card[i];
    return s;
}

// Odometer over an assignment to `card`, last position fastest.
bool advance(std::vector<std::size_t>& assignment, const std::vector<std::size_t>& card) {
    for (std::size_t i = assignment.size(); i-- > 0;) {
        if (++assignment[i] < card[i]) return true;
        assignment[i] = 0;
    }
    return false;
}

Factor multiply(const Factor& a, const Factor& b) {
    Factor out;
    out.vars = a.vars;
    out.card = a.card;
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
        if (!out.contains(b.vars[i])) {
            out.vars.push_back(b.vars[i]);
            out.card.push_back(b.card[i]);
        }
    }
    const std::size_t total = std::accumulate(out.card.begin(), out.card.end(), std::size_t{1}, std::multiplies<>());
    out.values.resize(total);

    // Stride of each output position inside a and b (0 when absent).
    auto map_strides = [&](const Factor& f) {
        const auto s = strides_of(f.card);
        std::vector<std::size_t> m(out.vars.size(), 0);
        for (std::size_t i = 0; i < f.vars.size(); ++i) {
            const auto pos = std::find(out.vars.begin(), out.vars.end(), f.vars[i]) - out.vars.begin();
            m[static_cast<std::size_t>(pos)] = s[i];
        }
        return m;
    };
    const auto sa = map_strides(a);
    const auto sb = map_strides(b);

    std::vector<std::size_t> assignment(out.vars.size(), 0);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t ia = 0, ib = 0;
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            ia += assignment[i] * sa[i];
            ib += assignment[i] * sb[i];
        }
        out.values[k] = a.values[ia] * b.values[ib];
        advance(assignment, out.card);
    }
    return out;
}

Factor sum_out(const Factor& f, std::size_t var) {
    const auto pos = static_cast<std::size_t>(std::find(f.vars.begin(), f.vars.end(), var) - f.vars.begin());
    Factor out;
    for (std::size_t i = 0; i < f.vars.size(); ++i) {
        if (i == pos) continue;
        out.vars.push_back(f.vars[i]);
        out.card.push_back(f.card[i]);
    }
    const auto out_strides = strides_of(out.card);
    out.values.assign(std::accumulate(out.card.begin(), out.card.end(), std::size_t{1}, std::multiplies<>()), 0.0);
    std::vector<std::size_t> assignment(f.vars.size(), 0);
    for (double v : f.values) {
        std::size_t idx = 0;
        for (std::size_t i = 0, j = 0; i < assignment.size(); ++i) {
            if (i == pos) continue;
            idx += assignment[i] * out_strides[j++];
        }
        out.values[idx] += v;
        advance(assignment, f.card);
    }
    return out;
}

Factor reduce(const Factor& f, std::size_t var, std::size_t state) {
    const auto pos = static_cast<std::size_t>(std::find(f.vars.begin(), f.vars.end(), var) - f.vars.begin());
    Factor out;
    for (std::size_t i = 0; i < f.vars.size(); ++i) {
        if (i == pos) continue;
        out.vars.push_back(f.vars[i]);
        out.card.push_back(f.card[i]);
    }
    out.values.reserve(f.values.size() / f.card[pos]);
    std::vector<std::size_t> assignment(f.vars.size(), 0);
    for (double v : f.values) {
        if (assignment[pos] == state) out.values.push_back(v);
        advance(assignment, f.card);
    }
    return out;
}

std::vector<Factor> initial_factors(const Network& net, std::span<const ResolvedFinding> evidence) {
    std::vector<Factor> factors;
    for (std::size_t i = 0; i < net.size(); ++i) {
        Factor f;
        for (std::size_t p : net.parent_indices(i)) {
            f.vars.push_back(p);
            f.card.push_back(net.cardinality(p));
        }
        f.vars.push_back(i);
        f.card.push_back(net.cardinality(i));
        const Cpt& cpt = net.cpt(i);
        f.values.reserve(cpt.rows() * cpt.states());
        for (std::size_t r = 0; r < cpt.rows(); ++r)
            for (std::size_t s = 0; s < cpt.states(); ++s) f.values.push_back(cpt.at(r, s));
        for (const auto& e : evidence)
            if (f.contains(e.node)) f = reduce(f, e.node, e.state);
        factors.push_back(std::move(f));
    }
    return factors;
}

// Runs elimination of every non-evidence variable except `keep` (if any) and returns
// the product of what remains: a factor over `keep`, or a scalar.
Factor eliminate(const Network& net, std::span<const ResolvedFinding> evidence, std::optional<std::size_t> keep) {
    std::vector<Factor> factors = initial_factors(net, evidence);
    std::vector<std::size_t> evidence_nodes;
    for (const auto& e : evidence) evidence_nodes.push_back(e.node);
    std::vector<std::size_t> to_eliminate;
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (keep && *keep == i) continue;
        if (std::find(evidence_nodes.begin(), evidence_nodes.end(), i) != evidence_nodes.end()) continue;
        to_eliminate.push_back(i);
    }

    for (std::size_t var : min_degree_order(net, to_eliminate, evidence_nodes)) {
        std::vector<Factor> kept;
        std::optional<Factor> product;
        for (auto& f : factors) {
            if (!f.contains(var)) {
                kept.push_back(std::move(f));
                continue;
            }
            product = product ? multiply(*product, f) : std::move(f);
        }
        if (product) kept.push_back(sum_out(*product, var));
        factors = std::move(kept);
    }

    Factor result{{}, {}, {1.0}};
    for (const auto& f : factors) result = multiply(result, f);
    return result;
}

std::vector<std::pair<std::string, std::string>> describe(std::span<const Finding> findings) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : findings) out.emplace_back(f.node, f.state);
    return out;
}

Posterior skeleton(const Network& net) {
    Posterior p;
    for (std::size_t i = 0; i < net.size(); ++i) {
        p.nodes.push_back(net.node(i).id);
        p.states.push_back(net.node(i).states);
        p.marginals.emplace_back(net.cardinality(i), 0.0);
    }
    return p;
}

double joint_state_space(const Network& net) {
    double total = 1.0;
    for (std::size_t i = 0; i < net.size(); ++i) total *= static_cast<double>(net.cardinality(i));
    return total;
}

// Calls visit(assignment) for every joint assignment consistent with the evidence.
template <class Visit>
void for_each_consistent(const Network& net, std::span<const ResolvedFinding> evidence, Visit&& visit) {
    if (joint_state_space(net) > kMaxEnumerationStates) {
        throw NumericError("joint state space exceeds the enumeration budget of 1e7 states");
    }
    std::vector<std::size_t> assignment(net.size(), 0);
    std::vector<std::size_t> card(net.size(), 1);
    for (std::size_t i = 0; i < net.size(); ++i) card[i] = net.cardinality(i);
    for (const auto& e : evidence) card[e.node] = 1;  // pinned
    std::vector<std::size_t> free_state(net.size(), 0);
    do {
        for (std::size_t i = 0; i < net.size(); ++i) assignment[i] = free_state[i];
        for (const auto& e : evidence) assignment[e.node] = e.state;
        visit(assignment);
    } while (advance(free_state, card));
}

template <class T, class Entry>
T joint_probability(const Network& net, const std::vector<std::size_t>& assignment, Entry&& entry) {
    T p(1);
    std::vector<std::size_t> parent_states;
    for (std::size_t i = 0; i < net.size(); ++i) {
        parent_states.clear();
        for (std::size_t par : net.parent_indices(i)) parent_states.push_back(assignment[par]);
        p *= entry(i, net.row_index(i, parent_states), assignment[i]);
        if (p == T(0)) break;
    }
    return p;
}

}  // namespace

std::vector<std::size_t> min_degree_order(const Network& net, std::span<const std::size_t> variables,
                                          std::span<const std::size_t> evidence_nodes) {
    // Moral graph without evidence nodes.
    std::vector<std::set<std::size_t>> adj(net.size());
    auto is_evidence = [&](std::size_t v) {
        return std::find(evidence_nodes.begin(), evidence_nodes.end(), v) != evidence_nodes.end();
    };
    for (std::size_t i = 0; i < net.size(); ++i) {
        std::vector<std::size_t> family(net.parent_indices(i).begin(), net.parent_indices(i).end());
        family.push_back(i);
        for (std::size_t a : family)
            for (std::size_t b : family)
                if (a != b && !is_evidence(a) && !is_evidence(b)) adj[a].insert(b);
    }
    std::set<std::size_t> remaining(variables.begin(), variables.end());
    std::vector<std::size_t> order;
    while (!remaining.empty()) {
        std::size_t best = *remaining.begin();
        for (std::size_t v : remaining)
            if (adj[v].size() < adj[best].size()) best = v;
        order.push_back(best);
        remaining.erase(best);
        for (std::size_t a : adj[best])
            for (std::size_t b : adj[best])
                if (a != b) adj[a].insert(b);
        for (std::size_t a : adj[best]) adj[a].erase(best);
        adj[best].clear();
    }
    return order;
}

double evidence_probability(const Network& net, std::span<const Finding> findings) {
    const auto evidence = resolve_findings(net, findings);
    return eliminate(net, evidence, std::nullopt).values.at(0);
}

Posterior infer_marginals(const Network& net, std::span<const Finding> findings) {
    const auto evidence = resolve_findings(net, findings);
    const double z = eliminate(net, evidence, std::nullopt).values.at(0);
    if (!(z > 0.0)) throw ImpossibleEvidenceError(describe(findings));

    Posterior post = skeleton(net);
    post.evidence_probability = z;
    std::vector<bool> observed(net.size(), false);
    for (const auto& e : evidence) {
        observed[e.node] = true;
        post.marginals[e.node][e.state] = 1.0;
    }
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (observed[i]) continue;
        const Factor f = eliminate(net, evidence, i);
        const double total = std::accumulate(f.values.begin(), f.values.end(), 0.0);
        for (std::size_t s = 0; s < f.values.size(); ++s) post.marginals[i][s] = f.values[s] / total;
    }
    return post;
}

double query_conditional(const Network& net, const Finding& target, std::span<const Finding> findings) {
    const auto evidence = resolve_findings(net, findings);
    const std::size_t node = net.index_of(target.node);
    const std::size_t state = net.state_index(node, target.state);
    const double z = eliminate(net, evidence, std::nullopt).values.at(0);
    if (!(z > 0.0)) throw ImpossibleEvidenceError(describe(findings));
    for (const auto& e : evidence)
        if (e.node == node) return e.state == state ? 1.0 : 0.0;
    const Factor f = eliminate(net, evidence, node);
    const double total = std::accumulate(f.values.begin(), f.values.end(), 0.0);
    return f.values[state] / total;
}

Posterior enumerate_joint(const Network& net, std::span<const Finding> findings) {
    const auto evidence = resolve_findings(net, findings);
    Posterior post = skeleton(net);
    double z = 0.0;
    for_each_consistent(net, evidence, [&](const std::vector<std::size_t>& a) {
        const double p = joint_probability<double>(
            net, a, [&](std::size_t i, std::size_t row, std::size_t s) { return net.cpt(i).at(row, s); });
        if (p == 0.0) return;
        z += p;
        for (std::size_t i = 0; i < net.size(); ++i) post.marginals[i][a[i]] += p;
    });
    if (!(z > 0.0)) throw ImpossibleEvidenceError(describe(findings));
    post.evidence_probability = z;
    for (auto& m : post.marginals)
        for (double& v : m) v /= z;
    return post;
}

const std::vector<Rational>& ExactPosterior::of(std::string_view node) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == node) return marginals[i];
    throw NotFoundError("unknown node '" + std::string(node) + "'");
}

ExactPosterior enumerate_joint_exact(const Network& net, std::span<const Finding> findings) {
    const auto evidence = resolve_findings(net, findings);
    ExactPosterior post;
    for (std::size_t i = 0; i < net.size(); ++i) {
        post.nodes.push_back(net.node(i).id);
        post.marginals.emplace_back(net.cardinality(i), Rational(0));
    }
    Rational z = 0;
    for_each_consistent(net, evidence, [&](const std::vector<std::size_t>& a) {
        const Rational p = joint_probability<Rational>(
            net, a, [&](std::size_t i, std::size_t row, std::size_t s) { return net.cpt(i).exact_at(row, s); });
        if (p == 0) return;
        z += p;
        for (std::size_t i = 0; i < net.size(); ++i) post.marginals[i][a[i]] += p;
    });
    if (z == 0) throw ImpossibleEvidenceError(describe(findings));
    post.evidence_probability = z;
    for (auto& m : post.marginals)
        for (auto& v : m) v /= z;
    return post;
}

}  // namespace veritas
