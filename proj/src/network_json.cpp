#include "veritas/network_json.hpp"

#include <fstream>
#include <sstream>

#include "veritas/error.hpp"

namespace veritas {

namespace {

void check_format(const Json& doc) {
    if (!doc.is_object()) throw ValidationError("bad_document", "", "expected a JSON object");
    if (doc.contains("format") && doc["format"] != kFormatTag) {
        throw ValidationError("bad_format", "", "unsupported format " + doc["format"].dump() + ", expected " +
                                                    std::string(kFormatTag));
    }
}

std::vector<std::string> string_list(const Json& node, const char* key, const std::string& id,
                                     std::vector<ValidationIssue>& issues) {
    std::vector<std::string> out;
    if (!node.contains(key)) return out;
    const Json& list = node[key];
    if (!list.is_array()) {
        issues.push_back({"bad_field", id, std::string("'") + key + "' must be an array of strings"});
        return out;
    }
    for (const auto& item : list) {
        if (!item.is_string()) {
            issues.push_back({"bad_field", id, std::string("'") + key + "' must contain only strings"});
            continue;
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

Rational entry_from_json(const Json& v) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number()) return exact_from_double(v.get<double>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw DomainError("CPT entry must be a number or a fraction string");
}

Json entry_to_json(const Rational& r) {
    const double d = to_double(r);
    if (exact_from_double(d) == r) return d;
    return to_string(r);
}

}  // namespace

NetworkSpec network_spec_from_json(const Json& doc) {
    check_format(doc);
    if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
        throw ValidationError("bad_document", "", "missing 'nodes' array");
    }
    std::vector<ValidationIssue> issues;
    NetworkSpec spec;
    std::size_t index = 0;
    for (const auto& jn : doc["nodes"]) {
        const std::string fallback = "#" + std::to_string(index++);
        if (!jn.is_object()) {
            issues.push_back({"bad_node", fallback, "node must be an object"});
            continue;
        }
        NodeSpec ns;
        if (jn.contains("id") && jn["id"].is_string()) {
            ns.node.id = jn["id"].get<std::string>();
        } else {
            issues.push_back({"bad_id", fallback, "node needs a string 'id'"});
        }
        const std::string& id = ns.node.id.empty() ? fallback : ns.node.id;
        ns.node.states = string_list(jn, "states", id, issues);
        ns.node.parents = string_list(jn, "parents", id, issues);
        if (!jn.contains("cpt") || !jn["cpt"].is_array()) {
            issues.push_back({"bad_field", id, "missing 'cpt' array of rows"});
        } else {
            for (const auto& jrow : jn["cpt"]) {
                if (!jrow.is_array()) {
                    issues.push_back({"bad_field", id, "each CPT row must be an array"});
                    continue;
                }
                std::vector<Rational> row;
                for (const auto& v : jrow) {
                    try {
                        row.push_back(entry_from_json(v));
                    } catch (const DomainError& e) {
                        issues.push_back({"bad_entry", id, e.what()});
                    }
                }
                ns.cpt.push_back(std::move(row));
            }
        }
        spec.nodes.push_back(std::move(ns));
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return spec;
}

Network network_from_json(const Json& doc) { return build_network(network_spec_from_json(doc)); }

Json network_to_json(const Network& net) {
    Json nodes = Json::array();
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Node& n = net.node(i);
        const Cpt& c = net.cpt(i);
        Json cpt = Json::array();
        for (std::size_t r = 0; r < c.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t s = 0; s < c.states(); ++s) row.push_back(entry_to_json(c.exact_at(r, s)));
            cpt.push_back(std::move(row));
        }
        nodes.push_back(Json{{"id", n.id}, {"states", n.states}, {"parents", n.parents}, {"cpt", std::move(cpt)}});
    }
    return Json{{"format", kFormatTag}, {"nodes", std::move(nodes)}};
}

std::vector<Finding> findings_from_json(const Json& doc) {
    check_format(doc);
    if (!doc.contains("findings")) return {};
    const Json& map = doc["findings"];
    if (!map.is_object()) throw ValidationError("bad_document", "", "'findings' must be an object");
    std::vector<Finding> out;
    for (auto it = map.begin(); it != map.end(); ++it) {
        if (!it.value().is_string()) {
            throw ValidationError("bad_finding", it.key(), "finding state must be a string");
        }
        out.push_back({it.key(), it.value().get<std::string>()});
    }
    return out;
}

Json findings_to_json(std::span<const Finding> findings) {
    Json map = Json::object();
    for (const auto& f : findings) map[f.node] = f.state;
    return Json{{"format", kFormatTag}, {"findings", std::move(map)}};
}

Json posterior_to_json(const Posterior& posterior) {
    Json nodes = Json::object();
    for (std::size_t i = 0; i < posterior.nodes.size(); ++i) {
        Json states = Json::object();
        for (std::size_t s = 0; s < posterior.states[i].size(); ++s)
            states[posterior.states[i][s]] = posterior.marginals[i][s];
        nodes[posterior.nodes[i]] = std::move(states);
    }
    return Json{{"evidence_probability", posterior.evidence_probability}, {"marginals", std::move(nodes)}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw ValidationError("bad_json", "", "'" + path + "': " + e.what());
    }
}

}  // namespace veritas
