#include "veritas/ledger.hpp"

#include <cmath>

#include "veritas/error.hpp"
#include "veritas/evidence.hpp"
#include "veritas/inference.hpp"

namespace veritas {

void validate_target(const Network& net, const TargetPair& target) {
    const auto node = net.find(target.node);
    if (!node) throw ValidationError("bad_target", target.node, "target node does not exist");
    const auto& states = net.node(*node).states;
    for (const auto* s : {&target.numerator, &target.denominator}) {
        if (std::find(states.begin(), states.end(), *s) == states.end()) {
            throw ValidationError("bad_target", target.node, "target state '" + *s + "' does not exist");
        }
    }
    if (target.numerator == target.denominator) {
        throw ValidationError("bad_target", target.node, "target states must differ");
    }
}

TargetPair parse_target(std::string_view text) {
    const auto a = text.find(':');
    const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
    if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
        throw ValidationError("bad_target", std::string(text), "target must look like Node:numerator:denominator");
    }
    return {std::string(text.substr(0, a)), std::string(text.substr(a + 1, b - a - 1)),
            std::string(text.substr(b + 1))};
}

namespace {

double pair_jl(const Posterior& post, const TargetPair& t) {
    const double num = post.probability(t.node, t.numerator);
    const double den = post.probability(t.node, t.denominator);
    return jl_from_odds(BayesFactor::ratio(num, den).value());
}

}  // namespace

TargetLedger target_ledger(const Network& net, std::span<const Finding> findings, const TargetPair& target) {
    validate_target(net, target);
    TargetLedger out{target, {}, 0.0, std::nullopt};
    double previous = 0.0;
    for (std::size_t k = 0; k <= findings.size(); ++k) {
        const double jl = pair_jl(infer_marginals(net, findings.first(k)), target);
        LedgerEntry entry{std::nullopt, jl, jl};
        if (k > 0) {
            entry.finding = findings[k - 1];
            entry.delta_jl = (std::isinf(previous) && jl == previous) ? 0.0 : jl - previous;
        }
        out.entries.push_back(std::move(entry));
        previous = jl;
    }
    out.jl = previous;
    if (std::isinf(previous)) out.falsified = previous > 0 ? "denominator" : "numerator";
    return out;
}

Json to_json(const TargetLedger& ledger) {
    Json entries = Json::array();
    for (const auto& e : ledger.entries) {
        entries.push_back(Json{{"finding", e.finding ? Json(e.finding->node + "=" + e.finding->state) : Json(nullptr)},
                               {"delta_jl", json_number(e.delta_jl)},
                               {"jl", json_number(e.jl)}});
    }
    return Json{{"node", ledger.target.node},
                {"numerator", ledger.target.numerator},
                {"denominator", ledger.target.denominator},
                {"jl", json_number(ledger.jl)},
                {"falsified", ledger.falsified ? Json(*ledger.falsified) : Json(nullptr)},
                {"ledger", std::move(entries)}};
}

}  // namespace veritas
