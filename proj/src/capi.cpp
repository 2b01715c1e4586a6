#include "veritas/veritas.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "veritas/builtin.hpp"
#include "veritas/display.hpp"
#include "veritas/error.hpp"
#include "veritas/evidence.hpp"
#include "veritas/generators.hpp"
#include "veritas/inference.hpp"
#include "veritas/ledger.hpp"
#include "veritas/network_json.hpp"
#include "veritas/propagation.hpp"
#include "veritas/rational.hpp"
#include "veritas/reports.hpp"
#include "veritas/scenarios.hpp"
#include "veritas/service.hpp"
#include "veritas/testimony.hpp"

struct veritas_network {
    veritas::Network net;
    std::string name;
    std::optional<veritas::TargetPair> target;
};

struct veritas_service {
    std::unique_ptr<veritas::Service> service;
};

namespace {

using veritas::Json;

thread_local std::string g_last_error;
thread_local std::string g_last_error_json = "null";

struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

veritas_status status_of(veritas::ErrorCode code) {
    switch (code) {
        case veritas::ErrorCode::Domain: return VERITAS_E_DOMAIN;
        case veritas::ErrorCode::Undefined: return VERITAS_E_UNDEFINED;
        case veritas::ErrorCode::Validation: return VERITAS_E_VALIDATION;
        case veritas::ErrorCode::ImpossibleEvidence: return VERITAS_E_IMPOSSIBLE;
        case veritas::ErrorCode::Numeric: return VERITAS_E_NUMERIC;
        case veritas::ErrorCode::NotFound: return VERITAS_E_NOT_FOUND;
        case veritas::ErrorCode::Io: return VERITAS_E_IO;
    }
    return VERITAS_E_INTERNAL;
}

veritas_status fail(veritas_status status, const std::string& message, Json details = nullptr) {
    g_last_error = message;
    Json err{{"code", veritas_status_name(status)}, {"message", message}};
    if (!details.is_null()) err["details"] = std::move(details);
    g_last_error_json = Json{{"error", std::move(err)}}.dump();
    return status;
}

template <class F>
veritas_status guard(F&& body) {
    try {
        body();
        return VERITAS_OK;
    } catch (const veritas::ValidationError& e) {
        Json issues = Json::array();
        for (const auto& i : e.issues()) {
            issues.push_back(Json{{"kind", i.kind}, {"node", i.node}, {"message", i.message}});
        }
        return fail(VERITAS_E_VALIDATION, e.what(), Json{{"issues", std::move(issues)}});
    } catch (const veritas::ImpossibleEvidenceError& e) {
        Json findings = Json::object();
        for (const auto& [node, state] : e.findings()) findings[node] = state;
        return fail(VERITAS_E_IMPOSSIBLE, e.what(), Json{{"findings", std::move(findings)}});
    } catch (const veritas::Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const ArgumentError& e) {
        return fail(VERITAS_E_ARGUMENT, e.what());
    } catch (const Json::exception& e) {
        return fail(VERITAS_E_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(VERITAS_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(VERITAS_E_INTERNAL, e.what());
    }
}

template <class T>
T* require(T* p, const char* what) {
    if (p == nullptr) throw ArgumentError(std::string(what) + " must not be NULL");
    return p;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(char** out, const Json& doc) { *require(out, "out") = dup_string(doc.dump()); }

Json parse_request(const char* text) {
    if (text == nullptr || *text == '\0') return Json::object();
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ArgumentError(std::string("malformed JSON argument: ") + e.what());
    }
}

veritas::GaussianPair to_pair(const veritas_gaussian_pair& g) {
    veritas::GaussianPair out{g.mu1, g.sigma1, g.mu2, g.sigma2};
    out.validate();
    return out;
}

std::vector<veritas::Finding> findings_arg(const char* text) {
    const Json doc = parse_request(text);
    if (doc.is_array()) {
        std::vector<veritas::Finding> out;
        for (const auto& item : doc) {
            if (!item.is_string()) throw veritas::ValidationError("bad_finding", "", "findings must be strings");
            out.push_back(veritas::parse_finding(item.get<std::string>()));
        }
        return out;
    }
    return veritas::findings_from_json(doc);
}

// A probability given as a JSON number or string; the exact value when it has one.
struct ProbabilityArg {
    double value = 0.0;
    std::optional<veritas::Rational> exact;
};

ProbabilityArg probability_arg(const Json& req, const char* key) {
    if (!req.contains(key)) throw ArgumentError(std::string("missing '") + key + "'");
    const Json& v = req[key];
    if (v.is_string()) {
        const veritas::Rational r = veritas::parse_rational(v.get<std::string>());
        return {veritas::to_double(r), r};
    }
    if (!v.is_number()) throw ArgumentError(std::string("'") + key + "' must be a number or a string");
    const double d = v.get<double>();
    if (v.is_number_integer()) return {d, veritas::Rational(v.get<long long>())};
    return {d, std::nullopt};
}

Json exact_posterior_json(const veritas::Network& net, const veritas::ExactPosterior& post) {
    Json marginals = Json::object();
    for (std::size_t i = 0; i < net.size(); ++i) {
        const auto& node = net.node(i);
        Json states = Json::object();
        for (std::size_t s = 0; s < node.states.size(); ++s) {
            const auto& r = post.marginals[i][s];
            states[node.states[s]] = Json{{"exact", veritas::to_string(r)}, {"value", veritas::to_double(r)}};
        }
        marginals[node.id] = std::move(states);
    }
    return Json{{"evidence_probability", veritas::to_string(post.evidence_probability)},
                {"marginals", std::move(marginals)}};
}

}  // namespace

extern "C" {

const char* veritas_version(void) { return "1.0.0"; }

const char* veritas_status_name(veritas_status status) {
    switch (status) {
        case VERITAS_OK: return "ok";
        case VERITAS_E_DOMAIN: return "domain";
        case VERITAS_E_UNDEFINED: return "undefined";
        case VERITAS_E_VALIDATION: return "validation";
        case VERITAS_E_IMPOSSIBLE: return "impossible_evidence";
        case VERITAS_E_NUMERIC: return "numeric";
        case VERITAS_E_NOT_FOUND: return "not_found";
        case VERITAS_E_IO: return "io";
        case VERITAS_E_ARGUMENT: return "argument";
        case VERITAS_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* veritas_last_error(void) { return g_last_error.c_str(); }
const char* veritas_last_error_json(void) { return g_last_error_json.c_str(); }

void veritas_string_free(char* s) { std::free(s); }

veritas_status veritas_format_significant(double value, int digits, char** out) {
    return guard([&] { *require(out, "out") = dup_string(veritas::format_significant(value, digits)); });
}

veritas_status veritas_format_fixed(double value, int decimals, char** out) {
    return guard([&] { *require(out, "out") = dup_string(veritas::format_fixed(value, decimals)); });
}

veritas_status veritas_odds_from_prob(double p, double* out) {
    return guard([&] { *require(out, "out") = veritas::odds_from_prob(p); });
}

veritas_status veritas_prob_from_odds(double odds, double* out) {
    return guard([&] { *require(out, "out") = veritas::prob_from_odds(odds); });
}

veritas_status veritas_jl_from_odds(double odds, double* out) {
    return guard([&] { *require(out, "out") = veritas::jl_from_odds(odds); });
}

veritas_status veritas_odds_from_jl(double jl, double* out) {
    return guard([&] { *require(out, "out") = veritas::odds_from_jl(jl); });
}

veritas_status veritas_update_odds(double prior_odds, double bf, double* out) {
    return guard([&] { *require(out, "out") = veritas::update_odds(prior_odds, veritas::BayesFactor(bf)); });
}

veritas_status veritas_posterior_prob(double prior_odds, double bf, double* out) {
    return guard([&] { *require(out, "out") = veritas::posterior_prob(prior_odds, veritas::BayesFactor(bf)); });
}

veritas_status veritas_accumulate_jl(double prior_jl, const double* deltas, size_t n, double* out) {
    return guard([&] {
        if (n > 0) require(deltas, "deltas");
        *require(out, "out") = veritas::accumulate_jl(prior_jl, std::span<const double>(deltas, n));
    });
}

veritas_status veritas_update_report(double prior_odds, double bf, char** out) {
    return guard([&] {
        const veritas::BayesFactor factor(bf);
        const double posterior = veritas::update_odds(prior_odds, factor);
        Json doc{{"prior", veritas::belief_json(prior_odds)},
                 {"bayes_factor", veritas::json_number(bf)},
                 {"weight", veritas::json_number(factor.weight())},
                 {"posterior", veritas::belief_json(posterior)}};
        doc["posterior"]["probability"] = veritas::json_number(veritas::posterior_prob(prior_odds, factor));
        doc["falsified"] = factor.falsifies_numerator() ? Json("numerator")
                           : factor.falsifies_denominator() ? Json("denominator")
                                                            : Json(nullptr);
        emit(out, doc);
    });
}

veritas_status veritas_jl_table(char** out) {
    return guard([&] { emit(out, veritas::jl_table_json()); });
}

veritas_status veritas_combine_bayes_factors(const double* bfs, size_t n, char** out) {
    return guard([&] {
        if (n > 0) require(bfs, "bfs");
        std::vector<veritas::BayesFactor> factors;
        for (size_t i = 0; i < n; ++i) factors.emplace_back(bfs[i]);
        const veritas::BayesFactor product = veritas::combine_bayes_factors(factors);
        emit(out, Json{{"bayes_factor", veritas::json_number(product.value())},
                       {"weight", veritas::json_number(product.weight())}});
    });
}

veritas_status veritas_combine_uncertain(const char* request_json, char** out) {
    return guard([&] {
        const Json req = parse_request(request_json);
        if (!req.contains("terms") || !req["terms"].is_array()) throw ArgumentError("request needs a 'terms' array");
        const auto repeat = req.value("repeat", std::size_t{1});
        std::vector<veritas::UncertainJL> terms;
        for (std::size_t k = 0; k < repeat; ++k) {
            for (const auto& t : req["terms"]) {
                if (t.contains("lo") || t.contains("hi")) {
                    terms.push_back(veritas::UncertainJL::uniform(t.at("lo").get<double>(), t.at("hi").get<double>()));
                } else if (t.contains("value")) {
                    terms.push_back(veritas::UncertainJL::exact(veritas::number_from_json(t["value"])));
                } else {
                    const double sd = t.value("sd", 0.0);
                    if (!(sd >= 0.0)) throw veritas::DomainError("standard uncertainty must be nonnegative");
                    terms.push_back({t.at("mean").get<double>(), sd});
                }
            }
        }
        Json doc = veritas::uncertain_jl_json(veritas::combine_uncertain_jl(terms));
        doc["terms"] = terms.size();
        emit(out, doc);
    });
}

veritas_status veritas_convolve(const char* request_json, char** out) {
    return guard([&] {
        const Json req = parse_request(request_json);
        if (!req.contains("weights") || !req["weights"].is_array()) {
            throw ArgumentError("request needs a 'weights' array");
        }
        veritas::DiscreteWeight acc = veritas::DiscreteWeight::delta(0);
        for (const auto& w : req["weights"]) acc = veritas::convolve_weights(acc, veritas::weights_from_json(w));
        emit(out, veritas::weights_json(acc));
    });
}

veritas_status veritas_expected_frequency(double p, double n, double* expected, double* sd) {
    return guard([&] {
        const auto r = veritas::expected_frequency(p, n);
        *require(expected, "expected") = r.expected;
        *require(sd, "sd") = r.sd;
    });
}

veritas_status veritas_sensitivity_sweep(double prior_jl_lo, double prior_jl_hi, size_t steps, double bf,
                                         char** out) {
    return guard([&] {
        Json rows = Json::array();
        for (const auto& p : veritas::sensitivity_sweep(prior_jl_lo, prior_jl_hi, steps, veritas::BayesFactor(bf))) {
            rows.push_back(Json{{"prior_jl", p.prior_jl},
                                {"posterior_jl", veritas::json_number(p.posterior_jl)},
                                {"posterior_probability", p.posterior_probability}});
        }
        emit(out, Json{{"bayes_factor", veritas::json_number(bf)}, {"rows", std::move(rows)}});
    });
}

veritas_status veritas_testimony_bf(const char* request_json, char** out) {
    return guard([&] {
        const Json req = parse_request(request_json);
        ProbabilityArg pt, pf;
        if (req.contains("p_truth")) {
            // symmetric witness: reports the opposite state otherwise
            pt = probability_arg(req, "p_truth");
            pf = {1.0 - pt.value, std::nullopt};
            if (pt.exact) pf = {veritas::to_double(1 - *pt.exact), veritas::Rational(1 - *pt.exact)};
        } else {
            pt = probability_arg(req, "p_report_given_true");
            pf = probability_arg(req, "p_report_given_false");
        }
        const auto ph = probability_arg(req, "p_e_given_h");
        const auto phb = probability_arg(req, "p_e_given_hbar");
        const veritas::TestimonyChannel channel(pt.value, pf.value);
        const veritas::HypothesisLikelihoods lk{ph.value, phb.value};
        const veritas::BayesFactor effective = veritas::effective_bayes_factor(channel, lk);
        const veritas::BayesFactor ideal = lk.ideal_bayes_factor();
        Json doc{{"bayes_factor", veritas::json_number(effective.value())},
                 {"weight", veritas::json_number(veritas::effective_weight(channel, lk))},
                 {"ideal_bayes_factor", ideal.is_undefined() ? Json(nullptr) : veritas::json_number(ideal.value())},
                 {"ideal_weight", ideal.is_undefined() ? Json(nullptr) : veritas::json_number(ideal.weight())}};
        if (channel.p_report_given_true() == 0.0 && channel.p_report_given_false() == 0.0) {
            doc["lie_factor"] = nullptr;
            doc["j_lambda"] = nullptr;
        } else {
            doc["lie_factor"] = veritas::json_number(channel.lie_factor());
            doc["j_lambda"] = veritas::json_number(channel.j_lambda());
        }
        if (pt.exact && pf.exact && ph.exact && phb.exact) {
            const auto [num, den] = veritas::effective_bf_terms(*pt.exact, *pf.exact, *ph.exact, *phb.exact);
            doc["exact"] = den == 0 ? Json("inf") : Json(veritas::to_string(veritas::Rational(num / den)));
        }
        emit(out, doc);
    });
}

veritas_status veritas_testimony_weight(double delta_jl_e, double j_lambda, double jl_e_given_h, double* out) {
    return guard([&] { *require(out, "out") = veritas::testimony_weight(delta_jl_e, j_lambda, jl_e_given_h); });
}

veritas_status veritas_testimony_table(double delta_jl_e, char** out) {
    return guard([&] { emit(out, veritas::testimony_table_json(veritas::testimony_weight_table(delta_jl_e))); });
}

veritas_status veritas_network_from_json(const char* json, veritas_network** out) {
    return guard([&] {
        require(out, "out");
        const Json doc = parse_request(require(json, "json"));
        *out = new veritas_network{veritas::network_from_json(doc), doc.value("name", "uploaded"), std::nullopt};
    });
}

veritas_status veritas_network_load(const char* path, veritas_network** out) {
    return guard([&] {
        require(out, "out");
        const Json doc = veritas::read_json_file(require(path, "path"));
        *out = new veritas_network{veritas::network_from_json(doc), doc.value("name", std::string(path)), std::nullopt};
    });
}

veritas_status veritas_network_builtin(const char* name, veritas_network** out) {
    return guard([&] {
        require(out, "out");
        veritas::BuiltinNetwork b = veritas::builtin_network(require(name, "name"));
        *out = new veritas_network{std::move(b.network), b.name, b.target};
    });
}

veritas_status veritas_network_box(size_t n_extractions, const char* p_truth, unsigned white_in_b2, unsigned balls,
                                   veritas_network** out) {
    return guard([&] {
        require(out, "out");
        const veritas::Rational p = veritas::parse_rational(require(p_truth, "p_truth"));
        *out = new veritas_network{veritas::box_testimony_network(n_extractions, p, white_in_b2, balls), "box",
                                   veritas::TargetPair{"Box", "B1", "B2"}};
    });
}

void veritas_network_free(veritas_network* net) { delete net; }

veritas_status veritas_network_to_json(const veritas_network* net, char** out) {
    return guard([&] { emit(out, veritas::network_to_json(require(net, "net")->net)); });
}

veritas_status veritas_network_describe(const veritas_network* net, char** out) {
    return guard([&] {
        const auto& n = require(net, "net")->net;
        Json order = Json::array();
        for (std::size_t i : n.topological_order()) order.push_back(n.node(i).id);
        double joint = 1.0;
        for (std::size_t i = 0; i < n.size(); ++i) joint *= static_cast<double>(n.cardinality(i));
        Json doc{{"valid", true},
                 {"name", net->name},
                 {"nodes", n.size()},
                 {"topological_order", std::move(order)},
                 {"joint_states", joint}};
        doc["target"] = net->target ? Json{{"node", net->target->node},
                                           {"numerator", net->target->numerator},
                                           {"denominator", net->target->denominator}}
                                    : Json(nullptr);
        emit(out, doc);
    });
}

veritas_status veritas_builtin_list(char** out) {
    return guard([&] {
        Json list = Json::array();
        for (const auto& name : veritas::builtin_names()) {
            const auto b = veritas::builtin_network(name);
            list.push_back(Json{{"name", b.name}, {"description", b.description}, {"nodes", b.network.size()}});
        }
        emit(out, Json{{"networks", std::move(list)}});
    });
}

veritas_status veritas_infer(const veritas_network* net, const char* findings_json, const char* method,
                             const char* target, char** out) {
    return guard([&] {
        const auto& n = require(net, "net")->net;
        const auto findings = findings_arg(findings_json);
        const std::string how = method ? method : "ve";
        Json doc;
        if (how == "ve") {
            doc = veritas::posterior_to_json(veritas::infer_marginals(n, findings));
        } else if (how == "enumerate") {
            doc = veritas::posterior_to_json(veritas::enumerate_joint(n, findings));
        } else if (how == "exact") {
            doc = exact_posterior_json(n, veritas::enumerate_joint_exact(n, findings));
        } else {
            throw ArgumentError("method must be ve, enumerate or exact");
        }
        Json ordered{{"network", net->name}, {"method", how}};
        ordered["findings"] = veritas::findings_to_json(findings)["findings"];
        for (auto it = doc.begin(); it != doc.end(); ++it) ordered[it.key()] = it.value();
        std::optional<veritas::TargetPair> pair = net->target;
        if (target != nullptr && *target != '\0') pair = veritas::parse_target(target);
        if (pair) ordered["target"] = veritas::to_json(veritas::target_ledger(n, findings, *pair));
        emit(out, ordered);
    });
}

veritas_status veritas_query(const veritas_network* net, const char* target, const char* findings_json,
                             double* out) {
    return guard([&] {
        const auto findings = findings_arg(findings_json);
        *require(out, "out") = veritas::query_conditional(require(net, "net")->net,
                                                          veritas::parse_finding(require(target, "target")), findings);
    });
}

veritas_status veritas_scenario(const char* name, char** out) {
    return guard([&] { emit(out, veritas::scenario_report(require(name, "name"))); });
}

veritas_gaussian_pair veritas_gaussian_pair_default(void) {
    const veritas::GaussianPair g;
    return {g.mu1, g.sigma1, g.mu2, g.sigma2};
}

veritas_status veritas_gaussian_delta_jl(veritas_gaussian_pair g, double x, double* out) {
    return guard([&] { *require(out, "out") = veritas::gaussian_delta_jl(x, to_pair(g)); });
}

veritas_status veritas_evidence_table(veritas_gaussian_pair g, int lo, int hi, char** out) {
    return guard([&] {
        if (lo > hi) throw veritas::DomainError("table range needs lo <= hi");
        emit(out, veritas::evidence_table_json(to_pair(g), lo, hi));
    });
}

veritas_status veritas_walk_statistics(veritas_gaussian_pair g, size_t n_draws, char** out) {
    return guard([&] { emit(out, veritas::walk_statistics_json(to_pair(g), n_draws)); });
}

veritas_status veritas_simulate_walks(veritas_gaussian_pair g, const char* truth, size_t n_draws, size_t n_traj,
                                      uint64_t seed, unsigned threads, int include_trajectories, char** json_out,
                                      char** csv_out) {
    return guard([&] {
        require(json_out, "json_out");
        if (n_traj < 1) throw veritas::DomainError("n_traj must be at least 1");
        const auto walks = veritas::simulate_walks(to_pair(g), veritas::generator_from_string(truth ? truth : "H1"),
                                                   n_draws, n_traj, seed, threads);
        std::string csv;
        if (csv_out != nullptr) {
            std::ostringstream os;
            veritas::write_trajectories_csv(walks, os);
            csv = os.str();
        }
        *json_out = dup_string(veritas::walks_json(walks, include_trajectories != 0).dump());
        if (csv_out != nullptr) *csv_out = dup_string(csv);
    });
}

veritas_status veritas_propagate(size_t n_samples, uint64_t seed, double interval_width, unsigned threads,
                                 int include_histogram, char** json_out, char** csv_out) {
    return guard([&] {
        require(json_out, "json_out");
        const auto stats = veritas::propagate_z(n_samples, seed, interval_width, veritas::kPropagationBins, threads);
        std::string csv;
        if (csv_out != nullptr) {
            std::ostringstream os;
            veritas::write_histogram_csv(stats.histogram, os);
            csv = os.str();
        }
        Json doc = veritas::propagation_json(stats, include_histogram != 0);
        doc["seed"] = seed;
        *json_out = dup_string(doc.dump());
        if (csv_out != nullptr) *csv_out = dup_string(csv);
    });
}

veritas_status veritas_service_create(const char* options_json, veritas_service** out) {
    return guard([&] {
        require(out, "out");
        const Json req = parse_request(options_json);
        veritas::ServiceOptions opts;
        opts.cors_origin = req.value("cors_origin", opts.cors_origin);
        opts.snapshot_path = req.value("snapshot_path", opts.snapshot_path);
        opts.max_walk_values = req.value("max_walk_values", opts.max_walk_values);
        opts.max_propagation_samples = req.value("max_propagation_samples", opts.max_propagation_samples);
        *out = new veritas_service{std::make_unique<veritas::Service>(std::move(opts))};
    });
}

veritas_status veritas_service_start(veritas_service* svc, const char* host, int port, int* bound_port) {
    return guard([&] {
        const int bound = require(svc, "svc")->service->start(host ? host : "127.0.0.1", port);
        if (bound_port != nullptr) *bound_port = bound;
    });
}

veritas_status veritas_service_stop(veritas_service* svc) {
    return guard([&] { require(svc, "svc")->service->stop(); });
}

veritas_status veritas_service_handle(veritas_service* svc, const char* method, const char* path, const char* body,
                                      int* http_status, char** response) {
    return guard([&] {
        require(response, "response");
        const auto r = require(svc, "svc")->service->handle(require(method, "method"), require(path, "path"),
                                                            body ? body : "");
        if (http_status != nullptr) *http_status = r.status;
        *response = dup_string(r.body.dump());
    });
}

void veritas_service_free(veritas_service* svc) { delete svc; }

}  // extern "C"
