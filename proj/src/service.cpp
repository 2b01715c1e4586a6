#include "veritas/service.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <thread>
#include <vector>

#include <httplib.h>

#include "veritas/builtin.hpp"
#include "veritas/error.hpp"
#include "veritas/inference.hpp"
#include "veritas/ledger.hpp"
#include "veritas/network_json.hpp"
#include "veritas/reports.hpp"
#include "veritas/scenarios.hpp"

namespace veritas {

namespace {

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string new_session_id() {
    static thread_local std::mt19937_64 gen{std::random_device{}()};
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(gen()),
                  static_cast<unsigned long long>(gen()));
    return buf;
}

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        const auto slash = path.find('/', start);
        const auto end = slash == std::string_view::npos ? path.size() : slash;
        if (end > start) parts.emplace_back(path.substr(start, end - start));
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    return parts;
}

ServiceResponse error_response(int status, const char* code, const std::string& message, Json details = nullptr) {
    Json err{{"code", code}, {"message", message}};
    if (!details.is_null()) err["details"] = std::move(details);
    return {status, Json{{"error", std::move(err)}}};
}

Json issues_json(const std::vector<ValidationIssue>& issues) {
    Json out = Json::array();
    for (const auto& i : issues) out.push_back(Json{{"kind", i.kind}, {"node", i.node}, {"message", i.message}});
    return out;
}

struct Session {
    std::string id;
    std::string network_name;
    std::shared_ptr<const Network> network;
    std::optional<TargetPair> target;
    std::vector<Finding> findings;  // insertion order
    std::string created;
    std::string updated;
    std::optional<Json> cached_posteriors;
    mutable std::mutex mutex;
};

TargetPair target_from_json(const Json& doc, const Network& net) {
    if (!doc.is_object()) throw ValidationError("bad_target", "", "target must be an object");
    TargetPair t{doc.value("node", ""), doc.value("numerator", ""), doc.value("denominator", "")};
    validate_target(net, t);
    return t;
}

Json compute_posteriors(const Session& s) {
    const Posterior post = infer_marginals(*s.network, s.findings);
    Json findings = Json::array();
    for (const auto& f : s.findings) findings.push_back(Json{{"node", f.node}, {"state", f.state}});
    Json out{{"session_id", s.id},
             {"network", s.network_name},
             {"findings", std::move(findings)},
             {"evidence_probability", post.evidence_probability},
             {"marginals", posterior_to_json(post)["marginals"]}};
    if (s.target) out["target"] = to_json(target_ledger(*s.network, s.findings, *s.target));
    return out;
}

Json session_info(const Session& s) {
    Json findings = Json::object();
    for (const auto& f : s.findings) findings[f.node] = f.state;
    Json out{{"session_id", s.id},
             {"network", s.network_name},
             {"findings", std::move(findings)},
             {"created", s.created},
             {"updated", s.updated}};
    if (s.target) {
        out["target"] = Json{{"node", s.target->node},
                             {"numerator", s.target->numerator},
                             {"denominator", s.target->denominator}};
    }
    return out;
}

Json parse_body(std::string_view body) {
    if (body.empty()) return Json::object();
    try {
        return Json::parse(body);
    } catch (const Json::parse_error& e) {
        throw ValidationError("bad_json", "", std::string("request body is not JSON: ") + e.what());
    }
}

}  // namespace

struct Service::Impl {
    ServiceOptions options;
    mutable std::shared_mutex store_mutex;
    std::map<std::string, std::shared_ptr<Session>> sessions;
    std::unique_ptr<httplib::Server> server;
    std::jthread server_thread;
    std::mutex lifecycle_mutex;

    std::shared_ptr<Session> find(const std::string& id) const {
        std::shared_lock lock(store_mutex);
        const auto it = sessions.find(id);
        if (it == sessions.end()) throw NotFoundError("unknown session '" + id + "'");
        return it->second;
    }

    ServiceResponse route(std::string_view method, std::string_view path, std::string_view body);
    ServiceResponse create_session(const Json& req);
    ServiceResponse set_finding(Session& s, const std::string& node, const Json& req);
    ServiceResponse retract_finding(Session& s, const std::string& node);
    ServiceResponse posteriors(Session& s);
    ServiceResponse simulate_walks(const Json& req) const;
    ServiceResponse propagate(const Json& req) const;
    void restore(const Json& doc);
};

ServiceResponse Service::Impl::posteriors(Session& s) {
    if (!s.cached_posteriors) s.cached_posteriors = compute_posteriors(s);
    return {200, *s.cached_posteriors};
}

ServiceResponse Service::Impl::create_session(const Json& req) {
    auto s = std::make_shared<Session>();
    if (req.contains("builtin")) {
        if (!req["builtin"].is_string()) throw ValidationError("bad_request", "", "'builtin' must be a string");
        BuiltinNetwork b = builtin_network(req["builtin"].get<std::string>());
        s->network_name = b.name;
        s->network = std::make_shared<const Network>(std::move(b.network));
        s->target = b.target;
    } else if (req.contains("network")) {
        s->network = std::make_shared<const Network>(network_from_json(req["network"]));
        s->network_name = req.value("name", "uploaded");
    } else {
        throw ValidationError("bad_request", "", "body needs 'builtin' or 'network'");
    }
    if (req.contains("target")) s->target = target_from_json(req["target"], *s->network);
    s->id = new_session_id();
    s->created = s->updated = now_iso8601();
    ServiceResponse resp = posteriors(*s);
    resp.status = 201;
    {
        std::unique_lock lock(store_mutex);
        sessions.emplace(s->id, s);
    }
    return resp;
}

ServiceResponse Service::Impl::set_finding(Session& s, const std::string& node, const Json& req) {
    if (!req.contains("state") || !req["state"].is_string()) {
        throw ValidationError("bad_request", node, "body needs a string 'state'");
    }
    const std::string state = req["state"].get<std::string>();
    std::vector<Finding> next = s.findings;
    auto it = std::find_if(next.begin(), next.end(), [&](const Finding& f) { return f.node == node; });
    if (it != next.end() && it->state == state) return posteriors(s);  // idempotent
    if (it != next.end()) next.erase(it);
    next.push_back({node, state});
    resolve_findings(*s.network, next);
    const double z = evidence_probability(*s.network, next);
    if (!(z > 0.0)) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& f : next) pairs.emplace_back(f.node, f.state);
        throw ImpossibleEvidenceError(std::move(pairs));
    }
    s.findings = std::move(next);
    s.cached_posteriors.reset();
    s.updated = now_iso8601();
    return posteriors(s);
}

ServiceResponse Service::Impl::retract_finding(Session& s, const std::string& node) {
    s.network->index_of(node);
    const auto it = std::find_if(s.findings.begin(), s.findings.end(), [&](const Finding& f) { return f.node == node; });
    if (it != s.findings.end()) {
        s.findings.erase(it);
        s.cached_posteriors.reset();
        s.updated = now_iso8601();
    }
    return posteriors(s);
}

ServiceResponse Service::Impl::simulate_walks(const Json& req) const {
    const GaussianPair g = gaussian_pair_from_json(req);
    const Generator truth = generator_from_string(req.value("truth", std::string("H1")));
    const auto n_draws = req.value("n_draws", std::size_t{50});
    const auto n_traj = req.value("n_traj", std::size_t{100});
    const auto seed = req.value("seed", std::uint64_t{1});
    if (n_traj < 1) throw ValidationError("bad_request", "", "n_traj must be at least 1");
    if ((n_draws + 1) * n_traj > options.max_walk_values) {
        throw ValidationError("too_large", "", "requested walk exceeds the service limit");
    }
    const WalkResult walks = veritas::simulate_walks(g, truth, n_draws, n_traj, seed);
    Json out = walks_json(walks, req.value("include_trajectories", true));
    out["statistics"] = walk_statistics_json(g, n_draws);
    return {200, std::move(out)};
}

ServiceResponse Service::Impl::propagate(const Json& req) const {
    const auto n = req.value("n_samples", std::size_t{1'000'000});
    if (n > options.max_propagation_samples) throw ValidationError("too_large", "", "too many samples requested");
    const auto seed = req.value("seed", std::uint64_t{1});
    const double width = req.value("interval_width", 0.02);
    const PropagationStats stats = propagate_z(n, seed, width);
    return {200, propagation_json(stats, req.value("include_histogram", false))};
}

ServiceResponse Service::Impl::route(std::string_view method, std::string_view path, std::string_view body) {
    const auto parts = split_path(path);
    const auto n = parts.size();

    if (n >= 1 && parts[0] == "sessions") {
        if (n == 1 && method == "POST") return create_session(parse_body(body));
        if (n == 1 && method == "GET") {
            Json list = Json::array();
            std::shared_lock lock(store_mutex);
            for (const auto& [id, s] : sessions) list.push_back(id);
            return {200, Json{{"sessions", std::move(list)}}};
        }
        if (n >= 2) {
            if (n == 2 && method == "DELETE") {
                std::unique_lock lock(store_mutex);
                if (sessions.erase(parts[1]) == 0) throw NotFoundError("unknown session '" + parts[1] + "'");
                return {200, Json{{"deleted", parts[1]}}};
            }
            const auto s = find(parts[1]);
            std::lock_guard lock(s->mutex);
            if (n == 2 && method == "GET") return {200, session_info(*s)};
            if (n == 3 && parts[2] == "posteriors" && method == "GET") return posteriors(*s);
            if (n == 4 && parts[2] == "findings" && method == "PUT") return set_finding(*s, parts[3], parse_body(body));
            if (n == 4 && parts[2] == "findings" && method == "DELETE") return retract_finding(*s, parts[3]);
        }
    }
    if (n >= 1 && parts[0] == "scenarios" && method == "GET") {
        if (n == 1) {
            Json networks = Json::array();
            for (const auto& name : builtin_names()) {
                const BuiltinNetwork b = builtin_network(name);
                Json entry{{"name", b.name}, {"description", b.description}, {"nodes", b.network.size()}};
                if (b.target) {
                    entry["target"] = Json{{"node", b.target->node},
                                           {"numerator", b.target->numerator},
                                           {"denominator", b.target->denominator}};
                }
                networks.push_back(std::move(entry));
            }
            return {200, Json{{"networks", std::move(networks)}, {"reports", scenario_names()}}};
        }
        if (n == 2) return {200, scenario_report(parts[1])};
        if (n == 3 && parts[2] == "network") return {200, network_to_json(builtin_network(parts[1]).network)};
    }
    if (n == 2 && parts[0] == "simulate" && parts[1] == "walks" && method == "POST") return simulate_walks(parse_body(body));
    if (n == 1 && parts[0] == "propagate" && method == "POST") return propagate(parse_body(body));
    return error_response(404, "not_found", "no route for " + std::string(method) + " " + std::string(path));
}

void Service::Impl::restore(const Json& doc) {
    if (!doc.contains("sessions")) return;
    for (const auto& js : doc["sessions"]) {
        auto s = std::make_shared<Session>();
        s->id = js.at("session_id").get<std::string>();
        s->network_name = js.value("network_name", "uploaded");
        s->network = std::make_shared<const Network>(network_from_json(js.at("network")));
        if (js.contains("target")) s->target = target_from_json(js["target"], *s->network);
        s->findings = findings_from_json(Json{{"findings", js.value("findings", Json::object())}});
        s->created = js.value("created", now_iso8601());
        s->updated = js.value("updated", s->created);
        sessions.emplace(s->id, std::move(s));
    }
}

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
    impl_->options = std::move(options);
    if (!impl_->options.snapshot_path.empty()) {
        std::ifstream probe(impl_->options.snapshot_path);
        if (probe) impl_->restore(read_json_file(impl_->options.snapshot_path));
    }
}

Service::~Service() {
    try {
        stop();
    } catch (...) {
    }
}

const ServiceOptions& Service::options() const noexcept { return impl_->options; }

ServiceResponse Service::handle(std::string_view method, std::string_view path, std::string_view body) {
    try {
        return impl_->route(method, path, body);
    } catch (const ValidationError& e) {
        return error_response(422, "validation", e.what(), issues_json(e.issues()));
    } catch (const ImpossibleEvidenceError& e) {
        Json findings = Json::object();
        for (const auto& [node, state] : e.findings()) findings[node] = state;
        return error_response(409, "impossible_evidence", e.what(), Json{{"findings", std::move(findings)}});
    } catch (const NotFoundError& e) {
        return error_response(404, "not_found", e.what());
    } catch (const Error& e) {
        return error_response(422, to_string(e.code()), e.what());
    } catch (const Json::exception& e) {
        return error_response(422, "validation", e.what());
    } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
    }
}

namespace {

void add_cors(httplib::Response& res, const std::string& origin) {
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
}

}  // namespace

int Service::start(const std::string& host, int port) {
    std::lock_guard lock(impl_->lifecycle_mutex);
    if (impl_->server) throw Error(ErrorCode::Io, "service already running");
    auto server = std::make_unique<httplib::Server>();
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        const ServiceResponse r = handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
        add_cors(res, impl_->options.cors_origin);
    };
    const char* pattern = R"(/.*)";
    server->Get(pattern, handler);
    server->Post(pattern, handler);
    server->Put(pattern, handler);
    server->Delete(pattern, handler);
    server->Options(pattern, [this](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
        add_cors(res, impl_->options.cors_origin);
    });
    const int bound = port == 0 ? server->bind_to_any_port(host) : (server->bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
    impl_->server = std::move(server);
    httplib::Server* raw = impl_->server.get();
    impl_->server_thread = std::jthread([raw] { raw->listen_after_bind(); });
    raw->wait_until_ready();
    return bound;
}

void Service::listen(const std::string& host, int port) {
    start(host, port);
    if (impl_->server_thread.joinable()) impl_->server_thread.join();
}

void Service::stop() {
    std::lock_guard lock(impl_->lifecycle_mutex);
    if (impl_->server) {
        impl_->server->stop();
        if (impl_->server_thread.joinable() && impl_->server_thread.get_id() != std::this_thread::get_id()) {
            impl_->server_thread.join();
        }
        impl_->server.reset();
    }
    if (!impl_->options.snapshot_path.empty()) write_snapshot();
}

Json Service::snapshot() const {
    Json list = Json::array();
    std::shared_lock lock(impl_->store_mutex);
    for (const auto& [id, s] : impl_->sessions) {
        std::lock_guard session_lock(s->mutex);
        Json entry = session_info(*s);
        entry["network_name"] = s->network_name;
        entry["network"] = network_to_json(*s->network);
        list.push_back(std::move(entry));
    }
    return Json{{"format", "veritas-sessions/1"}, {"sessions", std::move(list)}};
}

void Service::write_snapshot() const {
    std::ofstream out(impl_->options.snapshot_path);
    if (!out) throw IoError("cannot write snapshot '" + impl_->options.snapshot_path + "'");
    out << snapshot().dump(2) << '\n';
}

std::size_t Service::session_count() const {
    std::shared_lock lock(impl_->store_mutex);
    return impl_->sessions.size();
}

}  // namespace veritas
