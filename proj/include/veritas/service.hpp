#pragma once
// HTTP/JSON session service: load a network, toggle findings, read posteriors.
//
//   POST   /sessions                       {"builtin": name} | {"network": {...}}, optional "target"
//   GET    /sessions/{id}                  session metadata
//   DELETE /sessions/{id}
//   GET    /sessions/{id}/posteriors       marginals + target JL ledger
//   PUT    /sessions/{id}/findings/{node}  {"state": "W"}
//   DELETE /sessions/{id}/findings/{node}
//   GET    /scenarios                      builtin networks and worked reports
//   GET    /scenarios/{name}
//   POST   /simulate/walks
//   POST   /propagate
//
// Requests on one session are serialized by its mutex; distinct sessions run in parallel.

#include <memory>
#include <string>
#include <string_view>

#include "veritas/json_util.hpp"

namespace veritas {

struct ServiceOptions {
    /// Value of Access-Control-Allow-Origin.
    std::string cors_origin = "*";
    /// When non-empty, sessions are loaded from here at construction (if present) and
    /// written back by stop() and the destructor.
    std::string snapshot_path;
    /// Upper bounds on simulation requests.
    std::size_t max_walk_values = 2'000'000;
    std::size_t max_propagation_samples = 10'000'000;
};

struct ServiceResponse {
    int status = 200;
    Json body;
};

class Service {
public:
    explicit Service(ServiceOptions options = {});
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Routes one request without any network transport.
    ServiceResponse handle(std::string_view method, std::string_view path, std::string_view body);

    /// Binds and serves on a background thread; returns the bound port (useful with port 0).
    int start(const std::string& host, int port);
    /// Binds and serves on the calling thread until stop().
    void listen(const std::string& host, int port);
    /// Stops serving and writes the snapshot if configured. Safe to call repeatedly.
    void stop();

    Json snapshot() const;
    void write_snapshot() const;
    std::size_t session_count() const;

    const ServiceOptions& options() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace veritas
