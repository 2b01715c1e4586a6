#include <doctest.h>

#include <httplib.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "veritas/service.hpp"

using namespace veritas;

namespace {

std::string create_box(Service& svc) {
    const auto r = svc.handle("POST", "/sessions", R"({"builtin":"box-testimony-5"})");
    REQUIRE(r.status == 201);
    return r.body["session_id"].get<std::string>();
}

ServiceResponse put_finding(Service& svc, const std::string& id, const std::string& node, const std::string& state) {
    return svc.handle("PUT", "/sessions/" + id + "/findings/" + node, Json{{"state", state}}.dump());
}

double ledger_sum(const Json& target) {
    double s = 0.0;
    for (const auto& e : target["ledger"]) s += e["delta_jl"].get<double>();
    return s;
}

}  // namespace

TEST_CASE("session lifecycle through the sequence of reports") {
    Service svc;
    const std::string id = create_box(svc);
    CHECK(svc.session_count() == 1);

    auto r = put_finding(svc, id, "E1T", "W");
    REQUIRE(r.status == 200);
    CHECK(r.body["marginals"]["Box"]["B1"].get<double>() == doctest::Approx(65.0 / 82));
    put_finding(svc, id, "E2T", "W");
    r = put_finding(svc, id, "E3T", "B");
    REQUIRE(r.status == 200);
    CHECK(r.body["marginals"]["Box"]["B1"].get<double>() == doctest::Approx(54925.0 / 72554));
    const Json& target = r.body["target"];
    CHECK(target["ledger"].size() == 4);
    CHECK(ledger_sum(target) == doctest::Approx(target["jl"].get<double>()).epsilon(1e-12));
    CHECK(target["falsified"].is_null());

    // idempotent
    const auto again = put_finding(svc, id, "E3T", "B");
    CHECK(again.body["marginals"] == r.body["marginals"]);

    r = put_finding(svc, id, "E4", "B");
    REQUIRE(r.status == 200);
    CHECK(r.body["marginals"]["Box"]["B1"].get<double>() == 0.0);
    CHECK(r.body["marginals"]["E5"]["W"].get<double>() == doctest::Approx(1.0 / 13));
    CHECK(r.body["target"]["jl"] == "-inf");
    CHECK(r.body["target"]["falsified"] == "numerator");

    // retraction restores the previous state
    r = svc.handle("DELETE", "/sessions/" + id + "/findings/E4", "");
    REQUIRE(r.status == 200);
    CHECK(r.body["marginals"]["Box"]["B1"].get<double>() == doctest::Approx(54925.0 / 72554));

    const auto info = svc.handle("GET", "/sessions/" + id, "");
    CHECK(info.status == 200);
    CHECK(info.body["findings"]["E3T"] == "B");
    const auto post = svc.handle("GET", "/sessions/" + id + "/posteriors", "");
    CHECK(post.body["marginals"] == r.body["marginals"]);

    CHECK(svc.handle("GET", "/sessions", "").body["sessions"].size() == 1);
    CHECK(svc.handle("DELETE", "/sessions/" + id, "").status == 200);
    CHECK(svc.handle("GET", "/sessions/" + id, "").status == 404);
    CHECK(svc.session_count() == 0);
}

TEST_CASE("impossible finding is rejected without changing the session") {
    Service svc;
    const std::string id = create_box(svc);
    put_finding(svc, id, "E1", "B");
    const auto before = svc.handle("GET", "/sessions/" + id + "/posteriors", "");
    const auto r = put_finding(svc, id, "Box", "B1");
    CHECK(r.status == 409);
    CHECK(r.body["error"]["code"] == "impossible_evidence");
    const auto after = svc.handle("GET", "/sessions/" + id + "/posteriors", "");
    CHECK(after.body == before.body);
}

TEST_CASE("error statuses") {
    Service svc;
    const std::string id = create_box(svc);
    CHECK(put_finding(svc, id, "Nope", "W").status == 422);
    CHECK(put_finding(svc, id, "E1", "Green").status == 422);
    CHECK(svc.handle("PUT", "/sessions/" + id + "/findings/E1", "{bad").status == 422);
    CHECK(svc.handle("PUT", "/sessions/" + id + "/findings/E1", "{}").status == 422);
    CHECK(svc.handle("GET", "/sessions/zzz/posteriors", "").status == 404);
    CHECK(svc.handle("GET", "/nowhere", "").status == 404);
    CHECK(svc.handle("POST", "/sessions", R"({"builtin":"nope"})").status == 404);

    const auto cyc = svc.handle("POST", "/sessions", R"({"network":{"nodes":[
        {"id":"A","states":["x","y"],"parents":["B"],"cpt":[[1,0],[0,1]]},
        {"id":"B","states":["x","y"],"parents":["A"],"cpt":[[1,0],[0,1]]}]}})");
    CHECK(cyc.status == 422);
    CHECK(cyc.body["error"]["code"] == "validation");
    CHECK(cyc.body["error"]["details"][0]["kind"] == "cycle");

    const auto bad_target =
        svc.handle("POST", "/sessions", R"({"builtin":"box-testimony-5","target":{"node":"Box","numerator":"B1","denominator":"B1"}})");
    CHECK(bad_target.status == 422);
    CHECK(svc.handle("POST", "/simulate/walks", R"({"n_draws":100000,"n_traj":1000})").status == 422);
    CHECK(svc.handle("POST", "/propagate", R"({"n_samples":10})").status == 422);
}

TEST_CASE("custom network session") {
    Service svc;
    const auto r = svc.handle("POST", "/sessions", R"({"name":"coin","network":{"nodes":[
        {"id":"C","states":["fair","bent"],"parents":[],"cpt":[["1/2","1/2"]]},
        {"id":"T","states":["h","t"],"parents":["C"],"cpt":[["1/2","1/2"],["9/10","1/10"]]}]},
        "target":{"node":"C","numerator":"bent","denominator":"fair"}})");
    REQUIRE(r.status == 201);
    const std::string id = r.body["session_id"];
    const auto h = put_finding(svc, id, "T", "h");
    CHECK(h.body["target"]["jl"].get<double>() == doctest::Approx(std::log10(1.8)));
}

TEST_CASE("scenarios and simulations") {
    Service svc;
    const auto list = svc.handle("GET", "/scenarios", "");
    CHECK(list.status == 200);
    CHECK(list.body["networks"].size() == 3);
    CHECK(svc.handle("GET", "/scenarios/aids", "").body["positive"]["bayes_factor"].get<double>() == doctest::Approx(499.5));
    CHECK(svc.handle("GET", "/scenarios/box-testimony-5/network", "").body["nodes"].size() == 11);

    const auto w = svc.handle("POST", "/simulate/walks", R"({"truth":"H2","n_draws":10,"n_traj":5,"seed":3})");
    REQUIRE(w.status == 200);
    CHECK(w.body["trajectories"].size() == 5);
    const auto w2 = svc.handle("POST", "/simulate/walks", R"({"truth":"H2","n_draws":10,"n_traj":5,"seed":3})");
    CHECK(w2.body == w.body);

    const auto p = svc.handle("POST", "/propagate", R"({"n_samples":20000,"seed":1,"include_histogram":false})");
    REQUIRE(p.status == 200);
    CHECK(p.body.contains("mean"));
}

TEST_CASE("snapshot restore") {
    const std::string path = "test_service_snapshot.json";
    std::remove(path.c_str());
    std::string id;
    Json marg;
    {
        ServiceOptions o;
        o.snapshot_path = path;
        Service svc(o);
        id = create_box(svc);
        marg = put_finding(svc, id, "E1T", "W").body["marginals"];
        svc.stop();
    }
    {
        ServiceOptions o;
        o.snapshot_path = path;
        Service svc(o);
        CHECK(svc.session_count() == 1);
        const auto r = svc.handle("GET", "/sessions/" + id + "/posteriors", "");
        REQUIRE(r.status == 200);
        CHECK(r.body["marginals"] == marg);
        CHECK(r.body["target"]["ledger"].size() == 2);
    }
    std::remove(path.c_str());
}

TEST_CASE("real HTTP round trip") {
    Service svc;
    const int port = svc.start("127.0.0.1", 0);
    REQUIRE(port > 0);
    httplib::Client cli("127.0.0.1", port);
    auto res = cli.Post("/sessions", R"({"builtin":"box-testimony-5"})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 201);
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    const std::string id = Json::parse(res->body)["session_id"];
    res = cli.Put(("/sessions/" + id + "/findings/E1T").c_str(), R"({"state":"W"})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(Json::parse(res->body)["marginals"]["Box"]["B1"].get<double>() == doctest::Approx(65.0 / 82));
    res = cli.Get("/nowhere");
    REQUIRE(res);
    CHECK(res->status == 404);
    res = cli.Options("/sessions");
    REQUIRE(res);
    CHECK(res->status == 204);
    svc.stop();
    svc.stop();
}

TEST_CASE("sessions are isolated and inference is state free") {
    Service svc;
    const std::string a = create_box(svc);
    const std::string b = create_box(svc);
    const auto fresh = svc.handle("GET", "/sessions/" + b + "/posteriors", "");
    CHECK(fresh.body["marginals"]["E1"]["W"].get<double>() == doctest::Approx(14.0 / 26));
    CHECK(fresh.body["target"]["ledger"].size() == 1);

    // a winding path on session a ...
    put_finding(svc, a, "E1T", "B");
    put_finding(svc, a, "E2T", "W");
    put_finding(svc, a, "E1T", "W");
    put_finding(svc, a, "E3", "W");
    svc.handle("DELETE", "/sessions/" + a + "/findings/E3", "");
    put_finding(svc, a, "E3T", "B");
    svc.handle("DELETE", "/sessions/" + a + "/findings/E2T", "");
    put_finding(svc, a, "E2T", "W");
    // ... leaves b untouched
    CHECK(svc.handle("GET", "/sessions/" + b + "/posteriors", "").body == fresh.body);

    // and matches a fresh session given the final finding set directly
    for (const auto& [node, state] : {std::pair{"E1T", "W"}, std::pair{"E3T", "B"}, std::pair{"E2T", "W"}})
        put_finding(svc, b, node, state);
    const auto pa = svc.handle("GET", "/sessions/" + a + "/posteriors", "").body;
    const auto pb = svc.handle("GET", "/sessions/" + b + "/posteriors", "").body;
    for (const auto& [node, states] : pa["marginals"].items()) {
        for (const auto& [state, v] : states.items()) {
            CHECK(v.get<double>() == doctest::Approx(pb["marginals"][node][state].get<double>()).epsilon(1e-12));
        }
    }
    CHECK(pa["target"]["jl"].get<double>() == doctest::Approx(pb["target"]["jl"].get<double>()).epsilon(1e-12));
    CHECK(std::fabs(ledger_sum(pa["target"]) - pa["target"]["jl"].get<double>()) < 1e-9);
    // insertion order differs, so the ledgers may split the total differently
    CHECK(pa["target"]["ledger"][1]["finding"] == "E1T=W");
    CHECK(pb["target"]["ledger"][1]["finding"] == "E1T=W");
}
