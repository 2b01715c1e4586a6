#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "veritas/builtin.hpp"
#include "veritas/error.hpp"
#include "veritas/network.hpp"
#include "veritas/network_json.hpp"

using namespace veritas;

namespace {

Json single_node() {
    return Json::parse(R"({"format":"veritas-net/1","nodes":[{"id":"A","states":["a","b"],"parents":[],"cpt":[[0.5,0.5]]}]})");
}

std::vector<std::string> issue_kinds(const Json& doc) {
    std::vector<std::string> kinds;
    try {
        network_from_json(doc);
    } catch (const ValidationError& e) {
        for (const auto& i : e.issues()) kinds.push_back(i.kind);
    }
    return kinds;
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

}  // namespace

TEST_CASE("single node network") {
    const Network net = network_from_json(single_node());
    CHECK(net.size() == 1);
    CHECK(net.node(0).id == "A");
    CHECK(net.cpt(0).at(0, 1) == 0.5);
    CHECK(net.state_index(0, "b") == 1);
    CHECK_THROWS_AS(net.index_of("Z"), NotFoundError);
}

TEST_CASE("box network shape") {
    const Network net = box_testimony_network(5, parse_rational("5/6"));
    CHECK(net.size() == 11);
    CHECK(net.node(0).id == "Box");
    CHECK(net.node(1).id == "E1");
    CHECK(net.node(6).id == "E1T");
    CHECK(net.node(10).id == "E5T");
    const std::size_t e1 = net.index_of("E1");
    CHECK(net.cpt(e1).exact_at(1, 0) == parse_rational("1/13"));
    CHECK(net.cpt(e1).exact_at(0, 0) == 1);
    const std::size_t t1 = net.index_of("E1T");
    CHECK(net.cpt(t1).exact_at(0, 0) == parse_rational("5/6"));
    CHECK(net.cpt(t1).exact_at(1, 0) == parse_rational("1/6"));
    CHECK_THROWS(box_testimony_network(0, 1));
    CHECK_THROWS(box_testimony_network(2, parse_rational("3/2")));
}

TEST_CASE("validation errors are reported together") {
    SUBCASE("row sum") {
        Json doc = single_node();
        doc["nodes"][0]["cpt"] = Json::parse("[[0.5,0.4]]");
        CHECK(has(issue_kinds(doc), "row_sum"));
    }
    SUBCASE("row sum within tolerance passes") {
        Json doc = single_node();
        doc["nodes"][0]["cpt"] = Json::parse("[[0.5,0.5000000000001]]");
        CHECK_NOTHROW(network_from_json(doc));
    }
    SUBCASE("cycle, dangling parent and duplicate state at once") {
        const Json doc = Json::parse(R"({"nodes":[
            {"id":"A","states":["x","y"],"parents":["B"],"cpt":[[1,0],[0,1]]},
            {"id":"B","states":["x","y"],"parents":["A"],"cpt":[[1,0],[0,1]]},
            {"id":"C","states":["s","s"],"parents":["Missing"],"cpt":[[1,0]]}]})");
        const auto kinds = issue_kinds(doc);
        CHECK(has(kinds, "cycle"));
        CHECK(has(kinds, "dangling_parent"));
        CHECK(has(kinds, "duplicate_state"));
    }
    SUBCASE("bad shapes and entries") {
        Json doc = single_node();
        doc["nodes"][0]["cpt"] = Json::parse("[[0.5,0.5],[0.5,0.5]]");
        CHECK_FALSE(issue_kinds(doc).empty());
        doc["nodes"][0]["cpt"] = Json::parse("[[1.5,-0.5]]");
        CHECK_FALSE(issue_kinds(doc).empty());
        doc["nodes"][0]["states"] = Json::parse(R"(["only"])");
        doc["nodes"][0]["cpt"] = Json::parse("[[1]]");
        CHECK_FALSE(issue_kinds(doc).empty());
    }
    SUBCASE("duplicate node") {
        Json doc = single_node();
        doc["nodes"].push_back(doc["nodes"][0]);
        CHECK(has(issue_kinds(doc), "duplicate_node"));
    }
    SUBCASE("wrong format tag") {
        Json doc = single_node();
        doc["format"] = "veritas-net/9";
        CHECK_THROWS_AS(network_from_json(doc), ValidationError);
    }
    SUBCASE("empty network") { CHECK_THROWS_AS(network_from_json(Json::parse(R"({"nodes":[]})")), ValidationError); }
}

TEST_CASE("row order contract: first parent varies slowest") {
    const Json doc = Json::parse(R"({"nodes":[
        {"id":"P","states":["p0","p1"],"parents":[],"cpt":[[0.5,0.5]]},
        {"id":"Q","states":["q0","q1","q2"],"parents":[],"cpt":[["1/3","1/3","1/3"]]},
        {"id":"C","states":["c0","c1"],"parents":["P","Q"],
         "cpt":[[1,0],[0.9,0.1],[0.8,0.2],[0.7,0.3],[0.6,0.4],[0.5,0.5]]}]})");
    const Network net = network_from_json(doc);
    const std::size_t c = net.index_of("C");
    const std::size_t p1q2[] = {1, 2};
    const std::size_t p0q1[] = {0, 1};
    CHECK(net.row_index(c, p1q2) == 5);
    CHECK(net.row_index(c, p0q1) == 1);
    CHECK(net.cpt(c).at(net.row_index(c, p1q2), 0) == 0.5);
    CHECK(net.cpt(net.index_of("Q")).exact_at(0, 0) == parse_rational("1/3"));
}

TEST_CASE("json round trip keeps exact entries") {
    const Network net = box_testimony_network(3, parse_rational("5/6"));
    const Json doc = network_to_json(net);
    CHECK(doc["format"] == kFormatTag);
    const Network back = network_from_json(doc);
    REQUIRE(back.size() == net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        CHECK(back.node(i).id == net.node(i).id);
        for (std::size_t r = 0; r < net.cpt(i).rows(); ++r) {
            for (std::size_t s = 0; s < net.cpt(i).states(); ++s) {
                CHECK(back.cpt(i).exact_at(r, s) == net.cpt(i).exact_at(r, s));
            }
        }
    }
    CHECK(network_to_json(back).dump() == doc.dump());
}

TEST_CASE("findings") {
    const Network net = box_testimony_network(2, parse_rational("5/6"));
    const Json doc = Json::parse(R"({"format":"veritas-net/1","findings":{"E2T":"B","E1T":"W"}})");
    const auto f = findings_from_json(doc);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == Finding{"E2T", "B"});  // file order is kept
    CHECK(findings_to_json(f)["findings"].dump() == doc["findings"].dump());
    CHECK(parse_finding("E1T=W") == Finding{"E1T", "W"});
    CHECK_THROWS_AS(parse_finding("E1T"), ValidationError);

    const std::vector<Finding> unknown_node{{"Nope", "W"}};
    CHECK_THROWS_AS(resolve_findings(net, unknown_node), ValidationError);
    const std::vector<Finding> unknown_state{{"E1", "Green"}};
    CHECK_THROWS_AS(resolve_findings(net, unknown_state), ValidationError);
    const std::vector<Finding> twice{{"E1", "W"}, {"E1", "B"}};
    CHECK_THROWS_AS(resolve_findings(net, twice), ValidationError);
}

TEST_CASE("files") {
    const std::string path = "test_network_roundtrip.json";
    {
        std::ofstream out(path);
        out << network_to_json(box_testimony_network(1, 1)).dump(2);
    }
    CHECK(network_from_json(read_json_file(path)).size() == 3);
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(read_json_file(path), ValidationError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_json_file("/nonexistent/net.json"), IoError);
}

TEST_CASE("builtins") {
    for (const auto& name : builtin_names()) {
        const BuiltinNetwork b = builtin_network(name);
        CHECK(b.name == name);
        CHECK(b.network.size() > 0);
    }
    CHECK(builtin_network("box-testimony-5").target->numerator == "B1");
    CHECK_THROWS_AS(builtin_network("nope"), NotFoundError);
}
