#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracle.hpp"
#include "veritas/builtin.hpp"
#include "veritas/error.hpp"
#include "veritas/inference.hpp"
#include "veritas/ledger.hpp"

using namespace veritas;

namespace {

// Declaration order is reversed so the library has to sort topologically.
Network to_network(const oracle::Net& o) {
    NetworkSpec spec;
    for (std::size_t i = o.names.size(); i-- > 0;) {
        NodeSpec ns;
        ns.node.id = o.names[i];
        for (int s = 0; s < o.cards[i]; ++s) ns.node.states.push_back("s" + std::to_string(s));
        for (int p : o.parents[i]) ns.node.parents.push_back(o.names[p]);
        for (const auto& row : o.cpt[i]) {
            std::vector<Rational> r;
            for (double v : row) r.push_back(exact_from_double(v));
            ns.cpt.push_back(r);
        }
        spec.nodes.push_back(std::move(ns));
    }
    return build_network(std::move(spec));
}

Network box(std::size_t n = 5) { return box_testimony_network(n, parse_rational("5/6")); }

Rational R(const char* s) { return parse_rational(s); }

Rational exact_p(const Network& net, const std::vector<Finding>& f, const char* node, std::size_t state) {
    return enumerate_joint_exact(net, f).of(node).at(state);
}

}  // namespace

TEST_CASE("variable elimination and enumeration agree with brute force on random networks") {
    std::mt19937_64 gen(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int compared = 0, impossible = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const oracle::Net o = oracle::random_net(gen, 8, 4);
        const Network net = to_network(o);
        std::vector<int> ev(o.cards.size(), -1);
        std::vector<Finding> findings;
        for (std::size_t i = 0; i < o.cards.size(); ++i) {
            if (u(gen) < 0.3) {
                ev[i] = static_cast<int>(u(gen) * o.cards[i]);
                findings.push_back({o.names[i], "s" + std::to_string(ev[i])});
            }
        }
        double z = 0.0;
        const auto expect = oracle::brute_force(o, ev, &z);
        CHECK(evidence_probability(net, findings) == doctest::Approx(z).epsilon(1e-9));
        if (z == 0.0) {
            CHECK_THROWS_AS(infer_marginals(net, findings), ImpossibleEvidenceError);
            CHECK_THROWS_AS(enumerate_joint(net, findings), ImpossibleEvidenceError);
            ++impossible;
            continue;
        }
        const Posterior ve = infer_marginals(net, findings);
        const Posterior en = enumerate_joint(net, findings);
        CHECK(ve.evidence_probability == doctest::Approx(z).epsilon(1e-9));
        for (std::size_t i = 0; i < o.cards.size(); ++i) {
            for (int s = 0; s < o.cards[i]; ++s) {
                const double a = ve.probability(o.names[i], "s" + std::to_string(s));
                const double b = en.probability(o.names[i], "s" + std::to_string(s));
                CHECK(std::fabs(a - expect[i][s]) <= 1e-9);
                CHECK(std::fabs(b - expect[i][s]) <= 1e-9);
            }
        }
        ++compared;
    }
    CHECK(compared > 150);
    MESSAGE("random networks compared: " << compared << ", impossible finding sets: " << impossible);
}

TEST_CASE("exact rational enumeration matches the double path") {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 20; ++trial) {
        const oracle::Net o = oracle::random_net(gen, 5, 3);
        const Network net = to_network(o);
        const std::vector<Finding> none;
        const ExactPosterior ex = enumerate_joint_exact(net, none);
        const Posterior ve = infer_marginals(net, none);
        CHECK(to_double(ex.evidence_probability) == doctest::Approx(1.0).epsilon(1e-14));  // rows of doubles sum to 1 only approximately
        for (std::size_t i = 0; i < o.cards.size(); ++i) {
            for (int s = 0; s < o.cards[i]; ++s) {
                CHECK(to_double(ex.of(o.names[i]).at(s)) == doctest::Approx(ve.of(o.names[i])[s]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("box network golden values") {
    const Network net = box();
    const std::vector<Finding> none;
    CHECK(exact_p(net, none, "E1", 0) == R("7/13"));
    CHECK(exact_p(net, none, "Box", 0) == R("1/2"));
    CHECK(exact_p(net, {{"E1", "W"}}, "Box", 0) == R("13/14"));
    CHECK(exact_p(net, {{"E1T", "W"}}, "Box", 0) == R("65/82"));
    CHECK(exact_p(net, {{"E1T", "W"}}, "E1", 0) == R("35/41"));
    CHECK(exact_p(net, {{"E1T", "B"}}, "Box", 0) == R("13/74"));
    CHECK(enumerate_joint_exact(net, std::vector<Finding>{{"E1T", "W"}}).evidence_probability == R("41/78"));
    // W, W, B testimony: odds (65/17)^2 (13/61)
    const std::vector<Finding> wwb{{"E1T", "W"}, {"E2T", "W"}, {"E3T", "B"}};
    CHECK(exact_p(net, wwb, "Box", 0) == R("54925/72554"));
    CHECK(infer_marginals(net, wwb).probability("Box", "B1") == doctest::Approx(54925.0 / 72554).epsilon(1e-12));
    CHECK(query_conditional(net, {"Box", "B1"}, wwb) == doctest::Approx(0.757).epsilon(1e-3));
}

TEST_CASE("conditional independence of draws given the box") {
    const Network net = box();
    CHECK(exact_p(net, {{"E1", "W"}, {"Box", "B2"}}, "E2", 0) == R("1/13"));
    CHECK(exact_p(net, {{"Box", "B2"}}, "E2", 0) == R("1/13"));
    CHECK(exact_p(net, {{"E1T", "B"}, {"Box", "B1"}}, "E2", 0) == 1);
}

TEST_CASE("finding order does not change the posterior") {
    const Network net = box();
    std::vector<Finding> f{{"E1T", "W"}, {"E2T", "W"}, {"E3T", "B"}, {"E4T", "W"}};
    const Posterior ref = infer_marginals(net, f);
    std::sort(f.begin(), f.end(), [](const Finding& a, const Finding& b) { return a.node < b.node; });
    do {
        const Posterior p = infer_marginals(net, f);
        for (const auto& n : ref.nodes) {
            for (std::size_t s = 0; s < 2; ++s) CHECK(p.of(n)[s] == doctest::Approx(ref.of(n)[s]).epsilon(1e-13));
        }
    } while (std::next_permutation(f.begin(), f.end(), [](const Finding& a, const Finding& b) { return a.node < b.node; }));
}

TEST_CASE("witness symmetry") {
    const Network net = box();
    const std::vector<Finding> a{{"E1T", "W"}, {"E2T", "B"}};
    const std::vector<Finding> b{{"E2T", "W"}, {"E1T", "B"}};
    const std::vector<Finding> c{{"E4T", "W"}, {"E5T", "B"}};
    CHECK(exact_p(net, a, "Box", 0) == exact_p(net, b, "Box", 0));
    CHECK(exact_p(net, a, "Box", 0) == exact_p(net, c, "Box", 0));
    CHECK(exact_p(net, a, "E1", 0) == exact_p(net, b, "E2", 0));
}

TEST_CASE("a black draw falsifies B1") {
    const Network net = box();
    const std::vector<Finding> f{{"E1T", "W"}, {"E2T", "W"}, {"E3T", "B"}, {"E4", "B"}};
    CHECK(infer_marginals(net, f).probability("Box", "B1") == 0.0);
    CHECK(exact_p(net, f, "Box", 0) == 0);

    const TargetLedger ledger = target_ledger(net, f, {"Box", "B1", "B2"});
    REQUIRE(ledger.entries.size() == 5);
    CHECK(ledger.jl == -INFINITY);
    CHECK(ledger.falsified == std::optional<std::string>("numerator"));
}

TEST_CASE("impossible evidence") {
    const Network net = box();
    const std::vector<Finding> f{{"E1", "B"}, {"Box", "B1"}};
    CHECK(evidence_probability(net, f) == 0.0);
    try {
        infer_marginals(net, f);
        FAIL("expected ImpossibleEvidenceError");
    } catch (const ImpossibleEvidenceError& e) {
        CHECK(e.findings().size() == 2);
        CHECK(e.findings()[0].first == "E1");
    }
    CHECK_THROWS_AS(enumerate_joint_exact(net, f), ImpossibleEvidenceError);
}

TEST_CASE("marginals are distributions, findings are point masses") {
    const Network net = box();
    const std::vector<Finding> f{{"E1T", "W"}, {"E3", "B"}};
    const Posterior p = infer_marginals(net, f);
    for (const auto& n : p.nodes) {
        double s = 0.0;
        for (double v : p.of(n)) s += v;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(p.probability("E3", "B") == 1.0);
    CHECK(p.probability("E3", "W") == 0.0);
    CHECK(p.probability("Box", "B1") == 0.0);
}

TEST_CASE("ledger deltas sum to the final leaning") {
    const Network net = box();
    const std::vector<Finding> f{{"E1T", "W"}, {"E2T", "W"}, {"E3T", "B"}};
    const TargetLedger l = target_ledger(net, f, {"Box", "B1", "B2"});
    REQUIRE(l.entries.size() == 4);
    CHECK_FALSE(l.entries[0].finding.has_value());
    CHECK(l.entries[0].jl == doctest::Approx(0.0));
    double sum = 0.0;
    for (const auto& e : l.entries) sum += e.delta_jl;
    CHECK(sum == doctest::Approx(l.jl).epsilon(1e-12));
    CHECK(l.entries[1].delta_jl == doctest::Approx(std::log10(65.0 / 17)).epsilon(1e-12));
    CHECK(l.entries[2].delta_jl == doctest::Approx(std::log10(65.0 / 17)).epsilon(1e-12));
    CHECK(l.entries[3].delta_jl == doctest::Approx(std::log10(13.0 / 61)).epsilon(1e-12));
    CHECK_FALSE(l.falsified.has_value());

    CHECK_THROWS_AS(validate_target(net, {"Box", "B1", "B1"}), ValidationError);
    CHECK_THROWS_AS(validate_target(net, {"Box", "B1", "B3"}), ValidationError);
    CHECK_THROWS_AS(validate_target(net, {"Nope", "B1", "B2"}), ValidationError);
    const TargetPair t = parse_target("Box:B1:B2");
    CHECK(t.node == "Box");
    CHECK(t.denominator == "B2");
    CHECK_THROWS_AS(parse_target("Box:B1"), ValidationError);
}

TEST_CASE("majority vote ordering for witness three") {
    const Network net = box();
    const std::vector<Finding> f{{"E1T", "W"}, {"E2T", "W"}, {"E3T", "B"}};
    const Posterior p = infer_marginals(net, f);
    const double trust1 = p.probability("E1", "W");
    const double trust3 = p.probability("E3", "B");
    CHECK(trust1 == doctest::Approx(0.8285).epsilon(1e-3));
    CHECK(trust3 < 0.5);
    CHECK(trust1 > trust3);
    // exact value of the third witness' reliability given the other two
    const Rational e3b = exact_p(net, f, "E3", 1);
    CHECK(to_double(e3b) == doctest::Approx(trust3).epsilon(1e-12));
}

TEST_CASE("elimination order and enumeration budget") {
    const Network net = box();
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < net.size(); ++i) vars.push_back(i);
    const std::vector<std::size_t> ev;
    const auto order = min_degree_order(net, vars, ev);
    CHECK(order.size() == vars.size());
    // witness reports are leaves: degree 1, eliminated before the box
    const auto box_pos = std::find(order.begin(), order.end(), net.index_of("Box")) - order.begin();
    const auto e1t_pos = std::find(order.begin(), order.end(), net.index_of("E1T")) - order.begin();
    CHECK(e1t_pos < box_pos);

    const Network big = box_testimony_network(12, parse_rational("5/6"));  // 2^25 joint states
    const std::vector<Finding> none;
    CHECK_THROWS_AS(enumerate_joint(big, none), NumericError);
    CHECK(infer_marginals(big, none).probability("Box", "B1") == doctest::Approx(0.5));
}
