#include "veritas/builtin.hpp"

#include "veritas/error.hpp"

namespace veritas {

Network box_testimony_network(std::size_t n_extractions, const Rational& p_truth, unsigned white_in_b2,
                              unsigned balls) {
    if (n_extractions < 1) throw DomainError("need at least one extraction");
    if (balls < 1 || white_in_b2 > balls) throw DomainError("box B2 composition is invalid");
    if (p_truth < 0 || p_truth > 1) throw DomainError("p_truth must lie in [0,1]");

    const Rational half(1, 2);
    const Rational white_b2(white_in_b2, balls);
    const Rational one(1);

    NetworkSpec spec;
    spec.nodes.push_back({{"Box", {"B1", "B2"}, {}}, {{half, half}}});
    for (std::size_t i = 1; i <= n_extractions; ++i) {
        spec.nodes.push_back({{"E" + std::to_string(i), {"W", "B"}, {"Box"}},
                              {{one, Rational(0)}, {white_b2, one - white_b2}}});
    }
    for (std::size_t i = 1; i <= n_extractions; ++i) {
        const std::string e = "E" + std::to_string(i);
        spec.nodes.push_back({{e + "T", {"W", "B"}, {e}}, {{p_truth, one - p_truth}, {one - p_truth, p_truth}}});
    }
    return build_network(std::move(spec));
}

namespace {

Network aids_two_tests() {
    // Prevalence 1/400; P(Pos|HIV) = 99.9%, P(Pos|no HIV) = 0.2%.
    const Rational pos_hiv(999, 1000), pos_healthy(2, 1000);
    auto test = [&](const char* id) {
        return NodeSpec{{id, {"Pos", "Neg"}, {"HIV"}},
                        {{pos_hiv, 1 - pos_hiv}, {pos_healthy, 1 - pos_healthy}}};
    };
    NetworkSpec spec;
    spec.nodes.push_back({{"HIV", {"yes", "no"}, {}}, {{Rational(1, 400), Rational(399, 400)}}});
    spec.nodes.push_back(test("Test1"));
    spec.nodes.push_back(test("Test2"));
    return build_network(std::move(spec));
}

}  // namespace

std::vector<std::string> builtin_names() { return {"box-testimony-5", "box-direct-5", "aids-two-tests"}; }

BuiltinNetwork builtin_network(std::string_view name) {
    if (name == "box-testimony-5") {
        return {"box-testimony-5",
                "Two boxes (13 white / 12 black + 1 white), five extractions reported by a witness who tells "
                "the truth unless a die shows 6",
                box_testimony_network(5, Rational(5, 6)), TargetPair{"Box", "B1", "B2"}};
    }
    if (name == "box-direct-5") {
        return {"box-direct-5", "Same boxes with a perfectly faithful reporter", box_testimony_network(5, Rational(1)),
                TargetPair{"Box", "B1", "B2"}};
    }
    if (name == "aids-two-tests") {
        return {"aids-two-tests", "Randomly chosen person, prevalence 1/400, two independent HIV tests",
                aids_two_tests(), TargetPair{"HIV", "yes", "no"}};
    }
    throw NotFoundError("unknown builtin network '" + std::string(name) + "'");
}

}  // namespace veritas
