#include <doctest.h>

#include <cmath>

#include "veritas/error.hpp"
#include "veritas/scenarios.hpp"

using namespace veritas;

TEST_CASE("screening test") {
    const AidsReport r = aids_report();
    CHECK(r.prior_odds == doctest::Approx(1.0 / 399));
    CHECK(r.bf_positive == doctest::Approx(499.5));
    CHECK(r.bf_negative == doctest::Approx(1.0 / 998));
    CHECK(r.prior_jl == doctest::Approx(-std::log10(399.0)));
    CHECK(r.delta_jl_positive == doctest::Approx(std::log10(499.5)));
    CHECK(r.posterior_jl_positive == doctest::Approx(std::log10(499.5 / 399)));
    CHECK(r.posterior_jl_negative == doctest::Approx(-std::log10(399.0 * 998)));
    CHECK(r.posterior_prob_positive == doctest::Approx(499.5 / (399 + 499.5)));
    REQUIRE(r.positive_sequence_jl.size() == 3);
    CHECK(r.positive_sequence_jl[2] == doctest::Approx(r.prior_jl + 2 * r.delta_jl_positive));
    CHECK(r.two_positives_from_even == doctest::Approx(2 * std::log10(499.5)));
}

TEST_CASE("box report") {
    const BoxReport r = box_report();
    CHECK(r.one_white_odds == doctest::Approx(13));
    CHECK(r.one_white_probability == doctest::Approx(13.0 / 14));
    CHECK(r.two_whites_odds == doctest::Approx(169));
    CHECK(r.two_whites_probability == doctest::Approx(169.0 / 170));
    CHECK(r.skeptic_odds == doctest::Approx(1.0));
    CHECK(r.testimony_white_bf == doctest::Approx(65.0 / 17));
    CHECK(r.testimony_black_bf == doctest::Approx(13.0 / 61));
    CHECK(r.testimony_ww_b_probability == doctest::Approx(54925.0 / 72554));
}

TEST_CASE("two observers, one Bayes factor") {
    const ColumboReport r = columbo_report();
    CHECK(r.delta_jl == doctest::Approx(std::log10(13.0)));
    REQUIRE(r.observers.size() == 2);
    for (const auto& o : r.observers) {
        CHECK(o.posterior.mean == doctest::Approx(o.prior.mean + r.delta_jl));
        CHECK(o.posterior.sd == doctest::Approx(o.prior.sd));
    }
}

TEST_CASE("report lookup") {
    for (const auto& n : scenario_names()) CHECK(scenario_report(n)["scenario"] == n);
    CHECK_THROWS_AS(scenario_report("nope"), NotFoundError);
    CHECK(scenario_report("aids")["positive"]["bayes_factor"].get<double>() == doctest::Approx(499.5));
}
