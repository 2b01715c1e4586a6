#include "veritas/scenarios.hpp"

#include <array>

#include "veritas/error.hpp"
#include "veritas/testimony.hpp"

namespace veritas {

AidsReport aids_report() {
    AidsReport r{};
    const double prevalence = 1.0 / 400.0;
    r.prior_odds = odds_from_prob(prevalence);
    r.prior_jl = jl_from_odds(r.prior_odds);
    const BayesFactor pos = BayesFactor::ratio(0.999, 0.002);
    const BayesFactor neg = BayesFactor::ratio(0.001, 0.998);
    r.bf_positive = pos.value();
    r.bf_negative = neg.value();
    r.delta_jl_positive = pos.weight();
    r.delta_jl_negative = neg.weight();
    const std::array<double, 1> dp{r.delta_jl_positive};
    const std::array<double, 1> dn{r.delta_jl_negative};
    r.posterior_jl_positive = accumulate_jl(r.prior_jl, dp);
    r.posterior_jl_negative = accumulate_jl(r.prior_jl, dn);
    r.posterior_prob_positive = posterior_prob(r.prior_odds, pos);
    r.posterior_prob_negative = posterior_prob(r.prior_odds, neg);
    const std::array<double, 2> two{r.delta_jl_positive, r.delta_jl_positive};
    r.positive_sequence_jl = {r.prior_jl, r.posterior_jl_positive, accumulate_jl(r.prior_jl, two)};
    r.two_positives_from_even = accumulate_jl(0.0, two);
    return r;
}

BoxReport box_report() {
    BoxReport r{};
    const BayesFactor white = BayesFactor::ratio(1.0, 1.0 / 13.0);
    r.one_white_odds = update_odds(1.0, white);
    r.one_white_probability = posterior_prob(1.0, white);
    r.two_whites_odds = update_odds(r.one_white_odds, white);
    r.two_whites_probability = posterior_prob(r.one_white_odds, white);
    r.skeptic_odds = update_odds(1.0 / 13.0, white);
    r.weight_of_white = white.weight();

    const auto witness = TestimonyChannel::symmetric(5.0 / 6.0);
    const HypothesisLikelihoods white_given_box{1.0, 1.0 / 13.0};
    const BayesFactor wt = effective_bayes_factor(witness, white_given_box);
    const BayesFactor bt = effective_bayes_factor(witness.opposite_report(), white_given_box);
    r.testimony_white_bf = wt.value();
    r.testimony_black_bf = bt.value();
    const std::array<double, 3> weights{wt.weight(), wt.weight(), bt.weight()};
    r.testimony_ww_b_jl = accumulate_jl(0.0, weights);
    r.testimony_ww_b_probability = prob_from_odds(odds_from_jl(r.testimony_ww_b_jl));
    return r;
}

ColumboReport columbo_report() {
    ColumboReport r{};
    const BayesFactor bf(13.0);
    r.bayes_factor = bf.value();
    r.delta_jl = bf.weight();
    for (const auto& [who, prior] : {std::pair{"Columbo", UncertainJL{2.5, 0.5}}, std::pair{"jury", UncertainJL{-1.5, 0.5}}}) {
        const std::array<UncertainJL, 2> terms{prior, UncertainJL::exact(r.delta_jl)};
        r.observers.push_back({who, prior, combine_uncertain_jl(terms)});
    }
    return r;
}

Json to_json(const AidsReport& r) {
    Json seq = Json::array();
    for (double v : r.positive_sequence_jl) seq.push_back(json_number(v));
    return Json{{"scenario", "aids"},
                {"prior", {{"odds", r.prior_odds}, {"jl", r.prior_jl}}},
                {"positive",
                 {{"bayes_factor", r.bf_positive},
                  {"delta_jl", r.delta_jl_positive},
                  {"posterior_jl", r.posterior_jl_positive},
                  {"posterior_probability", r.posterior_prob_positive}}},
                {"negative",
                 {{"bayes_factor", r.bf_negative},
                  {"delta_jl", r.delta_jl_negative},
                  {"posterior_jl", r.posterior_jl_negative},
                  {"posterior_probability", r.posterior_prob_negative}}},
                {"positive_sequence_jl", std::move(seq)},
                {"two_positives_from_even_jl", r.two_positives_from_even}};
}

Json to_json(const BoxReport& r) {
    return Json{{"scenario", "box"},
                {"one_white", {{"odds", r.one_white_odds}, {"probability", r.one_white_probability}}},
                {"two_whites", {{"odds", r.two_whites_odds}, {"probability", r.two_whites_probability}}},
                {"skeptic_prior_one_white_odds", r.skeptic_odds},
                {"weight_of_white", r.weight_of_white},
                {"testimony",
                 {{"white_report_bayes_factor", r.testimony_white_bf},
                  {"black_report_bayes_factor", r.testimony_black_bf},
                  {"reports_w_w_b_jl", r.testimony_ww_b_jl},
                  {"reports_w_w_b_probability", r.testimony_ww_b_probability}}}};
}

Json to_json(const ColumboReport& r) {
    Json observers = Json::array();
    for (const auto& o : r.observers) {
        observers.push_back(Json{{"observer", o.observer},
                                 {"prior", {{"mean", o.prior.mean}, {"sd", o.prior.sd}}},
                                 {"posterior", {{"mean", o.posterior.mean}, {"sd", o.posterior.sd}}}});
    }
    return Json{{"scenario", "columbo"},
                {"bayes_factor", r.bayes_factor},
                {"delta_jl", r.delta_jl},
                {"observers", std::move(observers)}};
}

std::vector<std::string> scenario_names() { return {"aids", "box", "columbo"}; }

Json scenario_report(std::string_view name) {
    if (name == "aids") return to_json(aids_report());
    if (name == "box") return to_json(box_report());
    if (name == "columbo") return to_json(columbo_report());
    throw NotFoundError("unknown scenario '" + std::string(name) + "'");
}

}  // namespace veritas
