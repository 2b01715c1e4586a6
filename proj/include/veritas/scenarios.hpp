#pragma once
// Worked examples: the two-box game, a screening test, and two observers with very
// different priors facing the same Bayes factor.

#include <string>
#include <string_view>
#include <vector>

#include "veritas/evidence.hpp"
#include "veritas/json_util.hpp"

namespace veritas {

struct AidsReport {
    double prior_odds;       // 1/399
    double prior_jl;
    double bf_positive;      // 99.9 / 0.2
    double bf_negative;      // 0.1 / 99.8
    double delta_jl_positive;
    double delta_jl_negative;
    double posterior_jl_positive;
    double posterior_jl_negative;
    double posterior_prob_positive;
    double posterior_prob_negative;
    /// Leanings after 0, 1 and 2 independent positive tests.
    std::vector<double> positive_sequence_jl;
    /// Two positives starting from an undecided JL of 0.
    double two_positives_from_even;
};

AidsReport aids_report();

struct BoxReport {
    double one_white_odds;        // prior 1, BF 13
    double one_white_probability;
    double two_whites_odds;       // prior 13, BF 13
    double two_whites_probability;
    double skeptic_odds;          // prior 1/13, BF 13
    double weight_of_white;       // log10 13
    double testimony_white_bf;    // 65/17
    double testimony_black_bf;    // 13/61
    double testimony_ww_b_jl;     // 2 w(W_T) + w(B_T)
    double testimony_ww_b_probability;
};

BoxReport box_report();

struct ObserverReport {
    std::string observer;
    UncertainJL prior;
    UncertainJL posterior;
};

struct ColumboReport {
    double bayes_factor;
    double delta_jl;
    std::vector<ObserverReport> observers;
};

ColumboReport columbo_report();

Json to_json(const AidsReport& r);
Json to_json(const BoxReport& r);
Json to_json(const ColumboReport& r);

std::vector<std::string> scenario_names();
/// "aids", "box" or "columbo"; throws NotFoundError otherwise.
Json scenario_report(std::string_view name);

}  // namespace veritas
