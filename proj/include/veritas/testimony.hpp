#pragma once
// Evidence reported by a possibly unreliable witness.
//
// A channel is the 2x2 row-stochastic matrix of report probabilities given the
// true state of E. Its two free entries are P(E_T|E) and P(E_T|not E), which
// may be set independently, so asymmetric witnesses are representable.

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "veritas/evidence.hpp"
#include "veritas/rational.hpp"

namespace veritas {

class TestimonyChannel {
public:
    /// Both probabilities in [0,1]; throws DomainError otherwise.
    TestimonyChannel(double p_report_given_true, double p_report_given_false);

    /// Reports the truth with probability p_truth and the opposite otherwise.
    static TestimonyChannel symmetric(double p_truth);

    double p_report_given_true() const noexcept { return report_true_; }
    double p_report_given_false() const noexcept { return report_false_; }

    /// Channel for the opposite report (E is said to be false).
    TestimonyChannel opposite_report() const;

    /// lambda = P(E_T|not E) / P(E_T|E); +inf when P(E_T|E) = 0 < P(E_T|not E).
    double lie_factor() const;
    double j_lambda() const;

private:
    double report_true_;
    double report_false_;
};

struct HypothesisLikelihoods {
    double p_e_given_h;
    double p_e_given_hbar;

    /// P(E|H)/P(E|not H) with the undefined 0/0 state.
    BayesFactor ideal_bayes_factor() const;
};

/// Numerator and denominator of the effective factor, in any field (double or Rational).
template <class T>
std::pair<T, T> effective_bf_terms(const T& report_given_true, const T& report_given_false, const T& p_e_given_h,
                                   const T& p_e_given_hbar) {
    const T one(1);
    T numerator = report_given_true * p_e_given_h + report_given_false * (one - p_e_given_h);
    T denominator = report_given_true * p_e_given_hbar + report_given_false * (one - p_e_given_hbar);
    return {numerator, denominator};
}

/// P(E_T|H) / P(E_T|not H). 0/0 throws UndefinedEvidenceError; x/0 with x > 0 is +inf.
BayesFactor effective_bayes_factor(const TestimonyChannel& channel, const HypothesisLikelihoods& likelihoods);

/// Same quantity in exact arithmetic. Throws UndefinedEvidenceError when the denominator vanishes.
Rational effective_bayes_factor_exact(const Rational& report_given_true, const Rational& report_given_false,
                                      const Rational& p_e_given_h, const Rational& p_e_given_hbar);

/// log10 of the effective factor, computed through log1p so that weights near zero keep
/// their relative precision.
double effective_weight(const TestimonyChannel& channel, const HypothesisLikelihoods& likelihoods);

/// Factored form ideal * [1 + lambda (1/P(E|H) - 1)] / [1 + lambda (ideal/P(E|H) - 1)].
/// Requires 0 < P(E|H) <= 1 and a positive finite ideal factor.
BayesFactor effective_bf_factored(double ideal_bf, double p_e_given_h, double lambda);

/// Closed forms when exactly one of P(E|H), P(E|not H) vanishes:
///   P(E|H) = 0:      1 / [P(not E|not H) + P(E|not H)/lambda]
///   P(E|not H) = 0:  P(E|H)/lambda + P(not E|H)
BayesFactor effective_bf_degenerate(const TestimonyChannel& channel, const HypothesisLikelihoods& likelihoods);

/// Weight of a reported evidence from logarithmic inputs:
///   delta_jl_e   ideal weight log10[P(E|H)/P(E|not H)]
///   j_lambda     log10 of the lie factor (-inf for a faithful witness)
///   jl_e_given_h log10 of the odds of E under H
/// Throws DomainError when the implied P(E|not H) exceeds 1.
double testimony_weight(double delta_jl_e, double j_lambda, double jl_e_given_h);

struct TestimonyTable {
    double delta_jl_e;
    std::vector<double> jl_e_given_h;  // columns
    std::vector<double> j_lambda;      // rows; the first row is -inf
    std::vector<std::vector<double>> cells;

    std::string cell_display(std::size_t row, std::size_t col) const;
};

/// Rows -inf, -(ceil(d)+2) ... -1 (plus -0.5 for d < 2), 0; columns 10, 3, 2, 1, 0, -1, -3, -10.
TestimonyTable testimony_weight_table(double delta_jl_e);

}  // namespace veritas
