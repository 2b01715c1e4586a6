#pragma once
// Probabilities, odds, Bayes factors and judgement leanings (base-10 log-odds).
//
// Odds are plain doubles in [0, +inf]. A Bayes factor additionally carries an
// "undefined" state for the 0/0 ratio, which is never silently turned into NaN.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace veritas {

/// One degree of belief seen as probability, odds or judgement leaning.
class Belief {
public:
    static Belief from_probability(double p);
    static Belief from_odds(double odds);
    static Belief from_jl(double jl);

    double probability() const noexcept { return p_; }
    double odds() const;
    double jl() const;

private:
    explicit Belief(double p) : p_(p) {}
    double p_;
};

class BayesFactor {
public:
    /// Throws DomainError for negative or NaN values.
    explicit BayesFactor(double value);

    /// numerator/denominator, with 0/0 mapped to the undefined state and x/0 to +inf.
    static BayesFactor ratio(double numerator, double denominator);
    static BayesFactor undefined() noexcept { return BayesFactor(); }
    static BayesFactor from_weight(double delta_jl);

    bool is_undefined() const noexcept { return undefined_; }
    /// Throws UndefinedEvidenceError when undefined.
    double value() const;
    /// Weight of evidence, log10 of the factor.
    double weight() const;

    bool falsifies_numerator() const noexcept { return !undefined_ && value_ == 0.0; }
    bool falsifies_denominator() const noexcept;

private:
    BayesFactor() : value_(0.0), undefined_(true) {}
    double value_;
    bool undefined_;
};

double odds_from_prob(double p);
double prob_from_odds(double odds);
double jl_from_odds(double odds);
double odds_from_jl(double jl);

/// posterior odds = bf * prior; bf = 0 falsifies, bf = +inf with prior > 0 gives +inf.
double update_odds(double prior_odds, const BayesFactor& bf);

/// b*x0 / (1 + b*x0), evaluated so that the infinite cases stay exact. x0 = b = 0 is undefined.
double posterior_prob(double prior_odds, const BayesFactor& bf);

/// Product of independent factors. An empty list gives 1; 0 together with +inf is undefined.
BayesFactor combine_bayes_factors(std::span<const BayesFactor> factors);

/// prior + sum(deltas). At most one infinite term; +inf and -inf together is undefined.
double accumulate_jl(double prior_jl, std::span<const double> deltas);

struct JlTableRow {
    double jl;
    double odds;
    double probability_percent;
    std::string odds_display;
    std::string probability_display;
};

/// Rows for jl = -2.0, -1.9, ..., +2.0 with odds at two significant figures.
std::vector<JlTableRow> jl_reference_table();

/// A leaning with its standard uncertainty.
struct UncertainJL {
    double mean = 0.0;
    double sd = 0.0;

    /// Half-width of the central 95% range under a Gaussian approximation.
    double half_width_95() const noexcept { return 1.96 * sd; }

    static UncertainJL exact(double value) { return {value, 0.0}; }
    /// A leaning believed uniformly anywhere in [lo, hi].
    static UncertainJL uniform(double lo, double hi);
};

UncertainJL combine_uncertain_jl(std::span<const UncertainJL> terms);

/// Nonnegative weights over the contiguous integer support first_offset, first_offset+1, ...
struct DiscreteWeight {
    std::int64_t first_offset = 0;
    std::vector<double> weights;

    std::int64_t last_offset() const noexcept {
        return first_offset + static_cast<std::int64_t>(weights.size()) - 1;
    }
    static DiscreteWeight uniform(std::int64_t lo, std::int64_t hi);
    static DiscreteWeight delta(std::int64_t at) { return {at, {1.0}}; }

    bool operator==(const DiscreteWeight&) const = default;
};

DiscreteWeight convolve_weights(const DiscreteWeight& a, const DiscreteWeight& b);

struct ExpectedFrequency {
    double expected;
    double sd;
};

/// Binomial expectation n*p with standard deviation sqrt(n p (1-p)).
ExpectedFrequency expected_frequency(double p, double n);

struct SweepPoint {
    double prior_jl;
    double posterior_jl;
    double posterior_probability;
};

/// Posterior leaning for `steps` prior leanings evenly spaced over [lo, hi].
std::vector<SweepPoint> sensitivity_sweep(double prior_jl_lo, double prior_jl_hi, std::size_t steps,
                                          const BayesFactor& bf);

}  // namespace veritas
