#include "veritas/evidence.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "veritas/display.hpp"
#include "veritas/error.hpp"

namespace veritas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
    }
}

void require_nonnegative(double x, const char* what) {
    if (!(x >= 0.0)) {
        throw DomainError(std::string(what) + " must be nonnegative, got " + std::to_string(x));
    }
}

}  // namespace

Belief Belief::from_probability(double p) {
    require_probability(p, "probability");
    return Belief(p);
}

Belief Belief::from_odds(double odds) { return Belief(prob_from_odds(odds)); }

Belief Belief::from_jl(double jl) { return Belief(prob_from_odds(odds_from_jl(jl))); }

double Belief::odds() const { return odds_from_prob(p_); }

double Belief::jl() const { return jl_from_odds(odds()); }

BayesFactor::BayesFactor(double value) : value_(value), undefined_(false) {
    require_nonnegative(value, "Bayes factor");
}

BayesFactor BayesFactor::ratio(double numerator, double denominator) {
    require_nonnegative(numerator, "Bayes factor numerator");
    require_nonnegative(denominator, "Bayes factor denominator");
    if (numerator == 0.0 && denominator == 0.0) return undefined();
    if (std::isinf(numerator) && std::isinf(denominator)) return undefined();
    if (denominator == 0.0) return BayesFactor(kInf);
    return BayesFactor(numerator / denominator);
}

BayesFactor BayesFactor::from_weight(double delta_jl) {
    if (std::isnan(delta_jl)) throw DomainError("weight of evidence is NaN");
    return BayesFactor(odds_from_jl(delta_jl));
}

double BayesFactor::value() const {
    if (undefined_) {
        throw UndefinedEvidenceError(
            "Bayes factor is 0/0: neither hypothesis can produce the evidence; look for other hypotheses");
    }
    return value_;
}

double BayesFactor::weight() const { return jl_from_odds(value()); }

bool BayesFactor::falsifies_denominator() const noexcept { return !undefined_ && std::isinf(value_); }

double odds_from_prob(double p) {
    require_probability(p, "probability");
    if (p == 1.0) return kInf;
    return p / (1.0 - p);
}

double prob_from_odds(double odds) {
    require_nonnegative(odds, "odds");
    if (std::isinf(odds)) return 1.0;
    return odds / (1.0 + odds);
}

double jl_from_odds(double odds) {
    require_nonnegative(odds, "odds");
    return std::log10(odds);  // log10(0) = -inf, log10(inf) = +inf
}

double odds_from_jl(double jl) {
    if (std::isnan(jl)) throw DomainError("judgement leaning is NaN");
    return std::pow(10.0, jl);
}

double update_odds(double prior_odds, const BayesFactor& bf) {
    require_nonnegative(prior_odds, "prior odds");
    const double b = bf.value();
    if ((b == 0.0 && std::isinf(prior_odds)) || (std::isinf(b) && prior_odds == 0.0)) {
        throw UndefinedEvidenceError("evidence falsifies both hypotheses (0 x inf); look for other hypotheses");
    }
    return b * prior_odds;
}

double posterior_prob(double prior_odds, const BayesFactor& bf) {
    if (prior_odds == 0.0 && !bf.is_undefined() && bf.value() == 0.0) {
        throw UndefinedEvidenceError("zero prior odds and zero Bayes factor; look for other hypotheses");
    }
    const double posterior = update_odds(prior_odds, bf);
    if (std::isinf(posterior)) return 1.0;
    return posterior / (1.0 + posterior);
}

BayesFactor combine_bayes_factors(std::span<const BayesFactor> factors) {
    bool has_zero = false;
    bool has_inf = false;
    double product = 1.0;
    for (const auto& f : factors) {
        const double v = f.value();
        has_zero = has_zero || v == 0.0;
        has_inf = has_inf || std::isinf(v);
        product *= v;
    }
    if (has_zero && has_inf) return BayesFactor::undefined();
    return BayesFactor(product);
}

double accumulate_jl(double prior_jl, std::span<const double> deltas) {
    bool pos_inf = false;
    bool neg_inf = false;
    double sum = 0.0;
    auto add = [&](double x) {
        if (std::isnan(x)) throw DomainError("judgement leaning term is NaN");
        if (std::isinf(x)) (x > 0 ? pos_inf : neg_inf) = true;
        else sum += x;
    };
    add(prior_jl);
    for (double d : deltas) add(d);
    if (pos_inf && neg_inf) {
        throw UndefinedEvidenceError("leanings of +inf and -inf cannot be combined; look for other hypotheses");
    }
    if (pos_inf) return kInf;
    if (neg_inf) return -kInf;
    return sum;
}

std::vector<JlTableRow> jl_reference_table() {
    std::vector<JlTableRow> rows;
    for (int tenths = -20; tenths <= 20; ++tenths) {
        const double jl = tenths / 10.0;
        const double odds = odds_from_jl(jl);
        const double percent = 100.0 * prob_from_odds(odds);
        // Above ~92% two significant figures stop separating rows, so one decimal is shown.
        const std::string p_display = percent >= 92.0 ? format_fixed(percent, 1) : format_significant(percent, 2);
        rows.push_back({jl, odds, percent, format_significant(odds, 2), p_display});
    }
    return rows;
}

UncertainJL UncertainJL::uniform(double lo, double hi) {
    if (!(hi >= lo)) throw DomainError("uniform leaning needs lo <= hi");
    return {(lo + hi) / 2.0, (hi - lo) / std::sqrt(12.0)};
}

UncertainJL combine_uncertain_jl(std::span<const UncertainJL> terms) {
    UncertainJL out;
    double variance = 0.0;
    for (const auto& t : terms) {
        require_nonnegative(t.sd, "standard uncertainty");
        out.mean += t.mean;
        variance += t.sd * t.sd;
    }
    out.sd = std::sqrt(variance);
    return out;
}

DiscreteWeight DiscreteWeight::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw DomainError("uniform weight needs lo <= hi");
    return {lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1), 1.0)};
}

DiscreteWeight convolve_weights(const DiscreteWeight& a, const DiscreteWeight& b) {
    for (double w : a.weights) require_nonnegative(w, "weight");
    for (double w : b.weights) require_nonnegative(w, "weight");
    if (a.weights.empty() || b.weights.empty()) return {a.first_offset + b.first_offset, {}};
    DiscreteWeight out{a.first_offset + b.first_offset,
                       std::vector<double>(a.weights.size() + b.weights.size() - 1, 0.0)};
    for (std::size_t i = 0; i < a.weights.size(); ++i)
        for (std::size_t j = 0; j < b.weights.size(); ++j) out.weights[i + j] += a.weights[i] * b.weights[j];
    return out;
}

ExpectedFrequency expected_frequency(double p, double n) {
    require_probability(p, "probability");
    require_nonnegative(n, "trial count");
    return {n * p, std::sqrt(n * p * (1.0 - p))};
}

std::vector<SweepPoint> sensitivity_sweep(double prior_jl_lo, double prior_jl_hi, std::size_t steps,
                                          const BayesFactor& bf) {
    if (steps == 0) return {};
    if (!(prior_jl_hi >= prior_jl_lo)) throw DomainError("sweep range needs lo <= hi");
    std::vector<SweepPoint> out;
    out.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
        const double prior_jl = prior_jl_lo + t * (prior_jl_hi - prior_jl_lo);
        const double posterior = update_odds(odds_from_jl(prior_jl), bf);
        out.push_back({prior_jl, jl_from_odds(posterior), prob_from_odds(posterior)});
    }
    return out;
}

}  // namespace veritas
