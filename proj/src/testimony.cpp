#include "veritas/testimony.hpp"

#include <cmath>

#include "veritas/display.hpp"
#include "veritas/error.hpp"

namespace veritas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + " must lie in [0,1]");
}

}  // namespace

TestimonyChannel::TestimonyChannel(double p_report_given_true, double p_report_given_false)
    : report_true_(p_report_given_true), report_false_(p_report_given_false) {
    require_probability(report_true_, "P(E_T|E)");
    require_probability(report_false_, "P(E_T|not E)");
}

TestimonyChannel TestimonyChannel::symmetric(double p_truth) { return {p_truth, 1.0 - p_truth}; }

TestimonyChannel TestimonyChannel::opposite_report() const { return {1.0 - report_true_, 1.0 - report_false_}; }

double TestimonyChannel::lie_factor() const {
    if (report_true_ == 0.0) {
        if (report_false_ == 0.0) throw UndefinedEvidenceError("lie factor 0/0: the report never occurs");
        return kInf;
    }
    return report_false_ / report_true_;
}

double TestimonyChannel::j_lambda() const { return std::log10(lie_factor()); }

BayesFactor HypothesisLikelihoods::ideal_bayes_factor() const {
    require_probability(p_e_given_h, "P(E|H)");
    require_probability(p_e_given_hbar, "P(E|not H)");
    return BayesFactor::ratio(p_e_given_h, p_e_given_hbar);
}

BayesFactor effective_bayes_factor(const TestimonyChannel& channel, const HypothesisLikelihoods& likelihoods) {
    require_probability(likelihoods.p_e_given_h, "P(E|H)");
    require_probability(likelihoods.p_e_given_hbar, "P(E|not H)");
    const auto [num, den] = effective_bf_terms(channel.p_report_given_true(), channel.p_report_given_false(),
                                               likelihoods.p_e_given_h, likelihoods.p_e_given_hbar);
    if (den == 0.0 && num == 0.0) {
        throw UndefinedEvidenceError("the reported evidence is impossible under both hypotheses");
    }
    return BayesFactor::ratio(num, den);
}

Rational effective_bayes_factor_exact(const Rational& report_given_true, const Rational& report_given_false,
                                      const Rational& p_e_given_h, const Rational& p_e_given_hbar) {
    const auto [num, den] = effective_bf_terms(report_given_true, report_given_false, p_e_given_h, p_e_given_hbar);
    if (den == 0) throw UndefinedEvidenceError("the reported evidence is impossible under the alternative");
    return num / den;
}

double effective_weight(const TestimonyChannel& channel, const HypothesisLikelihoods& likelihoods) {
    const double pt = channel.p_report_given_true();
    const double pf = channel.p_report_given_false();
    const double ph = likelihoods.p_e_given_h;
    const double phb = likelihoods.p_e_given_hbar;
    require_probability(ph, "P(E|H)");
    require_probability(phb, "P(E|not H)");
    const double den = pt * phb + pf * (1.0 - phb);
    if (den == 0.0) {
        const double num = pt * ph + pf * (1.0 - ph);
        if (num == 0.0) throw UndefinedEvidenceError("the reported evidence is impossible under both hypotheses");
        return kInf;
    }
    // BF - 1 = (pt - pf)(P(E|H) - P(E|not H)) / den
    const double excess = (pt - pf) * (ph - phb) / den;
    return std::log1p(excess) / std::log(10.0);
}

BayesFactor effective_bf_factored(double ideal_bf, double p_e_given_h, double lambda) {
    if (!(p_e_given_h > 0.0 && p_e_given_h <= 1.0)) {
        throw DomainError("factored form needs 0 < P(E|H) <= 1; use the degenerate forms");
    }
    if (!(ideal_bf > 0.0) || std::isinf(ideal_bf)) {
        throw DomainError("factored form needs a positive finite ideal Bayes factor; use the degenerate forms");
    }
    if (!(lambda >= 0.0)) throw DomainError("lie factor must be nonnegative");
    if (p_e_given_h / ideal_bf > 1.0) {
        throw DomainError("implied P(E|not H) exceeds 1");
    }
    if (std::isinf(lambda)) {
        // Only the opposite state can have produced the report.
        const double p_e_given_hbar = p_e_given_h / ideal_bf;
        return BayesFactor::ratio(1.0 - p_e_given_h, 1.0 - p_e_given_hbar);
    }
    const double num = 1.0 + lambda * (1.0 / p_e_given_h - 1.0);
    const double den = 1.0 + lambda * (ideal_bf / p_e_given_h - 1.0);
    return BayesFactor(ideal_bf * num / den);
}

BayesFactor effective_bf_degenerate(const TestimonyChannel& channel, const HypothesisLikelihoods& likelihoods) {
    const double ph = likelihoods.p_e_given_h;
    const double phb = likelihoods.p_e_given_hbar;
    require_probability(ph, "P(E|H)");
    require_probability(phb, "P(E|not H)");
    if ((ph == 0.0) == (phb == 0.0)) {
        throw DomainError("degenerate forms need exactly one of P(E|H), P(E|not H) equal to zero");
    }
    const double lambda = channel.lie_factor();
    if (ph == 0.0) {
        // 1 / [P(not E|not H) + P(E|not H)/lambda]
        const double scaled = lambda == 0.0 ? kInf : phb / lambda;
        return BayesFactor(1.0 / ((1.0 - phb) + scaled));
    }
    // P(E|H)/lambda + P(not E|H)
    if (lambda == 0.0) return BayesFactor(kInf);
    return BayesFactor(ph / lambda + (1.0 - ph));
}

double testimony_weight(double delta_jl_e, double j_lambda, double jl_e_given_h) {
    if (std::isnan(delta_jl_e) || std::isnan(j_lambda) || std::isnan(jl_e_given_h)) {
        throw DomainError("testimony weight inputs must not be NaN");
    }
    const double p_e_given_h = prob_from_odds(odds_from_jl(jl_e_given_h));
    const double p_e_given_hbar = p_e_given_h / odds_from_jl(delta_jl_e);
    if (p_e_given_hbar > 1.0) {
        throw DomainError("inconsistent parameters: implied P(E|not H) = " + std::to_string(p_e_given_hbar) +
                          " exceeds 1");
    }
    if (j_lambda == -kInf) {
        // Faithful witness: the report is the evidence itself.
        if (p_e_given_h == 0.0) return 0.0;  // limit P(E|H) -> 0 at fixed ideal factor
        return delta_jl_e;
    }
    if (p_e_given_h == 0.0) return 0.0;
    const double lambda = odds_from_jl(j_lambda);
    const TestimonyChannel channel = std::isinf(lambda) ? TestimonyChannel(0.0, 1.0)
                                     : lambda <= 1.0    ? TestimonyChannel(1.0, lambda)
                                                        : TestimonyChannel(1.0 / lambda, 1.0);
    return effective_weight(channel, {p_e_given_h, p_e_given_hbar});
}

std::string TestimonyTable::cell_display(std::size_t row, std::size_t col) const {
    const double v = cells.at(row).at(col);
    if (v == 0.0) return "0";
    if (std::fabs(v) >= 0.005) return format_fixed(v, 2);
    // the column for very improbable evidence stays in scientific notation
    if (std::fabs(v) >= 0.001 && jl_e_given_h.at(col) > -10) return format_significant(v, 1);
    return format_scientific(v, 1);
}

TestimonyTable testimony_weight_table(double delta_jl_e) {
    if (!(delta_jl_e > 0.0) || std::isinf(delta_jl_e)) {
        throw DomainError("table needs a positive finite ideal weight of evidence");
    }
    TestimonyTable table;
    table.delta_jl_e = delta_jl_e;
    table.jl_e_given_h = {10, 3, 2, 1, 0, -1, -3, -10};
    table.j_lambda.push_back(-kInf);
    const int deepest = static_cast<int>(std::ceil(delta_jl_e)) + 2;
    for (int j = -deepest; j <= -1; ++j) table.j_lambda.push_back(j);
    if (delta_jl_e < 2.0) table.j_lambda.push_back(-0.5);
    table.j_lambda.push_back(0.0);
    for (double jl : table.j_lambda) {
        std::vector<double> row;
        for (double col : table.jl_e_given_h) row.push_back(testimony_weight(delta_jl_e, jl, col));
        table.cells.push_back(std::move(row));
    }
    return table;
}

}  // namespace veritas
