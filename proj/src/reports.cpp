#include "veritas/reports.hpp"

#include <cmath>

#include "veritas/error.hpp"

namespace veritas {

Json belief_json(double odds) {
    return Json{{"odds", json_number(odds)},
                {"probability", json_number(prob_from_odds(odds))},
                {"jl", json_number(jl_from_odds(odds))}};
}

Json jl_table_json() {
    Json rows = Json::array();
    for (const auto& r : jl_reference_table()) {
        rows.push_back(Json{{"jl", r.jl},
                            {"odds", r.odds},
                            {"probability_percent", r.probability_percent},
                            {"odds_display", r.odds_display},
                            {"probability_display", r.probability_display}});
    }
    return Json{{"rows", std::move(rows)}};
}

Json uncertain_jl_json(const UncertainJL& value) {
    return Json{{"mean", value.mean}, {"sd", value.sd}, {"half_width_95", value.half_width_95()}};
}

Json weights_json(const DiscreteWeight& w) {
    Json support = Json::array();
    for (std::int64_t k = w.first_offset; k <= w.last_offset(); ++k) support.push_back(k);
    return Json{{"first", w.first_offset}, {"support", std::move(support)}, {"weights", w.weights}};
}

DiscreteWeight weights_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("weights") || !doc["weights"].is_array()) {
        throw ValidationError("bad_weights", "", "expected {\"first\": int, \"weights\": [num]}");
    }
    DiscreteWeight w;
    w.first_offset = doc.value("first", std::int64_t{0});
    for (const auto& v : doc["weights"]) w.weights.push_back(number_from_json(v));
    return w;
}

Json testimony_table_json(const TestimonyTable& table) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < table.j_lambda.size(); ++r) {
        Json cells = Json::array();
        Json display = Json::array();
        for (std::size_t c = 0; c < table.jl_e_given_h.size(); ++c) {
            cells.push_back(json_number(table.cells[r][c]));
            display.push_back(table.cell_display(r, c));
        }
        rows.push_back(Json{{"j_lambda", json_number(table.j_lambda[r])},
                            {"cells", std::move(cells)},
                            {"display", std::move(display)}});
    }
    return Json{{"delta_jl_e", table.delta_jl_e}, {"jl_e_given_h", table.jl_e_given_h}, {"rows", std::move(rows)}};
}

GaussianPair gaussian_pair_from_json(const Json& doc) {
    GaussianPair g;
    if (doc.is_object()) {
        g.mu1 = doc.value("mu1", g.mu1);
        g.sigma1 = doc.value("sigma1", g.sigma1);
        g.mu2 = doc.value("mu2", g.mu2);
        g.sigma2 = doc.value("sigma2", g.sigma2);
    }
    g.validate();
    return g;
}

Json gaussian_pair_json(const GaussianPair& g) {
    return Json{{"mu1", g.mu1}, {"sigma1", g.sigma1}, {"mu2", g.mu2}, {"sigma2", g.sigma2}};
}

Json evidence_table_json(const GaussianPair& g, int lo, int hi) {
    Json rows = Json::array();
    for (const auto& r : integer_evidence_table(g, lo, hi)) {
        rows.push_back(Json{{"x", r.x},
                            {"bayes_factor", r.bayes_factor},
                            {"delta_jl", r.delta_jl},
                            {"bayes_factor_display", r.bayes_factor_display},
                            {"delta_jl_display", r.delta_jl_display}});
    }
    Json crossings = Json::array();
    for (double x : crossing_points(g)) crossings.push_back(x);
    Json out{{"generators", gaussian_pair_json(g)}, {"rows", std::move(rows)}, {"crossing_points", std::move(crossings)}};
    if (const auto ext = delta_jl_extremum(g)) out["extremum"] = Json{{"x", ext->x}, {"delta_jl", ext->delta_jl}};
    return out;
}

Json walk_statistics_json(const GaussianPair& g, std::size_t n) {
    Json out{{"generators", gaussian_pair_json(g)}, {"n", n}};
    for (Generator truth : {Generator::H1, Generator::H2}) {
        const DrawMoments one = draw_moments(g, truth);
        const DrawMoments many = one.scaled(n);
        out[to_string(truth)] = Json{{"per_draw",
                                      {{"mean", one.mean},
                                       {"sd", one.sd},
                                       {"relative_uncertainty", json_number(one.relative_uncertainty())}}},
                                     {"n_draws",
                                      {{"mean", many.mean},
                                       {"sd", many.sd},
                                       {"relative_uncertainty", json_number(many.relative_uncertainty())}}}};
    }
    return out;
}

Json walks_json(const WalkResult& walks, bool include_trajectories) {
    Json bands = Json::array();
    for (const auto& b : walk_bands(walks)) {
        bands.push_back(Json{{"step", b.step},
                             {"mean", b.mean},
                             {"sd", b.sd},
                             {"one_sigma", {b.mean - b.sd, b.mean + b.sd}},
                             {"two_sigma", {b.mean - 2 * b.sd, b.mean + 2 * b.sd}}});
    }
    Json out{{"generators", gaussian_pair_json(walks.pair)},
             {"truth", to_string(walks.truth)},
             {"seed", walks.seed},
             {"n_draws", walks.n_draws},
             {"n_traj", walks.trajectories.size()},
             {"bands", std::move(bands)}};
    if (!out["bands"].empty()) {
        const Json& last = out["bands"].back();
        out["final"] = Json{{"mean", last["mean"]}, {"sd", last["sd"]}};
    }
    if (include_trajectories) out["trajectories"] = walks.trajectories;
    return out;
}

Json propagation_json(const PropagationStats& stats, bool include_histogram) {
    Json out{{"n_samples", stats.n_samples},
             {"mean", stats.mean},
             {"sd", stats.sd},
             {"median", stats.median},
             {"modal_interval",
              {{"center", stats.modal_interval.center},
               {"width", stats.modal_interval.width},
               {"mass", stats.modal_interval.mass}}}};
    if (include_histogram) {
        out["histogram"] = Json{{"edges", stats.histogram.edges}, {"masses", stats.histogram.masses}};
    }
    return out;
}

}  // namespace veritas
