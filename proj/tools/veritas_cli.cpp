// veritas command-line front end. Talks to the engine only through the C API.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "veritas/veritas.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kValidation = 3, kImpossible = 4, kNumeric = 5 };

struct Options {
    std::string format = "json";
    int digits = 4;
};

Options g_opts;

// Carries a failed C API call up to main.
struct ApiFailure {
    veritas_status status;
};

struct UsageFailure {
    std::string message;
};

int exit_code(veritas_status s) {
    switch (s) {
        case VERITAS_OK: return kOk;
        case VERITAS_E_IMPOSSIBLE: return kImpossible;
        case VERITAS_E_NUMERIC: return kNumeric;
        case VERITAS_E_DOMAIN:
        case VERITAS_E_UNDEFINED:
        case VERITAS_E_VALIDATION:
        case VERITAS_E_NOT_FOUND:
        case VERITAS_E_ARGUMENT: return kValidation;
        default: return kFailure;
    }
}

void check(veritas_status s) {
    if (s != VERITAS_OK) throw ApiFailure{s};
}

// Owns a string handed out by the library.
class OwnedString {
public:
    OwnedString() = default;
    OwnedString(const OwnedString&) = delete;
    OwnedString& operator=(const OwnedString&) = delete;
    ~OwnedString() { veritas_string_free(p_); }
    char** out() { return &p_; }
    std::string str() const { return p_ ? p_ : ""; }
    Json json() const { return Json::parse(str()); }

private:
    char* p_ = nullptr;
};

class NetworkHandle {
public:
    NetworkHandle() = default;
    NetworkHandle(const NetworkHandle&) = delete;
    NetworkHandle& operator=(const NetworkHandle&) = delete;
    ~NetworkHandle() { veritas_network_free(p_); }
    veritas_network** out() { return &p_; }
    const veritas_network* get() const { return p_; }

private:
    veritas_network* p_ = nullptr;
};

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO); }

std::string fmt(double v) {
    OwnedString s;
    check(veritas_format_significant(v, g_opts.digits, s.out()));
    return s.str();
}

std::string cell(const Json& v) {
    if (v.is_number()) return fmt(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    if (v.is_array()) {
        std::string out;
        for (const auto& item : v) out += (out.empty() ? "" : " ") + cell(item);
        return out;
    }
    return v.dump();
}

void print_rows(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
        if (width.size() < r.size()) width.resize(r.size(), 0);
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        std::cout << line << '\n';
    }
}

bool flat_object(const Json& v) {
    if (!v.is_object()) return false;
    for (const auto& item : v) {
        if (item.is_object()) return false;
        if (item.is_array()) {
            for (const auto& x : item) {
                if (x.is_structured()) return false;
            }
        }
    }
    return true;
}

// Generic table rendering: scalars as "key value", arrays of flat objects as columns.
void render(const Json& v, const std::string& prefix, std::vector<std::vector<std::string>>& scalars) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            render(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), scalars);
        }
        return;
    }
    if (v.is_array() && !v.empty() && flat_object(v.front())) {
        print_rows(scalars);
        scalars.clear();
        std::cout << '\n' << prefix << '\n';
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> header;
        for (auto it = v.front().begin(); it != v.front().end(); ++it) header.push_back(it.key());
        rows.push_back(header);
        for (const auto& item : v) {
            std::vector<std::string> row;
            for (const auto& key : header) row.push_back(item.contains(key) ? cell(item[key]) : "-");
            rows.push_back(std::move(row));
        }
        print_rows(rows);
        std::cout << '\n';
        return;
    }
    if (v.is_array() && !v.empty() && v.front().is_array()) {
        scalars.push_back({prefix, "[" + std::to_string(v.size()) + " rows]"});
        return;
    }
    scalars.push_back({prefix, cell(v)});
}

void render_generic(const Json& doc) {
    std::vector<std::vector<std::string>> scalars;
    render(doc, "", scalars);
    print_rows(scalars);
}

void render_testimony_table(const Json& doc) {
    std::cout << "delta JL(E) = " << fmt(doc["delta_jl_e"].get<double>()) << "\n";
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"J_lambda \\ JL_E(H)"};
    for (const auto& c : doc["jl_e_given_h"]) header.push_back(cell(c));
    rows.push_back(header);
    for (const auto& r : doc["rows"]) {
        std::vector<std::string> row{cell(r["j_lambda"])};
        for (const auto& d : r["display"]) row.push_back(d.get<std::string>());
        rows.push_back(std::move(row));
    }
    print_rows(rows);
}

void render_jl_table(const Json& doc) {
    std::vector<std::vector<std::string>> rows{{"JL", "odds", "P (%)"}};
    char buf[16];
    for (const auto& r : doc["rows"]) {
        std::snprintf(buf, sizeof buf, "%+.1f", r["jl"].get<double>());
        rows.push_back({buf, r["odds_display"], r["probability_display"]});
    }
    print_rows(rows);
}

void render_posterior(const Json& doc) {
    std::vector<std::vector<std::string>> rows{{"node", "state", "probability"}};
    for (auto n = doc["marginals"].begin(); n != doc["marginals"].end(); ++n) {
        for (auto s = n.value().begin(); s != n.value().end(); ++s) {
            const Json& p = s.value();
            rows.push_back({n.key(), s.key(), p.is_object() ? p["exact"].get<std::string>() + "  " + cell(p["value"])
                                                            : cell(p)});
        }
    }
    std::cout << "evidence probability " << cell(doc["evidence_probability"]) << "\n\n";
    print_rows(rows);
    if (doc.contains("target")) {
        const Json& t = doc["target"];
        std::cout << "\nJL " << t["node"].get<std::string>() << " " << t["numerator"].get<std::string>() << ":"
                  << t["denominator"].get<std::string>() << " = " << cell(t["jl"]);
        if (!t["falsified"].is_null()) std::cout << "  (" << t["falsified"].get<std::string>() << " falsified)";
        std::cout << '\n';
        std::vector<std::vector<std::string>> ledger{{"finding", "delta JL", "JL"}};
        for (const auto& e : t["ledger"]) {
            ledger.push_back({e["finding"].is_null() ? "prior" : e["finding"].get<std::string>(), cell(e["delta_jl"]),
                              cell(e["jl"])});
        }
        print_rows(ledger);
    }
}

enum class View { Generic, TestimonyTable, JlTable, Posterior };

void output(const Json& doc, View view = View::Generic) {
    if (g_opts.format == "json") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    switch (view) {
        case View::TestimonyTable: render_testimony_table(doc); break;
        case View::JlTable: render_jl_table(doc); break;
        case View::Posterior: render_posterior(doc); break;
        case View::Generic: render_generic(doc); break;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageFailure{"cannot read '" + path + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw UsageFailure{"cannot write '" + path + "'"};
    out << content;
}

double parse_number(const std::string& text) {
    if (text == "inf" || text == "+inf") return HUGE_VAL;
    if (text == "-inf") return -HUGE_VAL;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) throw UsageFailure{"not a number: '" + text + "'"};
    return v;
}

// Splits "a:b" (or "a,b,...") into numbers.
std::vector<double> parse_list(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(parse_number(item));
    return out;
}

// ---------------------------------------------------------------- verbs

struct UpdateArgs {
    std::optional<double> prior_odds, prior_prob, prior_jl, bf, djl;
};

void cmd_update(const UpdateArgs& a) {
    const int priors = a.prior_odds.has_value() + a.prior_prob.has_value() + a.prior_jl.has_value();
    if (priors != 1) throw UsageFailure{"give exactly one of --prior-odds, --prior-prob, --prior-jl"};
    if (a.bf.has_value() == a.djl.has_value()) throw UsageFailure{"give exactly one of --bf, --djl"};
    double prior = 0.0;
    if (a.prior_odds) prior = *a.prior_odds;
    if (a.prior_prob) check(veritas_odds_from_prob(*a.prior_prob, &prior));
    if (a.prior_jl) check(veritas_odds_from_jl(*a.prior_jl, &prior));
    double bf = 0.0;
    if (a.bf) bf = *a.bf;
    if (a.djl) check(veritas_odds_from_jl(*a.djl, &bf));
    OwnedString out;
    check(veritas_update_report(prior, bf, out.out()));
    output(out.json());
}

struct CombineArgs {
    std::vector<double> bfs;
    std::vector<std::string> terms, uniforms, weights;
    std::vector<double> exact, deltas;
    std::optional<double> prior_jl;
    std::size_t repeat = 1;
};

void cmd_combine(const CombineArgs& a) {
    const bool uncertain = !a.terms.empty() || !a.uniforms.empty() || !a.exact.empty();
    const int modes = !a.bfs.empty() + uncertain + !a.weights.empty() + (a.prior_jl.has_value() || !a.deltas.empty());
    if (modes != 1) {
        throw UsageFailure{"choose one of: --bf ...; --term/--uniform/--exact ...; --weights ...; --prior-jl with --djl"};
    }
    OwnedString out;
    if (!a.bfs.empty()) {
        check(veritas_combine_bayes_factors(a.bfs.data(), a.bfs.size(), out.out()));
    } else if (uncertain) {
        Json terms = Json::array();
        for (const auto& t : a.terms) {
            const auto v = parse_list(t, ':');
            if (v.size() != 2) throw UsageFailure{"--term expects mean:sd"};
            terms.push_back(Json{{"mean", v[0]}, {"sd", v[1]}});
        }
        for (const auto& u : a.uniforms) {
            const auto v = parse_list(u, ':');
            if (v.size() != 2) throw UsageFailure{"--uniform expects lo:hi"};
            terms.push_back(Json{{"lo", v[0]}, {"hi", v[1]}});
        }
        for (double x : a.exact) terms.push_back(Json{{"value", x}});
        check(veritas_combine_uncertain(Json{{"terms", terms}, {"repeat", a.repeat}}.dump().c_str(), out.out()));
    } else if (!a.weights.empty()) {
        Json list = Json::array();
        for (const auto& w : a.weights) {
            const auto colon = w.find(':');
            if (colon == std::string::npos) throw UsageFailure{"--weights expects first:w1,w2,..."};
            const double first = parse_number(w.substr(0, colon));
            list.push_back(Json{{"first", static_cast<long long>(first)}, {"weights", parse_list(w.substr(colon + 1), ',')}});
        }
        check(veritas_convolve(Json{{"weights", list}}.dump().c_str(), out.out()));
    } else {
        double jl = 0.0;
        check(veritas_accumulate_jl(a.prior_jl.value_or(0.0), a.deltas.data(), a.deltas.size(), &jl));
        output(Json{{"prior_jl", a.prior_jl.value_or(0.0)}, {"deltas", a.deltas}, {"jl", jl}});
        return;
    }
    output(out.json());
}

struct TestimonyArgs {
    std::string p_truth, p_true, p_false, p_e_h, p_e_hbar;
    double djl = 0.0, j_lambda = 0.0, jl_e_h = 0.0;
};

void cmd_testimony_bf(const TestimonyArgs& a) {
    Json req;
    if (!a.p_truth.empty()) {
        if (!a.p_true.empty() || !a.p_false.empty()) throw UsageFailure{"--p-truth excludes --p-report-true/false"};
        req["p_truth"] = a.p_truth;
    } else {
        if (a.p_true.empty() || a.p_false.empty()) throw UsageFailure{"give --p-truth or both --p-report-true/false"};
        req["p_report_given_true"] = a.p_true;
        req["p_report_given_false"] = a.p_false;
    }
    req["p_e_given_h"] = a.p_e_h;
    req["p_e_given_hbar"] = a.p_e_hbar;
    OwnedString out;
    check(veritas_testimony_bf(req.dump().c_str(), out.out()));
    output(out.json());
}

struct NetArgs {
    std::string network, builtin, findings_file, method = "ve", target, query, out;
    std::vector<std::string> findings;
    std::size_t extractions = 5;
    std::string p_truth = "5/6";
};

void load_network(const NetArgs& a, NetworkHandle& net) {
    if (a.network.empty() == a.builtin.empty()) throw UsageFailure{"give exactly one of --network, --builtin"};
    if (!a.network.empty()) check(veritas_network_load(a.network.c_str(), net.out()));
    else check(veritas_network_builtin(a.builtin.c_str(), net.out()));
}

std::string findings_request(const NetArgs& a) {
    if (!a.findings_file.empty()) {
        if (!a.findings.empty()) throw UsageFailure{"--findings excludes --finding"};
        return read_file(a.findings_file);
    }
    return Json(a.findings).dump();
}

void cmd_net_validate(const NetArgs& a) {
    NetworkHandle net;
    load_network(a, net);
    OwnedString out;
    check(veritas_network_describe(net.get(), out.out()));
    output(out.json());
}

void cmd_net_infer(const NetArgs& a) {
    NetworkHandle net;
    load_network(a, net);
    const std::string findings = findings_request(a);
    if (!a.query.empty()) {
        double p = 0.0;
        check(veritas_query(net.get(), a.query.c_str(), findings.c_str(), &p));
        output(Json{{"query", a.query}, {"findings", Json::parse(findings)}, {"probability", p}});
        return;
    }
    OwnedString out;
    check(veritas_infer(net.get(), findings.c_str(), a.method.c_str(), a.target.empty() ? nullptr : a.target.c_str(),
                        out.out()));
    output(out.json(), View::Posterior);
}

void cmd_net_builtin(const NetArgs& a) {
    OwnedString out;
    if (a.builtin.empty()) {
        check(veritas_builtin_list(out.out()));
        output(out.json());
        return;
    }
    NetworkHandle net;
    check(veritas_network_builtin(a.builtin.c_str(), net.out()));
    check(veritas_network_to_json(net.get(), out.out()));
    const std::string text = out.json().dump(2) + "\n";
    if (!a.out.empty()) write_file(a.out, text);
    else std::cout << text;
}

void cmd_net_box(const NetArgs& a) {
    NetworkHandle net;
    check(veritas_network_box(a.extractions, a.p_truth.c_str(), 1, 13, net.out()));
    OwnedString out;
    check(veritas_network_to_json(net.get(), out.out()));
    const std::string text = out.json().dump(2) + "\n";
    if (!a.out.empty()) write_file(a.out, text);
    else std::cout << text;
}

struct SimArgs {
    veritas_gaussian_pair pair = veritas_gaussian_pair_default();
    std::string truth = "H1";
    std::size_t draws = 50, traj = 200, samples = 1'000'000;
    std::uint64_t seed = 20240101;
    unsigned threads = 0;
    bool trajectories = false;
    std::string csv;
    double width = 0.02;
    int lo = -6, hi = 6;
};

void cmd_simulate_walks(const SimArgs& a) {
    OwnedString json, csv;
    check(veritas_simulate_walks(a.pair, a.truth.c_str(), a.draws, a.traj, a.seed, a.threads, a.trajectories,
                                 json.out(), a.csv.empty() ? nullptr : csv.out()));
    if (!a.csv.empty()) write_file(a.csv, csv.str());
    output(json.json());
}

void cmd_simulate_stats(const SimArgs& a) {
    OwnedString out;
    check(veritas_walk_statistics(a.pair, a.draws, out.out()));
    output(out.json());
}

void cmd_simulate_table(const SimArgs& a) {
    OwnedString out;
    check(veritas_evidence_table(a.pair, a.lo, a.hi, out.out()));
    output(out.json());
}

void cmd_propagate(const SimArgs& a) {
    OwnedString json, csv;
    check(veritas_propagate(a.samples, a.seed, a.width, a.threads, 0, json.out(), a.csv.empty() ? nullptr : csv.out()));
    if (!a.csv.empty()) write_file(a.csv, csv.str());
    output(json.json());
}

struct ServeArgs {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string snapshot;
    std::string cors = "*";
};

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

void cmd_serve(const ServeArgs& a) {
    Json opts{{"cors_origin", a.cors}};
    if (!a.snapshot.empty()) opts["snapshot_path"] = a.snapshot;
    veritas_service* svc = nullptr;
    check(veritas_service_create(opts.dump().c_str(), &svc));
    std::unique_ptr<veritas_service, void (*)(veritas_service*)> owner(svc, veritas_service_free);
    int bound = 0;
    check(veritas_service_start(svc, a.host.c_str(), a.port, &bound));
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << Json{{"listening", "http://" + a.host + ":" + std::to_string(bound)}, {"port", bound}}.dump()
              << std::endl;
    while (!g_stop.load()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    check(veritas_service_stop(svc));
}

void report_error(const std::string& json, const std::string& message) {
    if (g_opts.format == "table") {
        const bool color = use_color();
        std::cerr << (color ? "\033[31m" : "") << "error:" << (color ? "\033[0m" : "") << ' ' << message << '\n';
    } else {
        std::cerr << json << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"veritas: odds, Bayes factors, judgement leanings, testimony and belief networks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", g_opts.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--digits", g_opts.digits, "Significant digits in table output")->check(CLI::Range(1, 17));
    app.set_version_flag("--version", std::string(veritas_version()));

    UpdateArgs upd;
    auto* update = app.add_subcommand("update", "Update prior odds with a Bayes factor");
    update->add_option("--prior-odds", upd.prior_odds);
    update->add_option("--prior-prob", upd.prior_prob);
    update->add_option("--prior-jl", upd.prior_jl);
    update->add_option("--bf", upd.bf, "Bayes factor");
    update->add_option("--djl", upd.djl, "Weight of evidence, log10 of the Bayes factor");
    update->callback([&] { cmd_update(upd); });

    auto* jl_table = app.add_subcommand("jl-table", "JL / odds / probability reference table");
    jl_table->callback([&] { OwnedString out; check(veritas_jl_table(out.out())); output(out.json(), View::JlTable); });

    CombineArgs comb;
    auto* combine = app.add_subcommand("combine", "Combine independent evidence");
    combine->add_option("--bf", comb.bfs, "Bayes factors to multiply");
    combine->add_option("--term", comb.terms, "Uncertain leaning mean:sd");
    combine->add_option("--uniform", comb.uniforms, "Leaning uniform on lo:hi");
    combine->add_option("--exact", comb.exact, "Exactly known leaning");
    combine->add_option("--repeat", comb.repeat, "Repeat the listed terms k times")->check(CLI::PositiveNumber);
    combine->add_option("--weights", comb.weights, "Discrete weights first:w1,w2,... to convolve");
    combine->add_option("--prior-jl", comb.prior_jl, "Prior leaning for --djl accumulation");
    combine->add_option("--djl", comb.deltas, "Weights of evidence to add")->allow_extra_args(false);
    combine->callback([&] { cmd_combine(comb); });

    TestimonyArgs tst;
    auto* testimony = app.add_subcommand("testimony", "Evidence reported by a fallible witness");
    testimony->require_subcommand(1);
    auto* tbf = testimony->add_subcommand("bf", "Effective Bayes factor of a testimony");
    tbf->add_option("--p-truth", tst.p_truth, "Witness tells the truth with this probability");
    tbf->add_option("--p-report-true", tst.p_true, "P(report E | E)");
    tbf->add_option("--p-report-false", tst.p_false, "P(report E | not E)");
    tbf->add_option("--p-e-h", tst.p_e_h, "P(E | H)")->required();
    tbf->add_option("--p-e-hbar", tst.p_e_hbar, "P(E | not H)")->required();
    tbf->callback([&] { cmd_testimony_bf(tst); });
    auto* ttable = testimony->add_subcommand("table", "Weight of testified evidence grid");
    ttable->add_option("--djl", tst.djl, "Ideal weight of evidence")->required();
    ttable->callback([&] {
        OwnedString out;
        check(veritas_testimony_table(tst.djl, out.out()));
        output(out.json(), View::TestimonyTable);
    });
    auto* tweight = testimony->add_subcommand("weight", "One cell of the testimony grid");
    tweight->add_option("--djl", tst.djl)->required();
    tweight->add_option("--j-lambda", tst.j_lambda)->required();
    tweight->add_option("--jl-e-h", tst.jl_e_h)->required();
    tweight->callback([&] {
        double w = 0.0;
        check(veritas_testimony_weight(tst.djl, tst.j_lambda, tst.jl_e_h, &w));
        output(Json{{"delta_jl_e", tst.djl}, {"j_lambda", tst.j_lambda}, {"jl_e_given_h", tst.jl_e_h}, {"weight", w}});
    });

    NetArgs na;
    auto* net = app.add_subcommand("net", "Discrete Bayesian networks");
    net->require_subcommand(1);
    auto add_source = [&](CLI::App* cmd) {
        cmd->add_option("--network", na.network, "Network JSON file");
        cmd->add_option("--builtin", na.builtin, "Builtin network name");
    };
    auto* validate = net->add_subcommand("validate", "Check a network file");
    add_source(validate);
    validate->callback([&] { cmd_net_validate(na); });
    auto* infer = net->add_subcommand("infer", "Posterior marginals given findings");
    add_source(infer);
    infer->add_option("--finding", na.findings, "Node=State (repeatable, applied in order)");
    infer->add_option("--findings", na.findings_file, "Findings JSON file");
    infer->add_option("--method", na.method, "ve, enumerate or exact")
        ->check(CLI::IsMember({"ve", "enumerate", "exact"}));
    infer->add_option("--target", na.target, "Node:numerator:denominator for the leaning ledger");
    infer->add_option("--query", na.query, "Node=State: print only this conditional probability");
    infer->callback([&] { cmd_net_infer(na); });
    auto* builtin = net->add_subcommand("builtin", "List builtin networks or print one");
    builtin->add_option("name", na.builtin, "Builtin network name");
    builtin->add_option("--out", na.out, "Write the network JSON here");
    builtin->callback([&] { cmd_net_builtin(na); });
    auto* box = net->add_subcommand("box", "Box-and-witness network");
    box->add_option("--extractions", na.extractions)->check(CLI::PositiveNumber);
    box->add_option("--p-truth", na.p_truth, "Witness truthfulness, e.g. 5/6");
    box->add_option("--out", na.out, "Write the network JSON here");
    box->callback([&] { cmd_net_box(na); });

    auto* scenario = app.add_subcommand("scenario", "Worked examples");
    scenario->require_subcommand(1);
    for (const char* name : {"aids", "box", "columbo"}) {
        scenario->add_subcommand(name, std::string("Report for the ") + name + " example")->callback([name] {
            OwnedString out;
            check(veritas_scenario(name, out.out()));
            output(out.json());
        });
    }

    SimArgs sa;
    auto add_pair = [&](CLI::App* cmd) {
        cmd->add_option("--mu1", sa.pair.mu1);
        cmd->add_option("--sigma1", sa.pair.sigma1);
        cmd->add_option("--mu2", sa.pair.mu2);
        cmd->add_option("--sigma2", sa.pair.sigma2);
    };
    auto* simulate = app.add_subcommand("simulate", "Which Gaussian generator produced the data");
    simulate->require_subcommand(1);
    auto* walks = simulate->add_subcommand("walks", "Random walks of the accumulated leaning");
    add_pair(walks);
    walks->add_option("--truth", sa.truth, "H1 or H2");
    walks->add_option("--draws", sa.draws);
    walks->add_option("--traj", sa.traj)->check(CLI::PositiveNumber);
    walks->add_option("--seed", sa.seed);
    walks->add_option("--threads", sa.threads, "0 = all cores; output does not depend on it");
    walks->add_flag("--trajectories", sa.trajectories, "Include every trajectory in the JSON");
    walks->add_option("--csv", sa.csv, "Write traj_id,step,jl rows here");
    walks->callback([&] { cmd_simulate_walks(sa); });
    auto* stats = simulate->add_subcommand("stats", "Expected weight of evidence per draw and for n draws");
    add_pair(stats);
    stats->add_option("--draws", sa.draws);
    stats->callback([&] { cmd_simulate_stats(sa); });
    auto* table = simulate->add_subcommand("table", "Bayes factors for integer observations");
    add_pair(table);
    table->add_option("--lo", sa.lo);
    table->add_option("--hi", sa.hi);
    table->callback([&] { cmd_simulate_table(sa); });

    auto* propagate = app.add_subcommand("propagate", "Monte Carlo propagation of z = y sin(pi^4 + x^2)/sqrt(x^3 + y^2)");
    propagate->add_option("--samples", sa.samples);
    propagate->add_option("--seed", sa.seed);
    propagate->add_option("--width", sa.width, "Width of the most probable interval");
    propagate->add_option("--threads", sa.threads);
    propagate->add_option("--csv", sa.csv, "Write bin_lo,bin_hi,mass rows here");
    propagate->callback([&] { cmd_propagate(sa); });

    ServeArgs sv;
    auto* serve = app.add_subcommand("serve", "HTTP/JSON session service");
    serve->add_option("--host", sv.host);
    serve->add_option("--port", sv.port)->check(CLI::Range(0, 65535));
    serve->add_option("--snapshot", sv.snapshot, "Load sessions from and save them to this file");
    serve->add_option("--cors-origin", sv.cors);
    serve->callback([&] { cmd_serve(sv); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error(Json{{"error", {{"code", "usage"}, {"message", e.what()}}}}.dump(), e.what());
        return kUsage;
    } catch (const UsageFailure& e) {
        report_error(Json{{"error", {{"code", "usage"}, {"message", e.message}}}}.dump(), e.message);
        return kUsage;
    } catch (const ApiFailure& e) {
        report_error(veritas_last_error_json(), veritas_last_error());
        return exit_code(e.status);
    } catch (const Json::exception& e) {
        report_error(Json{{"error", {{"code", "usage"}, {"message", e.what()}}}}.dump(), e.what());
        return kUsage;
    }
    return kOk;
}
