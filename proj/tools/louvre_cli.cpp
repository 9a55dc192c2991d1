// Command-line front end: parse code files, build or search schedules,
// verify them, report connectivity metrics, route couplers across tiers, and
// emit noise-annotated circuits.
//
// Exit codes: 0 success, 1 verification/search failure, 2 input error,
// 3 routing failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "louvre/absent.hpp"
#include "louvre/circuit.hpp"
#include "louvre/code.hpp"
#include "louvre/metrics.hpp"
#include "louvre/optimize.hpp"
#include "louvre/router.hpp"
#include "louvre/schedule.hpp"
#include "louvre/verify.hpp"

using json = nlohmann::ordered_json;
using namespace louvre;

namespace {

struct Options {
    std::string code_path, scheme, table_path, out_path, format = "text";
    std::uint64_t seed = 1;
    std::int64_t budget_ms = 60'000;
    bool budget_given = false;
    int rounds = 2;
    double p = 0.0, swap_factor = 1.5;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int deliver(const Options& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(o.out_path);
    if (!out) {
        std::cerr << "error: cannot write '" << o.out_path << "'\n";
        return 2;
    }
    out << text;
    return 0;
}

std::string poly_text(const Poly& p) {
    std::string out;
    for (const Monomial& t : p.terms) {
        if (!out.empty()) out += "+";
        std::string m;
        if (t.a == 1) m += "x";
        else if (t.a > 1) m += "x^" + std::to_string(t.a);
        if (t.b == 1) m += "y";
        else if (t.b > 1) m += "y^" + std::to_string(t.b);
        out += m.empty() ? "1" : m;
    }
    return out;
}

CodeSpec load_code(const Options& o) {
    if (o.code_path.empty()) throw ParseError("--code FILE is required");
    return parse_code_file(o.code_path);
}

// Builders run directly; the searched schemes come from --table when given,
// otherwise from the ordering search. `implicit_search` lets `schedule` run
// the search by default, while the other subcommands ask for an explicit
// --table or --budget so a long search is never a surprise.
Schedule make_schedule(const CodeSpec& c, const Options& o, bool implicit_search) {
    if (!o.table_path.empty()) return from_instruction_table(read_file(o.table_path), c);
    if (o.scheme.empty()) throw ParseError("--scheme NAME or --table FILE is required");
    std::optional<Scheme> sc = scheme_from_name(o.scheme);
    if (!sc) throw ParseError("unknown scheme '" + o.scheme + "'");
    switch (*sc) {
        case Scheme::Regular: return build_regular(c);
        case Scheme::L7: return build_louvre7(c);
        case Scheme::L8: return build_louvre8(c);
        default: break;
    }
    if (!implicit_search && !o.budget_given)
        throw ParseError("scheme '" + o.scheme +
                         "' has no fixed layout; pass --table FILE with a schedule or "
                         "--budget MS to run the ordering search");
    SearchLimits lim{o.budget_ms, *sc == Scheme::CxswapOnly};
    Scheme family = *sc == Scheme::L7R ? Scheme::L7R : Scheme::L8R;
    return optimize_ordering(c, family, lim);
}

int cmd_build(const Options& o) {
    CodeSpec c = load_code(o);
    int k = compute_k(c);
    if (o.format == "json") {
        json j{{"schema", 1},        {"name", c.name},
               {"n", c.n_data()},    {"k", k},
               {"l", c.l},           {"m", c.m},
               {"A", poly_text(c.A)}, {"B", poly_text(c.B)},
               {"grid_cols", c.grid_cols()}, {"grid_rows", c.grid_rows()},
               {"qubits", c.n_total()},
               {"stabilizer_weight", int(c.A.terms.size() + c.B.terms.size())}};
        return deliver(o, j.dump(2) + "\n");
    }
    std::ostringstream out;
    out << "name: " << c.name << "\n"
        << "[[n, k]]: [[" << c.n_data() << ", " << k << "]]\n"
        << "l: " << c.l << "\n"
        << "m: " << c.m << "\n"
        << "A: " << poly_text(c.A) << "\n"
        << "B: " << poly_text(c.B) << "\n"
        << "grid: " << c.grid_cols() << "x" << c.grid_rows() << "\n"
        << "qubits: " << c.n_total() << "\n"
        << "stabilizer weight: " << c.A.terms.size() + c.B.terms.size() << "\n";
    return deliver(o, out.str());
}

int cmd_schedule(const Options& o) {
    CodeSpec c = load_code(o);
    Schedule s = make_schedule(c, o, true);
    std::string table = to_instruction_table(s);
    if (o.format == "json") {
        json j{{"schema", 1},
               {"code", c.name},
               {"scheme", scheme_name(s.scheme)},
               {"depth", s.depth()},
               {"table", table}};
        return deliver(o, j.dump(2) + "\n");
    }
    return deliver(o, table);
}

json stage_json(const StageResult& st) {
    return json{{"ran", st.ran}, {"passed", st.passed}, {"detail", st.detail}};
}

std::string stage_text(const StageResult& st) {
    if (!st.ran) return "skipped";
    if (st.passed) return "pass";
    return "fail (" + st.detail + ")";
}

int cmd_verify(const Options& o) {
    CodeSpec c = load_code(o);
    Schedule s = make_schedule(c, o, false);
    VerificationReport rep = verify_schedule(c, s);
    int rc = rep.verified ? 0 : 1;
    if (o.format == "json") {
        json j{{"schema", 1},
               {"code", rep.code_name},
               {"scheme", rep.scheme},
               {"reversed_rounds", rep.reversed_rounds},
               {"commutation", rep.commutation.commutes},
               {"determinism", stage_json(rep.determinism)},
               {"dictionary", stage_json(rep.dictionary)},
               {"logicals", stage_json(rep.logicals)},
               {"restoration", stage_json(rep.restoration)},
               {"verified", rep.verified}};
        int drc = deliver(o, j.dump(2) + "\n");
        return drc ? drc : rc;
    }
    std::ostringstream out;
    out << "code: " << rep.code_name << "\n"
        << "scheme: " << rep.scheme << "\n"
        << "reversed rounds: " << (rep.reversed_rounds ? "yes" : "no") << "\n"
        << "commutation: " << (rep.commutation.commutes ? "pass" : "fail") << "\n"
        << "determinism: " << stage_text(rep.determinism) << "\n"
        << "dictionary: " << stage_text(rep.dictionary) << "\n"
        << "logicals: " << stage_text(rep.logicals) << "\n"
        << "restoration: " << stage_text(rep.restoration) << "\n"
        << "verified: " << (rep.verified ? "yes" : "no") << "\n";
    int drc = deliver(o, out.str());
    return drc ? drc : rc;
}

json metrics_json(const CodeSpec& c, const std::string& scheme, const MetricsReport& m) {
    static const char* roles[4] = {"L", "R", "X", "Z"};
    json by_role = json::object();
    for (int r = 0; r < 4; ++r)
        by_role[roles[r]] = {{"degree", to_string(m.by_role[r].degree)},
                             {"distance", to_string(m.by_role[r].total_distance)}};
    return json{{"code", c.name},
                {"scheme", scheme},
                {"degree", to_string(m.avg_degree)},
                {"distance", to_string(m.avg_total_distance)},
                {"couplers", m.coupler_count},
                {"long_couplers", m.long_count},
                {"by_role", by_role}};
}

int cmd_metrics(const Options& o) {
    CodeSpec c = load_code(o);
    if (o.scheme.empty() && o.table_path.empty()) {
        // fixed-scheme matrix, one row per layout
        std::ostringstream out;
        json rows = json::array();
        out << "scheme degree distance couplers long\n";
        for (Scheme sc : {Scheme::Regular, Scheme::L7, Scheme::L8}) {
            Schedule s = sc == Scheme::Regular  ? build_regular(c)
                         : sc == Scheme::L7     ? build_louvre7(c)
                                                : build_louvre8(c);
            MetricsReport m = metrics_report(c, s);
            out << scheme_name(sc) << " " << to_string(m.avg_degree) << " "
                << to_string(m.avg_total_distance) << " " << m.coupler_count << " "
                << m.long_count << "\n";
            rows.push_back(metrics_json(c, scheme_name(sc), m));
        }
        if (o.format == "json")
            return deliver(o, json{{"schema", 1}, {"rows", rows}}.dump(2) + "\n");
        return deliver(o, out.str());
    }
    Schedule s = make_schedule(c, o, false);
    MetricsReport m = metrics_report(c, s);
    if (o.format == "json") {
        json j = metrics_json(c, scheme_name(s.scheme), m);
        j["schema"] = 1;
        return deliver(o, j.dump(2) + "\n");
    }
    return deliver(o, to_string(m.avg_degree) + ", " + to_string(m.avg_total_distance) + "\n");
}

int cmd_route(const Options& o) {
    CodeSpec c = load_code(o);
    Schedule s = make_schedule(c, o, false);
    CouplerGraph g = extract_coupler_graph(c, s);
    RoutingResult r;
    try {
        r = route_multitier(g, o.seed);
    } catch (const std::runtime_error& e) {
        std::cerr << "routing failed: " << e.what() << "\n";
        return 3;
    }
    if (!validate_routing(g, r.paths)) {
        std::cerr << "routing failed: produced paths do not validate\n";
        return 3;
    }
    if (o.format == "json") {
        json paths = json::array();
        for (const RoutedPath& p : r.paths) {
            const CouplerInfo& ci = g.couplers[std::size_t(p.coupler)];
            json cells = json::array();
            for (const GridCell& cell : p.cells)
                cells.push_back({cell.col, cell.row, cell.layer});
            paths.push_back({{"sites", {ci.site_a, ci.site_b}},
                             {"tier", p.tier},
                             {"bumps", p.bumps},
                             {"cells", cells}});
        }
        json j{{"schema", 1},
               {"code", c.name},
               {"scheme", scheme_name(s.scheme)},
               {"seed", o.seed},
               {"tiers", r.report.tiers},
               {"length", r.report.avg_length},
               {"bumps", r.report.bumps_per_coupler},
               {"tsvs", r.report.tsvs_per_coupler},
               {"paths", paths}};
        return deliver(o, j.dump(2) + "\n");
    }
    return deliver(o, routing_dump(g, r));
}

int cmd_emit(const Options& o) {
    CodeSpec c = load_code(o);
    Schedule s = make_schedule(c, o, false);
    VerificationReport rep = verify_schedule(c, s);
    if (!rep.verified) {
        std::cerr << "refusing to emit an unverified schedule:\n";
        for (const StageResult* st : {&rep.determinism, &rep.dictionary, &rep.logicals,
                                      &rep.restoration})
            if (st->ran && !st->passed) std::cerr << "  " << st->detail << "\n";
        if (!rep.commutation.commutes) std::cerr << "  checks do not commute through the layers\n";
        return 1;
    }
    CircuitDocument doc = emit_circuit(c, s, o.rounds, {o.p, o.swap_factor});
    if (o.format == "json") {
        json j{{"schema", 1},
               {"code", c.name},
               {"scheme", scheme_name(s.scheme)},
               {"rounds", doc.rounds},
               {"qubits", doc.n_qubits},
               {"detectors", doc.detectors},
               {"observables", doc.observables},
               {"measurements", doc.measurements},
               {"text", doc.text}};
        return deliver(o, j.dump(2) + "\n");
    }
    return deliver(o, doc.text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"syndrome-extraction schedule compiler and layout toolkit"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--code", o.code_path, "code definition file");
        sub->add_option("--format", o.format, "output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", o.out_path, "write output to a file instead of stdout");
        return sub;
    };
    auto add_scheme = [&](CLI::App* sub) {
        sub->add_option("--scheme", o.scheme,
                        "regular|l7|l7r|l8|l8r|cxswap-only");
        sub->add_option("--table", o.table_path, "instruction-table file to load");
        sub->add_option("--budget", o.budget_ms, "ordering-search budget in ms")
            ->check(CLI::NonNegativeNumber);
        return sub;
    };

    CLI::App* build = add_common(app.add_subcommand("build", "parse a code file and print its parameters"));
    CLI::App* schedule = add_scheme(add_common(
        app.add_subcommand("schedule", "print the gate-instruction table for a scheme")));
    CLI::App* verify = add_scheme(add_common(
        app.add_subcommand("verify", "run the full verification suite on a schedule")));
    CLI::App* metrics = add_scheme(add_common(
        app.add_subcommand("metrics", "degree and interaction-distance metrics")));
    CLI::App* route = add_scheme(add_common(
        app.add_subcommand("route", "place qubits and route long couplers across tiers")));
    route->add_option("--seed", o.seed, "routing tie-break seed");
    CLI::App* emit = add_scheme(add_common(
        app.add_subcommand("emit", "emit a noise-annotated multi-round circuit")));
    emit->add_option("--rounds", o.rounds, "number of syndrome-extraction rounds")
        ->check(CLI::PositiveNumber);
    emit->add_option("--p", o.p, "base error rate (0 = noiseless)")
        ->check(CLI::Range(0.0, 1.0));
    emit->add_option("--swap-factor", o.swap_factor, "noise multiplier for pure-SWAP layers")
        ->check(CLI::Range(1.0, 100.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    for (CLI::App* sub : {schedule, verify, metrics, route, emit})
        if (sub->parsed() && sub->count("--budget")) o.budget_given = true;

    try {
        if (build->parsed()) return cmd_build(o);
        if (schedule->parsed()) return cmd_schedule(o);
        if (verify->parsed()) return cmd_verify(o);
        if (metrics->parsed()) return cmd_metrics(o);
        if (route->parsed()) return cmd_route(o);
        if (emit->parsed()) return cmd_emit(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const TrackError& e) {
        std::cerr << "schedule error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
