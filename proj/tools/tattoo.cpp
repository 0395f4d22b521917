// tattoo: compute tattooing invariants, verify published values, sweep families.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tattoo/graph.hpp"
#include "tattoo/optimizer.hpp"
#include "tattoo/report.hpp"

namespace {

using namespace tattoo;
using report::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitLimit = 3;
constexpr int kExitConsistency = 4;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

// Inclusive range "a..b" or a single value "a".
std::pair<int, int> parse_range(const std::string& text) {
    try {
        auto dots = text.find("..");
        if (dots == std::string::npos) {
            int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw UsageError("bad range '" + text + "' (expected a..b)");
    }
}

struct Options {
    std::string input;
    std::string family;
    std::string mode = "blend";
    std::string policy = "smallest";
    std::string quantity = "index";
    bool json_output = false;
    std::string csv;
    int max_edges = default_max_edges();
    int threads = 1;
    std::uint64_t seed = 1;
    std::string replay;
    std::string suite;
    int corpus_edges = 5;
    std::string n_range;
    std::string k_range = "1";
    int random_count = 0;
    int random_vertices = 0;
    int random_edges = 0;
};

SearchLimits limits_of(const Options& o) {
    SearchLimits limits;
    limits.max_edges = o.max_edges;
    limits.threads = o.threads;
    return limits;
}

int run_compute(const Options& o) {
    if (!o.replay.empty()) {
        json document;
        try {
            document = json::parse(read_file(o.replay));
        } catch (const json::parse_error& e) {
            throw UsageError(std::string("replay file is not JSON: ") + e.what());
        }
        std::cout << report::replay(document).dump(2) << '\n';
        return kExitOk;
    }
    if (o.input.empty() == o.family.empty()) throw UsageError("give exactly one of --input or --family");

    report::ComputeRequest request;
    if (!o.family.empty()) {
        request.graph = std::make_shared<const Graph>(build_family(parse_family_spec(o.family)));
        request.label = o.family;
    } else {
        request.graph = std::make_shared<const Graph>(parse_edge_list(read_file(o.input)));
        request.label = o.input;
    }
    request.mode = parse_mode(o.mode);
    request.policy = parse_policy(o.policy);
    request.query = report::parse_query(o.quantity);
    request.limits = limits_of(o);
    json document = report::compute(request);
    // Every document is checked against its own witness before it is emitted.
    report::replay(document);
    std::cout << document.dump(2) << '\n';
    return kExitOk;
}

int run_verify(const Options& o) {
    auto rows = report::verify(o.suite, limits_of(o), o.corpus_edges);
    if (o.json_output) {
        json out = json::array();
        for (const auto& r : rows) out.push_back({{"check", r.check}, {"status", report::to_string(r.status)}, {"detail", r.detail}});
        std::cout << out.dump(2) << '\n';
    } else {
        report::print_rows(std::cout, rows);
    }
    return report::any_failed(rows) ? kExitFail : kExitOk;
}

int run_sweep(const Options& o) {
    std::vector<report::SweepInstance> instances;
    if (o.random_count > 0) {
        instances = report::random_instances(o.random_count, o.random_vertices, o.random_edges, o.seed);
    } else {
        if (o.family.empty() || o.n_range.empty()) throw UsageError("sweep needs --family and --n, or --random");
        instances = report::family_instances(o.family, parse_range(o.n_range), parse_range(o.k_range));
    }
    auto outcome = report::sweep(instances, parse_mode(o.mode), parse_policy(o.policy), limits_of(o));
    if (o.csv.empty()) {
        std::cout << outcome.csv;
    } else {
        std::ofstream out(o.csv);
        if (!out) throw UsageError("cannot write '" + o.csv + "'");
        out << outcome.csv;
    }
    return outcome.rows > 0 && outcome.failures == outcome.rows ? kExitFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tattooing invariants of small connected graphs"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--mode", o.mode, "brush|fsg|blend")->check(CLI::IsMember({"brush", "fsg", "blend"}));
        cmd->add_option("--policy", o.policy, "smallest|fresh")->check(CLI::IsMember({"smallest", "fresh"}));
        cmd->add_option("--max-edges", o.max_edges, "Refuse searches on graphs with more edges")->check(CLI::PositiveNumber);
        cmd->add_option("--threads", o.threads, "Worker threads for the orientation sweep")->check(CLI::PositiveNumber);
    };

    auto* compute = app.add_subcommand("compute", "Compute one invariant and print a JSON document with its witness");
    compute->add_option("--input", o.input, "Edge-list file");
    compute->add_option("--family", o.family, "Family spec such as cycle:7, joost:4,7, genfriendship:3x2+4x1");
    compute->add_option("--quantity", o.quantity, "br|btau|tau|labelsum|index|ratio|ratio-set");
    compute->add_option("--replay", o.replay, "Replay the witness in a compute document and check its value");
    compute->add_flag("--json", o.json_output, "Emit JSON (the default for compute)");
    common(compute);

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", o.suite, "paper-anchors|closed-forms|oracle")->required();
    verify->add_option("--corpus-edges", o.corpus_edges, "Largest corpus graph for the oracle suite")->check(CLI::Range(1, 6));
    verify->add_flag("--json", o.json_output, "Emit rows as JSON");
    common(verify);

    auto* sweep = app.add_subcommand("sweep", "Tabulate invariants over a family range or random graphs as CSV");
    sweep->add_option("--family", o.family, "cycle|path|star|wheel|friendship|joost");
    sweep->add_option("--n", o.n_range, "First parameter range a..b");
    sweep->add_option("--k", o.k_range, "Second parameter range a..b");
    sweep->add_option("--random", o.random_count, "Number of random connected graphs");
    sweep->add_option("--vertices", o.random_vertices, "Vertices per random graph");
    sweep->add_option("--edges", o.random_edges, "Edges per random graph");
    sweep->add_option("--seed", o.seed, "Seed for random graphs");
    sweep->add_option("--csv", o.csv, "Write the CSV here instead of stdout");
    common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (*compute) return run_compute(o);
        if (*verify) return run_verify(o);
        return run_sweep(o);
    } catch (const SearchLimitError& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kExitLimit;
    } catch (const ConsistencyError& e) {
        std::cerr << "inconsistency: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitFail;
    } catch (const std::invalid_argument& e) {  // UsageError, GraphError-free parse errors, json field errors
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == GraphError::Kind::TooLarge ? kExitLimit : kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
}
