// Python bindings: thin wrappers that exchange JSON text with the C++ core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tattoo/closed_forms.hpp"
#include "tattoo/oracle.hpp"
#include "tattoo/report.hpp"

namespace py = pybind11;
using namespace tattoo;

namespace {

std::shared_ptr<const Graph> graph_of(const std::optional<std::string>& family,
                                      const std::optional<std::string>& edge_list) {
    if (family.has_value() == edge_list.has_value()) throw std::invalid_argument("give exactly one of family or edge_list");
    if (family) return std::make_shared<const Graph>(build_family(parse_family_spec(*family)));
    return std::make_shared<const Graph>(parse_edge_list(*edge_list));
}

SearchLimits limits_of(std::optional<int> max_edges, int threads) {
    SearchLimits limits;
    if (max_edges) limits.max_edges = *max_edges;
    limits.threads = threads;
    return limits;
}

std::string compute(const std::optional<std::string>& family, const std::optional<std::string>& edge_list,
                    const std::string& mode, const std::string& quantity, const std::string& policy,
                    std::optional<int> max_edges, int threads) {
    report::ComputeRequest request;
    request.graph = graph_of(family, edge_list);
    request.label = family.value_or("edge list");
    request.mode = parse_mode(mode);
    request.policy = parse_policy(policy);
    request.query = report::parse_query(quantity);
    request.limits = limits_of(max_edges, threads);
    std::string text;
    {
        py::gil_scoped_release release;
        text = report::compute(request).dump();
    }
    return text;
}

std::vector<std::tuple<std::string, std::string, std::string>> verify(const std::string& suite, int corpus_edges) {
    std::vector<report::VerifyRow> rows;
    {
        py::gil_scoped_release release;
        rows = report::verify(suite, {}, corpus_edges);
    }
    std::vector<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& r : rows) out.emplace_back(r.check, report::to_string(r.status), r.detail);
    return out;
}

std::string sweep(const std::string& family, std::pair<int, int> n, std::pair<int, int> k, const std::string& mode,
                  const std::string& policy, std::optional<int> max_edges) {
    auto instances = report::family_instances(family, n, k);
    py::gil_scoped_release release;
    return report::sweep(instances, parse_mode(mode), parse_policy(policy), limits_of(max_edges, 1)).csv;
}

std::string oracle(const std::optional<std::string>& family, const std::optional<std::string>& edge_list,
                   const std::string& mode) {
    auto g = graph_of(family, edge_list);
    Mode m = parse_mode(mode);
    OracleValues values = oracle_invariants(*g, m);
    report::json out;
    for (const auto& [q, v] : values) {
        if (auto* i = std::get_if<long>(&v)) out[to_string(q)] = *i;
        else out[to_string(q)] = std::get<Rational>(v).fraction();
    }
    return out.dump();
}

py::tuple formula(const FamilyFormulaResult& r) { return py::make_tuple(r.b_tau, r.fsg_index.fraction(), r.source); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact tattooing invariants of small connected graphs";

    py::register_exception<SearchLimitError>(m, "SearchLimitError");
    py::register_exception<InfeasibleError>(m, "InfeasibleError");
    py::register_exception<ConsistencyError>(m, "ConsistencyError");
    py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);

    m.def("compute", &compute, py::arg("family") = py::none(), py::arg("edge_list") = py::none(),
          py::arg("mode") = "blend", py::arg("quantity") = "index", py::arg("policy") = "smallest",
          py::arg("max_edges") = py::none(), py::arg("threads") = 1,
          "Compute one invariant; returns the JSON document as text.");
    m.def("replay", [](const std::string& document) { return report::replay(report::json::parse(document)).dump(); },
          py::arg("document"), "Replay the witness in a compute document; raises ConsistencyError on mismatch.");
    m.def("verify", &verify, py::arg("suite"), py::arg("corpus_edges") = 5,
          "Run a verification suite; returns (check, status, detail) rows.");
    m.def("sweep", &sweep, py::arg("family"), py::arg("n"), py::arg("k") = std::pair<int, int>{1, 1},
          py::arg("mode") = "blend", py::arg("policy") = "smallest", py::arg("max_edges") = py::none(),
          "Tabulate a family over inclusive parameter ranges; returns CSV text.");
    m.def("oracle", &oracle, py::arg("family") = py::none(), py::arg("edge_list") = py::none(),
          py::arg("mode") = "blend", "Brute-force values for graphs with at most six edges, as JSON text.");
    m.def("fr3_formulas", [](long n) { return formula(fr3_formulas(n)); }, py::arg("n"));
    m.def("joost_formulas", [](long n, long k) { return formula(joost_formulas(n, k)); }, py::arg("n"), py::arg("k"));
    m.def("general_fr_formulas",
          [](const std::vector<std::pair<long, long>>& families) { return formula(general_fr_formulas(families)); },
          py::arg("families"));
    m.def("cycle_tau", &cycle_tau, py::arg("n"));
}
