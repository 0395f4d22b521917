#include "tattoo/report.hpp"

#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "tattoo/closed_forms.hpp"
#include "tattoo/oracle.hpp"

namespace tattoo::report {

Query parse_query(const std::string& text) {
    if (text == "ratio-set") return Query::RatioSet;
    switch (parse_quantity(text)) {
        case Quantity::Br: return Query::Br;
        case Quantity::Btau: return Query::Btau;
        case Quantity::Tau: return Query::Tau;
        case Quantity::MinLabelSum: return Query::MinLabelSum;
        case Quantity::Index: return Query::Index;
        case Quantity::RawRatio: return Query::RawRatio;
    }
    throw std::invalid_argument("unknown quantity '" + text + "'");
}

const char* to_string(Query q) {
    switch (q) {
        case Query::Br: return "br";
        case Query::Btau: return "btau";
        case Query::Tau: return "tau";
        case Query::MinLabelSum: return "labelsum";
        case Query::Index: return "index";
        case Query::RawRatio: return "ratio";
        case Query::RatioSet: return "ratio-set";
    }
    return "?";
}

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Discrepancy: return "DISCREPANCY";
    }
    return "?";
}

namespace {

Quantity as_quantity(Query q) {
    switch (q) {
        case Query::Br: return Quantity::Br;
        case Query::Btau: return Quantity::Btau;
        case Query::Tau: return Quantity::Tau;
        case Query::MinLabelSum: return Quantity::MinLabelSum;
        case Query::Index: return Quantity::Index;
        case Query::RawRatio: return Quantity::RawRatio;
        case Query::RatioSet: break;
    }
    throw std::invalid_argument("ratio-set is not a single quantity");
}

json value_json(const std::variant<long, Rational>& v) {
    if (auto* i = std::get_if<long>(&v)) return *i;
    return std::get<Rational>(v).fraction();
}

// Ratio sets are listed largest first, best index leading.
json ratio_list(const std::set<Rational>& ratios) {
    json out = json::array();
    for (auto it = ratios.rbegin(); it != ratios.rend(); ++it) out.push_back(it->fraction());
    return out;
}

std::string descending(const std::set<Rational>& ratios) {
    std::string s;
    for (auto it = ratios.rbegin(); it != ratios.rend(); ++it) s += (s.empty() ? "" : ",") + it->fraction();
    return s;
}

template <class T>
T field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw std::invalid_argument(std::string("missing field '") + name + "'");
    return j.at(name).get<T>();
}

}  // namespace

json graph_json(const Graph& g, const std::string& label) {
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.a, e.b});
    return {{"label", label}, {"vertices", g.vertex_count()}, {"edge_count", g.edge_count()}, {"edges", edges}};
}

std::shared_ptr<const Graph> graph_from_json(const json& j) {
    int n = field<int>(j, "vertices");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return std::make_shared<const Graph>(n, std::move(edges));
}

json witness_json(const Witness& w) {
    const Digraph& d = w.digraph;
    json arcs = json::array();
    for (ArcId a = 0; a < d.arc_count(); ++a) arcs.push_back({d.tail(a), d.head(a)});
    json schedule = json::array();
    for (const FireEvent& e : w.schedule) {
        json dispatch = json::array();
        for (const auto& [arc, brush] : e.assignment) dispatch.push_back({{"arc", arc}, {"brush", brush.members()}});
        schedule.push_back({{"vertex", e.vertex}, {"dispatch", dispatch}});
    }
    return {{"orientation", arcs},
            {"plan", w.plan.initial},
            {"policy", to_string(w.plan.policy)},
            {"schedule", schedule}};
}

Witness witness_from_json(std::shared_ptr<const Graph> g, const json& j) {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (const auto& a : j.at("orientation")) arcs.emplace_back(a.at(0).get<int>(), a.at(1).get<int>());
    Digraph d = Digraph::from_arcs(std::move(g), arcs);
    AllocationPlan plan{field<std::vector<int>>(j, "plan"), parse_policy(field<std::string>(j, "policy"))};
    DispatchSchedule schedule;
    for (const auto& e : j.at("schedule")) {
        FireEvent event{field<int>(e, "vertex"), {}};
        for (const auto& x : e.at("dispatch")) {
            ColourMask mask = 0;
            for (int c : x.at("brush")) {
                if (c < 1 || c > kMaxColour) throw std::invalid_argument("colour index out of range");
                mask |= colour_bit(c);
            }
            event.assignment.push_back({field<int>(x, "arc"), ColourSet(mask)});
        }
        schedule.push_back(std::move(event));
    }
    return Witness{std::move(d), std::move(plan), std::move(schedule)};
}

json compute(const ComputeRequest& request) {
    auto start = std::chrono::steady_clock::now();
    bool cost_query = request.query == Query::Br || request.query == Query::Btau || request.query == Query::Tau;
    if (cost_query && mode_of(as_quantity(request.query)) != request.mode) {
        throw std::invalid_argument(std::string("quantity ") + to_string(request.query) + " does not belong to mode " +
                                    to_string(request.mode));
    }
    SearchResult r = best_index(request.graph, request.mode, request.policy, request.limits);
    json value;
    if (request.query == Query::RatioSet) {
        const Witness& w = r.witness.witness;
        value = ratio_list(ratio_set(w.digraph, w.plan, request.mode));
    } else {
        value = value_json(to_invariant(r, as_quantity(request.query)).value);
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return {{"graph", graph_json(*request.graph, request.label)},
            {"mode", to_string(request.mode)},
            {"policy", to_string(request.policy)},
            {"quantity", to_string(request.query)},
            {"value", value},
            {"cost", r.cost},
            {"label_sum", r.label_sum},
            {"index", r.index.fraction()},
            {"raw_ratio", r.raw_ratio.fraction()},
            {"orientations_searched", r.orientations_searched},
            {"witness", witness_json(r.witness.witness)},
            {"elapsed_ms", elapsed.count()}};
}

json replay(const json& document) {
    auto g = graph_from_json(document.at("graph"));
    Mode mode = parse_mode(field<std::string>(document, "mode"));
    Witness w = witness_from_json(g, document.at("witness"));
    RunResult run = run_schedule(w.digraph, w.plan, w.schedule, mode);
    const Outcome* o = std::get_if<Outcome>(&run);
    if (!o) throw ConsistencyError("witness deadlocks on replay");

    auto mismatch = [](const std::string& what, const json& recorded, const json& replayed) {
        throw ConsistencyError("replay mismatch in " + what + ": recorded " + recorded.dump() + ", replayed " +
                               replayed.dump());
    };
    if (field<long>(document, "cost") != o->primaries_used) mismatch("cost", document["cost"], o->primaries_used);
    if (field<long>(document, "label_sum") != o->label_sum) mismatch("label_sum", document["label_sum"], o->label_sum);
    if (field<std::string>(document, "index") != o->index.fraction()) mismatch("index", document["index"], o->index.fraction());
    if (field<std::string>(document, "raw_ratio") != o->raw_ratio.fraction()) {
        mismatch("raw_ratio", document["raw_ratio"], o->raw_ratio.fraction());
    }

    Query q = parse_query(field<std::string>(document, "quantity"));
    json value;
    switch (q) {
        case Query::Br:
        case Query::Btau:
        case Query::Tau: value = o->primaries_used; break;
        case Query::MinLabelSum: value = o->label_sum; break;
        case Query::Index: value = o->index.fraction(); break;
        case Query::RawRatio: value = o->raw_ratio.fraction(); break;
        case Query::RatioSet: value = ratio_list(ratio_set(w.digraph, w.plan, mode)); break;
    }
    if (document.at("value") != value) mismatch("value", document["value"], value);
    return {{"replay", "ok"}, {"quantity", to_string(q)}, {"value", value}, {"cost", o->primaries_used},
            {"label_sum", o->label_sum}};
}

json without_timing(json document) {
    document.erase("elapsed_ms");
    return document;
}

// ---------------------------------------------------------------------------
// Verification suites

namespace {

using Graphs = std::shared_ptr<const Graph>;

Graphs family(const FamilySpec& spec) { return std::make_shared<const Graph>(build_family(spec)); }

std::string edge_text(const Graph& g) {
    std::string s;
    for (const Edge& e : g.edges()) s += (s.empty() ? "" : " ") + std::to_string(e.a) + "-" + std::to_string(e.b);
    return s;
}

class Rows {
public:
    void add(std::string check, Status status, std::string detail = {}) {
        rows_.push_back({std::move(check), status, std::move(detail)});
    }
    void expect(std::string check, bool ok, std::string detail = {}) {
        add(std::move(check), ok ? Status::Pass : Status::Fail, std::move(detail));
    }
    // Runs a check body, turning refusals and errors into FAIL rows.
    template <class F>
    void guard(const std::string& check, F body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(check, Status::Fail, std::string("error: ") + e.what());
        }
    }
    std::vector<VerifyRow> take() { return std::move(rows_); }

private:
    std::vector<VerifyRow> rows_;
};

std::string got(const std::string& engine, const std::string& printed) {
    return "engine " + engine + ", printed " + printed;
}

// A printed optimum the engine beats is an inconsistency in the printed
// value; one the engine cannot reach is a failure of the engine.
Status compare_printed_sum(long engine, long printed) {
    if (engine == printed) return Status::Pass;
    return engine < printed ? Status::Discrepancy : Status::Fail;
}

Status compare_printed_ratio(const Rational& engine, const Rational& printed) {
    if (engine == printed) return Status::Pass;
    return engine > printed ? Status::Discrepancy : Status::Fail;
}

int ceil_log2_plus1(int t) {
    int s = 0;
    while ((1L << s) - 1 < t) ++s;
    return s;
}

std::vector<VerifyRow> anchor_rows(const SearchLimits& limits) {
    Rows rows;
    for (int n = 3; n <= 8; ++n) {
        std::string check = "C" + std::to_string(n) + " tau == 2";
        rows.guard(check, [&] {
            auto r = invariant(family(CycleSpec{n}), Mode::Blend, Quantity::Tau, Policy::Smallest, limits);
            rows.expect(check, std::get<long>(r.value) == 2, "engine " + std::to_string(std::get<long>(r.value)));
        });
    }

    auto ratio_check = [&](int n, const std::set<Rational>& expected) {
        std::string check = "C" + std::to_string(n) + " ratio set == {" + descending(expected) + "}";
        rows.guard(check, [&] {
            Digraph d(family(CycleSpec{n}), 0);
            AllocationPlan plan{std::vector<int>(n, 0)};
            plan.initial[0] = 2;
            auto got_set = ratio_set(d, plan, Mode::Blend);
            rows.expect(check, got_set == expected, "engine {" + descending(got_set) + "}");
        });
    };
    ratio_check(7, {Rational(7, 16), Rational(7, 18), Rational(7, 26), Rational(7, 30), Rational(7, 38), Rational(7, 40)});
    ratio_check(3, {Rational(3, 8), Rational(3, 10), Rational(3, 14), Rational(3, 16)});

    rows.guard("best_index(C7, blend) == 7/16", [&] {
        auto r = best_index(family(CycleSpec{7}), Mode::Blend, Policy::Smallest, limits);
        rows.expect("best_index(C7, blend) == 7/16", r.index == Rational(7, 16), "engine " + r.index.fraction());
    });

    rows.guard("Joost(4,7) symmetric orientation: tau 3, label sum 72, index 7/72", [&] {
        Digraph d(family(JoostSpec{4, 7}), 0);
        auto r = optimize_orientation(d, Mode::Blend);
        rows.expect("Joost(4,7) symmetric orientation: tau 3, label sum 72, index 7/72",
                    r.cost == 3 && r.label_sum == 72 && r.index == Rational(7, 72),
                    "engine tau " + std::to_string(r.cost) + ", label sum " + std::to_string(r.label_sum) + ", index " +
                        r.index.fraction());
    });
    rows.guard("Joost(4,7) tau == 3", [&] {
        auto r = best_index(family(JoostSpec{4, 7}), Mode::Blend, Policy::Smallest, limits);
        rows.expect("Joost(4,7) tau == 3", r.cost == 3, "engine " + std::to_string(r.cost));
        rows.add("Joost(4,7) best index vs printed 7/72", compare_printed_ratio(r.index, Rational(7, 72)),
                 got(r.index.fraction() + " (label sum " + std::to_string(r.label_sum) + ")", "7/72 (label sum 72)"));
    });

    rows.guard("Friendship(3,6) tau == 4", [&] {
        auto r = best_index(family(FriendshipSpec{3, 6}), Mode::Blend, Policy::Smallest, limits);
        rows.expect("Friendship(3,6) tau == 4", r.cost == 4, "engine " + std::to_string(r.cost));
        rows.expect("Friendship(3,6) best index >= 1/14", r.index >= Rational(1, 14), "engine " + r.index.fraction());
        long delta = 63 - r.label_sum;
        rows.add("Friendship(3,6) label sum vs printed 63", compare_printed_sum(r.label_sum, 63),
                 got(std::to_string(r.label_sum), "63") + ", delta " + std::to_string(delta));
    });

    for (int t = 1; t <= 10; ++t) {
        std::string check = "out-star with " + std::to_string(t) + " arcs: tau == " + std::to_string(ceil_log2_plus1(t));
        rows.guard(check, [&] {
            Digraph d(family(StarSpec{t}), 0);
            auto r = min_cost_for_orientation(d, Mode::Blend);
            long v = std::get<long>(r.value);
            rows.expect(check, v == ceil_log2_plus1(t), "engine " + std::to_string(v));
        });
    }

    for (int n = 2; n <= 9; ++n) {
        std::string check = "P" + std::to_string(n) + " br == 1 and index == 1 in every mode";
        rows.guard(check, [&] {
            bool ok = true;
            std::string detail;
            for (Mode m : {Mode::Brush, Mode::Fsg, Mode::Blend}) {
                auto r = best_index(family(PathSpec{n}), m, Policy::Smallest, limits);
                ok = ok && r.cost == 1 && r.index == Rational(1);
                detail += std::string(detail.empty() ? "" : "; ") + to_string(m) + " cost " + std::to_string(r.cost) +
                          " index " + r.index.fraction();
            }
            rows.expect(check, ok, detail);
        });
    }

    for (int n = 3; n <= 5; ++n) {
        std::string check = "W" + std::to_string(n + 1) + " tau vs printed 2";
        rows.guard(check, [&] {
            auto r = best_index(family(WheelSpec{n}), Mode::Blend, Policy::Smallest, limits);
            Status s = r.cost == 2 ? Status::Pass : r.cost > 2 ? Status::Discrepancy : Status::Fail;
            rows.add(check, s,
                     got(std::to_string(r.cost), "2") +
                         (r.cost > 2 ? "; no acyclic orientation completes with two primaries" : ""));
        });
    }
    return rows.take();
}

std::vector<VerifyRow> closed_form_rows(const SearchLimits& limits) {
    Rows rows;
    for (int n = 2; n <= 4; ++n) {
        std::string tag = "Friendship(3," + std::to_string(n) + ") FSG";
        rows.guard(tag, [&] {
            auto printed = fr3_formulas(n);
            auto r = best_index(family(FriendshipSpec{3, n}), Mode::Fsg, Policy::Smallest, limits);
            rows.expect(tag + " btau == 2(n-1)", r.cost == printed.b_tau, got(std::to_string(r.cost), std::to_string(printed.b_tau)));
            rows.add(tag + " index vs printed", compare_printed_ratio(r.index, printed.fsg_index),
                     got(r.index.fraction(), printed.fsg_index.fraction()));
            long printed_sum = 3L * n * n - 5L * n + 6;
            rows.add(tag + " label sum vs printed 3n^2-5n+6", compare_printed_sum(r.label_sum, printed_sum),
                     got(std::to_string(r.label_sum), std::to_string(printed_sum)));
        });
    }
    for (int n = 2; n <= 4; ++n) {
        // The printed derivation sums 6i for i = 0..n-1, but the final closed
        // form only follows from the sum over i = 0..n-2.
        long upto_n1 = 4 + 4L * (n - 1) + 3L * n * (n - 1);
        long upto_n2 = 4 + 4L * (n - 1) + 3L * (n - 1) * (n - 2);
        long closed = 3L * n * n - 5L * n + 6;
        rows.add("Friendship(3," + std::to_string(n) + ") printed intermediate sum vs closed form",
                 upto_n1 == closed ? Status::Pass : Status::Discrepancy,
                 "intermediate (i = 0..n-1) " + std::to_string(upto_n1) + ", closed form " + std::to_string(closed) +
                     ", sum to n-2 gives " + std::to_string(upto_n2));
    }

    const std::vector<std::vector<std::pair<int, int>>> general = {{{4, 2}, {3, 2}}, {{5, 1}, {3, 1}}, {{4, 1}, {3, 2}}};
    for (const auto& fams : general) {
        std::string tag = to_string(FamilySpec{GeneralFriendshipSpec{fams}}) + " FSG";
        rows.guard(tag, [&] {
            std::vector<std::pair<long, long>> params(fams.begin(), fams.end());
            auto printed = general_fr_formulas(params);
            auto r = best_index(family(GeneralFriendshipSpec{fams}), Mode::Fsg, Policy::Smallest, limits);
            rows.expect(tag + " btau == 2(kappa-1)", r.cost == printed.b_tau,
                        got(std::to_string(r.cost), std::to_string(printed.b_tau)));
            rows.add(tag + " index vs printed (" + printed.source + ")", compare_printed_ratio(r.index, printed.fsg_index),
                     got(r.index.fraction(), printed.fsg_index.fraction()));
        });
    }

    for (int n = 3; n <= 5; ++n) {
        for (int k = 1; k <= 3; ++k) {
            std::string tag = "Joost(" + std::to_string(n) + "," + std::to_string(k) + ") FSG";
            rows.guard(tag, [&] {
                auto printed = joost_formulas(n, k);
                auto r = best_index(family(JoostSpec{n, k}), Mode::Fsg, Policy::Smallest, limits);
                rows.expect(tag + " btau == k", r.cost == k, got(std::to_string(r.cost), std::to_string(k)));
                rows.add(tag + " raw ratio vs printed (" + printed.source + ")",
                         compare_printed_ratio(r.raw_ratio, printed.fsg_index),
                         got(r.raw_ratio.fraction() + " (label sum " + std::to_string(r.label_sum) + ")",
                             printed.fsg_index.fraction()));
            });
        }
    }
    for (int n = 3; n <= 5; ++n) {
        Graph g = build_family(JoostSpec{n, 2});
        bool cycle = g.vertex_count() == g.edge_count();
        for (Vertex v = 0; v < g.vertex_count(); ++v) cycle = cycle && g.degree(v) == 2;
        int len = g.edge_count();
        auto printed = joost_formulas(n, 2);
        bool formula_fits = printed.fsg_index == Rational(len, len + 1);
        rows.add("Joost(" + std::to_string(n) + ",2) is the cycle C" + std::to_string(len) + ", printed as C" +
                     std::to_string(n),
                 !cycle || !formula_fits ? Status::Fail : len == n ? Status::Pass : Status::Discrepancy,
                 "k=2 value " + printed.fsg_index.fraction() + " equals |E|/(|E|+1) on C" + std::to_string(len));
    }
    bool continuity = true;
    for (long n = 3; n <= 50; ++n) {
        continuity = continuity && Rational(2 * 2 * (n - 1), 2 * n + (n - 1) * 2) == joost_formulas(n, 2).fsg_index;
    }
    rows.expect("Joost k>=3 expression at k=2 equals the k=2 case for n = 3..50", continuity);

    for (int n = 3; n <= 8; ++n) {
        std::string check = "cycle_tau(" + std::to_string(n) + ") == engine tau";
        rows.guard(check, [&] {
            auto r = invariant(family(CycleSpec{n}), Mode::Blend, Quantity::Tau, Policy::Smallest, limits);
            rows.expect(check, std::get<long>(r.value) == cycle_tau(n),
                        got(std::to_string(std::get<long>(r.value)), std::to_string(cycle_tau(n))));
        });
    }
    return rows.take();
}

std::vector<VerifyRow> oracle_rows(const SearchLimits& limits, int corpus_edges) {
    Rows rows;
    auto corpus = connected_graph_corpus(corpus_edges);
    bool br_le_btau = true, tau_le_btau = true, index_le = true, sum_ge = true;
    std::string br_note, tau_note, index_note, sum_note;
    for (const Graph& g : corpus) {
        auto gp = std::make_shared<const Graph>(g);
        std::map<Mode, SearchResult> found;
        for (Mode m : {Mode::Brush, Mode::Fsg, Mode::Blend}) {
            std::string check = "oracle == optimizer on [" + edge_text(g) + "] " + to_string(m);
            rows.guard(check, [&] {
                auto o = oracle_invariants(g, m);
                auto r = best_index(gp, m, Policy::Smallest, limits);
                found.emplace(m, r);
                bool ok = std::get<long>(o.at(cost_quantity(m))) == r.cost &&
                          std::get<long>(o.at(Quantity::MinLabelSum)) == r.label_sum &&
                          std::get<Rational>(o.at(Quantity::Index)) == r.index &&
                          std::get<Rational>(o.at(Quantity::RawRatio)) == r.raw_ratio;
                rows.expect(check, ok,
                            "oracle " + std::to_string(std::get<long>(o.at(cost_quantity(m)))) + "/" +
                                std::to_string(std::get<long>(o.at(Quantity::MinLabelSum))) + ", optimizer " +
                                std::to_string(r.cost) + "/" + std::to_string(r.label_sum));
            });
        }
        if (found.size() != 3) continue;
        int br = found.at(Mode::Brush).cost, btau = found.at(Mode::Fsg).cost, tau = found.at(Mode::Blend).cost;
        if (br > btau) br_le_btau = false, br_note = edge_text(g);
        if (tau > btau) tau_le_btau = false, tau_note = edge_text(g);
        for (const auto& [m, r] : found) {
            if (r.index > Rational(1, r.cost)) index_le = false, index_note = edge_text(g);
            if (r.label_sum < g.edge_count()) sum_ge = false, sum_note = edge_text(g);
        }
    }
    std::string size = std::to_string(corpus.size()) + " graphs";
    rows.expect("br <= btau on the corpus", br_le_btau, br_le_btau ? size : "violated on " + br_note);
    rows.expect("tau <= btau on the corpus", tau_le_btau, tau_le_btau ? size : "violated on " + tau_note);
    rows.expect("index <= 1/cost on the corpus", index_le, index_le ? size : "violated on " + index_note);
    rows.expect("label sum >= |E| on the corpus", sum_ge, sum_ge ? size : "violated on " + sum_note);
    for (int n = 2; n <= 7; ++n) {
        std::string check = "P" + std::to_string(n) + " index == 1 in every mode";
        rows.guard(check, [&] {
            bool ok = true;
            for (Mode m : {Mode::Brush, Mode::Fsg, Mode::Blend}) {
                ok = ok && best_index(family(PathSpec{n}), m, Policy::Smallest, limits).index == Rational(1);
            }
            rows.expect(check, ok);
        });
    }
    return rows.take();
}

}  // namespace

std::vector<VerifyRow> verify(const std::string& suite, const SearchLimits& limits, int corpus_edges) {
    if (suite == "paper-anchors") return anchor_rows(limits);
    if (suite == "closed-forms") return closed_form_rows(limits);
    if (suite == "oracle") return oracle_rows(limits, corpus_edges);
    throw std::invalid_argument("unknown suite '" + suite + "' (expected paper-anchors|closed-forms|oracle)");
}

void print_rows(std::ostream& out, const std::vector<VerifyRow>& rows) {
    for (const VerifyRow& r : rows) {
        out << r.check << ": " << to_string(r.status);
        if (!r.detail.empty()) out << " (" << r.detail << ")";
        out << '\n';
    }
}

bool any_failed(const std::vector<VerifyRow>& rows) {
    return std::any_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.status == Status::Fail; });
}

// ---------------------------------------------------------------------------
// Sweeps

std::vector<SweepInstance> family_instances(const std::string& name, std::pair<int, int> n, std::pair<int, int> k) {
    static const std::set<std::string> one = {"cycle", "path", "star", "wheel"};
    static const std::set<std::string> two = {"friendship", "joost"};
    if (!one.count(name) && !two.count(name)) {
        throw std::invalid_argument("unknown family '" + name + "' for sweeps (expected cycle|path|star|wheel|friendship|joost)");
    }
    std::vector<SweepInstance> out;
    auto add = [&](const std::string& spec, const std::string& params) {
        SweepInstance inst{name, params, nullptr, {}};
        try {
            inst.graph = std::make_shared<const Graph>(build_family(parse_family_spec(spec)));
        } catch (const std::exception& e) {
            inst.build_error = e.what();
        }
        out.push_back(std::move(inst));
    };
    for (int a = n.first; a <= n.second; ++a) {
        if (one.count(name)) {
            add(name + ":" + std::to_string(a), "n=" + std::to_string(a));
            continue;
        }
        for (int b = k.first; b <= k.second; ++b) {
            add(name + ":" + std::to_string(a) + "," + std::to_string(b), "n=" + std::to_string(a) + " k=" + std::to_string(b));
        }
    }
    return out;
}

std::vector<SweepInstance> random_instances(int count, int vertices, int edges, std::uint64_t seed) {
    if (vertices < 2) throw std::invalid_argument("random graphs need at least 2 vertices");
    long max_edges = static_cast<long>(vertices) * (vertices - 1) / 2;
    if (edges < vertices - 1 || edges > max_edges) {
        throw std::invalid_argument("edge count must lie in [" + std::to_string(vertices - 1) + ", " +
                                    std::to_string(max_edges) + "] for a connected simple graph");
    }
    std::mt19937_64 rng(seed);
    std::vector<SweepInstance> out;
    for (int i = 0; i < count; ++i) {
        std::set<std::pair<int, int>> chosen;
        for (int v = 1; v < vertices; ++v) {
            int parent = std::uniform_int_distribution<int>(0, v - 1)(rng);
            chosen.emplace(parent, v);
        }
        std::vector<std::pair<int, int>> rest;
        for (int a = 0; a < vertices; ++a) {
            for (int b = a + 1; b < vertices; ++b) {
                if (!chosen.count({a, b})) rest.emplace_back(a, b);
            }
        }
        std::shuffle(rest.begin(), rest.end(), rng);
        for (int j = 0; static_cast<int>(chosen.size()) < edges; ++j) chosen.insert(rest[j]);
        std::vector<Edge> list;
        for (auto [a, b] : chosen) list.push_back({a, b});
        out.push_back({"random", "seed=" + std::to_string(seed) + " i=" + std::to_string(i),
                       std::make_shared<const Graph>(vertices, std::move(list)), {}});
    }
    return out;
}

SweepOutcome sweep(const std::vector<SweepInstance>& instances, Mode mode, Policy policy, const SearchLimits& limits) {
    std::ostringstream csv;
    csv << "family,params,vertices,edges,br,btau,tau,labelsum,index,ratio,runtime_ms,status\n";
    int failures = 0;
    for (const SweepInstance& inst : instances) {
        csv << inst.family << ",\"" << inst.params << "\",";
        if (!inst.graph) {
            ++failures;
            csv << ",,,,,,,,,\"error: " << inst.build_error << "\"\n";
            continue;
        }
        auto start = std::chrono::steady_clock::now();
        try {
            std::map<Mode, SearchResult> r;
            for (Mode m : {Mode::Brush, Mode::Fsg, Mode::Blend}) r.emplace(m, best_index(inst.graph, m, policy, limits));
            const SearchResult& main = r.at(mode);
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
            csv << inst.graph->vertex_count() << ',' << inst.graph->edge_count() << ',' << r.at(Mode::Brush).cost << ','
                << r.at(Mode::Fsg).cost << ',' << r.at(Mode::Blend).cost << ',' << main.label_sum << ','
                << main.index.fraction() << ',' << main.raw_ratio.fraction() << ',' << ms.count() << ",ok\n";
        } catch (const std::exception& e) {
            ++failures;
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
            std::string what = e.what();
            std::replace(what.begin(), what.end(), '"', '\'');
            const char* kind = dynamic_cast<const SearchLimitError*>(&e) ? "refused" : "error";
            csv << inst.graph->vertex_count() << ',' << inst.graph->edge_count() << ",,,,,,," << ms.count() << ",\""
                << kind << ": " << what << "\"\n";
        }
    }
    return {csv.str(), failures, static_cast<int>(instances.size())};
}

}  // namespace tattoo::report
