#include <catch2/catch_amalgamated.hpp>

#include "cito/datasets.hpp"
#include "cito/io.hpp"
#include "cito/metrics.hpp"

using namespace cito;

namespace {

Cdg atm() {
    auto model = parse_model(datasets::atm_model());
    return map_uml_to_cdg(std::move(model.nodes), model.relations);
}

const EdgeMetrics& metrics_for(const Cdg& cdg, const AnalysisResult& analysis,
                               const std::string& c, const std::string& s) {
    for (std::size_t i = 0; i < cdg.edge_count(); ++i)
        if (cdg.edges()[i].client == c && cdg.edges()[i].server == s)
            return analysis.metrics[i];
    FAIL("edge not found: " + c + "->" + s);
    return analysis.metrics[0];
}

}  // namespace

TEST_CASE("rational arithmetic stays exact and normalized") {
    Rational half(2, 4);
    CHECK(half == Rational(1, 2));
    CHECK((Rational(1, 28) * Rational(26) / Rational(1, 11)).str() == "143/14");
    CHECK(Rational::parse("0.71") == Rational(71, 100));
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational(1, 3) < Rational(2, 5));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("information flow of the worked example") {
    Cdg cdg = atm();
    int g = cdg.node_index("G");
    int a = cdg.node_index("A");
    CHECK(if_complexity(cdg, g) == 24);
    CHECK(if_complexity(cdg, a) == 2);
    CHECK(if_complexity(cdg, g) + if_complexity(cdg, a) == 26);
}

TEST_CASE("information flow corner cases") {
    std::vector<ClassNode> nodes{{"a", "", 1, 1}, {"b", "", 1, 1}, {"c", "", 1, 1},
                                 {"d", "", 1, 1}, {"x", "", 1, 1}};
    std::vector<CdgEdge> edges{{"a", "x", DepKind::association, 1},
                               {"b", "x", DepKind::association, 1},
                               {"c", "x", DepKind::association, 1}};
    Cdg cdg(nodes, edges);
    int x = cdg.node_index("x");
    int d = cdg.node_index("d");
    CHECK(if_complexity(cdg, d) == 0);  // isolated
    CHECK(if_complexity(cdg, d, IfMode::multiplicative) == 0);
    CHECK(if_complexity(cdg, x) == 3);  // fan-in 3, fan-out 0
    CHECK(if_complexity(cdg, x, IfMode::multiplicative) == 0);
}

TEST_CASE("coupling strength of the worked examples") {
    Cdg cdg = atm();
    AnalysisResult analysis = analyze(cdg);
    CHECK(*metrics_for(cdg, analysis, "A", "G").cs == Rational(1, 11));
    CHECK(*metrics_for(cdg, analysis, "G", "A").cs == Rational(2, 11));
}

TEST_CASE("zero used members is the no-coupling sentinel") {
    ClassNode a{"a", "", 1, 1}, b{"b", "", 1, 1};
    CdgEdge e{"a", "b", DepKind::association, 0};
    CHECK_FALSE(coupling_strength(e, a, b).has_value());

    ClassNode empty1{"a", "", 0, 0}, empty2{"b", "", 0, 0};
    CdgEdge coupled{"a", "b", DepKind::association, 1};
    CHECK_THROWS_AS(coupling_strength(coupled, empty1, empty2), ModelError);
}

TEST_CASE("cycle weights of the worked examples") {
    Cdg cdg = atm();
    AnalysisResult analysis = analyze(cdg);
    CHECK(metrics_for(cdg, analysis, "A", "G").cw == Rational(1, 28));
    const EdgeMetrics& lg = metrics_for(cdg, analysis, "L", "G");
    CHECK(lg.cw == Rational(3, 28));
    CHECK(lg.cycles.size() == 3);
}

TEST_CASE("edge off every cycle has zero cycle weight") {
    std::vector<ClassNode> nodes{{"a", "", 1, 1}, {"b", "", 1, 1}, {"c", "", 1, 1}};
    std::vector<CdgEdge> edges{{"a", "b", DepKind::association, 1},
                               {"b", "a", DepKind::association, 1},
                               {"a", "c", DepKind::association, 1}};
    Cdg cdg(nodes, edges);
    AnalysisResult analysis = analyze(cdg);
    CHECK(metrics_for(cdg, analysis, "a", "c").cw == Rational(0));
    CHECK(metrics_for(cdg, analysis, "a", "b").cw == Rational(1));
}

TEST_CASE("edge weight follows the formula") {
    // inheritance and composition edges cost nothing
    CHECK(edge_weight(0, Rational(1, 2), 10, Rational(1, 3)).value == Rational(0));
    // direct evaluation: CW 1/28, IF 8, CS 2/6 -> 6/7
    EdgeWeight w = edge_weight(1, Rational(1, 28), 8, Rational(2, 6));
    CHECK_FALSE(w.unbreakable);
    CHECK(w.value == Rational(6, 7));
    CHECK(w.to_double() == Catch::Approx(0.857142857).epsilon(1e-9));
    // no coupling signal -> unbreakable
    CHECK(edge_weight(1, Rational(1, 28), 8, std::nullopt).unbreakable);
}

TEST_CASE("oracle value for the first worked edge") {
    Cdg cdg = atm();
    AnalysisResult analysis = analyze(cdg);
    const EdgeMetrics& ag = metrics_for(cdg, analysis, "A", "G");
    CHECK(ag.weight.value == Rational(143, 14));  // = 1/28 * 26 * 11
}

TEST_CASE("weight is homogeneous in the information flow") {
    Rational cw(3, 28);
    Rational cs(2, 9);
    for (long long scale : {2, 5, 10}) {
        EdgeWeight base = edge_weight(1, cw, 6, cs);
        EdgeWeight scaled = edge_weight(1, cw, 6 * scale, cs);
        CHECK(scaled.value == base.value * Rational(scale));
        CHECK(edge_weight(0, cw, 6 * scale, cs).value == Rational(0));
    }
}

TEST_CASE("weight strictly decreases as used members grow") {
    ClassNode a{"a", "", 2, 3}, b{"b", "", 3, 4};
    Rational prev;
    bool first = true;
    for (int used = 1; used <= b.total_members(); ++used) {
        CdgEdge e{"a", "b", DepKind::association, used};
        auto cs = coupling_strength(e, a, b);
        REQUIRE(cs.has_value());
        EdgeWeight w = edge_weight(1, Rational(2, 7), 9, cs);
        if (!first) CHECK(w.value < prev);
        prev = w.value;
        first = false;
    }
}

TEST_CASE("cycle-weight ratio matches the published steps") {
    // A->G: CS 0.09, 1 cycle
    CHECK(cycle_weight_ratio(1, Rational(9, 100)).to_double() == Catch::Approx(11.11).margin(0.005));
    // H->E: CS 0.08, 2 cycles
    CHECK(cycle_weight_ratio(2, Rational(2, 25)) == Rational(25));
    CHECK(cycle_weight_ratio(0, Rational(1, 2)) == Rational(0));
}

TEST_CASE("atm ratio columns come out exact") {
    Cdg cdg = atm();
    AnalysisResult analysis = analyze(cdg);
    CHECK(*metrics_for(cdg, analysis, "H", "E").cwr == Rational(25));
    CHECK(*metrics_for(cdg, analysis, "H", "I").cwr == Rational(25));
    CHECK(*metrics_for(cdg, analysis, "A", "G").cwr == Rational(11));
}

TEST_CASE("variant denominators") {
    PairCoupling pc;
    pc.c = Rational(1);
    pc.vd = Rational(0);
    pc.md = Rational(2);
    pc.rd = Rational(1);
    pc.pd = Rational(3);
    pc.attr = Rational(9);
    pc.meth = Rational(2);
    pc.am4 = Rational(53, 100);
    pc.am5 = Rational(122, 100);

    Rational cs(1, 4);
    CHECK(*variant_denominator(CouplingVariant::cs_eq1, cs, &pc) == cs);
    CHECK(*variant_denominator(CouplingVariant::broken_dependencies, cs, &pc) == Rational(1));
    CHECK(*variant_denominator(CouplingVariant::attribute_coupling, cs, &pc) == Rational(9));
    CHECK(*variant_denominator(CouplingVariant::method_coupling, cs, &pc) == Rational(2));
    CHECK(*variant_denominator(CouplingVariant::attr_and_method_4, cs, &pc) == Rational(53, 100));
    CHECK(*variant_denominator(CouplingVariant::attr_and_method_5, cs, &pc) == Rational(61, 50));
    CHECK(*variant_denominator(CouplingVariant::five_param_cs, cs, &pc) == Rational(7));

    // missing data or zero denominators mean no signal
    PairCoupling blank;
    blank.c = Rational(0);
    CHECK_FALSE(variant_denominator(CouplingVariant::attribute_coupling, cs, &blank).has_value());
    CHECK_FALSE(variant_denominator(CouplingVariant::five_param_cs, cs, &blank).has_value());
    CHECK_FALSE(variant_denominator(CouplingVariant::attribute_coupling, cs, nullptr).has_value());
}

TEST_CASE("cw stays within bounds and covers each cycle") {
    Cdg cdg = atm();
    AnalysisResult analysis = analyze(cdg);
    for (const EdgeMetrics& m : analysis.metrics) {
        CHECK(m.cw >= Rational(0));
        CHECK(m.cw <= Rational(1));
    }
    // per cycle, member edges' CW sums to at least |cycle| / total
    const Rational total(static_cast<long long>(analysis.cycles.size()));
    for (const Cycle& c : analysis.cycles) {
        Rational sum(0);
        for (const EdgeMetrics& m : analysis.metrics) {
            const CdgEdge& e = cdg.edges()[static_cast<std::size_t>(m.edge_index)];
            if (c.contains_edge(cdg.node_index(e.client), cdg.node_index(e.server))) sum += m.cw;
        }
        CHECK(sum >= Rational(static_cast<long long>(c.nodes.size())) / total);
    }
}
