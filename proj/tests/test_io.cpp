#include <catch2/catch_amalgamated.hpp>
#include <fstream>
#include <sstream>

#include "cito/datasets.hpp"
#include "cito/io.hpp"

using namespace cito;

TEST_CASE("bundled model parses to the published shape") {
    auto model = parse_model(datasets::atm_model());
    CHECK(model.nodes.size() == 21);
    REQUIRE(model.relations.size() == 28);
    int comp = 0, agg = 0, assoc = 0;
    for (const UmlRelation& r : model.relations) {
        if (r.kind == RelationKind::composition) ++comp;
        else if (r.kind == RelationKind::aggregation) ++agg;
        else ++assoc;
    }
    CHECK(comp == 9);
    CHECK(agg == 2);
    CHECK(assoc == 17);
}

TEST_CASE("empty relations section is fine") {
    auto model = parse_model("[classes]\nA,Alpha,1,2\n[relations]\n");
    CHECK(model.nodes.size() == 1);
    CHECK(model.relations.empty());
}

TEST_CASE("model parse errors carry line numbers") {
    CHECK_THROWS_WITH(parse_model("[classes]\nA,Alpha,1,2\n[relations]\nfriendship,A,A,,0,0\n"),
                      Catch::Matchers::ContainsSubstring("line 4") &&
                          Catch::Matchers::ContainsSubstring("friendship"));
    CHECK_THROWS_AS(parse_model("A,Alpha,1,2\n"), ParseError);                 // before any section
    CHECK_THROWS_AS(parse_model("[classes]\nA,Alpha,-1,2\n"), ParseError);     // negative count
    CHECK_THROWS_AS(parse_model("[classes]\nA!,Alpha,1,2\n"), ParseError);     // bad id
    CHECK_THROWS_AS(parse_model("[huh]\n"), ParseError);                       // unknown section
    CHECK_THROWS_AS(
        parse_model("[classes]\nA,Alpha,1,2\n[relations]\nassociation_uni,A,B,,0,0\n"),
        ParseError);  // undeclared id
    CHECK_THROWS_AS(
        parse_model("[classes]\nA,a,1,1\nB,b,1,1\n[relations]\nassociation_uni,A,B,A,0,0\n"),
        ParseError);  // whole on a plain association
}

TEST_CASE("comments and blank lines are ignored") {
    auto model = parse_model("# heading\n\n[classes]\n# a class\nA,Alpha,1,2\n\n[relations]\n");
    CHECK(model.nodes.size() == 1);
}

TEST_CASE("quoted fields survive the round trip") {
    auto model = parse_model("[classes]\nA,\"Printer, color\",1,2\n[relations]\n");
    REQUIRE(model.nodes.size() == 1);
    CHECK(model.nodes[0].name == "Printer, color");
    CHECK(csv_escape(model.nodes[0].name) == "\"Printer, color\"");
}

TEST_CASE("an empty model analyzes to nothing") {
    auto model = parse_model("[classes]\n[relations]\n");
    Cdg cdg = map_uml_to_cdg(std::move(model.nodes), model.relations);
    AnalysisResult analysis = analyze(cdg);
    CHECK(analysis.scc.components.empty());
    CHECK(analysis.cycles.empty());
    CHECK(analysis.metrics.empty());
}

TEST_CASE("bundled matrix parses directly into a dependency graph") {
    Cdg cdg = parse_matrix(datasets::briand_matrix());
    CHECK(cdg.node_count() == 21);
    bool has_inherit = false;
    for (const CdgEdge& e : cdg.edges()) {
        CHECK(e.used_members == 0);
        if (e.client == "12" && e.server == "11") {
            has_inherit = true;
            CHECK(e.kind == DepKind::inheritance);
        }
    }
    CHECK(has_inherit);
}

TEST_CASE("one-by-one empty matrix is a single isolated class") {
    Cdg cdg = parse_matrix(",X\nX,\n");
    CHECK(cdg.node_count() == 1);
    CHECK(cdg.edge_count() == 0);
}

TEST_CASE("matrix parse errors name the offending cell") {
    CHECK_THROWS_WITH(parse_matrix(",A,B\nA,,Xx\nB,,\n"),
                      Catch::Matchers::ContainsSubstring("Xx") &&
                          Catch::Matchers::ContainsSubstring("(A,B)"));
    CHECK_THROWS_WITH(parse_matrix(",A,B\nA,As,\nB,,\n"),
                      Catch::Matchers::ContainsSubstring("diagonal"));
    CHECK_THROWS_AS(parse_matrix(",A,B\nA,,As\n"), ParseError);      // missing row
    CHECK_THROWS_AS(parse_matrix(",A,B\nA,,As,extra\nB,,\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix(""), ParseError);
}

TEST_CASE("coupling file round-trips the published table") {
    CouplingData data = parse_coupling(datasets::briand_coupling());
    REQUIRE(data.size() == 29);
    const PairCoupling& hub = data.at({"8", "10"});
    CHECK(hub.five_param() == Rational(7));
    CHECK(*hub.am4 == Rational(53, 100));
    const PairCoupling& inherit = data.at({"12", "11"});
    CHECK(inherit.five_param() == Rational(5));
    CHECK_FALSE(inherit.attr.has_value());  // inf cell
    CHECK_THROWS_AS(parse_coupling("8,9,notanumber,0,0,0,0\n"), ParseError);
    CHECK_THROWS_AS(parse_coupling("8,9,1\n"), ParseError);
}

TEST_CASE("edge list output round-trips") {
    auto model = parse_model(datasets::atm_model());
    auto nodes = model.nodes;
    Cdg cdg = map_uml_to_cdg(std::move(model.nodes), model.relations);
    std::string csv = write_edge_list_csv(cdg);
    Cdg back(nodes, parse_edge_list(csv));
    REQUIRE(back.edge_count() == cdg.edge_count());
    for (std::size_t i = 0; i < cdg.edge_count(); ++i) {
        CHECK(back.edges()[i].client == cdg.edges()[i].client);
        CHECK(back.edges()[i].server == cdg.edges()[i].server);
        CHECK(back.edges()[i].kind == cdg.edges()[i].kind);
        CHECK(back.edges()[i].used_members == cdg.edges()[i].used_members);
    }
}

TEST_CASE("csv quoting and numeric formatting") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(format_fixed(13.5) == "13.500000");
    CHECK(format_fixed(177.91165413533835) == "177.911654");
}

TEST_CASE("reports are byte-deterministic") {
    std::string text = datasets::atm_model();
    std::string a = report_metadata(text, "greedy", "cs_eq1", "7");
    std::string b = report_metadata(text, "greedy", "cs_eq1", "7");
    CHECK(a == b);
    CHECK(a.find("# input_hash: ") != std::string::npos);
    CHECK(a.find("# tool: ") != std::string::npos);
}

#ifdef CITO_DATA_DIR
TEST_CASE("shipped data files match the embedded datasets") {
    auto slurp = [](const std::string& name) {
        std::ifstream in(std::string(CITO_DATA_DIR) + "/" + name, std::ios::binary);
        REQUIRE(in.good());
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    CHECK(slurp("atm.model") == datasets::atm_model());
    CHECK(slurp("briand.matrix") == datasets::briand_matrix());
    CHECK(slurp("briand.coupling") == datasets::briand_coupling());
}
#endif

TEST_CASE("analysis table uses the documented columns") {
    auto model = parse_model(datasets::atm_model());
    Cdg cdg = map_uml_to_cdg(std::move(model.nodes), model.relations);
    AnalysisResult analysis = analyze(cdg);
    std::string csv = write_metrics_csv(cdg, analysis);
    CHECK(csv.rfind("client,server,kind,used_members,cs,cw,if,k,weight,cwr", 0) == 0);
    CHECK(csv.find("A,G,use_dependency,1,1/11,1/28,26,1,10.214286") != std::string::npos);
}
