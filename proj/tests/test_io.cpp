#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "lpa/fixtures.hpp"
#include "lpa/io.hpp"
#include "oracles.hpp"

using namespace lpa;
namespace fx = lpa::fixtures;

TEST_CASE("graph JSON round trip") {
    for (const auto& [name, g] : fx::corpus()) {
        auto j = graph_to_json(g);
        Graph back = graph_from_json(json::parse(j.dump()));
        CHECK(back == g);
    }
}

TEST_CASE("graph JSON rejects malformed documents") {
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"vertices": ["v"], "extra": 1})")),
                    ParseError);
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges": []})")), ParseError);
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"vertices": [1]})")), ParseError);
    CHECK_THROWS_AS(
        graph_from_json(json::parse(R"({"vertices": ["v"], "edges": [{"id": "e"}]})")),
        ParseError);
    CHECK_THROWS_AS(graph_from_json(json::parse(
                        R"({"vertices": ["v"], "edges": [{"id": "e", "src": "v", "dst": "v", "x": 0}]})")),
                    ParseError);
    CHECK_NOTHROW(graph_from_json(json::parse(R"({"vertices": ["v"]})")));
}

TEST_CASE("element grammar examples") {
    auto ctx = make_cohn_context(fx::g3(), ScalarField::rationals());
    auto x = element_from_text(ctx, "3/2 * e02.e23 * e23^ + 1 * v0");
    CHECK(element_to_text(x) == "1 * v0 + 3/2 * e02.e23 * e23^");  // canonical order
    CHECK(element_from_text(ctx, element_to_text(x)) == x);
    CHECK(element_to_text(zero(ctx)) == "0");
    CHECK(element_from_text(ctx, "0").is_zero());
    CHECK(element_from_text(ctx, "  1 * v0 ") == vertex_element(ctx, 0));

    // the documented shape, on a graph carrying those exact identifiers
    Graph doc({"v0", "v1", "v2", "v3"},
              {{"e1", "v0", "v1"}, {"e2", "v1", "v2"}, {"e3", "v3", "v2"}});
    auto dctx = make_cohn_context(doc, ScalarField::rationals());
    auto y = element_from_text(dctx, "3/2 * e1.e2 * e3^ + 1 * v0");
    CHECK(element_to_text(y) == "1 * v0 + 3/2 * e1.e2 * e3^");
    CHECK(element_from_text(dctx, element_to_text(y)) == y);
}

TEST_CASE("element grammar errors carry positions") {
    auto ctx = make_cohn_context(fx::g5(), ScalarField::rationals());
    CHECK_THROWS_AS(element_from_text(ctx, "1 * nope"), ParseError);
    CHECK_THROWS_AS(element_from_text(ctx, "x * v"), ParseError);
    CHECK_THROWS_AS(element_from_text(ctx, "1 * e * v"), ParseError);   // ghost lacks ^
    CHECK_THROWS_AS(element_from_text(ctx, "1 * v * e^"), ParseError);  // terminus mismatch
    CHECK_THROWS_AS(element_from_text(ctx, "1 * e.e"), ParseError);     // does not compose
    CHECK_THROWS_AS(element_from_text(ctx, "1 * v + "), ParseError);
    try {
        element_from_text(ctx, "1 * v + 1 * nope");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 12);
    }
}

TEST_CASE("element text round trips on random elements") {
    std::mt19937_64 rng(2025);
    auto q = ScalarField::rationals();
    for (const Graph& g : {fx::g3(), fx::g6(), fx::gb2()}) {
        for (auto ctx : {make_path_context(g, q), make_cohn_context(g, q),
                         make_leavitt_context(g, q)}) {
            auto basis = basis_enum(ctx, 3);
            for (int i = 0; i < 60; ++i) {
                auto x = oracles::random_element(rng, ctx, basis, 5);
                CHECK(element_from_text(ctx, element_to_text(x)) == x);
            }
        }
    }
    // GF(p) coefficients round trip as residues
    auto f5 = make_cohn_context(fx::g5(), ScalarField::gfp(5));
    auto y = element_from_text(f5, "7 * e + 1/2 * v");
    CHECK(element_to_text(y) == "3 * v + 2 * e");
    CHECK(element_from_text(f5, element_to_text(y)) == y);
}

TEST_CASE("verdict JSON has the stable field order") {
    Graph g3 = fx::g3();
    auto j = verdict_to_json(g3, path_ring_src(g3, Side::Right));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"property", "conclusion", "flag", "clause", "witness"});
    CHECK(j["conclusion"] == "iff_flag");
    CHECK(j["flag"] == "strong_rank_condition");
    CHECK(j["witness"]["vertex"] == "v1");

    auto jr = verdict_to_json(g3, path_ring_rank(g3));
    CHECK(jr["witness"].is_null());
    CHECK(jr["flag"] == "rank_condition");

    Graph g4 = fx::g4();
    auto jl = verdict_to_json(g4, relative_leavitt_rc(g4, vertex_classes(g4).regular));
    CHECK(jl["gn_is_one"] == true);
    CHECK(jl["conclusion"] == "fails");
}

TEST_CASE("report is deterministic and embeds the closures") {
    Graph g3 = fx::g3();
    auto j = report(g3);
    CHECK(j["closures"]["T_cycle_vertices"] == json::array({"v0", "v2", "v3", "v4"}));
    CHECK(j["closures"]["M_cycle_vertices"] == json::array({"v0", "v1", "v2", "v3", "v4"}));
    CHECK(j.dump(2) == report(fx::g3()).dump(2));

    Graph g4 = fx::g4();
    auto j4 = report(g4);
    CHECK(j4["closures"]["X_cohn"] == json::array({"v0", "v2", "v3", "v4", "v5"}));
    CHECK(j4["closures"]["X_leavitt"] ==
          json::array({"v0", "v1", "v2", "v3", "v4", "v5", "v6"}));
    CHECK(j4["verdicts"]["leavitt"]["rc"]["conclusion"] == "fails");
    CHECK(j4["verdicts"]["cohn"]["amenable"]["conclusion"] == "holds");
}

TEST_CASE("folner certificate JSON") {
    auto ctx = make_path_context(fx::g1(), ScalarField::rationals());
    std::vector<Term> K{term_from_text(ctx, "1 * v").first, term_from_text(ctx, "1 * e").first};
    auto cert = folner(ctx, K, Rational(3, 2), 1);
    auto j = folner_to_json(ctx, cert);
    CHECK(j["p"] == "3/2");
    CHECK(j["count"] == 6);
    CHECK(j["strict"] == true);
    CHECK(j["K"].size() == 2);
    CHECK(j["F"].size() == 5);
}

TEST_CASE("dot export names every arrow") {
    std::string dot = to_dot(fx::g6());
    CHECK(dot.find("\"v\" -> \"v\" [label=\"e\"]") != std::string::npos);
    CHECK(dot.find("\"v\" -> \"w\" [label=\"f\"]") != std::string::npos);
    std::string dotb = to_dot(fx::gb0());
    CHECK(dotb.find("style=bold") != std::string::npos);
}
