#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <thread>

#include "lpa/fixtures.hpp"
#include "lpa/graph.hpp"
#include "oracles.hpp"

using namespace lpa;
namespace fx = lpa::fixtures;

namespace {

VertexSet ids(const Graph& g, const std::vector<std::string>& names) {
    VertexSet s;
    for (const auto& n : names) s.push_back(g.vertex_index(n));
    return vs_sorted(std::move(s));
}

std::set<std::string> cycle_strings(const Graph& g, const std::vector<Cycle>& cs) {
    std::set<std::string> out;
    for (const auto& c : cs) out.insert(oracles::cycle_string(g, c));
    return out;
}

}  // namespace

TEST_CASE("graph construction validates identifiers") {
    CHECK_THROWS_AS(Graph({"v", "v"}, {}), ParseError);
    CHECK_THROWS_AS(Graph({"v"}, {{"e", "v", "x"}}), ParseError);
    CHECK_THROWS_AS(Graph({"v"}, {{"e", "v", "v"}, {"e", "v", "v"}}), ParseError);
    CHECK_THROWS_AS(Graph({"v"}, {{"v", "v", "v"}}), ParseError);  // id collision across kinds
    CHECK_THROWS_AS(Graph({"a.b"}, {}), ParseError);
    CHECK_NOTHROW(Graph({}, {}));  // empty graph is representable
}

TEST_CASE("reaches") {
    Graph g3 = fx::g3(), g5 = fx::g5(), g0 = fx::g0();
    CHECK(reaches(g3, g3.vertex_index("v1"), g3.vertex_index("v4")));
    CHECK_FALSE(reaches(g5, g5.vertex_index("w"), g5.vertex_index("v")));
    CHECK(reaches(g0, 0, 0));
    CHECK_THROWS_AS(reaches(g0, 0, 5), Error);
}

TEST_CASE("forward and backward closures on the worked examples") {
    Graph g3 = fx::g3(), g4 = fx::g4(), g5 = fx::g5();
    VertexSet c3 = ids(g3, {"v0", "v2", "v3", "v4"});
    VertexSet c4 = ids(g4, {"v0", "v2", "v3", "v4"});
    CHECK(forward_closure(g4, c4) == ids(g4, {"v0", "v2", "v3", "v4", "v5"}));
    CHECK(forward_closure(g3, c3) == c3);
    CHECK(forward_closure(g3, {}) == VertexSet{});
    CHECK(backward_closure(g3, c3) == ids(g3, {"v0", "v1", "v2", "v3", "v4"}));
    CHECK(backward_closure(g5, {g5.vertex_index("w")}) == g5.all_vertices());
    CHECK(backward_closure(g3, g3.all_vertices()) == g3.all_vertices());
    CHECK(cycle_vertices(g3) == c3);
    CHECK(cycle_vertices(g4) == c4);
}

TEST_CASE("vertex classes") {
    Graph g5 = fx::g5(), g4 = fx::g4(), gb0 = fx::gb0();
    auto c5 = vertex_classes(g5);
    CHECK(c5.regular == ids(g5, {"v"}));
    CHECK(c5.sinks == ids(g5, {"w"}));
    CHECK(c5.infinite_emitters.empty());
    CHECK(c5.infinite_receivers.empty());

    auto c4 = vertex_classes(g4);
    CHECK(c4.regular == ids(g4, {"v0", "v1", "v2", "v3", "v4", "v6"}));
    CHECK(c4.sinks == ids(g4, {"v5"}));

    auto cb = vertex_classes(gb0);
    CHECK(cb.infinite_emitters == ids(gb0, {"v"}));
    CHECK(cb.infinite_receivers == ids(gb0, {"w"}));
    CHECK(cb.sinks == ids(gb0, {"w"}));
}

TEST_CASE("cycle enumeration on the fixtures") {
    Graph g3 = fx::g3(), g5 = fx::g5(), g2 = fx::g2();
    CHECK(cycle_strings(g3, cycles(g3)) ==
          std::set<std::string>{"e02.e20", "e02.e23.e30", "e44"});
    CHECK(cycles(g5).empty());
    CHECK(cycle_strings(g2, cycles(g2)) == std::set<std::string>{"e1", "e2"});
    // a bundle loop expands to two representative copies
    Graph gb1 = fx::gb1();
    CHECK(cycle_strings(gb1, cycles(gb1)) == std::set<std::string>{"b#0", "b#1"});
}

TEST_CASE("cycle order and maximal cycles") {
    Graph g4 = fx::g4();
    auto cs = cycles(g4);
    REQUIRE(cs.size() == 3);
    const Cycle* two = nullptr;
    const Cycle* loop = nullptr;
    for (const auto& c : cs) {
        if (oracles::cycle_string(g4, c) == "e02.e20") two = &c;
        if (oracles::cycle_string(g4, c) == "e44") loop = &c;
    }
    REQUIRE(two);
    REQUIRE(loop);
    CHECK(cycle_order(g4, *two, *loop));
    CHECK_FALSE(cycle_order(g4, *loop, *two));
    CHECK(cycle_order(g4, *loop, *loop));

    CHECK(cycle_strings(g4, maximal_cycles(g4)) ==
          std::set<std::string>{"e02.e20", "e02.e23.e30"});
    Graph g2 = fx::g2();
    CHECK(maximal_cycles(g2).size() == 2);
    CHECK(maximal_cycles(fx::g5()).empty());
}

TEST_CASE("exclusivity") {
    Graph g4 = fx::g4(), g2 = fx::g2(), g6 = fx::g6();
    for (const auto& c : cycles(g4)) {
        bool expect = oracles::cycle_string(g4, c) == "e44";
        CHECK(is_exclusive(g4, c) == expect);
    }
    for (const auto& c : cycles(g2)) CHECK_FALSE(is_exclusive(g2, c));
    for (const auto& c : cycles(g6)) CHECK(is_exclusive(g6, c));
    // a bundle loop is never exclusive: its sibling copy is a second cycle
    Graph gb1 = fx::gb1();
    for (const auto& c : cycles(gb1)) CHECK_FALSE(is_exclusive(gb1, c));
    // membership is validated
    Graph g3 = fx::g3();
    Cycle foreign(g3, Path(0, {EdgeRef::named(0), EdgeRef::named(3)}));  // e02.e20
    CHECK_THROWS_AS(is_exclusive(g2, foreign), Error);
}

TEST_CASE("saturated closure") {
    Graph g4 = fx::g4(), g5 = fx::g5();
    VertexSet reg4 = vertex_classes(g4).regular;
    VertexSet tc = forward_closure(g4, cycle_vertices(g4));
    CHECK(saturated_closure(g4, reg4, tc) == g4.all_vertices());
    CHECK(saturated_closure(g4, {}, tc) == tc);
    CHECK(saturated_closure(g5, ids(g5, {"v"}), ids(g5, {"w"})) == g5.all_vertices());
    CHECK_THROWS_AS(saturated_closure(g5, ids(g5, {"w"}), {}), Error);  // w is a sink
}

TEST_CASE("restriction, quotient, opposite") {
    Graph g3 = fx::g3(), g5 = fx::g5(), g4 = fx::g4(), g2 = fx::g2();
    Graph r = restriction(g3, ids(g3, {"v4"}));
    CHECK(r.vertex_count() == 1);
    CHECK(r.edge_count() == 1);
    CHECK(r.edge(0).id == "e44");
    CHECK(restriction(g3, g3.all_vertices()) == g3);
    CHECK(restriction(g3, {}).empty());

    Graph q5 = quotient(g5, ids(g5, {"w"}));
    CHECK(q5.vertex_count() == 1);
    CHECK(q5.edge_count() == 0);
    Graph q4 = quotient(g4, forward_closure(g4, cycle_vertices(g4)));
    CHECK(q4.vertices() == std::vector<std::string>{"v1", "v6"});
    CHECK(q4.edge_count() == 2);
    CHECK(q4.edge(0).id == "e16a");
    CHECK(q4.edge(1).id == "e16b");
    CHECK(quotient(g4, {}) == g4);

    Graph op5 = opposite(g5);
    CHECK(op5.edge(0).src == op5.vertex_index("w"));
    CHECK(opposite(opposite(g3)) == g3);
    CHECK(opposite(g2) == g2);
}

TEST_CASE("closure properties against brute force") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 300; ++trial) {
        Graph g = oracles::random_graph(rng, 5, 8, trial % 3 == 0);
        int n = g.vertex_count();
        VertexSet X;
        for (int v = 0; v < n; ++v)
            if (rng() % 2) X.push_back(v);

        VertexSet t = forward_closure(g, X);
        CHECK(t == oracles::brute_hereditary_closure(g, X));
        CHECK(forward_closure(g, t) == t);                        // idempotent
        CHECK(vs_subset(X, t));                                   // extensive
        if (!X.empty()) {                                         // monotone
            VertexSet smaller(X.begin(), X.begin() + (long)(1 + rng() % X.size()));
            CHECK(vs_subset(forward_closure(g, smaller), t));
        }
        CHECK(backward_closure(g, X) == forward_closure(opposite(g), X));

        VertexSet reg = vertex_classes(g).regular;
        VertexSet sat = saturated_closure(g, reg, X);
        CHECK(sat == oracles::brute_saturated_closure(g, reg, X));
        VertexSet hs = hereditary_saturated_closure(g, reg, X);
        CHECK(hs == oracles::brute_hereditary_saturated_closure(g, reg, X));
        CHECK(is_hereditary(g, hs));
        CHECK(is_saturated(g, reg, hs));
    }
}

TEST_CASE("cycle predicates against definitional brute force") {
    std::mt19937_64 rng(77001);
    for (int trial = 0; trial < 250; ++trial) {
        Graph g = trial % 5 == 1 ? oracles::random_graph(rng, 6, 12, false)
                                 : oracles::random_graph(rng, 5, 8, trial % 4 == 0);
        auto brute = oracles::brute_cycles(g);
        std::set<std::string> brute_set;
        for (const auto& b : brute) brute_set.insert(b.canon);
        auto mine = cycles(g);
        CHECK(cycle_strings(g, mine) == brute_set);

        auto reach = oracles::reach_matrix(g);
        auto maxs = cycle_strings(g, maximal_cycles(g));
        for (const auto& c : mine) {
            CHECK(is_exclusive(g, c) == oracles::brute_exclusive(g, c));
            CHECK(maxs.count(oracles::cycle_string(g, c)) ==
                  (std::size_t)oracles::brute_maximal(g, c, brute, reach));
        }
    }
}

TEST_CASE("concurrent read-only use of one graph") {
    Graph g = fx::g4();
    auto expected_cycles = cycles(g).size();
    VertexSet expected_t = forward_closure(g, cycle_vertices(g));
    std::atomic<bool> ok{true};
    auto worker = [&]() {
        for (int i = 0; i < 200; ++i) {
            if (cycles(g).size() != expected_cycles) ok = false;
            if (forward_closure(g, cycle_vertices(g)) != expected_t) ok = false;
            if (maximal_cycles(g).size() != 2) ok = false;
        }
    };
    std::thread t1(worker), t2(worker);
    t1.join();
    t2.join();
    CHECK(ok);
}

TEST_CASE("smallest hereditary superset of cycle vertices") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = oracles::random_graph(rng, 6, 10, false);
        VertexSet C = cycle_vertices(g);
        CHECK(forward_closure(g, C) == oracles::brute_hereditary_closure(g, C));
    }
}
