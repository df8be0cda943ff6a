#ifndef LPA_FIXTURES_HPP
#define LPA_FIXTURES_HPP

#include <string>
#include <vector>

#include "lpa/graph.hpp"

namespace lpa::fixtures {

// The validated corpus.  g3 and g4 reproduce the worked examples edge for
// edge; the rest are the small shapes the test suites sweep.

inline Graph g0() { return Graph({"v"}, {}); }

inline Graph g1() { return Graph({"v"}, {{"e", "v", "v"}}); }

inline Graph g2() { return Graph({"v"}, {{"e1", "v", "v"}, {"e2", "v", "v"}}); }

/// Two-loop rose with an exit edge.
inline Graph g2x() {
    return Graph({"u", "v"}, {{"e1", "v", "v"}, {"e2", "v", "v"}, {"f", "v", "u"}});
}

inline Graph g3() {
    return Graph({"v0", "v1", "v2", "v3", "v4", "v5"},
                 {{"e02", "v0", "v2"},
                  {"e12", "v1", "v2"},
                  {"e15", "v1", "v5"},
                  {"e20", "v2", "v0"},
                  {"e23", "v2", "v3"},
                  {"e30", "v3", "v0"},
                  {"e34", "v3", "v4"},
                  {"e44", "v4", "v4"}});
}

inline Graph g4() {
    return Graph({"v0", "v1", "v2", "v3", "v4", "v5", "v6"},
                 {{"e02", "v0", "v2"},
                  {"e12", "v1", "v2"},
                  {"e16a", "v1", "v6"},
                  {"e16b", "v1", "v6"},
                  {"e20", "v2", "v0"},
                  {"e23", "v2", "v3"},
                  {"e30", "v3", "v0"},
                  {"e34", "v3", "v4"},
                  {"e44", "v4", "v4"},
                  {"e45", "v4", "v5"},
                  {"e65", "v6", "v5"}});
}

inline Graph g5() { return Graph({"v", "w"}, {{"e", "v", "w"}}); }

/// Loop with an exit edge.
inline Graph g6() { return Graph({"v", "w"}, {{"e", "v", "v"}, {"f", "v", "w"}}); }

/// One infinite bundle v -> w.
inline Graph gb0() { return Graph({"v", "w"}, {}, {{"b", "v", "w"}}); }

/// One infinite bundle loop.
inline Graph gb1() { return Graph({"v"}, {}, {{"b", "v", "v"}}); }

/// Bundle v -> w next to an unreachable two-loop rose at u.
inline Graph gb2() {
    return Graph({"u", "v", "w"}, {{"u1", "u", "u"}, {"u2", "u", "u"}}, {{"b", "v", "w"}});
}

struct NamedGraph {
    std::string name;
    Graph graph;
};

inline std::vector<NamedGraph> corpus() {
    return {{"g0", g0()}, {"g1", g1()}, {"g2", g2()}, {"g2x", g2x()}, {"g3", g3()},
            {"g4", g4()}, {"g5", g5()}, {"g6", g6()}, {"gb0", gb0()}, {"gb1", gb1()},
            {"gb2", gb2()}};
}

}  // namespace lpa::fixtures

#endif
