#ifndef LPA_GRAPH_HPP
#define LPA_GRAPH_HPP

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "lpa/error.hpp"

namespace lpa {

// A vertex set is a sorted, duplicate-free vector of vertex indices.
using VertexSet = std::vector<int>;

inline bool vs_contains(const VertexSet& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}
inline VertexSet vs_sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}
inline bool vs_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct EdgeSpec {
    std::string id, src, dst;
};

/// Finite-vertex directed multigraph.  Parallel edges are allowed; a
/// countably infinite family of parallel edges is recorded as a single
/// "infinite bundle".  Vertices, edges, and bundles are kept sorted by
/// identifier, so index order equals lexicographic identifier order.
///
/// Identifiers must be nonempty, drawn from [A-Za-z0-9_], and globally
/// unique across vertices, edges, and bundles; this keeps the element text
/// grammar unambiguous.
class Graph {
public:
    struct Edge { std::string id; int src, dst; };
    struct Bundle { std::string id; int src, dst; };

    Graph() = default;

    Graph(std::vector<std::string> vertices,
          std::vector<EdgeSpec> edges,
          std::vector<EdgeSpec> bundles = {}) {
        std::sort(vertices.begin(), vertices.end());
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            check_identifier(vertices[i]);
            if (i > 0 && vertices[i] == vertices[i - 1])
                throw ParseError("duplicate vertex id: " + vertices[i]);
            vindex_[vertices[i]] = (int)i;
        }
        verts_ = std::move(vertices);

        auto by_id = [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; };
        std::sort(edges.begin(), edges.end(), by_id);
        std::sort(bundles.begin(), bundles.end(), by_id);

        auto place = [&](const EdgeSpec& e, const char* kind) {
            check_identifier(e.id);
            if (vindex_.count(e.id) || eindex_.count(e.id) || bindex_.count(e.id))
                throw ParseError(std::string(kind) + " id reuses an existing identifier: " + e.id);
            auto s = vindex_.find(e.src), t = vindex_.find(e.dst);
            if (s == vindex_.end()) throw ParseError("unknown vertex: " + e.src);
            if (t == vindex_.end()) throw ParseError("unknown vertex: " + e.dst);
            return std::pair<int, int>(s->second, t->second);
        };
        for (const auto& e : edges) {
            auto [s, t] = place(e, "edge");
            eindex_[e.id] = (int)edges_.size();
            edges_.push_back({e.id, s, t});
        }
        for (const auto& b : bundles) {
            auto [s, t] = place(b, "bundle");
            bindex_[b.id] = (int)bundles_.size();
            bundles_.push_back({b.id, s, t});
        }

        out_e_.assign(verts_.size(), {});
        in_e_.assign(verts_.size(), {});
        out_b_.assign(verts_.size(), {});
        in_b_.assign(verts_.size(), {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            out_e_[edges_[i].src].push_back((int)i);
            in_e_[edges_[i].dst].push_back((int)i);
        }
        for (std::size_t i = 0; i < bundles_.size(); ++i) {
            out_b_[bundles_[i].src].push_back((int)i);
            in_b_[bundles_[i].dst].push_back((int)i);
        }
    }

    int vertex_count() const { return (int)verts_.size(); }
    int edge_count() const { return (int)edges_.size(); }
    int bundle_count() const { return (int)bundles_.size(); }
    bool empty() const { return verts_.empty(); }

    const std::string& vertex_id(int v) const { return verts_.at(v); }
    const Edge& edge(int e) const { return edges_.at(e); }
    const Bundle& bundle(int b) const { return bundles_.at(b); }
    const std::vector<std::string>& vertices() const { return verts_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Bundle>& bundles() const { return bundles_; }

    int vertex_index(const std::string& id) const {
        auto it = vindex_.find(id);
        if (it == vindex_.end()) throw Error("unknown vertex identifier: " + id);
        return it->second;
    }
    std::optional<int> find_vertex(const std::string& id) const {
        auto it = vindex_.find(id);
        if (it == vindex_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<int> find_edge(const std::string& id) const {
        auto it = eindex_.find(id);
        if (it == eindex_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<int> find_bundle(const std::string& id) const {
        auto it = bindex_.find(id);
        if (it == bindex_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<int>& out_edges(int v) const { return out_e_.at(v); }
    const std::vector<int>& in_edges(int v) const { return in_e_.at(v); }
    const std::vector<int>& out_bundles(int v) const { return out_b_.at(v); }
    const std::vector<int>& in_bundles(int v) const { return in_b_.at(v); }

    bool is_infinite_emitter(int v) const { return !out_b_.at(v).empty(); }
    bool is_infinite_receiver(int v) const { return !in_b_.at(v).empty(); }
    bool is_sink(int v) const { return out_e_.at(v).empty() && out_b_.at(v).empty(); }
    // regular: emits at least one and finitely many edges
    bool is_regular(int v) const { return !is_sink(v) && !is_infinite_emitter(v); }

    VertexSet all_vertices() const {
        VertexSet s(verts_.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = (int)i;
        return s;
    }

    bool operator==(const Graph& o) const {
        if (verts_ != o.verts_) return false;
        auto same_e = [](const Edge& a, const Edge& b) {
            return a.id == b.id && a.src == b.src && a.dst == b.dst;
        };
        auto same_b = [](const Bundle& a, const Bundle& b) {
            return a.id == b.id && a.src == b.src && a.dst == b.dst;
        };
        return std::equal(edges_.begin(), edges_.end(), o.edges_.begin(), o.edges_.end(), same_e) &&
               std::equal(bundles_.begin(), bundles_.end(), o.bundles_.begin(), o.bundles_.end(), same_b);
    }

private:
    static void check_identifier(const std::string& id) {
        if (id.empty()) throw ParseError("empty identifier");
        for (char c : id)
            if (!(std::isalnum((unsigned char)c) || c == '_'))
                throw ParseError("identifier contains a character outside [A-Za-z0-9_]: " + id);
    }

    std::vector<std::string> verts_;
    std::vector<Edge> edges_;
    std::vector<Bundle> bundles_;
    std::unordered_map<std::string, int> vindex_, eindex_, bindex_;
    std::vector<std::vector<int>> out_e_, in_e_, out_b_, in_b_;
};

/// Reference to one edge instance: either a named edge or the index-th copy
/// of an infinite bundle.
struct EdgeRef {
    int edge = -1;    // named edge index, or -1
    int bundle = -1;  // bundle index, or -1
    int copy = -1;    // copy number within the bundle, >= 0

    bool is_bundle() const { return bundle >= 0; }
    static EdgeRef named(int e) { return EdgeRef{e, -1, -1}; }
    static EdgeRef bundled(int b, int copy) { return EdgeRef{-1, b, copy}; }

    bool operator==(const EdgeRef& o) const {
        return edge == o.edge && bundle == o.bundle && copy == o.copy;
    }
};

inline int edge_src(const Graph& g, const EdgeRef& e) {
    return e.is_bundle() ? g.bundle(e.bundle).src : g.edge(e.edge).src;
}
inline int edge_dst(const Graph& g, const EdgeRef& e) {
    return e.is_bundle() ? g.bundle(e.bundle).dst : g.edge(e.edge).dst;
}
inline std::string edge_label(const Graph& g, const EdgeRef& e) {
    if (e.is_bundle()) return g.bundle(e.bundle).id + "#" + std::to_string(e.copy);
    return g.edge(e.edge).id;
}

/// Identifier-lexicographic order on edge instances (bundle copies tie-break
/// numerically).  Named edges and bundles are stored sorted by id, so two
/// refs of the same kind compare by index.
inline int edge_ref_cmp(const Graph& g, const EdgeRef& a, const EdgeRef& b) {
    if (!a.is_bundle() && !b.is_bundle()) return a.edge < b.edge ? -1 : a.edge > b.edge ? 1 : 0;
    if (a.is_bundle() && b.is_bundle()) {
        if (a.bundle != b.bundle) return a.bundle < b.bundle ? -1 : 1;
        return a.copy < b.copy ? -1 : a.copy > b.copy ? 1 : 0;
    }
    const std::string& x = a.is_bundle() ? g.bundle(a.bundle).id : g.edge(a.edge).id;
    const std::string& y = b.is_bundle() ? g.bundle(b.bundle).id : g.edge(b.edge).id;
    int c = x.compare(y);
    return c < 0 ? -1 : 1;  // ids never tie across kinds (globally unique)
}

/// Directed path: a source vertex plus a (possibly empty) composable edge
/// sequence.  A length-0 path is just its vertex.
class Path {
public:
    Path() = default;
    explicit Path(int vertex) : source_(vertex) {}
    Path(int source, std::vector<EdgeRef> edges) : source_(source), edges_(std::move(edges)) {}

    static Path trivial(int vertex) { return Path(vertex); }

    int source() const { return source_; }
    int range(const Graph& g) const {
        return edges_.empty() ? source_ : edge_dst(g, edges_.back());
    }
    std::size_t length() const { return edges_.size(); }
    const std::vector<EdgeRef>& edge_seq() const { return edges_; }

    bool valid(const Graph& g) const {
        if (source_ < 0 || source_ >= g.vertex_count()) return false;
        int at = source_;
        for (const auto& e : edges_) {
            if (e.is_bundle()) {
                if (e.bundle >= g.bundle_count() || e.copy < 0) return false;
            } else if (e.edge < 0 || e.edge >= g.edge_count()) {
                return false;
            }
            if (edge_src(g, e) != at) return false;
            at = edge_dst(g, e);
        }
        return true;
    }

    Path append(const Graph& g, const EdgeRef& e) const {
        Path p = *this;
        if (edge_src(g, e) != p.range(g)) throw Error("path extension does not compose");
        p.edges_.push_back(e);
        return p;
    }

    /// Vertices visited, in order (length+1 entries).
    std::vector<int> vertex_seq(const Graph& g) const {
        std::vector<int> vs{source_};
        for (const auto& e : edges_) vs.push_back(edge_dst(g, e));
        return vs;
    }

    bool operator==(const Path& o) const { return source_ == o.source_ && edges_ == o.edges_; }

private:
    int source_ = -1;
    std::vector<EdgeRef> edges_;
};

inline Path concat(const Graph& g, const Path& a, const Path& b) {
    if (a.range(g) != b.source()) throw Error("paths do not compose");
    std::vector<EdgeRef> es = a.edge_seq();
    es.insert(es.end(), b.edge_seq().begin(), b.edge_seq().end());
    return Path(a.source(), std::move(es));
}

/// (source id-sequence) lexicographic order; shorter prefixes come first.
inline int path_cmp(const Graph& g, const Path& a, const Path& b) {
    if (a.source() != b.source()) return a.source() < b.source() ? -1 : 1;
    std::size_t n = std::min(a.length(), b.length());
    for (std::size_t i = 0; i < n; ++i) {
        int c = edge_ref_cmp(g, a.edge_seq()[i], b.edge_seq()[i]);
        if (c != 0) return c;
    }
    if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
    return 0;
}

/// Simple cycle (all edge sources distinct), stored in the canonical
/// rotation whose basepoint is the least vertex on the cycle.  Two cycles
/// are equal iff their canonical rotations coincide.
class Cycle {
public:
    Cycle(const Graph& g, Path p) : path_(canonical(g, std::move(p))) {}

    const Path& path() const { return path_; }
    int basepoint() const { return path_.source(); }
    std::size_t length() const { return path_.length(); }

    VertexSet vertex_set(const Graph& g) const {
        std::vector<int> vs = path_.vertex_seq(g);
        vs.pop_back();  // closing vertex repeats the basepoint
        return vs_sorted(std::move(vs));
    }

    bool operator==(const Cycle& o) const { return path_ == o.path_; }

    /// Rotation of the cycle based at the given vertex (must lie on it).
    Path based_at(const Graph& g, int v) const {
        const auto& es = path_.edge_seq();
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (edge_src(g, es[i]) == v) {
                std::vector<EdgeRef> rot(es.begin() + i, es.end());
                rot.insert(rot.end(), es.begin(), es.begin() + i);
                return Path(v, std::move(rot));
            }
        }
        throw Error("vertex does not lie on the cycle");
    }

private:
    static Path canonical(const Graph& g, Path p) {
        if (p.length() == 0) throw Error("a cycle has positive length");
        if (p.range(g) != p.source()) throw Error("cycle path must close");
        std::vector<int> srcs;
        for (const auto& e : p.edge_seq()) srcs.push_back(edge_src(g, e));
        std::set<int> distinct(srcs.begin(), srcs.end());
        if (distinct.size() != srcs.size()) throw Error("cycle revisits a vertex");
        int least = *distinct.begin();
        std::size_t pivot = 0;
        while (srcs[pivot] != least) ++pivot;
        const auto& es = p.edge_seq();
        std::vector<EdgeRef> rot(es.begin() + pivot, es.end());
        rot.insert(rot.end(), es.begin(), es.begin() + pivot);
        return Path(least, std::move(rot));
    }

    Path path_;
};

inline int cycle_cmp(const Graph& g, const Cycle& a, const Cycle& b) {
    if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
    return path_cmp(g, a.path(), b.path());
}

// ---------------------------------------------------------------------------
// Reachability and closures
// ---------------------------------------------------------------------------

namespace detail {
// successor vertex list over named edges and bundles
inline std::vector<std::vector<int>> successors(const Graph& g) {
    std::vector<std::vector<int>> adj(g.vertex_count());
    for (const auto& e : g.edges()) adj[e.src].push_back(e.dst);
    for (const auto& b : g.bundles()) adj[b.src].push_back(b.dst);
    return adj;
}

inline void check_vertices(const Graph& g, const VertexSet& X) {
    for (int v : X)
        if (v < 0 || v >= g.vertex_count()) throw Error("unknown vertex index in set");
}
}  // namespace detail

/// v >= w: w is forward-reachable from v (length-0 paths count).
inline bool reaches(const Graph& g, int v, int w) {
    if (v < 0 || v >= g.vertex_count() || w < 0 || w >= g.vertex_count())
        throw Error("unknown vertex identifier");
    if (v == w) return true;
    auto adj = detail::successors(g);
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int t : adj[u]) {
            if (t == w) return true;
            if (!seen[t]) { seen[t] = 1; stack.push_back(t); }
        }
    }
    return false;
}

/// T(X): all vertices reachable from X.  The smallest hereditary superset.
inline VertexSet forward_closure(const Graph& g, const VertexSet& X) {
    detail::check_vertices(g, X);
    auto adj = detail::successors(g);
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int> stack;
    for (int v : X)
        if (!seen[v]) { seen[v] = 1; stack.push_back(v); }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int t : adj[u])
            if (!seen[t]) { seen[t] = 1; stack.push_back(t); }
    }
    VertexSet out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

inline Graph opposite(const Graph& g);

/// M(X): all vertices that reach X; the forward closure in the opposite graph.
inline VertexSet backward_closure(const Graph& g, const VertexSet& X) {
    detail::check_vertices(g, X);
    std::vector<std::vector<int>> radj(g.vertex_count());
    for (const auto& e : g.edges()) radj[e.dst].push_back(e.src);
    for (const auto& b : g.bundles()) radj[b.dst].push_back(b.src);
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int> stack;
    for (int v : X)
        if (!seen[v]) { seen[v] = 1; stack.push_back(v); }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int t : radj[u])
            if (!seen[t]) { seen[t] = 1; stack.push_back(t); }
    }
    VertexSet out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

struct VertexClasses {
    VertexSet regular, infinite_emitters, infinite_receivers, sinks;
};

inline VertexClasses vertex_classes(const Graph& g) {
    VertexClasses c;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.is_infinite_emitter(v)) c.infinite_emitters.push_back(v);
        else if (g.is_sink(v)) c.sinks.push_back(v);
        else c.regular.push_back(v);
        if (g.is_infinite_receiver(v)) c.infinite_receivers.push_back(v);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Strongly connected components
// ---------------------------------------------------------------------------

struct SccInfo {
    std::vector<int> comp;                  // vertex -> component id
    std::vector<std::vector<int>> members;  // component id -> vertices
    std::vector<char> has_cycle;            // component supports a cycle
    std::vector<std::vector<char>> reach;   // component reachability (reflexive)
};

/// Tarjan (iterative) plus condensation reachability.  A component supports
/// a cycle iff it has more than one vertex or carries a loop instance
/// (named loop or bundle loop).
inline SccInfo scc_info(const Graph& g) {
    int n = g.vertex_count();
    auto adj = detail::successors(g);
    SccInfo info;
    info.comp.assign(n, -1);
    std::vector<int> low(n, -1), num(n, -1), stck;
    std::vector<char> onstack(n, 0);
    int counter = 0;

    struct Frame { int v; std::size_t next; };
    for (int root = 0; root < n; ++root) {
        if (num[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        num[root] = low[root] = counter++;
        stck.push_back(root);
        onstack[root] = 1;
        while (!frames.empty()) {
            auto& f = frames.back();
            if (f.next < adj[f.v].size()) {
                int w = adj[f.v][f.next++];
                if (num[w] == -1) {
                    num[w] = low[w] = counter++;
                    stck.push_back(w);
                    onstack[w] = 1;
                    frames.push_back({w, 0});
                } else if (onstack[w]) {
                    low[f.v] = std::min(low[f.v], num[w]);
                }
            } else {
                if (low[f.v] == num[f.v]) {
                    int cid = (int)info.members.size();
                    info.members.emplace_back();
                    int w;
                    do {
                        w = stck.back();
                        stck.pop_back();
                        onstack[w] = 0;
                        info.comp[w] = cid;
                        info.members.back().push_back(w);
                    } while (w != f.v);
                    std::sort(info.members.back().begin(), info.members.back().end());
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }

    int m = (int)info.members.size();
    info.has_cycle.assign(m, 0);
    for (int c = 0; c < m; ++c)
        if (info.members[c].size() > 1) info.has_cycle[c] = 1;
    for (const auto& e : g.edges())
        if (e.src == e.dst) info.has_cycle[info.comp[e.src]] = 1;
    for (const auto& b : g.bundles())
        if (b.src == b.dst) info.has_cycle[info.comp[b.src]] = 1;

    // condensation reachability by DFS from each component
    std::vector<std::vector<int>> cadj(m);
    for (int v = 0; v < n; ++v)
        for (int w : adj[v])
            if (info.comp[v] != info.comp[w]) cadj[info.comp[v]].push_back(info.comp[w]);
    info.reach.assign(m, std::vector<char>(m, 0));
    for (int c = 0; c < m; ++c) {
        std::vector<int> stack{c};
        info.reach[c][c] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int t : cadj[u])
                if (!info.reach[c][t]) { info.reach[c][t] = 1; stack.push_back(t); }
        }
    }
    return info;
}

inline bool has_loop_at(const Graph& g, int v) {
    for (int e : g.out_edges(v))
        if (g.edge(e).dst == v) return true;
    for (int b : g.out_bundles(v))
        if (g.bundle(b).dst == v) return true;
    return false;
}

/// Vertices lying on at least one cycle: nontrivial components plus loop
/// carriers.  (Cheaper than enumerating cycles.)
inline VertexSet cycle_vertices(const Graph& g) {
    auto info = scc_info(g);
    VertexSet out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (info.has_cycle[info.comp[v]] && (info.members[info.comp[v]].size() > 1 || has_loop_at(g, v)))
            out.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Cycle enumeration
// ---------------------------------------------------------------------------

/// All simple cycles up to rotation, sorted canonically.  Each infinite
/// bundle is expanded to exactly two indexed copies; that detects both cycle
/// existence through a bundle and the loss of exclusivity caused by the
/// parallel copies.
inline std::vector<Cycle> cycles(const Graph& g) {
    int n = g.vertex_count();
    // arc instances
    struct Arc { int src, dst; EdgeRef ref; };
    std::vector<std::vector<Arc>> arcs(n);
    for (int e = 0; e < g.edge_count(); ++e)
        arcs[g.edge(e).src].push_back({g.edge(e).src, g.edge(e).dst, EdgeRef::named(e)});
    for (int b = 0; b < g.bundle_count(); ++b)
        for (int copy = 0; copy < 2; ++copy)
            arcs[g.bundle(b).src].push_back({g.bundle(b).src, g.bundle(b).dst, EdgeRef::bundled(b, copy)});

    std::vector<Cycle> out;
    std::vector<char> onpath(n, 0);
    std::vector<EdgeRef> seq;

    // Cycles are found once each, with the least vertex as start: the DFS
    // from start s may only pass through vertices > s.
    for (int s = 0; s < n; ++s) {
        auto dfs = [&](auto&& self, int at) -> void {
            for (const auto& a : arcs[at]) {
                if (a.dst == s) {
                    seq.push_back(a.ref);
                    out.emplace_back(g, Path(s, seq));
                    seq.pop_back();
                } else if (a.dst > s && !onpath[a.dst]) {
                    onpath[a.dst] = 1;
                    seq.push_back(a.ref);
                    self(self, a.dst);
                    seq.pop_back();
                    onpath[a.dst] = 0;
                }
            }
        };
        onpath[s] = 1;
        dfs(dfs, s);
        onpath[s] = 0;
    }
    std::sort(out.begin(), out.end(),
              [&](const Cycle& a, const Cycle& b) { return cycle_cmp(g, a, b) < 0; });
    return out;
}

inline bool is_cycle_of(const Graph& g, const Cycle& c) {
    return c.path().valid(g) && c.path().range(g) == c.path().source();
}

/// Quasiorder on cycles: w >= t iff some (equivalently, every) vertex of w
/// reaches some vertex of t.  Tested from the basepoints.
inline bool cycle_order(const Graph& g, const Cycle& w, const Cycle& t) {
    if (!is_cycle_of(g, w) || !is_cycle_of(g, t)) throw Error("cycle does not belong to the graph");
    return reaches(g, w.basepoint(), t.basepoint());
}

/// Maximal cycles, computed on the condensation: a cycle is maximal iff no
/// cycle-bearing component other than its own reaches its component.
inline std::vector<Cycle> maximal_cycles(const Graph& g) {
    auto info = scc_info(g);
    int m = (int)info.members.size();
    std::vector<char> comp_maximal(m, 1);
    for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d)
            if (d != c && info.has_cycle[d] && info.reach[d][c]) { comp_maximal[c] = 0; break; }
    std::vector<Cycle> out;
    for (const auto& c : cycles(g))
        if (comp_maximal[info.comp[c.basepoint()]]) out.push_back(c);
    return out;
}

/// A cycle is exclusive iff it shares no vertex with any other cycle, up to
/// rotation.  Criterion used: the induced subgraph on the cycle's strongly
/// connected component is exactly the cycle (same vertices, its edge
/// instances and no others, no internal bundles).
inline bool is_exclusive(const Graph& g, const Cycle& c) {
    if (!is_cycle_of(g, c)) throw Error("cycle does not belong to the graph");
    auto info = scc_info(g);
    int comp = info.comp[c.basepoint()];
    VertexSet cv = c.vertex_set(g);
    if ((int)info.members[comp].size() != (int)cv.size()) return false;
    if (info.members[comp] != cv) return false;

    std::vector<char> in_comp(g.vertex_count(), 0);
    for (int v : cv) in_comp[v] = 1;

    // any internal bundle means >= 2 parallel copies, hence a second cycle
    for (const auto& b : g.bundles())
        if (in_comp[b.src] && in_comp[b.dst]) return false;

    std::set<int> cycle_edges;
    for (const auto& e : c.path().edge_seq()) {
        if (e.is_bundle()) return false;  // its own sibling copy is a second cycle
        cycle_edges.insert(e.edge);
    }
    int internal = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (in_comp[g.edge(e).src] && in_comp[g.edge(e).dst]) {
            if (!cycle_edges.count(e)) return false;
            ++internal;
        }
    }
    return internal == (int)c.length();
}

// ---------------------------------------------------------------------------
// Saturation, restriction, quotient, opposite
// ---------------------------------------------------------------------------

/// Least fixed point of the saturation step over V: repeatedly add v in V
/// with r(s^-1(v)) inside the set.  Reached within |E^0| rounds.
inline VertexSet saturated_closure(const Graph& g, const VertexSet& V, const VertexSet& X) {
    detail::check_vertices(g, V);
    detail::check_vertices(g, X);
    for (int v : V)
        if (!g.is_regular(v))
            throw Error("saturation set contains a non-regular vertex: " + g.vertex_id(v));
    std::vector<char> in(g.vertex_count(), 0);
    for (int v : X) in[v] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int v : V) {
            if (in[v]) continue;
            bool all = true;
            for (int e : g.out_edges(v))
                if (!in[g.edge(e).dst]) { all = false; break; }
            if (all) { in[v] = 1; grew = true; }
        }
    }
    VertexSet out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (in[v]) out.push_back(v);
    return out;
}

/// Smallest hereditary and V-saturated superset of X.
inline VertexSet hereditary_saturated_closure(const Graph& g, const VertexSet& V, const VertexSet& X) {
    return saturated_closure(g, V, forward_closure(g, X));
}

/// Induced subgraph on X; edges and bundles keep their identifiers.
inline Graph restriction(const Graph& g, const VertexSet& X) {
    detail::check_vertices(g, X);
    std::vector<char> keep(g.vertex_count(), 0);
    for (int v : X) keep[v] = 1;
    std::vector<std::string> vs;
    for (int v : X) vs.push_back(g.vertex_id(v));
    std::vector<EdgeSpec> es, bs;
    for (const auto& e : g.edges())
        if (keep[e.src] && keep[e.dst]) es.push_back({e.id, g.vertex_id(e.src), g.vertex_id(e.dst)});
    for (const auto& b : g.bundles())
        if (keep[b.src] && keep[b.dst]) bs.push_back({b.id, g.vertex_id(b.src), g.vertex_id(b.dst)});
    return Graph(std::move(vs), std::move(es), std::move(bs));
}

/// Restriction to the complement of X.
inline Graph quotient(const Graph& g, const VertexSet& X) {
    detail::check_vertices(g, X);
    VertexSet rest;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!vs_contains(X, v)) rest.push_back(v);
    return restriction(g, rest);
}

/// Every edge and bundle reversed.  Involution.
inline Graph opposite(const Graph& g) {
    std::vector<EdgeSpec> es, bs;
    for (const auto& e : g.edges()) es.push_back({e.id, g.vertex_id(e.dst), g.vertex_id(e.src)});
    for (const auto& b : g.bundles()) bs.push_back({b.id, g.vertex_id(b.dst), g.vertex_id(b.src)});
    return Graph(g.vertices(), std::move(es), std::move(bs));
}

inline bool is_hereditary(const Graph& g, const VertexSet& X) {
    return forward_closure(g, X) == X;
}

inline bool is_saturated(const Graph& g, const VertexSet& V, const VertexSet& X) {
    return saturated_closure(g, V, X) == X;
}

}  // namespace lpa

#endif
