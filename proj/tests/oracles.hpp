#ifndef LPA_TESTS_ORACLES_HPP
#define LPA_TESTS_ORACLES_HPP

// Independent brute-force oracles for the test suites.  These deliberately
// re-derive everything from definitions (adjacency matrices, subset sweeps,
// exhaustive walk enumeration, string prefix matching) and never call the
// library code paths they are checking.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/fixtures.hpp"
#include "lpa/graph.hpp"

namespace oracles {

// one-step adjacency (edges and bundles), then reflexive-transitive closure
inline std::vector<std::vector<char>> reach_matrix(const lpa::Graph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v) r[v][v] = 1;
    for (const auto& e : g.edges()) r[e.src][e.dst] = 1;
    for (const auto& b : g.bundles()) r[b.src][b.dst] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (r[i][k] && r[k][j]) r[i][j] = 1;
    return r;
}

inline bool subset_hereditary(const lpa::Graph& g, unsigned mask) {
    for (const auto& e : g.edges())
        if ((mask >> e.src & 1) && !(mask >> e.dst & 1)) return false;
    for (const auto& b : g.bundles())
        if ((mask >> b.src & 1) && !(mask >> b.dst & 1)) return false;
    return true;
}

inline bool subset_saturated(const lpa::Graph& g, const lpa::VertexSet& V, unsigned mask) {
    for (int v : V) {
        if (mask >> v & 1) continue;
        bool all_in = true;
        for (int e : g.out_edges(v))
            if (!(mask >> g.edge(e).dst & 1)) { all_in = false; break; }
        if (all_in) return false;
    }
    return true;
}

inline unsigned to_mask(const lpa::VertexSet& s) {
    unsigned m = 0;
    for (int v : s) m |= 1u << v;
    return m;
}

inline lpa::VertexSet from_mask(unsigned m, int n) {
    lpa::VertexSet out;
    for (int v = 0; v < n; ++v)
        if (m >> v & 1) out.push_back(v);
    return out;
}

/// Intersection of all hereditary supersets; hereditary sets are closed
/// under intersection, so this is the smallest one.
inline lpa::VertexSet brute_hereditary_closure(const lpa::Graph& g, const lpa::VertexSet& X) {
    int n = g.vertex_count();
    unsigned xm = to_mask(X), acc = (1u << n) - 1;
    for (unsigned m = 0; m < (1u << n); ++m)
        if ((m & xm) == xm && subset_hereditary(g, m)) acc &= m;
    return from_mask(acc, n);
}

inline lpa::VertexSet brute_hereditary_saturated_closure(const lpa::Graph& g,
                                                         const lpa::VertexSet& V,
                                                         const lpa::VertexSet& X) {
    int n = g.vertex_count();
    unsigned xm = to_mask(X), acc = (1u << n) - 1;
    for (unsigned m = 0; m < (1u << n); ++m)
        if ((m & xm) == xm && subset_hereditary(g, m) && subset_saturated(g, V, m)) acc &= m;
    return from_mask(acc, n);
}

/// Smallest V-saturated superset (no heredity requirement).
inline lpa::VertexSet brute_saturated_closure(const lpa::Graph& g, const lpa::VertexSet& V,
                                              const lpa::VertexSet& X) {
    int n = g.vertex_count();
    unsigned xm = to_mask(X), acc = (1u << n) - 1;
    for (unsigned m = 0; m < (1u << n); ++m)
        if ((m & xm) == xm && subset_saturated(g, V, m)) acc &= m;
    return from_mask(acc, n);
}

// ---------------------------------------------------------------------------
// Definitional cycle machinery over exhaustive walk enumeration
// ---------------------------------------------------------------------------

struct Arc {
    int src, dst;
    std::string label;
};

inline std::vector<Arc> arc_instances(const lpa::Graph& g) {
    std::vector<Arc> arcs;
    for (const auto& e : g.edges()) arcs.push_back({e.src, e.dst, e.id});
    for (const auto& b : g.bundles())
        for (int c = 0; c < 2; ++c)
            arcs.push_back({b.src, b.dst, b.id + "#" + std::to_string(c)});
    return arcs;
}

/// Rotation-canonical label string of a closed vertex-simple walk.
inline std::string canonical_cycle_string(const lpa::Graph& g, const std::vector<int>& arc_idx,
                                          const std::vector<Arc>& arcs) {
    std::size_t n = arc_idx.size();
    int best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (g.vertex_id(arcs[arc_idx[i]].src) < g.vertex_id(arcs[arc_idx[best]].src)) best = (int)i;
    std::string s;
    for (std::size_t k = 0; k < n; ++k) {
        if (k) s += '.';
        s += arcs[arc_idx[(best + k) % n]].label;
    }
    return s;
}

struct BruteCycle {
    std::string canon;
    std::set<int> vertices;
};

/// Every vertex-simple closed walk up to length |E^0|, by exhaustive
/// extension of composable arc sequences, deduplicated by rotation.
inline std::vector<BruteCycle> brute_cycles(const lpa::Graph& g) {
    auto arcs = arc_instances(g);
    std::map<std::string, BruteCycle> found;
    std::vector<int> seq;
    auto extend = [&](auto&& self, int start, int at, std::set<int>& used) -> void {
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            if (arcs[i].src != at) continue;
            if (arcs[i].dst == start) {
                seq.push_back((int)i);
                std::string c = canonical_cycle_string(g, seq, arcs);
                if (!found.count(c)) {
                    std::set<int> vs = used;
                    vs.insert(start);
                    found[c] = BruteCycle{c, vs};
                }
                seq.pop_back();
            } else if (!used.count(arcs[i].dst) && arcs[i].dst != start &&
                       (int)seq.size() + 1 < g.vertex_count()) {
                used.insert(arcs[i].dst);
                seq.push_back((int)i);
                self(self, start, arcs[i].dst, used);
                seq.pop_back();
                used.erase(arcs[i].dst);
            }
        }
    };
    for (int s = 0; s < g.vertex_count(); ++s) {
        std::set<int> used;
        extend(extend, s, s, used);
    }
    std::vector<BruteCycle> out;
    for (auto& [k, v] : found) out.push_back(std::move(v));
    return out;
}

inline std::string cycle_string(const lpa::Graph& g, const lpa::Cycle& c) {
    std::string s;
    for (std::size_t i = 0; i < c.path().length(); ++i) {
        if (i) s += '.';
        s += lpa::edge_label(g, c.path().edge_seq()[i]);
    }
    return s;
}

inline bool brute_exclusive(const lpa::Graph& g, const lpa::Cycle& c) {
    std::string self = cycle_string(g, c);
    auto vs = c.vertex_set(g);
    for (const auto& other : brute_cycles(g)) {
        if (other.canon == self) continue;
        for (int v : vs)
            if (other.vertices.count(v)) return false;
    }
    return true;
}

inline bool brute_maximal(const lpa::Graph& g, const lpa::Cycle& c,
                          const std::vector<BruteCycle>& all,
                          const std::vector<std::vector<char>>& reach) {
    int base = c.basepoint();
    for (const auto& other : all) {
        int obase = *other.vertices.begin();
        bool above = reach[obase][base];
        bool below = reach[base][obase];
        if (above && !below) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// The closed-form monomial product, over label strings
// ---------------------------------------------------------------------------

struct LabelPath {
    std::string source;  // vertex id
    std::vector<std::string> labels;
};

inline LabelPath to_labels(const lpa::Graph& g, const lpa::Path& p) {
    LabelPath lp{g.vertex_id(p.source()), {}};
    for (const auto& e : p.edge_seq()) lp.labels.push_back(lpa::edge_label(g, e));
    return lp;
}

/// The three-way case analysis on label sequences: (a1 b1^)(a2 b2^) is
/// a1 a2' b2^ when a2 = b1 a2', a1 (b2 b1')^ when b1 = a2 b1', else zero.
inline std::optional<std::pair<LabelPath, LabelPath>> cohn_product_oracle(const lpa::Graph& g,
                                                                          const lpa::Term& s,
                                                                          const lpa::Term& t) {
    LabelPath a1 = to_labels(g, s.alpha), b1 = to_labels(g, s.beta);
    LabelPath a2 = to_labels(g, t.alpha), b2 = to_labels(g, t.beta);
    auto prefix = [](const LabelPath& p, const LabelPath& q) {
        if (p.source != q.source || p.labels.size() > q.labels.size()) return false;
        return std::equal(p.labels.begin(), p.labels.end(), q.labels.begin());
    };
    auto range_of = [&](const LabelPath& p) {
        if (p.labels.empty()) return p.source;
        const std::string& last = p.labels.back();
        auto hash = last.find('#');
        if (hash != std::string::npos)
            return g.vertex_id(g.bundle(*g.find_bundle(last.substr(0, hash))).dst);
        return g.vertex_id(g.edge(*g.find_edge(last)).dst);
    };
    if (prefix(b1, a2)) {
        LabelPath left = a1;
        for (std::size_t i = b1.labels.size(); i < a2.labels.size(); ++i)
            left.labels.push_back(a2.labels[i]);
        return std::pair<LabelPath, LabelPath>{left, b2};
    }
    if (prefix(a2, b1)) {
        LabelPath ghost = b2;
        for (std::size_t i = a2.labels.size(); i < b1.labels.size(); ++i)
            ghost.labels.push_back(b1.labels[i]);
        return std::pair<LabelPath, LabelPath>{a1, ghost};
    }
    (void)range_of;
    return std::nullopt;
}

inline std::string label_path_string(const LabelPath& p) {
    if (p.labels.empty()) return p.source;
    std::string s;
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        if (i) s += '.';
        s += p.labels[i];
    }
    return s;
}

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

inline lpa::Graph random_graph(std::mt19937_64& rng, int max_vertices = 5, int max_edges = 8,
                               bool with_bundles = false) {
    int n = 1 + (int)(rng() % (std::uint64_t)max_vertices);
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back("q" + std::to_string(i));
    int m = (int)(rng() % (std::uint64_t)(max_edges + 1));
    std::vector<lpa::EdgeSpec> es, bs;
    for (int i = 0; i < m; ++i)
        es.push_back({"a" + std::to_string(i), vs[rng() % n], vs[rng() % n]});
    if (with_bundles) {
        int nb = (int)(rng() % 3);
        for (int i = 0; i < nb; ++i)
            bs.push_back({"z" + std::to_string(i), vs[rng() % n], vs[rng() % n]});
    }
    return lpa::Graph(std::move(vs), std::move(es), std::move(bs));
}

inline lpa::Element random_element(std::mt19937_64& rng, const lpa::AlgebraContext& ctx,
                                   const std::vector<lpa::Term>& basis, int max_support) {
    if (basis.empty()) return lpa::zero(ctx);
    std::vector<std::pair<lpa::Term, lpa::Rational>> raw;
    int support = 1 + (int)(rng() % (std::uint64_t)max_support);
    for (int i = 0; i < support; ++i) {
        long long c = (long long)(rng() % 7) - 3;
        if (c == 0) c = 1;
        raw.push_back({basis[rng() % basis.size()], lpa::Rational(c)});
    }
    return normal_form(ctx, raw);
}

/// One-step rewrite applied at random positions in random order; merging
/// only at the end.  Independent of the library's reduction loop.
inline lpa::Element random_order_reduce(std::mt19937_64& rng, const lpa::AlgebraContext& ctx,
                                        std::vector<std::pair<lpa::Term, lpa::Rational>> work) {
    const lpa::Graph& g = ctx->graph;
    while (true) {
        std::vector<std::size_t> hot;
        for (std::size_t i = 0; i < work.size(); ++i)
            if (lpa::term_forbidden(*ctx, work[i].first)) hot.push_back(i);
        if (hot.empty()) break;
        std::size_t pick = hot[rng() % hot.size()];
        auto [t, c] = work[pick];
        work.erase(work.begin() + pick);
        int ev = t.alpha.edge_seq().back().edge;
        int v = g.edge(ev).src;
        std::vector<lpa::EdgeRef> ae(t.alpha.edge_seq().begin(), t.alpha.edge_seq().end() - 1);
        std::vector<lpa::EdgeRef> be(t.beta.edge_seq().begin(), t.beta.edge_seq().end() - 1);
        lpa::Path a(t.alpha.source(), ae), b(t.beta.source(), be);
        work.push_back({lpa::Term{a, b}, c});
        for (int e : g.out_edges(v)) {
            if (e == ev) continue;
            work.push_back({lpa::Term{a.append(g, lpa::EdgeRef::named(e)),
                                      b.append(g, lpa::EdgeRef::named(e))},
                            ctx->scalars.neg(c)});
        }
        std::shuffle(work.begin(), work.end(), rng);
    }
    return normal_form(ctx, work);  // all terms admissible: this only merges
}

}  // namespace oracles

#endif
