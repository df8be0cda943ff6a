#ifndef LPA_VERDICTS_HPP
#define LPA_VERDICTS_HPP

#include <optional>
#include <string>

#include "lpa/graph.hpp"

namespace lpa {

enum class TriState { Yes, No, Unknown };
enum class Conclusion { Holds, Fails, IffFlag };
enum class Side { Right, Left };

/// Caller-supplied rank properties of the coefficient ring.  The engine
/// never decides these; verdicts conditional on a flag are resolved here.
struct CoefficientFlags {
    TriState rank_condition = TriState::Unknown;
    TriState strong_rank_condition = TriState::Unknown;
    TriState left_strong_rank_condition = TriState::Unknown;

    void validate() const {
        // the strong rank condition implies the rank condition
        if (strong_rank_condition == TriState::Yes && rank_condition == TriState::No)
            throw Error("inconsistent flags: strong rank condition without rank condition");
    }
};

namespace flag {
inline constexpr const char* rc = "rank_condition";
inline constexpr const char* src = "strong_rank_condition";
inline constexpr const char* left_src = "left_strong_rank_condition";
}  // namespace flag

namespace clause {
inline constexpr const char* inherits = "inherits from coefficient ring";
inline constexpr const char* x_proper = "X != E^0";
inline constexpr const char* excl_max = "exclusive maximal cycle";
inline constexpr const char* excl_min = "exclusive minimal cycle";
inline constexpr const char* none = "none";
inline constexpr const char* exh_i = "(i) X empty";
inline constexpr const char* exh_ii = "(ii) infinite emitter";
inline constexpr const char* exh_ii_left = "(ii) infinite receiver";
inline constexpr const char* exh_iii = "(iii) cycle vertex";
inline constexpr const char* exh_iv = "(iv) exclusive maximal cycle";
inline constexpr const char* exh_iv_left = "(iv) exclusive minimal cycle";
inline constexpr const char* emitter_outside = "infinite emitter outside X";
}  // namespace clause

/// Outcome of one decision procedure.  X is the closure the clause was
/// evaluated against; the vertex or cycle, when present, certifies the
/// clause and can be re-checked against the graph.
struct Verdict {
    std::string property;
    Conclusion conclusion = Conclusion::Fails;
    std::string flag;    // empty when the conclusion is unconditional
    std::string clause;
    std::optional<VertexSet> X;
    std::optional<int> witness_vertex;
    std::optional<Cycle> witness_cycle;
    std::optional<bool> gn_is_one;  // set on rank-condition verdicts of Leavitt kind

    bool affirmative() const { return conclusion != Conclusion::Fails; }
};

inline TriState resolve(const Verdict& v, const CoefficientFlags& flags) {
    flags.validate();
    switch (v.conclusion) {
        case Conclusion::Holds: return TriState::Yes;
        case Conclusion::Fails: return TriState::No;
        case Conclusion::IffFlag: break;
    }
    if (v.flag == flag::rc) return flags.rank_condition;
    if (v.flag == flag::src) return flags.strong_rank_condition;
    if (v.flag == flag::left_src) return flags.left_strong_rank_condition;
    return TriState::Unknown;
}

namespace detail {

inline void require_nonempty(const Graph& g) {
    if (g.empty()) throw Error("the empty graph carries no unital ring");
}

/// Least vertex outside X (X proper).
inline int least_outside(const Graph& g, const VertexSet& X) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!vs_contains(X, v)) return v;
    throw Error("no vertex outside X");
}

/// Least exclusive maximal cycle, if any.
inline std::optional<Cycle> exclusive_maximal_cycle(const Graph& g) {
    for (const auto& c : maximal_cycles(g))
        if (is_exclusive(g, c)) return c;
    return std::nullopt;
}

/// Transports a cycle of opposite(g) back to g: reverse the edge sequence.
inline Cycle transport_cycle(const Graph& g, const Graph& op, const Cycle& c) {
    const auto& es = c.path().edge_seq();
    std::vector<EdgeRef> rev(es.rbegin(), es.rend());
    int src = edge_dst(op, es.back());  // = basepoint; identifiers match by index
    return Cycle(g, Path(src, std::move(rev)));
}

struct ClauseHit {
    bool fired = false;
    std::string clause;
    std::optional<int> vertex;
    std::optional<Cycle> cycle;
};

/// The graph-side criterion shared by the rank-property deciders: X proper,
/// else an exclusive maximal cycle.
inline ClauseHit rank_clause(const Graph& g, const VertexSet& X) {
    ClauseHit hit;
    if ((int)X.size() != g.vertex_count()) {
        hit.fired = true;
        hit.clause = clause::x_proper;
        hit.vertex = least_outside(g, X);
        return hit;
    }
    if (auto c = exclusive_maximal_cycle(g)) {
        hit.fired = true;
        hit.clause = clause::excl_max;
        hit.cycle = std::move(c);
        return hit;
    }
    hit.clause = clause::none;
    return hit;
}

}  // namespace detail

/// The rank condition passes from the coefficients to the path ring
/// unconditionally, for every nonempty graph.
inline Verdict path_ring_rank(const Graph& g) {
    detail::require_nonempty(g);
    Verdict v;
    v.property = "path_ring_rank";
    v.conclusion = Conclusion::IffFlag;
    v.flag = flag::rc;
    v.clause = clause::inherits;
    return v;
}

/// Strong rank condition for the path ring.  X is the hereditary closure of
/// the cycle vertices (backward closure for the left-side condition, which
/// is decided on the opposite graph).
inline Verdict path_ring_src(const Graph& g, Side side = Side::Right) {
    detail::require_nonempty(g);
    if (side == Side::Left) {
        Graph op = opposite(g);
        Verdict v = path_ring_src(op, Side::Right);
        v.property = "path_ring_src:left";
        v.flag = flag::left_src;
        if (v.clause == clause::excl_max) v.clause = clause::excl_min;
        if (v.witness_cycle) v.witness_cycle = detail::transport_cycle(g, op, *v.witness_cycle);
        return v;
    }
    Verdict v;
    v.property = "path_ring_src:right";
    VertexSet X = forward_closure(g, cycle_vertices(g));
    auto hit = detail::rank_clause(g, X);
    v.X = X;
    v.clause = hit.clause;
    v.witness_vertex = hit.vertex;
    v.witness_cycle = hit.cycle;
    if (hit.fired) {
        v.conclusion = Conclusion::IffFlag;
        v.flag = flag::src;
    } else {
        v.conclusion = Conclusion::Fails;
    }
    return v;
}

/// Amenability of the path algebra over a field.  Same graph clause as the
/// strong rank condition; side Left decides right amenability (the opposite
/// algebra) via the opposite graph.
inline Verdict path_algebra_amenable(const Graph& g, Side side = Side::Right) {
    Verdict v = path_ring_src(g, side);
    v.property = side == Side::Right ? "path_algebra_amenable:right" : "path_algebra_amenable:left";
    v.conclusion = v.conclusion == Conclusion::IffFlag ? Conclusion::Holds : Conclusion::Fails;
    v.flag.clear();
    return v;
}

/// Exhaustive amenability of the path algebra: one of four clauses fires.
/// The witness vertex, when present, lies outside X and reaches the emitter
/// (clause ii) or a cycle vertex (clause iii).
inline Verdict path_algebra_exh_amenable(const Graph& g, Side side = Side::Right) {
    detail::require_nonempty(g);
    if (side == Side::Left) {
        Graph op = opposite(g);
        Verdict v = path_algebra_exh_amenable(op, Side::Right);
        v.property = "path_algebra_exh_amenable:left";
        if (v.clause == clause::exh_ii) v.clause = clause::exh_ii_left;
        if (v.clause == clause::exh_iv) v.clause = clause::exh_iv_left;
        if (v.witness_cycle) v.witness_cycle = detail::transport_cycle(g, op, *v.witness_cycle);
        return v;
    }
    Verdict v;
    v.property = "path_algebra_exh_amenable:right";
    VertexSet X = forward_closure(g, cycle_vertices(g));
    v.X = X;
    if (X.empty()) {
        v.conclusion = Conclusion::Holds;
        v.clause = clause::exh_i;
        return v;
    }
    VertexSet outside;
    for (int w = 0; w < g.vertex_count(); ++w)
        if (!vs_contains(X, w)) outside.push_back(w);
    VertexSet tails = forward_closure(g, outside);
    VertexSet cyc = cycle_vertices(g);

    // least witness outside X whose forward cone hits the relevant vertex
    auto witness_for = [&](auto&& pred) -> std::optional<int> {
        for (int w : outside) {
            for (int t : forward_closure(g, {w}))
                if (pred(t)) return w;
        }
        return std::nullopt;
    };
    bool emitter_in_tails = false, cycle_in_tails = false;
    for (int t : tails) {
        emitter_in_tails |= g.is_infinite_emitter(t);
        cycle_in_tails |= vs_contains(cyc, t);
    }
    if (emitter_in_tails) {
        v.conclusion = Conclusion::Holds;
        v.clause = clause::exh_ii;
        v.witness_vertex = witness_for([&](int t) { return g.is_infinite_emitter(t); });
        return v;
    }
    if (cycle_in_tails) {
        v.conclusion = Conclusion::Holds;
        v.clause = clause::exh_iii;
        v.witness_vertex = witness_for([&](int t) { return vs_contains(cyc, t); });
        return v;
    }
    if (auto c = detail::exclusive_maximal_cycle(g)) {
        v.conclusion = Conclusion::Holds;
        v.clause = clause::exh_iv;
        v.witness_cycle = std::move(c);
        return v;
    }
    v.conclusion = Conclusion::Fails;
    v.clause = clause::none;
    return v;
}

namespace detail {

inline void require_relation_set(const Graph& g, const VertexSet& V) {
    for (int v : V)
        if (!g.is_regular(v))
            throw Error("V contains a non-regular vertex: " + g.vertex_id(v));
}

inline VertexSet relative_closure(const Graph& g, const VertexSet& V) {
    return saturated_closure(g, V, forward_closure(g, cycle_vertices(g)));
}

}  // namespace detail

/// Strong rank condition for the relative Leavitt ring over V.  X is the
/// smallest hereditary V-saturated set containing the cycle vertices.  The
/// left-side condition has the same graph clause (the ring is its own
/// opposite up to coefficients); only the flag name changes.
inline Verdict relative_leavitt_src(const Graph& g, const VertexSet& V, Side side = Side::Right) {
    detail::require_nonempty(g);
    detail::require_relation_set(g, V);
    Verdict v;
    v.property = side == Side::Right ? "relative_leavitt_src:right" : "relative_leavitt_src:left";
    VertexSet X = detail::relative_closure(g, V);
    auto hit = detail::rank_clause(g, X);
    v.X = X;
    v.clause = hit.clause;
    v.witness_vertex = hit.vertex;
    v.witness_cycle = hit.cycle;
    if (hit.fired) {
        v.conclusion = Conclusion::IffFlag;
        v.flag = side == Side::Right ? flag::src : flag::left_src;
    } else {
        v.conclusion = Conclusion::Fails;
    }
    return v;
}

/// Rank condition for the relative Leavitt ring.  When the graph clause
/// fails the ring is properly infinite for every coefficient ring
/// (gn_is_one), so the failure is unconditional.
inline Verdict relative_leavitt_rc(const Graph& g, const VertexSet& V) {
    detail::require_nonempty(g);
    detail::require_relation_set(g, V);
    Verdict v;
    v.property = "relative_leavitt_rc";
    VertexSet X = detail::relative_closure(g, V);
    auto hit = detail::rank_clause(g, X);
    v.X = X;
    v.clause = hit.clause;
    v.witness_vertex = hit.vertex;
    v.witness_cycle = hit.cycle;
    if (hit.fired) {
        v.conclusion = Conclusion::IffFlag;
        v.flag = flag::rc;
        v.gn_is_one = false;
    } else {
        v.conclusion = Conclusion::Fails;
        v.gn_is_one = true;
    }
    return v;
}

/// Amenability over a field, relative Leavitt kind.
inline Verdict relative_leavitt_amenable(const Graph& g, const VertexSet& V) {
    Verdict v = relative_leavitt_src(g, V, Side::Right);
    v.property = "relative_leavitt_amenable";
    v.conclusion = v.conclusion == Conclusion::IffFlag ? Conclusion::Holds : Conclusion::Fails;
    v.flag.clear();
    return v;
}

/// Exhaustive amenability, relative Leavitt kind: an infinite emitter
/// outside X, or an exclusive maximal cycle.
inline Verdict relative_leavitt_exh_amenable(const Graph& g, const VertexSet& V) {
    detail::require_nonempty(g);
    detail::require_relation_set(g, V);
    Verdict v;
    v.property = "relative_leavitt_exh_amenable";
    VertexSet X = detail::relative_closure(g, V);
    v.X = X;
    for (int w = 0; w < g.vertex_count(); ++w) {
        if (!vs_contains(X, w) && g.is_infinite_emitter(w)) {
            v.conclusion = Conclusion::Holds;
            v.clause = clause::emitter_outside;
            v.witness_vertex = w;
            return v;
        }
    }
    if (auto c = detail::exclusive_maximal_cycle(g)) {
        v.conclusion = Conclusion::Holds;
        v.clause = clause::excl_max;
        v.witness_cycle = std::move(c);
        return v;
    }
    v.conclusion = Conclusion::Fails;
    v.clause = clause::none;
    return v;
}

}  // namespace lpa

#endif
