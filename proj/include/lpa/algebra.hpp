#ifndef LPA_ALGEBRA_HPP
#define LPA_ALGEBRA_HPP

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/scalar.hpp"

namespace lpa {

/// PathRing has no ghost edges at all.  A relative Leavitt ring carries
/// ghost edges and imposes the sum relation at every vertex of V; V = {}
/// is the Cohn ring, V = Reg(E) the Leavitt ring.
enum class RingKind { PathRing, Leavitt };

struct ContextData {
    Graph graph;
    RingKind kind;
    ScalarField scalars;
    VertexSet V;                     // empty in PathRing mode
    std::vector<int> special_edge;   // per vertex: chosen edge of s^-1(v) for v in V, else -1
};

using AlgebraContext = std::shared_ptr<const ContextData>;

/// Builds a validated context.  Special edges default to the
/// lexicographically least edge emitted by each vertex of V and can be
/// overridden per vertex (the override must be emitted by its vertex).
inline AlgebraContext make_context(Graph g, RingKind kind, ScalarField scalars,
                                   VertexSet V = {},
                                   const std::map<int, int>& special_override = {}) {
    if (g.empty()) throw Error("ring construction requires a nonempty vertex set");
    if (kind == RingKind::PathRing && !V.empty())
        throw Error("a path ring has no vertex relations");
    for (int v : V)
        if (!g.is_regular(v))
            throw Error("relation set contains a non-regular vertex: " + g.vertex_id(v));
    std::vector<int> special(g.vertex_count(), -1);
    for (int v : V) special[v] = g.out_edges(v).front();  // edges sorted by id
    for (auto [v, e] : special_override) {
        if (!vs_contains(V, v)) throw Error("special edge given for a vertex outside V");
        if (e < 0 || e >= g.edge_count() || g.edge(e).src != v)
            throw Error("special edge is not emitted by its vertex");
        special[v] = e;
    }
    auto data = std::make_shared<ContextData>(
        ContextData{std::move(g), kind, scalars, std::move(V), std::move(special)});
    return data;
}

inline AlgebraContext make_path_context(Graph g, ScalarField f) {
    return make_context(std::move(g), RingKind::PathRing, f);
}
inline AlgebraContext make_cohn_context(Graph g, ScalarField f) {
    return make_context(std::move(g), RingKind::Leavitt, f);
}
inline AlgebraContext make_leavitt_context(Graph g, ScalarField f) {
    VertexSet reg;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.is_regular(v)) reg.push_back(v);
    return make_context(std::move(g), RingKind::Leavitt, f, std::move(reg));
}
inline AlgebraContext make_relative_context(Graph g, ScalarField f, VertexSet V,
                                            const std::map<int, int>& special = {}) {
    return make_context(std::move(g), RingKind::Leavitt, f, std::move(V), special);
}

inline void require_same_context(const AlgebraContext& a, const AlgebraContext& b) {
    if (a.get() != b.get()) throw Error("operands belong to different algebra contexts");
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

/// One monomial alpha * beta^: two paths with a common terminus.  In path
/// ring mode beta is always the trivial path at r(alpha).
struct Term {
    Path alpha, beta;

    int total_length() const { return (int)(alpha.length() + beta.length()); }
    int degree() const { return (int)alpha.length() - (int)beta.length(); }
    bool ghost_free() const { return beta.length() == 0; }
};

inline Term vertex_term(int v) { return Term{Path::trivial(v), Path::trivial(v)}; }

inline bool term_valid(const Graph& g, const Term& t) {
    return t.alpha.valid(g) && t.beta.valid(g) && t.alpha.range(g) == t.beta.range(g);
}

/// Canonical term order: total length, then the alpha path, then beta.
inline int term_cmp(const Graph& g, const Term& a, const Term& b) {
    if (a.total_length() != b.total_length())
        return a.total_length() < b.total_length() ? -1 : 1;
    int c = path_cmp(g, a.alpha, b.alpha);
    if (c != 0) return c;
    return path_cmp(g, a.beta, b.beta);
}

struct TermLess {
    const Graph* g = nullptr;
    bool operator()(const Term& a, const Term& b) const { return term_cmp(*g, a, b) < 0; }
};

/// True iff the term matches the forbidden junction pattern: both paths end
/// with the chosen special edge of a relation vertex.
inline bool term_forbidden(const ContextData& ctx, const Term& t) {
    if (ctx.kind == RingKind::PathRing) return false;
    if (t.alpha.length() == 0 || t.beta.length() == 0) return false;
    const EdgeRef& ea = t.alpha.edge_seq().back();
    const EdgeRef& eb = t.beta.edge_seq().back();
    if (ea.is_bundle() || eb.is_bundle()) return false;  // bundle sources are never in V
    if (ea.edge != eb.edge) return false;
    int v = ctx.graph.edge(ea.edge).src;
    return ctx.special_edge[v] == ea.edge;
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

using TermMap = std::map<Term, Rational, TermLess>;

/// Finite scalar combination of basis terms, always kept in normal form:
/// no stored term is forbidden and no coefficient is zero.  Immutable value
/// type; all arithmetic is by free functions.
class Element {
public:
    explicit Element(AlgebraContext ctx)
        : ctx_(std::move(ctx)), terms_(TermLess{&ctx_->graph}) {}

    const AlgebraContext& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }

    bool operator==(const Element& o) const {
        require_same_context(ctx_, o.ctx_);
        if (terms_.size() != o.terms_.size()) return false;
        auto it = terms_.begin(), jt = o.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt) {
            if (term_cmp(ctx_->graph, it->first, jt->first) != 0) return false;
            if (it->second != jt->second) return false;
        }
        return true;
    }
    bool operator!=(const Element& o) const { return !(*this == o); }

private:
    friend Element normal_form(const AlgebraContext&, const std::vector<std::pair<Term, Rational>>&);
    friend Element add(const Element&, const Element&);
    friend Element scalar_mul(const Rational&, const Element&);
    friend Element mul(const Element&, const Element&);

    AlgebraContext ctx_;
    TermMap terms_;
};

namespace detail {

inline Path drop_last(const Path& p) {
    std::vector<EdgeRef> es(p.edge_seq().begin(), p.edge_seq().end() - 1);
    return Path(p.source(), std::move(es));
}

inline void accumulate(const ScalarField& f, TermMap& out, const Term& t, const Rational& c) {
    auto it = out.find(t);
    if (it == out.end()) {
        if (!c.is_zero()) out.emplace(t, c);
        return;
    }
    it->second = f.add(it->second, c);
    if (it->second.is_zero()) out.erase(it);
}

// Rewrites one raw term into basis terms.  A forbidden term
// alpha' e_v (beta' e_v)^ becomes alpha' beta'^ minus the sibling terms
// alpha' e (beta' e)^ over the other edges e emitted by v.  The rewritten
// core is two edges shorter and recursion descends on it; every sibling ends
// in an edge that is not the special edge of its source, so siblings are
// already admissible at their junction.  Total length strictly decreases,
// hence termination; each term has a single junction, so the result does
// not depend on the order in which raw terms are processed.
inline void reduce_into(const ContextData& ctx, TermMap& out, Term t, Rational c) {
    while (term_forbidden(ctx, t)) {
        int ev = t.alpha.edge_seq().back().edge;
        int v = ctx.graph.edge(ev).src;
        Path a = drop_last(t.alpha), b = drop_last(t.beta);
        Rational minus_c = ctx.scalars.neg(c);
        for (int e : ctx.graph.out_edges(v)) {
            if (e == ev) continue;
            Term sib{a.append(ctx.graph, EdgeRef::named(e)), b.append(ctx.graph, EdgeRef::named(e))};
            accumulate(ctx.scalars, out, sib, minus_c);
        }
        t = Term{std::move(a), std::move(b)};
    }
    accumulate(ctx.scalars, out, t, c);
}

}  // namespace detail

/// Canonical element from a raw combination of valid terms.  Coefficients
/// are normalized into the scalar domain first.
inline Element normal_form(const AlgebraContext& ctx,
                           const std::vector<std::pair<Term, Rational>>& raw) {
    Element out(ctx);
    for (const auto& [t, c] : raw) {
        if (!term_valid(ctx->graph, t)) throw Error("term is not valid in this graph");
        if (ctx->kind == RingKind::PathRing && t.beta.length() != 0)
            throw Error("path ring elements have no ghost part");
        detail::reduce_into(*ctx, out.terms_, t, ctx->scalars.normalize(c));
    }
    return out;
}

inline Element zero(const AlgebraContext& ctx) { return Element(ctx); }

inline Element from_term(const AlgebraContext& ctx, const Rational& c, const Term& t) {
    return normal_form(ctx, {{t, c}});
}

inline Element vertex_element(const AlgebraContext& ctx, int v) {
    return from_term(ctx, Rational(1), vertex_term(v));
}

inline Element path_element(const AlgebraContext& ctx, const Path& p) {
    return from_term(ctx, Rational(1), Term{p, Path::trivial(p.range(ctx->graph))});
}

inline Element ghost_element(const AlgebraContext& ctx, const Path& p) {
    return from_term(ctx, Rational(1), Term{Path::trivial(p.range(ctx->graph)), p});
}

/// The unit: the sum of all vertices.
inline Element one(const AlgebraContext& ctx) {
    std::vector<std::pair<Term, Rational>> raw;
    for (int v = 0; v < ctx->graph.vertex_count(); ++v)
        raw.push_back({vertex_term(v), Rational(1)});
    return normal_form(ctx, raw);
}

inline Element add(const Element& x, const Element& y) {
    require_same_context(x.context(), y.context());
    Element out = x;
    for (const auto& [t, c] : y.terms())
        detail::accumulate(x.context()->scalars, out.terms_, t, c);
    return out;
}

inline Element scalar_mul(const Rational& c, const Element& x) {
    const auto& f = x.context()->scalars;
    Rational cn = f.normalize(c);
    Element out(x.context());
    if (cn.is_zero()) return out;
    for (const auto& [t, coeff] : x.terms()) {
        Rational prod = f.mul(cn, coeff);
        if (!prod.is_zero()) out.terms_.emplace(t, prod);
    }
    return out;
}

inline Element neg(const Element& x) { return scalar_mul(Rational(-1), x); }
inline Element sub(const Element& x, const Element& y) { return add(x, neg(y)); }

/// Product of two monomials by the prefix case analysis; the result is a
/// single raw term or zero, with no rewriting.
inline std::optional<Term> monomial_product(const Graph& g, const Term& s, const Term& t) {
    const Path& b1 = s.beta;
    const Path& a2 = t.alpha;
    // is b1 a prefix of a2?
    auto prefix_of = [&](const Path& p, const Path& q) {
        if (p.length() > q.length()) return false;
        if (p.source() != q.source()) return false;
        for (std::size_t i = 0; i < p.length(); ++i)
            if (!(p.edge_seq()[i] == q.edge_seq()[i])) return false;
        return true;
    };
    if (prefix_of(b1, a2)) {
        int mid = b1.length() == 0 ? b1.source() : edge_dst(g, b1.edge_seq().back());
        std::vector<EdgeRef> rest(a2.edge_seq().begin() + b1.length(), a2.edge_seq().end());
        Path a2rest(mid, std::move(rest));
        return Term{concat(g, s.alpha, a2rest), t.beta};
    }
    if (prefix_of(a2, b1)) {
        int mid = a2.length() == 0 ? a2.source() : edge_dst(g, a2.edge_seq().back());
        std::vector<EdgeRef> rest(b1.edge_seq().begin() + a2.length(), b1.edge_seq().end());
        Path b1rest(mid, std::move(rest));
        return Term{s.alpha, concat(g, t.beta, b1rest)};
    }
    return std::nullopt;
}

/// Bilinear product; monomial products are rewritten to normal form.
inline Element mul(const Element& x, const Element& y) {
    require_same_context(x.context(), y.context());
    const auto& ctx = x.context();
    Element out(ctx);
    for (const auto& [s, cs] : x.terms()) {
        for (const auto& [t, ct] : y.terms()) {
            auto prod = monomial_product(ctx->graph, s, t);
            if (!prod) continue;
            detail::reduce_into(*ctx, out.terms_, std::move(*prod), ctx->scalars.mul(cs, ct));
        }
    }
    return out;
}

/// Term-wise involution (alpha beta^)^ = beta alpha^.  Ghost edges exist
/// only in Leavitt-kind contexts.
inline Element star(const Element& x) {
    const auto& ctx = x.context();
    if (ctx->kind == RingKind::PathRing)
        throw Error("a path ring has no involution: no ghost edges");
    std::vector<std::pair<Term, Rational>> raw;
    for (const auto& [t, c] : x.terms()) raw.push_back({Term{t.beta, t.alpha}, c});
    return normal_form(ctx, raw);
}

/// Splits by degree |alpha| - |beta|; vertices are degree 0, edges 1, ghost
/// edges -1.  The components sum back to the element.
inline std::map<int, Element> graded_components(const Element& x) {
    std::map<int, Element> out;
    for (const auto& [t, c] : x.terms()) {
        auto it = out.find(t.degree());
        if (it == out.end()) it = out.emplace(t.degree(), Element(x.context())).first;
        it->second = add(it->second, from_term(x.context(), c, t));
    }
    return out;
}

inline bool is_homogeneous(const Element& x, int degree) {
    for (const auto& [t, c] : x.terms())
        if (t.degree() != degree) return false;
    return true;
}

// canonical keys for hashing/deduplication
inline std::string path_key(const Graph& g, const Path& p) {
    std::string s = g.vertex_id(p.source());
    for (const auto& e : p.edge_seq()) {
        s += '.';
        s += edge_label(g, e);
    }
    return s;
}
inline std::string term_key(const Graph& g, const Term& t) {
    return path_key(g, t.alpha) + "|" + path_key(g, t.beta);
}
inline std::string element_key(const Element& x) {
    std::string s;
    for (const auto& [t, c] : x.terms()) {
        s += c.str();
        s += '*';
        s += term_key(x.context()->graph, t);
        s += ';';
    }
    return s;
}

// ---------------------------------------------------------------------------
// Basis enumeration
// ---------------------------------------------------------------------------

/// All paths of length <= max_len; bundle copies run up to bundle_bound.
/// The step budget cancels runaway enumerations over cyclic graphs.
inline std::vector<Path> enumerate_paths(const Graph& g, int max_len, int bundle_bound = 2,
                                         std::size_t step_budget = 5000000) {
    std::vector<Path> out;
    std::vector<Path> frontier;
    for (int v = 0; v < g.vertex_count(); ++v) frontier.push_back(Path::trivial(v));
    out = frontier;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Path> next;
        for (const auto& p : frontier) {
            int at = p.range(g);
            for (int e : g.out_edges(at)) next.push_back(p.append(g, EdgeRef::named(e)));
            for (int b : g.out_bundles(at))
                for (int k = 0; k < bundle_bound; ++k)
                    next.push_back(p.append(g, EdgeRef::bundled(b, k)));
        }
        out.insert(out.end(), next.begin(), next.end());
        if (out.size() > step_budget) throw Error("path enumeration exceeded its budget");
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return out;
}

/// Normal-form basis terms with |alpha| + |beta| <= max_total_length, in
/// canonical order.  Path ring mode enumerates paths only.
inline std::vector<Term> basis_enum(const AlgebraContext& ctx, int max_total_length,
                                    int bundle_bound = 2, std::size_t step_budget = 5000000) {
    if (max_total_length < 0) throw Error("negative length bound");
    const Graph& g = ctx->graph;
    auto paths = enumerate_paths(g, max_total_length, bundle_bound, step_budget);
    std::vector<Term> out;
    if (ctx->kind == RingKind::PathRing) {
        for (const auto& p : paths)
            out.push_back(Term{p, Path::trivial(p.range(g))});
    } else {
        // group by terminus
        std::vector<std::vector<const Path*>> by_range(g.vertex_count());
        for (const auto& p : paths) by_range[p.range(g)].push_back(&p);
        for (int v = 0; v < g.vertex_count(); ++v) {
            for (const Path* a : by_range[v]) {
                for (const Path* b : by_range[v]) {
                    if ((int)(a->length() + b->length()) > max_total_length) continue;
                    Term t{*a, *b};
                    if (!term_forbidden(*ctx, t)) out.push_back(std::move(t));
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), TermLess{&g});
    return out;
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

class MatrixElement {
public:
    MatrixElement(AlgebraContext ctx, std::size_t rows, std::size_t cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols), cells_(rows * cols, Element(ctx_)) {}

    static MatrixElement identity(const AlgebraContext& ctx, std::size_t n) {
        MatrixElement m(ctx, n, n);
        Element u = one(ctx);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = u;
        return m;
    }
    static MatrixElement scalar(const Element& x) {
        MatrixElement m(x.context(), 1, 1);
        m.at(0, 0) = x;
        return m;
    }
    static MatrixElement row(const std::vector<Element>& xs) {
        MatrixElement m(xs.at(0).context(), 1, xs.size());
        for (std::size_t j = 0; j < xs.size(); ++j) m.at(0, j) = xs[j];
        return m;
    }
    static MatrixElement column(const std::vector<Element>& xs) {
        MatrixElement m(xs.at(0).context(), xs.size(), 1);
        for (std::size_t i = 0; i < xs.size(); ++i) m.at(i, 0) = xs[i];
        return m;
    }
    /// Block diagonal of square matrices.
    static MatrixElement direct_sum(const MatrixElement& a, const MatrixElement& b) {
        require_same_context(a.ctx_, b.ctx_);
        MatrixElement m(a.ctx_, a.rows_ + b.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) m.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
        return m;
    }

    const AlgebraContext& context() const { return ctx_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Element& at(std::size_t i, std::size_t j) { return cells_.at(i * cols_ + j); }
    const Element& at(std::size_t i, std::size_t j) const { return cells_.at(i * cols_ + j); }

    bool operator==(const MatrixElement& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t k = 0; k < cells_.size(); ++k)
            if (cells_[k] != o.cells_[k]) return false;
        return true;
    }
    bool operator!=(const MatrixElement& o) const { return !(*this == o); }

private:
    AlgebraContext ctx_;
    std::size_t rows_, cols_;
    std::vector<Element> cells_;
};

inline MatrixElement mat_mul(const MatrixElement& a, const MatrixElement& b) {
    require_same_context(a.context(), b.context());
    if (a.cols() != b.rows()) throw Error("matrix dimension mismatch");
    MatrixElement out(a.context(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Element acc(a.context());
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc = add(acc, mul(a.at(i, k), b.at(k, j)));
            out.at(i, j) = acc;
        }
    return out;
}

inline MatrixElement mat_add(const MatrixElement& a, const MatrixElement& b) {
    require_same_context(a.context(), b.context());
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix dimension mismatch");
    MatrixElement out(a.context(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = add(a.at(i, j), b.at(i, j));
    return out;
}

/// Identity test against diag(1,...,1) with 1 the vertex sum.
inline bool is_identity(const MatrixElement& m) {
    if (m.rows() != m.cols()) return false;
    Element u = one(m.context());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i == j ? m.at(i, j) != u : !m.at(i, j).is_zero()) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Structural maps
// ---------------------------------------------------------------------------

namespace detail {

inline EdgeRef translate_ref(const Graph& from, const Graph& to, const EdgeRef& e) {
    if (e.is_bundle()) {
        auto b = to.find_bundle(from.bundle(e.bundle).id);
        if (!b) throw Error("bundle does not exist in the target graph");
        return EdgeRef::bundled(*b, e.copy);
    }
    auto ne = to.find_edge(from.edge(e.edge).id);
    if (!ne) throw Error("edge does not exist in the target graph");
    return EdgeRef::named(*ne);
}

inline Path translate_path(const Graph& from, const Graph& to, const Path& p) {
    auto v = to.find_vertex(from.vertex_id(p.source()));
    if (!v) throw Error("vertex does not exist in the target graph");
    std::vector<EdgeRef> es;
    es.reserve(p.length());
    for (const auto& e : p.edge_seq()) es.push_back(translate_ref(from, to, e));
    return Path(*v, std::move(es));
}

}  // namespace detail

/// Identity-on-generators embedding of the ring over a restriction to a
/// hereditary set X into the full ring.  Injective on basis terms; the image
/// of the subring unit is the corner idempotent sum of X.
class RestrictionEmbedding {
public:
    RestrictionEmbedding(AlgebraContext big, const VertexSet& X) : big_(std::move(big)) {
        const Graph& g = big_->graph;
        if (!is_hereditary(g, X)) throw Error("restriction embedding requires a hereditary set");
        Graph sub = restriction(g, X);
        VertexSet subV;
        std::map<int, int> special;
        for (int v : big_->V) {
            if (!vs_contains(X, v)) continue;
            int sv = sub.vertex_index(g.vertex_id(v));
            subV.push_back(sv);
            special[sv] = *sub.find_edge(g.edge(big_->special_edge[v]).id);
        }
        subV = vs_sorted(std::move(subV));
        sub_ = big_->kind == RingKind::PathRing
                   ? make_path_context(std::move(sub), big_->scalars)
                   : make_relative_context(std::move(sub), big_->scalars, std::move(subV), special);
    }

    const AlgebraContext& sub_context() const { return sub_; }
    const AlgebraContext& big_context() const { return big_; }

    Element apply(const Element& x) const {
        require_same_context(x.context(), sub_);
        std::vector<std::pair<Term, Rational>> raw;
        for (const auto& [t, c] : x.terms())
            raw.push_back({Term{detail::translate_path(sub_->graph, big_->graph, t.alpha),
                                detail::translate_path(sub_->graph, big_->graph, t.beta)},
                           c});
        return normal_form(big_, raw);
    }

    /// Image of the subring unit: the sum of the vertices of X.
    Element corner_idempotent() const {
        std::vector<std::pair<Term, Rational>> raw;
        for (const auto& vid : sub_->graph.vertices())
            raw.push_back({vertex_term(big_->graph.vertex_index(vid)), Rational(1)});
        return normal_form(big_, raw);
    }

private:
    AlgebraContext big_, sub_;
};

/// Ring map onto the algebra of the quotient graph, killing exactly the
/// terms whose terminus lies in the hereditary V-saturated set X.
class QuotientMap {
public:
    QuotientMap(AlgebraContext src, VertexSet X) : src_(std::move(src)), X_(std::move(X)) {
        const Graph& g = src_->graph;
        if (!is_hereditary(g, X_)) throw Error("quotient requires a hereditary set");
        if (!is_saturated(g, src_->V, X_)) throw Error("quotient requires a V-saturated set");
        Graph q = quotient(g, X_);
        VertexSet qV;
        for (int v : src_->V)
            if (!vs_contains(X_, v)) qV.push_back(q.vertex_index(g.vertex_id(v)));
        qV = vs_sorted(std::move(qV));
        dst_ = src_->kind == RingKind::PathRing
                   ? make_path_context(std::move(q), src_->scalars)
                   : make_relative_context(std::move(q), src_->scalars, std::move(qV));
    }

    const AlgebraContext& target_context() const { return dst_; }

    Element apply(const Element& x) const {
        require_same_context(x.context(), src_);
        const Graph& g = src_->graph;
        std::vector<std::pair<Term, Rational>> raw;
        for (const auto& [t, c] : x.terms()) {
            if (vs_contains(X_, t.alpha.range(g))) continue;  // terminus in X: killed
            raw.push_back({Term{detail::translate_path(g, dst_->graph, t.alpha),
                                detail::translate_path(g, dst_->graph, t.beta)},
                           c});
        }
        return normal_form(dst_, raw);
    }

private:
    AlgebraContext src_;
    VertexSet X_;
    AlgebraContext dst_;
};

}  // namespace lpa

#endif
