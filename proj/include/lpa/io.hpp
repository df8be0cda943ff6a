#ifndef LPA_IO_HPP
#define LPA_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "lpa/algebra.hpp"
#include "lpa/verdicts.hpp"
#include "lpa/witnesses.hpp"

namespace lpa {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Graph JSON
// ---------------------------------------------------------------------------
// {"vertices": [string...],
//  "edges": [{"id","src","dst"}...],
//  "infinite_bundles": [{"id","src","dst"}...]}
// Unknown keys are rejected.

namespace detail {

inline void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                                const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw ParseError(std::string(where) + ": unknown key \"" + it.key() + "\"");
    }
}

inline std::vector<EdgeSpec> edge_specs_from(const json& j, const char* where) {
    if (!j.is_array()) throw ParseError(std::string(where) + " must be an array");
    std::vector<EdgeSpec> out;
    for (const auto& e : j) {
        if (!e.is_object()) throw ParseError(std::string(where) + " entries must be objects");
        reject_unknown_keys(e, {"id", "src", "dst"}, where);
        for (const char* k : {"id", "src", "dst"})
            if (!e.contains(k) || !e[k].is_string())
                throw ParseError(std::string(where) + " entries need string \"" + k + "\"");
        out.push_back({e["id"].get<std::string>(), e["src"].get<std::string>(),
                       e["dst"].get<std::string>()});
    }
    return out;
}

}  // namespace detail

inline Graph graph_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("graph document must be a JSON object");
    detail::reject_unknown_keys(j, {"vertices", "edges", "infinite_bundles"}, "graph");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw ParseError("graph needs a \"vertices\" array");
    std::vector<std::string> vs;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw ParseError("vertices must be strings");
        vs.push_back(v.get<std::string>());
    }
    std::vector<EdgeSpec> es, bs;
    if (j.contains("edges")) es = detail::edge_specs_from(j["edges"], "edges");
    if (j.contains("infinite_bundles"))
        bs = detail::edge_specs_from(j["infinite_bundles"], "infinite_bundles");
    return Graph(std::move(vs), std::move(es), std::move(bs));
}

inline ordered_json graph_to_json(const Graph& g) {
    ordered_json j;
    j["vertices"] = g.vertices();
    j["edges"] = ordered_json::array();
    for (const auto& e : g.edges())
        j["edges"].push_back({{"id", e.id}, {"src", g.vertex_id(e.src)}, {"dst", g.vertex_id(e.dst)}});
    j["infinite_bundles"] = ordered_json::array();
    for (const auto& b : g.bundles())
        j["infinite_bundles"].push_back(
            {{"id", b.id}, {"src", g.vertex_id(b.src)}, {"dst", g.vertex_id(b.dst)}});
    return j;
}

// ---------------------------------------------------------------------------
// Element text grammar
// ---------------------------------------------------------------------------
// element := term ('+' term)*
// term    := coeff '*' path ['*' path '^']
// path    := vertex-id | edge-id ('.' edge-id)*
// A bundle copy renders as "<bundle-id>#<index>".  Example:
//   "3/2 * e1.e2 * e3^ + 1 * v0"

inline std::string path_to_text(const Graph& g, const Path& p) {
    if (p.length() == 0) return g.vertex_id(p.source());
    std::string s;
    for (std::size_t i = 0; i < p.length(); ++i) {
        if (i) s += '.';
        s += edge_label(g, p.edge_seq()[i]);
    }
    return s;
}

inline std::string term_to_text(const Graph& g, const Term& t, const Rational& c) {
    std::string s = c.str() + " * " + path_to_text(g, t.alpha);
    if (t.beta.length() > 0) s += " * " + path_to_text(g, t.beta) + "^";
    return s;
}

inline std::string element_to_text(const Element& x) {
    if (x.is_zero()) return "0";
    const Graph& g = x.context()->graph;
    std::string s;
    for (const auto& [t, c] : x.terms()) {
        if (!s.empty()) s += " + ";
        s += term_to_text(g, t, c);
    }
    return s;
}

namespace detail {

inline std::string trim(const std::string& s, std::size_t& offset) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace((unsigned char)s[a])) ++a;
    while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
    offset += a;
    return s.substr(a, b - a);
}

inline EdgeRef edge_ref_from_label(const Graph& g, const std::string& label, std::size_t pos) {
    auto hash = label.find('#');
    if (hash != std::string::npos) {
        auto b = g.find_bundle(label.substr(0, hash));
        if (!b) throw ParseError("unknown bundle \"" + label.substr(0, hash) + "\"", pos);
        const std::string idx = label.substr(hash + 1);
        if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad bundle copy index in \"" + label + "\"", pos);
        return EdgeRef::bundled(*b, std::stoi(idx));
    }
    auto e = g.find_edge(label);
    if (!e) throw ParseError("unknown edge \"" + label + "\"", pos);
    return EdgeRef::named(*e);
}

inline Path path_from_text(const Graph& g, const std::string& text, std::size_t pos) {
    if (text.empty()) throw ParseError("empty path", pos);
    if (text.find('.') == std::string::npos) {
        if (auto v = g.find_vertex(text)) return Path::trivial(*v);
        // fall through: single-edge path
    }
    std::vector<EdgeRef> refs;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = text.find('.', start);
        std::string label = text.substr(start, dot == std::string::npos ? dot : dot - start);
        if (label.empty()) throw ParseError("empty edge label in path", pos + start);
        refs.push_back(edge_ref_from_label(g, label, pos + start));
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    int src = edge_src(g, refs.front());
    Path p(src, std::move(refs));
    if (!p.valid(g)) throw ParseError("path does not compose", pos);
    return p;
}

}  // namespace detail

/// Parses one term "coeff * path [* path^]"; offset is the term's position
/// in the enclosing element string, used for error positions.
inline std::pair<Term, Rational> term_from_text(const AlgebraContext& ctx, const std::string& text,
                                                std::size_t offset = 0) {
    const Graph& g = ctx->graph;
    std::vector<std::pair<std::string, std::size_t>> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t starpos = text.find('*', start);
        std::size_t off = offset + start;
        std::string piece =
            text.substr(start, starpos == std::string::npos ? starpos : starpos - start);
        parts.push_back({detail::trim(piece, off), off});
        if (starpos == std::string::npos) break;
        start = starpos + 1;
    }
    if (parts.size() < 2 || parts.size() > 3)
        throw ParseError("a term is coeff * path [* path^]", offset);
    Rational c = Rational::parse(parts[0].first);
    Path alpha = detail::path_from_text(g, parts[1].first, parts[1].second);
    Path beta = Path::trivial(alpha.range(g));
    if (parts.size() == 3) {
        std::string ghost = parts[2].first;
        if (ghost.empty() || ghost.back() != '^')
            throw ParseError("ghost path must end with '^'", parts[2].second);
        beta = detail::path_from_text(g, ghost.substr(0, ghost.size() - 1), parts[2].second);
    }
    if (alpha.range(g) != beta.range(g))
        throw ParseError("term paths must share their terminus", offset);
    return {Term{std::move(alpha), std::move(beta)}, c};
}

inline Element element_from_text(const AlgebraContext& ctx, const std::string& text) {
    std::size_t probe = 0;
    std::string whole = detail::trim(text, probe);
    if (whole == "0") return zero(ctx);
    std::vector<std::pair<Term, Rational>> raw;
    std::size_t start = 0;
    while (true) {
        std::size_t plus = text.find('+', start);
        std::size_t off = start;
        std::string piece = text.substr(start, plus == std::string::npos ? plus : plus - start);
        std::string t = detail::trim(piece, off);
        if (t.empty()) throw ParseError("empty term", off);
        raw.push_back(term_from_text(ctx, t, off));
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return normal_form(ctx, raw);
}

// ---------------------------------------------------------------------------
// Verdict and certificate JSON
// ---------------------------------------------------------------------------

inline const char* conclusion_to_text(Conclusion c) {
    switch (c) {
        case Conclusion::Holds: return "holds";
        case Conclusion::Fails: return "fails";
        case Conclusion::IffFlag: return "iff_flag";
    }
    return "?";
}

inline ordered_json cycle_to_json(const Graph& g, const Cycle& c) {
    ordered_json j;
    j["basepoint"] = g.vertex_id(c.basepoint());
    j["edges"] = ordered_json::array();
    for (const auto& e : c.path().edge_seq()) j["edges"].push_back(edge_label(g, e));
    return j;
}

inline ordered_json vertex_set_to_json(const Graph& g, const VertexSet& s) {
    ordered_json a = ordered_json::array();
    for (int v : s) a.push_back(g.vertex_id(v));
    return a;
}

inline ordered_json verdict_to_json(const Graph& g, const Verdict& v) {
    ordered_json j;
    j["property"] = v.property;
    j["conclusion"] = conclusion_to_text(v.conclusion);
    j["flag"] = v.flag.empty() ? ordered_json(nullptr) : ordered_json(v.flag);
    j["clause"] = v.clause;
    if (v.X || v.witness_vertex || v.witness_cycle) {
        ordered_json w;
        if (v.X) w["X"] = vertex_set_to_json(g, *v.X);
        if (v.witness_vertex) w["vertex"] = g.vertex_id(*v.witness_vertex);
        if (v.witness_cycle) w["cycle"] = cycle_to_json(g, *v.witness_cycle);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    if (v.gn_is_one) j["gn_is_one"] = *v.gn_is_one;
    return j;
}

inline ordered_json folner_to_json(const AlgebraContext& ctx, const FolnerCertificate& cert) {
    const Graph& g = ctx->graph;
    ordered_json j;
    j["K"] = ordered_json::array();
    for (const auto& t : cert.K) j["K"].push_back(term_to_text(g, t, Rational(1)));
    j["F"] = ordered_json::array();
    for (const auto& t : cert.F) j["F"].push_back(term_to_text(g, t, Rational(1)));
    j["p"] = cert.p.num() == 0 ? "0" : (std::to_string(cert.p.num()) + "/" + std::to_string(cert.p.den()));
    j["count"] = cert.product_count;
    j["strict"] = cert.strict;
    j["construction"] = cert.construction;
    return j;
}

inline ordered_json matrix_to_json(const MatrixElement& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_to_text(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Structural report
// ---------------------------------------------------------------------------

/// Deterministic whole-graph report: classes, closures, cycles with their
/// flags, and the verdicts of every ring kind on both sides.  Emitted with
/// sorted keys for golden-file comparisons.
inline json report(const Graph& g) {
    json j;
    j["graph"] = json(graph_to_json(g));

    auto classes = vertex_classes(g);
    j["vertex_classes"]["regular"] = json(vertex_set_to_json(g, classes.regular));
    j["vertex_classes"]["infinite_emitters"] = json(vertex_set_to_json(g, classes.infinite_emitters));
    j["vertex_classes"]["infinite_receivers"] =
        json(vertex_set_to_json(g, classes.infinite_receivers));
    j["vertex_classes"]["sinks"] = json(vertex_set_to_json(g, classes.sinks));

    VertexSet C = cycle_vertices(g);
    VertexSet reg = classes.regular;
    j["closures"]["cycle_vertices"] = json(vertex_set_to_json(g, C));
    j["closures"]["T_cycle_vertices"] = json(vertex_set_to_json(g, forward_closure(g, C)));
    j["closures"]["M_cycle_vertices"] = json(vertex_set_to_json(g, backward_closure(g, C)));
    j["closures"]["X_cohn"] = json(vertex_set_to_json(g, forward_closure(g, C)));
    j["closures"]["X_leavitt"] =
        json(vertex_set_to_json(g, hereditary_saturated_closure(g, reg, C)));

    j["cycles"] = json::array();
    auto maxc = maximal_cycles(g);
    auto is_max = [&](const Cycle& c) {
        for (const auto& m : maxc)
            if (m == c) return true;
        return false;
    };
    for (const auto& c : cycles(g)) {
        json cj = json(cycle_to_json(g, c));
        cj["maximal"] = is_max(c);
        cj["exclusive"] = is_exclusive(g, c);
        j["cycles"].push_back(cj);
    }

    if (!g.empty()) {
        auto vj = [&](const Verdict& v) { return json(verdict_to_json(g, v)); };
        j["verdicts"]["path"]["rc"] = vj(path_ring_rank(g));
        j["verdicts"]["path"]["src_right"] = vj(path_ring_src(g, Side::Right));
        j["verdicts"]["path"]["src_left"] = vj(path_ring_src(g, Side::Left));
        j["verdicts"]["path"]["amenable_right"] = vj(path_algebra_amenable(g, Side::Right));
        j["verdicts"]["path"]["amenable_left"] = vj(path_algebra_amenable(g, Side::Left));
        j["verdicts"]["path"]["exh_amenable_right"] = vj(path_algebra_exh_amenable(g, Side::Right));
        j["verdicts"]["path"]["exh_amenable_left"] = vj(path_algebra_exh_amenable(g, Side::Left));
        VertexSet none;
        for (auto [name, V] : {std::pair<const char*, VertexSet>{"cohn", none},
                               std::pair<const char*, VertexSet>{"leavitt", reg}}) {
            j["verdicts"][name]["rc"] = vj(relative_leavitt_rc(g, V));
            j["verdicts"][name]["src_right"] = vj(relative_leavitt_src(g, V, Side::Right));
            j["verdicts"][name]["src_left"] = vj(relative_leavitt_src(g, V, Side::Left));
            j["verdicts"][name]["amenable"] = vj(relative_leavitt_amenable(g, V));
            j["verdicts"][name]["exh_amenable"] = vj(relative_leavitt_exh_amenable(g, V));
        }
    }
    return j;
}

/// DOT export for visualization; never parsed back.
inline std::string to_dot(const Graph& g) {
    std::string s = "digraph {\n";
    for (const auto& v : g.vertices()) s += "  \"" + v + "\";\n";
    for (const auto& e : g.edges())
        s += "  \"" + g.vertex_id(e.src) + "\" -> \"" + g.vertex_id(e.dst) + "\" [label=\"" +
             e.id + "\"];\n";
    for (const auto& b : g.bundles())
        s += "  \"" + g.vertex_id(b.src) + "\" -> \"" + g.vertex_id(b.dst) + "\" [label=\"" +
             b.id + " (inf)\", style=bold];\n";
    s += "}\n";
    return s;
}

}  // namespace lpa

#endif
