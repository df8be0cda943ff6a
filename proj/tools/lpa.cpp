// lpa: decide rank and amenability properties of graph path rings and
// construct the certifying algebra witnesses.
//
// Subcommands: decide, witness, eval, report, dot.  Graphs are JSON files;
// elements use the text grammar "coeff * path [* path^]".

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lpa/fixtures.hpp"
#include "lpa/io.hpp"

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitInputError = 2;

lpa::Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lpa::ParseError("cannot open graph file: " + path);
    lpa::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw lpa::ParseError(std::string("bad JSON: ") + e.what());
    }
    return lpa::graph_from_json(j);
}

lpa::ScalarField field_from(const std::string& spec) {
    if (spec == "q") return lpa::ScalarField::rationals();
    if (spec == "z") return lpa::ScalarField::integers();
    if (spec.rfind("gf:", 0) == 0) return lpa::ScalarField::gfp(std::stoll(spec.substr(3)));
    throw lpa::ParseError("unknown field: " + spec + " (expected q, z, or gf:p)");
}

lpa::VertexSet parse_vertex_list(const lpa::Graph& g, const std::vector<std::string>& ids) {
    std::vector<int> vs;
    for (const auto& id : ids) vs.push_back(g.vertex_index(id));
    return lpa::vs_sorted(std::move(vs));
}

struct RingChoice {
    std::string ring = "path";          // path|cohn|leavitt|relative
    std::vector<std::string> V_ids;     // only with relative
};

void check_ring_flags(const RingChoice& rc) {
    if (!rc.V_ids.empty() && rc.ring != "relative")
        throw lpa::ParseError("--V is only meaningful with --ring relative");
}

lpa::AlgebraContext make_ctx(const lpa::Graph& g, const RingChoice& rc, lpa::ScalarField f) {
    check_ring_flags(rc);
    if (rc.ring == "path") return lpa::make_path_context(g, f);
    if (rc.ring == "cohn") return lpa::make_cohn_context(g, f);
    if (rc.ring == "leavitt") return lpa::make_leavitt_context(g, f);
    if (rc.ring == "relative")
        return lpa::make_relative_context(g, f, parse_vertex_list(g, rc.V_ids));
    throw lpa::ParseError("unknown ring kind: " + rc.ring);
}

void print_json(const lpa::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int run_decide(const std::string& file, const RingChoice& rc, const std::string& property,
               const std::string& side_name) {
    check_ring_flags(rc);
    lpa::Graph g = load_graph(file);
    if (side_name != "left" && side_name != "right")
        throw lpa::ParseError("unknown side: " + side_name);
    lpa::Side side = side_name == "left" ? lpa::Side::Left : lpa::Side::Right;
    lpa::Verdict v;
    if (rc.ring == "path") {
        if (property == "rc") v = lpa::path_ring_rank(g);
        else if (property == "src") v = lpa::path_ring_src(g, side);
        else if (property == "amenable") v = lpa::path_algebra_amenable(g, side);
        else if (property == "exh-amenable") v = lpa::path_algebra_exh_amenable(g, side);
        else throw lpa::ParseError("unknown property: " + property);
    } else {
        lpa::VertexSet V;
        if (rc.ring == "leavitt") {
            for (int u = 0; u < g.vertex_count(); ++u)
                if (g.is_regular(u)) V.push_back(u);
        } else if (rc.ring == "relative") {
            V = parse_vertex_list(g, rc.V_ids);
        } else if (rc.ring != "cohn") {
            throw lpa::ParseError("unknown ring kind: " + rc.ring);
        }
        if (property == "rc") v = lpa::relative_leavitt_rc(g, V);
        else if (property == "src") v = lpa::relative_leavitt_src(g, V, side);
        else if (property == "amenable") v = lpa::relative_leavitt_amenable(g, V);
        else if (property == "exh-amenable") v = lpa::relative_leavitt_exh_amenable(g, V);
        else throw lpa::ParseError("unknown property: " + property);
    }
    print_json(lpa::verdict_to_json(g, v));
    return v.affirmative() ? kExitHolds : kExitFails;
}

int run_witness(const std::string& file, const RingChoice& rc, const std::string& kind,
                const std::vector<std::string>& k_terms, const std::string& p_str, int min_size,
                const std::vector<std::string>& x_ids, int trials, int max_support,
                bool seed_set, std::uint64_t seed) {
    lpa::Graph g = load_graph(file);
    lpa::AlgebraContext ctx = make_ctx(g, rc, lpa::ScalarField::rationals());
    try {
        if (kind == "folner") {
            std::vector<lpa::Term> K;
            for (const auto& s : k_terms) {
                auto [t, c] = lpa::term_from_text(ctx, s);
                if (c != lpa::Rational(1))
                    throw lpa::ParseError("K terms carry coefficient 1: " + s);
                K.push_back(t);
            }
            if (K.empty()) throw lpa::ParseError("folner needs at least one --K term");
            auto cert = lpa::folner(ctx, K, lpa::Rational::parse(p_str), min_size);
            print_json(lpa::folner_to_json(ctx, cert));
            return kExitHolds;
        }
        if (kind == "mono") {
            if (!seed_set) throw lpa::ParseError("randomized witness checks require --seed");
            auto pair = lpa::mono_pair(ctx);
            auto chk = lpa::check_mono_pair(ctx, pair, trials, max_support, seed);
            lpa::ordered_json j;
            j["a"] = lpa::element_to_text(pair.a);
            j["b"] = lpa::element_to_text(pair.b);
            j["checked_trials"] = chk.trials_run;
            j["refuted"] = !chk.ok;
            j["untested"] = chk.untested;
            print_json(j);
            return chk.ok ? kExitHolds : kExitFails;
        }
        if (kind == "propinf") {
            auto w = lpa::properly_infinite(ctx);
            lpa::ordered_json j;
            j["A"] = lpa::matrix_to_json(w.a);
            j["B"] = lpa::matrix_to_json(w.b);
            j["identity_checked"] = lpa::is_identity(lpa::mat_mul(w.a, lpa::mat_mul(w.y, w.b)));
            print_json(j);
            return kExitHolds;
        }
        if (kind == "ideal-unit") {
            auto u = lpa::ideal_unit(ctx, parse_vertex_list(g, x_ids));
            lpa::ordered_json j;
            j["u"] = lpa::element_to_text(u);
            print_json(j);
            return kExitHolds;
        }
        if (kind == "corner") {
            auto pairs = lpa::corner_fullness(ctx, parse_vertex_list(g, x_ids));
            lpa::ordered_json j;
            j["pairs"] = lpa::ordered_json::array();
            for (const auto& [lam, rho] : pairs)
                j["pairs"].push_back({lpa::element_to_text(lam), lpa::element_to_text(rho)});
            print_json(j);
            return kExitHolds;
        }
        throw lpa::ParseError("unknown witness kind: " + kind);
    } catch (const lpa::PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kExitFails;
    }
}

int run_eval(const std::string& file, const RingChoice& rc, const std::string& field,
             const std::vector<std::string>& exprs) {
    lpa::Graph g = load_graph(file);
    lpa::AlgebraContext ctx = make_ctx(g, rc, field_from(field));
    if (exprs.empty()) throw lpa::ParseError("nothing to evaluate");
    if (exprs.size() % 2 == 0) throw lpa::ParseError("expected element (op element)*");
    lpa::Element acc = lpa::element_from_text(ctx, exprs[0]);
    for (std::size_t i = 1; i < exprs.size(); i += 2) {
        lpa::Element rhs = lpa::element_from_text(ctx, exprs[i + 1]);
        if (exprs[i] == "*") acc = lpa::mul(acc, rhs);
        else if (exprs[i] == "+") acc = lpa::add(acc, rhs);
        else throw lpa::ParseError("unknown operator: " + exprs[i]);
    }
    std::cout << lpa::element_to_text(acc) << "\n";
    return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank conditions and amenability for rings associated to graphs"};
    app.require_subcommand(1);

    std::string file, property = "src", side = "right", kind, p_str = "2", field = "q";
    RingChoice rc;
    std::vector<std::string> k_terms, x_ids, exprs;
    int min_size = 1, trials = 1000, max_support = 5;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto add_ring = [&](CLI::App* cmd) {
        cmd->add_option("--ring", rc.ring, "path|cohn|leavitt|relative")->capture_default_str();
        cmd->add_option("--V", rc.V_ids, "relation vertices (with --ring relative)");
    };

    auto* decide = app.add_subcommand("decide", "run a decision procedure");
    decide->add_option("graph", file, "graph JSON file")->required();
    add_ring(decide);
    decide->add_option("--property", property, "rc|src|amenable|exh-amenable")
        ->capture_default_str();
    decide->add_option("--side", side, "left|right")->capture_default_str();

    auto* witness = app.add_subcommand("witness", "construct a verified certificate");
    witness->add_option("graph", file, "graph JSON file")->required();
    add_ring(witness);
    witness->add_option("--kind", kind, "folner|mono|propinf|ideal-unit|corner")->required();
    witness->add_option("--K", k_terms, "folner: basis terms of K");
    witness->add_option("--p", p_str, "folner: growth bound > 1")->capture_default_str();
    witness->add_option("--min-size", min_size, "folner: require |F| > this")
        ->capture_default_str();
    witness->add_option("--X", x_ids, "ideal-unit/corner: vertex set");
    witness->add_option("--trials", trials, "mono: sample count")->capture_default_str();
    witness->add_option("--max-support", max_support, "mono: support bound")
        ->capture_default_str();
    auto* seed_opt = witness->add_option("--seed", seed, "seed for randomized checks");

    auto* eval = app.add_subcommand("eval", "evaluate element expressions");
    eval->add_option("graph", file, "graph JSON file")->required();
    add_ring(eval);
    eval->add_option("--field", field, "q|z|gf:p")->capture_default_str();
    eval->add_option("expr", exprs, "element (op element)*, op in {*, +}");

    auto* report = app.add_subcommand("report", "full structural report");
    report->add_option("graph", file, "graph JSON file")->required();

    auto* dot = app.add_subcommand("dot", "emit graphviz");
    dot->add_option("graph", file, "graph JSON file")->required();

    CLI11_PARSE(app, argc, argv);
    seed_set = seed_opt->count() > 0;

    try {
        if (decide->parsed()) return run_decide(file, rc, property, side);
        if (witness->parsed())
            return run_witness(file, rc, kind, k_terms, p_str, min_size, x_ids, trials,
                               max_support, seed_set, seed);
        if (eval->parsed()) return run_eval(file, rc, field, exprs);
        if (report->parsed()) {
            std::cout << lpa::report(load_graph(file)).dump(2) << "\n";
            return kExitHolds;
        }
        if (dot->parsed()) {
            std::cout << lpa::to_dot(load_graph(file));
            return kExitHolds;
        }
    } catch (const lpa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
