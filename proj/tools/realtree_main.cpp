// Command-line surface over the library: tree-likeness checks, tree
// construction, geodesic queries, measures, metric realization, random
// sampling, Gromov-Hausdorff distances and triangle constants.
//
// Exit codes: 0 success, 1 domain error (e.g. a four-point violation),
// 2 malformed input or usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "realtree/binary_family.hpp"
#include "realtree/excursion.hpp"
#include "realtree/gh.hpp"
#include "realtree/hyperbolicity.hpp"
#include "realtree/json_io.hpp"
#include "realtree/measure.hpp"
#include "realtree/random_trees.hpp"
#include "realtree/realization.hpp"
#include "realtree/tree_query.hpp"
#include "realtree/triangles.hpp"

namespace {

using namespace realtree;

unsigned worker_threads() {
    const char* env = std::getenv("REALTREE_THREADS");
    if (!env) return 1;
    long v = std::strtol(env, nullptr, 10);
    return v > 0 ? static_cast<unsigned>(v) : 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("io", {}, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("json", {}, path + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        out << text << "\n";
    }
}

struct Options {
    std::string metric_file, metric_file2, tree_file, graph_file, excursion_file, lengths_file;
    std::string out_path, csv_path;
    std::string base, root_a, root_b;
    std::vector<std::string> points;
    std::string str_v, str_w;
    double tol = 1e-9;
    std::string rational_tol = "0";
    bool rational = false;
    bool witness = false;
    bool stats = false;
    unsigned subdiv = 4;
    std::size_t max_points = 7;
    std::uint64_t seed = 0;
    std::size_t n = 1;
    double gamma = 2.0;
    unsigned depth = 20;
    std::vector<std::string> corners;
    std::vector<std::string> side_xy, side_xz, side_yz;
};

template <class S>
S tolerance_of(const Options& opt) {
    if constexpr (std::is_same_v<S, double>) {
        return opt.tol;
    } else {
        S out;
        parse_length(opt.rational_tol, out);
        return out;
    }
}

// ---- check ----

template <class S>
int run_check(const Options& opt) {
    auto m = metric_from_json<S>(read_json(opt.metric_file), tolerance_of<S>(opt));
    auto delta = hyperbolicity_delta(m, worker_threads());
    S tol = tolerance_of<S>(opt);

    std::string out = "{\"delta\":" + scalar_json(delta.value);
    if (!opt.base.empty()) {
        auto based = based_delta(m, std::string_view(opt.base));
        out += ",\"delta_based\":" + scalar_json(based.value);
        out += ",\"delta_based_doubled\":" + scalar_json(based.value + based.value);
    }
    out += ",\"is_tree\":" + std::string(delta.value <= tol ? "true" : "false");
    out += ",\"tol\":" + scalar_json(tol);
    if (delta.witness) {
        out += ",\"witness\":[";
        for (std::size_t k = 0; k < 4; ++k) {
            if (k) out += ",";
            out += json_escape(m.label((*delta.witness)[k]));
        }
        out += "]";
    }
    out += "}";
    emit(out, opt.out_path);
    return 0;
}

// ---- build ----

template <class S>
int run_build_excursion(const Options& opt) {
    auto g = parse_excursion<S>(read_file(opt.excursion_file));
    auto et = tree_from_excursion(g, tolerance_of<S>(opt));
    std::string out = "{\"projection\":[";
    for (std::size_t i = 0; i < et.projection.size(); ++i) {
        if (i) out += ",";
        out += json_escape(format_tree_point(et.tree, et.projection[i]));
    }
    out += "],\"tree\":" + tree_to_json(et.tree) + "}";
    emit(out, opt.out_path);
    return 0;
}

template <class S>
int run_build_order(const Options& opt) {
    auto order = order_from_json<S>(read_json(opt.metric_file));
    emit(metric_to_json(metric_from_order(order)), opt.out_path);
    return 0;
}

template <class S>
int run_build_binary(const Options& opt) {
    auto j = read_json(opt.lengths_file);
    BinaryEdgeLengths<S> ell;
    if (!j.contains("prefix"))
        throw ValidationError("schema", {}, "expected {\"prefix\": [...], \"tail\"?, \"param\"?}");
    for (const auto& x : j.at("prefix")) ell.prefix.push_back(parse_scalar<S>(x));
    std::string tail = j.value("tail", std::string("none"));
    if (tail == "none") {
        ell.tail = BinaryEdgeLengths<S>::Tail::none;
    } else if (tail == "constant") {
        ell.tail = BinaryEdgeLengths<S>::Tail::constant;
    } else if (tail == "geometric") {
        ell.tail = BinaryEdgeLengths<S>::Tail::geometric;
    } else {
        throw ValidationError("schema", {}, "tail must be none|constant|geometric");
    }
    if (ell.tail != BinaryEdgeLengths<S>::Tail::none)
        ell.tail_param = parse_scalar<S>(j.at("param"));
    S d = binary_tree_distance(ell, BinaryString::parse(opt.str_v), BinaryString::parse(opt.str_w));
    emit("{\"distance\":" + scalar_json(d) + "}", opt.out_path);
    return 0;
}

// ---- query ----

template <class S>
int run_query(const std::string& op, const Options& opt) {
    auto t = tree_from_json<S>(read_json(opt.tree_file));
    S tol = tolerance_of<S>(opt);
    auto pt = [&](std::size_t i) {
        if (i >= opt.points.size()) throw ValidationError("usage", {}, "missing point argument");
        return parse_tree_point(t, opt.points[i], tol);
    };
    if (op == "distance") {
        emit("{\"value\":" + scalar_json(distance(t, pt(0), pt(1))) + "}", opt.out_path);
    } else if (op == "meet") {
        emit("{\"point\":" + json_escape(format_tree_point(t, meet(t, pt(0), pt(1), tol))) + "}",
             opt.out_path);
    } else if (op == "median") {
        emit("{\"point\":" +
                 json_escape(format_tree_point(t, median(t, pt(0), pt(1), pt(2), tol))) + "}",
             opt.out_path);
    } else if (op == "segment") {
        emit(segment_to_json(t, segment(t, pt(0), pt(1), tol)), opt.out_path);
    } else if (op == "degree") {
        emit("{\"value\":" + std::to_string(degree(t, pt(0))) + "}", opt.out_path);
    } else if (op == "leaves") {
        auto rep = leaves_and_skeleton(t);
        std::string out = "{\"leaves\":[";
        for (std::size_t i = 0; i < rep.leaves.size(); ++i) {
            if (i) out += ",";
            out += json_escape(t.id(rep.leaves[i]));
        }
        out += "],\"root_among_leaves\":" + std::string(rep.root_among_leaves ? "true" : "false");
        out += ",\"skeleton\":[";
        for (std::size_t i = 0; i < rep.skeleton.size(); ++i) {
            if (i) out += ",";
            const auto& se = rep.skeleton[i];
            out += "{\"includes_u\":" + std::string(se.includes_u ? "true" : "false");
            out += ",\"includes_v\":" + std::string(se.includes_v ? "true" : "false");
            out += ",\"u\":" + json_escape(t.id(t.edge(se.edge).u));
            out += ",\"v\":" + json_escape(t.id(t.edge(se.edge).v)) + "}";
        }
        out += "]}";
        emit(out, opt.out_path);
    } else if (op == "span") {
        std::vector<TreePoint<S>> pts;
        for (std::size_t i = 0; i < opt.points.size(); ++i) pts.push_back(pt(i));
        emit(tree_to_json(spanned_subtree(t, pts, tol)), opt.out_path);
    } else {
        throw ValidationError("usage", {}, "unknown query op " + op);
    }
    return 0;
}

// ---- measure ----

template <class S>
int run_measure(const Options& opt) {
    auto t = tree_from_json<S>(read_json(opt.tree_file));
    S tol = tolerance_of<S>(opt);
    auto rep = length_measure_report(t);
    std::string out = "{\"per_edge\":[";
    for (std::size_t i = 0; i < rep.per_edge.size(); ++i) {
        if (i) out += ",";
        const auto& e = t.edge(rep.per_edge[i].first);
        out += "{\"len\":" + scalar_json(rep.per_edge[i].second);
        out += ",\"u\":" + json_escape(t.id(e.u)) + ",\"v\":" + json_escape(t.id(e.v)) + "}";
    }
    out += "],\"queried_sets\":[";
    if (opt.points.size() >= 2) {
        auto p = parse_tree_point(t, opt.points[0], tol);
        auto q = parse_tree_point(t, opt.points[1], tol);
        out += "{\"measure\":" + scalar_json(segment_measure(t, p, q));
        out += ",\"set\":" + json_escape("[" + opt.points[0] + ", " + opt.points[1] + "]") + "}";
    }
    out += "],\"total\":" + scalar_json(rep.total) + "}";
    emit(out, opt.out_path);
    return 0;
}

int run_probe(const Options& opt) {
    auto probe = dimension_probe(opt.gamma, opt.depth);
    std::string out = "{\"depth\":" + std::to_string(probe.depth);
    out += ",\"dimension_estimate\":" + scalar_json(probe.dimension_estimate);
    out += ",\"gamma\":" + scalar_json(probe.gamma);
    out += ",\"partial_length\":" + scalar_json(probe.partial_length) + "}";
    emit(out, opt.out_path);
    if (!opt.csv_path.empty()) {
        std::ofstream csv(opt.csv_path);
        csv << "k,count,scale\n";
        for (const auto& row : probe.rows)
            csv << row.k << "," << format_length(row.count) << "," << format_length(row.scale)
                << "\n";
    }
    return 0;
}

// ---- realize ----

template <class S>
int run_realize(const Options& opt) {
    S tol = tolerance_of<S>(opt);
    auto m = metric_from_json<S>(read_json(opt.metric_file), tol);
    auto r = realize_tree(m, tol);
    auto report = verify_realization(r.tree, r.embedding, m, tol);
    std::string emb = "{";
    bool first = true;
    for (const auto& [label, point] : r.embedding) {
        if (!first) emb += ",";
        first = false;
        emb += json_escape(label) + ":" + json_escape(format_tree_point(r.tree, point));
    }
    emb += "}";
    std::string ver = "{\"max_abs\":" + scalar_json(report.max_abs) +
                      ",\"mean_abs\":" + scalar_json(report.mean_abs) +
                      ",\"pass\":" + (report.pass ? std::string("true") : std::string("false")) +
                      "}";
    if (!opt.out_path.empty()) {
        emit(tree_to_json(r.tree), opt.out_path + ".tree.json");
        emit(emb, opt.out_path + ".embedding.json");
        emit(ver, opt.out_path + ".verification.json");
    } else {
        emit("{\"embedding\":" + emb + ",\"tree\":" + tree_to_json(r.tree) +
                 ",\"verification\":" + ver + "}",
             "");
    }
    return 0;
}

// ---- sample ----

int run_sample_dyck(const Options& opt) {
    emit(format_excursion(sample_dyck_excursion(opt.n, opt.seed)), opt.out_path);
    return 0;
}

int run_sample_crt(const Options& opt) {
    auto et = sample_crt(opt.n, opt.seed);
    std::string out = "{";
    if (opt.stats) {
        auto g = sample_brownian_excursion(opt.n, opt.seed);
        auto rep = leaves_and_skeleton(et.tree);
        std::map<std::size_t, std::size_t> hist;
        for (std::size_t v = 0; v < et.tree.size(); ++v)
            ++hist[et.tree.degree_of_vertex(v)];
        auto leaf = sample_leaf(et, g, derive_seed(opt.seed, 1));
        double depth = distance(et.tree, TreePoint<double>::at_vertex(*et.tree.root()), leaf);
        out += "\"stats\":{\"degree_histogram\":{";
        bool first = true;
        for (const auto& [deg, count] : hist) {
            if (!first) out += ",";
            first = false;
            out += json_escape(std::to_string(deg)) + ":" + std::to_string(count);
        }
        out += "},\"leaf_count\":" + std::to_string(rep.leaves.size());
        out += ",\"root_to_random_leaf\":" + scalar_json(depth);
        out += ",\"total_length\":" + scalar_json(total_length(et.tree)) + "},";
    }
    out += "\"tree\":" + tree_to_json(et.tree) + "}";
    emit(out, opt.out_path);
    return 0;
}

int run_sample_leaf(const Options& opt) {
    auto g = parse_excursion<double>(read_file(opt.excursion_file));
    auto et = tree_from_excursion(g, 1e-9);
    auto p = sample_leaf(et, g, opt.seed);
    emit("{\"point\":" + json_escape(format_tree_point(et.tree, p)) + "}", opt.out_path);
    return 0;
}

// ---- gh ----

template <class S>
int run_gh(const Options& opt) {
    S tol = tolerance_of<S>(opt);
    auto m1 = metric_from_json<S>(read_json(opt.metric_file), tol);
    auto m2 = metric_from_json<S>(read_json(opt.metric_file2), tol);
    GhResult<S> res;
    if (!opt.root_a.empty() || !opt.root_b.empty()) {
        if (opt.root_a.empty() || opt.root_b.empty()) throw NoRoot();
        res = rooted_gh_distance(m1, opt.root_a, m2, opt.root_b, opt.max_points, opt.witness);
    } else {
        res = gh_distance(m1, m2, opt.max_points, opt.witness);
    }
    std::string out = "{\"value\":" + scalar_json(res.value);
    if (opt.witness) {
        out += ",\"witness\":[";
        for (std::size_t i = 0; i < res.witness.size(); ++i) {
            if (i) out += ",";
            out += "[" + json_escape(m1.label(res.witness[i].first)) + "," +
                   json_escape(m2.label(res.witness[i].second)) + "]";
        }
        out += "]";
    }
    out += "}";
    emit(out, opt.out_path);
    return 0;
}

// ---- triangle ----

template <class S>
int run_triangle(const std::string& kind, const Options& opt) {
    auto g = graph_from_json<S>(read_json(opt.graph_file));
    if (opt.corners.size() != 3)
        throw ValidationError("usage", {}, "triangle needs exactly three corners");
    GeodesicTriangle<S> tri;
    for (int i = 0; i < 3; ++i) tri.corners[i] = g.vertex(opt.corners[i]);

    auto resolve_side = [&](const std::vector<std::string>& given, std::size_t a, std::size_t b) {
        std::vector<std::size_t> verts;
        if (!given.empty()) {
            for (const auto& id : given) verts.push_back(g.vertex(id));
            return verts;
        }
        // default routing: the first enumerated shortest path
        auto paths = all_shortest_paths(g, a, b, g.size());
        return paths.front();
    };
    tri.sides[0] = resolve_side(opt.side_xy, tri.corners[0], tri.corners[1]);
    tri.sides[1] = resolve_side(opt.side_xz, tri.corners[0], tri.corners[2]);
    tri.sides[2] = resolve_side(opt.side_yz, tri.corners[1], tri.corners[2]);

    S value = kind == "thin" ? triangle_thinness(g, tri, opt.subdiv)
                             : triangle_slimness(g, tri, opt.subdiv);
    emit("{\"subdiv\":" + std::to_string(opt.subdiv) + ",\"value\":" + scalar_json(value) + "}",
         opt.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale computations on real trees and tree-like metrics"};
    app.require_subcommand(1);
    Options opt;

    app.add_flag("--rational", opt.rational,
                 "exact arithmetic: lengths are integers or \"p/q\" fractions");
    app.add_option("--tol", opt.tol, "length tolerance in floating mode");
    app.add_option("--out", opt.out_path, "write the primary output here instead of stdout");

    auto* check = app.add_subcommand("check", "four-point / hyperbolicity report for a metric");
    check->add_option("metric", opt.metric_file)->required();
    check->add_option("--base", opt.base, "also report the base-point constant at this label");

    auto* build = app.add_subcommand("build", "construct trees and tree metrics");
    build->require_subcommand(1);
    auto* bexc = build->add_subcommand("excursion", "quotient tree of a sampled excursion");
    bexc->add_option("file", opt.excursion_file)->required();
    auto* bord = build->add_subcommand("order", "tree metric of a heighted partial order");
    bord->add_option("file", opt.metric_file)->required();
    auto* bbin = build->add_subcommand("binary", "distance in the (completed) binary tree");
    bbin->add_option("--lengths", opt.lengths_file)->required();
    bbin->add_option("--v", opt.str_v)->required();
    bbin->add_option("--w", opt.str_w)->required();

    auto* query = app.add_subcommand("query", "geodesic queries on a tree");
    query->require_subcommand(1);
    const char* query_ops[] = {"distance", "meet", "median", "segment", "degree", "leaves", "span"};
    for (const char* op : query_ops) {
        auto* sub = query->add_subcommand(op);
        sub->add_option("--tree", opt.tree_file)->required();
        sub->add_option("points", opt.points);
    }

    auto* measure = app.add_subcommand("measure", "length measure of a tree");
    measure->add_option("--tree", opt.tree_file);
    measure->add_option("--seg", opt.points)->expected(2);
    auto* probe = measure->add_subcommand("probe", "binary-family dimension diagnostics");
    probe->add_option("--gamma", opt.gamma);
    probe->add_option("--depth", opt.depth);
    probe->add_option("--csv", opt.csv_path);

    auto* realize = app.add_subcommand("realize", "reconstruct a tree from a tree metric");
    realize->add_option("metric", opt.metric_file)->required();

    auto* sample = app.add_subcommand("sample", "random excursions, trees and leaves");
    sample->require_subcommand(1);
    auto* sdyck = sample->add_subcommand("dyck", "uniform lattice excursion of 2n steps");
    auto* scrt = sample->add_subcommand("crt", "continuum-random-tree approximation");
    auto* sleaf = sample->add_subcommand("leaf", "leaf-measure draw from an excursion");
    for (auto* s : {sdyck, scrt}) s->add_option("--n", opt.n)->required();
    for (auto* s : {sdyck, scrt, sleaf}) s->add_option("--seed", opt.seed);
    scrt->add_flag("--stats", opt.stats, "include degree/leaf/length statistics");
    sleaf->add_option("--excursion", opt.excursion_file)->required();

    auto* gh = app.add_subcommand("gh", "exact Gromov-Hausdorff distance of small spaces");
    gh->add_option("metric1", opt.metric_file)->required();
    gh->add_option("metric2", opt.metric_file2)->required();
    gh->add_option("--max-points", opt.max_points);
    gh->add_flag("--witness", opt.witness, "emit one optimal correspondence");
    gh->add_option("--root-a", opt.root_a);
    gh->add_option("--root-b", opt.root_b);

    auto* triangle = app.add_subcommand("triangle", "slim/thin constants of a geodesic triangle");
    triangle->require_subcommand(1);
    for (const char* kind : {"thin", "slim"}) {
        auto* sub = triangle->add_subcommand(kind);
        sub->add_option("--graph", opt.graph_file)->required();
        sub->add_option("--corners", opt.corners)->expected(3)->required();
        sub->add_option("--side-xy", opt.side_xy);
        sub->add_option("--side-xz", opt.side_xz);
        sub->add_option("--side-yz", opt.side_yz);
        sub->add_option("--subdiv", opt.subdiv);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (check->parsed()) return opt.rational ? run_check<Rat>(opt) : run_check<double>(opt);
        if (bexc->parsed())
            return opt.rational ? run_build_excursion<Rat>(opt) : run_build_excursion<double>(opt);
        if (bord->parsed())
            return opt.rational ? run_build_order<Rat>(opt) : run_build_order<double>(opt);
        if (bbin->parsed())
            return opt.rational ? run_build_binary<Rat>(opt) : run_build_binary<double>(opt);
        for (const char* op : query_ops)
            if (query->parsed() && query->get_subcommand(op)->parsed())
                return opt.rational ? run_query<Rat>(op, opt) : run_query<double>(op, opt);
        if (probe->parsed()) return run_probe(opt);
        if (measure->parsed())
            return opt.rational ? run_measure<Rat>(opt) : run_measure<double>(opt);
        if (realize->parsed())
            return opt.rational ? run_realize<Rat>(opt) : run_realize<double>(opt);
        if (sdyck->parsed()) return run_sample_dyck(opt);
        if (scrt->parsed()) return run_sample_crt(opt);
        if (sleaf->parsed()) return run_sample_leaf(opt);
        if (gh->parsed()) return opt.rational ? run_gh<Rat>(opt) : run_gh<double>(opt);
        for (const char* kind : {"thin", "slim"})
            if (triangle->parsed() && triangle->get_subcommand(kind)->parsed())
                return opt.rational ? run_triangle<Rat>(kind, opt)
                                    : run_triangle<double>(kind, opt);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error (" << e.kind() << "): " << e.what() << "\n";
        return e.malformed_input() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
