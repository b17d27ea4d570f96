// Command-line surface of the toolkit. Every subcommand prints a
// deterministic certificate to stdout (and to --out when given); identical
// inputs produce identical bytes. Exit status 0 means a verdict was computed,
// including negative verdicts; nonzero signals usage or input errors only.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <pgcl/certificate.hpp>
#include <pgcl/cl_core.hpp>
#include <pgcl/cl_general.hpp>
#include <pgcl/constructions.hpp>
#include <pgcl/line_class.hpp>
#include <pgcl/line_graph.hpp>
#include <pgcl/pattern_engine.hpp>

using nlohmann::ordered_json;
using namespace pgcl;

namespace {

struct Output {
    std::string path; // optional certificate copy
    void emit(const std::string& text) const {
        std::cout << text;
        if (!path.empty()) write_file(path, text);
    }
};

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

struct LoadedClass {
    Geometry geometry;
    LineGraph graph;
    LineClass line_class;
    std::string input_hash;
    std::string input_path;
};

LoadedClass load_class(const std::string& path) {
    std::string bytes = read_file(path);
    auto file = parse_line_class_text(bytes);
    auto [n, q] = parse_descriptor(file.geometry);
    LoadedClass lc{build_geometry(n, q), {}, {}, content_hash(bytes), path};
    lc.graph = build_graph(lc.geometry);
    lc.line_class = line_class_from_file(lc.geometry, file);
    return lc;
}

std::vector<long long> parse_csv(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoll(tok));
        } catch (...) {
            throw std::invalid_argument("bad integer token '" + tok + "'");
        }
    }
    return out;
}

ordered_json family_json(const IdentityFamily& f) {
    return ordered_json{{"identity", f.name}, {"checked", f.checked}, {"passed", f.passed}};
}

int run_geom_info(const std::string& desc, const Output& out) {
    auto [n, q] = parse_descriptor(desc);
    auto g = build_geometry(n, q);
    ordered_json j;
    j["command"] = "geom-info";
    j["geometry"] = g.descriptor();
    j["points"] = g.points.size();
    j["lines"] = g.lines.size();
    if (n >= 3) j["planes"] = g.planes.size();
    if (n == 4) j["solids"] = g.solids.size();
    j["hyperplanes"] = g.hyperplane_count();
    j["points_per_line"] = q + 1;
    out.emit(dump(j));
    return 0;
}

int run_graph_check(const std::string& desc, const std::string& edges_path,
                    const Output& out) {
    auto [n, q] = parse_descriptor(desc);
    auto g = build_geometry(n, q);
    auto G = build_graph(g);
    ordered_json j;
    j["command"] = "graph-check";
    j["geometry"] = g.descriptor();
    j["vertices"] = G.size();
    j["valency"] = G.valency;
    if (n == 3) {
        auto rep = check_local_structure(G);
        j["plane_cliques"] = g.planes.size();
        j["star_cliques"] = g.points.size();
        j["clique_size"] = q * (q + 1) + 1;
        j["structure"] = ordered_json{{"verdict", rep.pass ? "pass" : "fail"},
                                      {"neighborhoods", rep.neighborhoods_checked},
                                      {"skew_pairs", rep.skew_pairs_checked},
                                      {"adjacent_pairs", rep.adjacent_pairs_checked},
                                      {"clique_pairs", rep.clique_pairs_checked}};
        if (!rep.pass) j["structure"]["failure"] = rep.failure;
    }
    if (!edges_path.empty()) write_file(edges_path, export_edges(G));
    out.emit(dump(j));
    return 0;
}

int run_class_verify(const std::string& in, std::optional<long long> x_opt,
                     const Output& out) {
    auto lc = load_class(in);
    ordered_json j;
    j["command"] = "class-verify";
    j["input"] = lc.input_path;
    j["input_hash"] = lc.input_hash;
    j["geometry"] = lc.geometry.descriptor();
    j["size"] = lc.line_class.size();

    if (lc.geometry.n == 3) {
        auto param = cl_parameter(lc.graph, lc.line_class);
        j["parameter"] = param ? ordered_json(*param) : ordered_json(nullptr);
        long long x = x_opt ? *x_opt : (param ? *param : -1);
        if (x >= 0) {
            auto rep = verify_equivalents(lc.graph, lc.line_class, x);
            j["checked_against_x"] = x;
            j["checks"] = ordered_json::array({family_json(rep.point_plane),
                                               family_json(rep.skew_pairs),
                                               family_json(rep.adjacent_pairs)});
            if (!rep.first_violation.empty()) j["first_violation"] = rep.first_violation;
            j["verdict"] = (param && rep.all_pass() && (!x_opt || *x_opt == *param))
                               ? "cameron-liebler"
                               : "not-cameron-liebler";
        } else {
            j["verdict"] = "not-cameron-liebler";
        }
        if (param) {
            long long qq = lc.geometry.q;
            j["complement_parameter"] = qq * qq + 1 - *param;
        }
    } else {
        auto param = cl_parameter_general(lc.graph, lc.line_class);
        j["parameter"] = param ? ordered_json(param->str()) : ordered_json(nullptr);
        j["verdict"] = param ? "cameron-liebler" : "not-cameron-liebler";
    }
    out.emit(dump(j));
    return 0;
}

int run_class_spectrum(const std::string& in, const Output& out) {
    auto lc = load_class(in);
    auto spec = pattern_spectrum(lc.graph, lc.line_class);
    std::ostringstream os;
    os << "pgcl-pattern-spectrum v1\n";
    os << "input: " << lc.input_path << "\n";
    os << "input-hash: " << lc.input_hash << "\n";
    os << "geometry: " << lc.geometry.descriptor() << "\n";
    os << "class-size: " << lc.line_class.size() << "\n";
    for (int chi = 1; chi >= 0; --chi) {
        const auto& side = chi ? spec.member : spec.non_member;
        os << "[chi=" << chi << "]\n";
        os << "patterns: " << side.size() << "\n";
        for (const auto& e : side) {
            os << "- count: " << e.count << "\n";
            for (int r = 0; r <= lc.geometry.q; ++r) {
                os << "  ";
                for (int c = 0; c <= lc.geometry.q; ++c) {
                    if (c) os << ' ';
                    os << e.pattern.at(r, c);
                }
                os << "\n";
            }
        }
    }
    out.emit(os.str());
    return 0;
}

int run_class_quotient(const std::string& in, const Output& out) {
    auto lc = load_class(in);
    auto qm = quotient_matrix(lc.graph, lc.line_class);
    ordered_json j;
    j["command"] = "class-quotient";
    j["input"] = lc.input_path;
    j["input_hash"] = lc.input_hash;
    j["geometry"] = lc.geometry.descriptor();
    j["size"] = lc.line_class.size();
    j["matrix"] = ordered_json::array(
        {ordered_json::array({qm.p[0][0], qm.p[0][1]}),
         ordered_json::array({qm.p[1][0], qm.p[1][1]})});
    j["equitable"] = qm.equitable;
    if (!qm.equitable) j["witness"] = qm.witness;
    out.emit(dump(j));
    return 0;
}

int run_patterns_enumerate(int q, int x, int chi, const std::string& preset,
                           bool no_square, int threads, const Output& out) {
    PatternConstraints pc;
    pc.clique_values = preset_clique_values(preset);
    pc.square_condition = !no_square;
    auto res = enumerate_patterns(q, x, chi, pc, threads);
    std::ostringstream os;
    os << "pgcl-pattern-enumeration v1\n";
    os << "q: " << q << "\n";
    os << "x: " << x << "\n";
    os << "chi: " << chi << "\n";
    os << "preset: " << preset << "\n";
    os << "clique-values:";
    if (!pc.clique_values)
        os << " unrestricted";
    else
        for (int v : *pc.clique_values) os << ' ' << v;
    os << "\n";
    os << "square-condition: " << (pc.square_condition ? "on" : "off") << "\n";
    os << "admissible: " << res.admissible.size() << "\n";
    for (const auto& p : res.admissible) {
        os << "- pattern\n";
        for (int r = 0; r <= q; ++r) {
            os << "  ";
            for (int c = 0; c <= q; ++c) {
                if (c) os << ' ';
                os << p.at(r, c);
            }
            os << "\n";
        }
    }
    if (pc.square_condition) {
        os << "eliminated-by-square-condition: " << res.square_rejects.size() << "\n";
        for (const auto& e : res.square_rejects) {
            os << "- square-sum: " << e.square_sum << " required: " << e.required << "\n";
            for (int r = 0; r <= q; ++r) {
                os << "  ";
                for (int c = 0; c <= q; ++c) {
                    if (c) os << ' ';
                    os << e.pattern.at(r, c);
                }
                os << "\n";
            }
        }
    }
    out.emit(os.str());
    return 0;
}

int run_patterns_nonexistence(int q, int x, const std::string& preset,
                              const std::string& replay_path, int threads,
                              const Output& out) {
    if (!replay_path.empty()) {
        auto stored = read_file(replay_path);
        auto rr = replay_certificate(stored);
        std::ostringstream os;
        os << "pgcl-replay v1\n";
        os << "file: " << replay_path << "\n";
        os << "file-hash: " << content_hash(stored) << "\n";
        os << "replay: " << (rr.ok ? "match" : "MISMATCH") << "\n";
        out.emit(os.str());
        return 0;
    }
    auto cert = nonexistence(q, x, preset, threads);
    out.emit(cert.to_text());
    return 0;
}

int run_construct(const std::string& kind, const std::string& desc, int point, int plane,
                  int hyperplane, const std::string& oval_csv, const std::string& out_path,
                  const Output& out) {
    auto [n, q] = parse_descriptor(desc);
    auto g = build_geometry(n, q);
    LineClass c;
    ordered_json prov;
    prov["name"] = kind;
    if (kind == "empty") {
        c = standard_empty(g);
    } else if (kind == "all") {
        c = standard_all(g);
    } else if (kind == "star") {
        if (point < 0) throw std::invalid_argument("star needs --point");
        c = standard_star(g, point);
        prov["point"] = point;
    } else if (kind == "hyperplane") {
        if (hyperplane < 0) throw std::invalid_argument("hyperplane needs --hyperplane");
        c = standard_hyperplane(g, hyperplane);
        prov["hyperplane"] = hyperplane;
    } else if (kind == "union") {
        if (point < 0 || hyperplane < 0)
            throw std::invalid_argument("union needs --point and --hyperplane");
        c = standard_union(g, point, hyperplane);
        prov["point"] = point;
        prov["hyperplane"] = hyperplane;
    } else if (kind == "gp7") {
        auto G = build_graph(g);
        GP7Input in;
        in.plane = plane < 0 ? 0 : plane;
        in.point = point;
        if (in.point < 0) {
            for (std::size_t p = 0; p < g.points.size(); ++p)
                if (!g.plane_points[in.plane].test(p)) {
                    in.point = (int)p;
                    break;
                }
        }
        if (!oval_csv.empty()) {
            Bitset oval(g.points.size());
            for (long long p : parse_csv(oval_csv)) {
                if (p < 0 || p >= (long long)g.points.size())
                    throw std::invalid_argument("hyperoval point out of range: " +
                                                std::to_string(p));
                oval.set((std::size_t)p);
            }
            in.hyperoval = oval;
        }
        auto r = gp_x7(G, in);
        c = r.line_class;
        prov["point"] = in.point;
        prov["plane"] = in.plane;
        prov["hyperoval"] = r.hyperoval.to_indices();
        prov["cone_lines"] = r.cone_lines;
    } else {
        throw std::invalid_argument("unknown construction kind '" + kind + "'");
    }
    auto text = line_class_to_text(c, prov);
    if (out_path.empty()) throw std::invalid_argument("construct needs --out");
    write_file(out_path, text);

    ordered_json j;
    j["command"] = "construct";
    j["kind"] = kind;
    j["geometry"] = g.descriptor();
    j["size"] = c.size();
    j["output"] = out_path;
    j["output_hash"] = content_hash(text);
    out.emit(dump(j));
    return 0;
}

int run_spread_check(const std::string& in, std::optional<long long> x_opt,
                     const Output& out) {
    auto lc = load_class(in);
    auto spread = regular_spread(lc.geometry);
    ordered_json j;
    j["command"] = "spread-check";
    j["input"] = lc.input_path;
    j["input_hash"] = lc.input_hash;
    j["geometry"] = lc.geometry.descriptor();
    j["spread_size"] = spread.size();
    long long hit = 0;
    for (int li : spread) hit += lc.line_class.contains(li) ? 1 : 0;
    j["intersection"] = hit;
    std::optional<long long> x = x_opt;
    if (!x) x = cl_parameter(lc.graph, lc.line_class);
    if (x) {
        j["x"] = *x;
        j["verdict"] = spread_check(lc.graph, lc.line_class, spread, Rational(*x))
                           ? "pass"
                           : "fail";
    } else {
        j["x"] = nullptr;
        j["verdict"] = "no-parameter";
    }
    out.emit(dump(j));
    return 0;
}

int run_ryser(const std::string& rows_csv, const std::string& cols_csv, const Output& out) {
    auto rows = parse_csv(rows_csv);
    auto cols = parse_csv(cols_csv);
    ordered_json j;
    j["command"] = "ryser";
    j["rows"] = rows;
    j["cols"] = cols;
    j["feasible"] = gale_ryser(rows, cols);
    out.emit(dump(j));
    return 0;
}

int run_restrict(const std::string& in, int solid, const std::string& out_path,
                 const Output& out) {
    auto lc = load_class(in);
    if (lc.geometry.n < 4)
        throw std::invalid_argument("restriction needs a class of PG(n,q), n >= 4");
    if (solid < 0 || solid >= (int)lc.geometry.solids.size())
        throw std::invalid_argument("solid index out of range: " + std::to_string(solid));
    auto g3 = build_geometry(3, lc.geometry.q);
    auto G3 = build_graph(g3);
    auto restricted = restrict_to_solid(lc.line_class, solid, g3);

    ordered_json prov;
    prov["name"] = "restrict";
    prov["source"] = lc.input_path;
    prov["source_hash"] = lc.input_hash;
    prov["solid"] = solid;
    auto text = line_class_to_text(restricted, prov);
    if (out_path.empty()) throw std::invalid_argument("restrict needs --out");
    write_file(out_path, text);

    auto x = cl_parameter(G3, restricted);
    ordered_json j;
    j["command"] = "restrict";
    j["input"] = lc.input_path;
    j["input_hash"] = lc.input_hash;
    j["solid"] = solid;
    j["induced_geometry"] = g3.descriptor();
    j["induced_size"] = restricted.size();
    j["induced_parameter"] = x ? ordered_json(*x) : ordered_json(nullptr);
    j["output"] = out_path;
    j["output_hash"] = content_hash(text);
    out.emit(dump(j));
    return 0;
}

int run_search_x1(const std::string& desc, const Output& out) {
    auto [n, q] = parse_descriptor(desc);
    auto g = build_geometry(n, q);
    auto G = build_graph(g);
    auto found = search_x1(G);
    std::ostringstream os;
    os << "pgcl-search-x1 v1\n";
    os << "geometry: " << g.descriptor() << "\n";
    os << "classes: " << found.size() << "\n";
    int stars = 0, planes = 0;
    for (const auto& c : found) {
        bool is_star = false, is_plane = false;
        for (std::size_t p = 0; p < g.points.size(); ++p)
            if (c.mask() == g.star[p]) is_star = true;
        for (std::size_t pl = 0; pl < g.planes.size(); ++pl)
            if (c.mask() == g.plane_lines[pl]) is_plane = true;
        stars += is_star;
        planes += is_plane;
        os << "- " << (is_star ? "star" : (is_plane ? "plane" : "other")) << ":";
        for (int li : c.indices()) os << ' ' << li;
        os << "\n";
    }
    os << "stars: " << stars << "\n";
    os << "planes: " << planes << "\n";
    out.emit(os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for line classes of small projective spaces"};
    app.require_subcommand(1);

    std::string geometry = "PG(3,4)", in_path, out_path, cert_path, edges_path;
    std::string preset = "none", kind, oval_csv, rows_csv, cols_csv, replay_path;
    int q = 4, x = 0, chi = 0, threads = 1;
    int point = -1, plane = -1, hyperplane = -1, solid = -1;
    long long x_given = -1;
    bool no_square = false;

    auto* geom_info = app.add_subcommand("geom-info", "object counts of PG(n,q)");
    geom_info->add_option("--geometry", geometry)->required();
    geom_info->add_option("--out", cert_path);

    auto* graph_check = app.add_subcommand("graph-check", "line-graph structure verification");
    graph_check->add_option("--geometry", geometry)->required();
    graph_check->add_option("--export-edges", edges_path);
    graph_check->add_option("--out", cert_path);

    auto* verify = app.add_subcommand("class-verify", "verify the counting identities");
    verify->add_option("--in", in_path)->required();
    verify->add_option("--x", x_given);
    verify->add_option("--out", cert_path);

    auto* spectrum = app.add_subcommand("class-spectrum", "pencil pattern spectrum");
    spectrum->add_option("--in", in_path)->required();
    spectrum->add_option("--out", cert_path);

    auto* quotient = app.add_subcommand("class-quotient", "equitable partition check");
    quotient->add_option("--in", in_path)->required();
    quotient->add_option("--out", cert_path);

    auto* penum = app.add_subcommand("patterns-enumerate", "admissible pencil patterns");
    penum->add_option("--q", q)->required();
    penum->add_option("--x", x)->required();
    penum->add_option("--chi", chi)->required();
    penum->add_option("--preset", preset);
    penum->add_flag("--no-square-condition", no_square);
    penum->add_option("--threads", threads);
    penum->add_option("--out", cert_path);

    auto* pnon = app.add_subcommand("patterns-nonexistence", "pattern-based refutation");
    pnon->add_option("--q", q);
    pnon->add_option("--x", x);
    pnon->add_option("--preset", preset);
    pnon->add_option("--replay", replay_path);
    pnon->add_option("--threads", threads);
    pnon->add_option("--out", cert_path);

    auto* construct = app.add_subcommand("construct", "build a named line class");
    construct->add_option("kind", kind, "empty|all|star|hyperplane|union|gp7")->required();
    construct->add_option("--geometry", geometry)->required();
    construct->add_option("--point", point);
    construct->add_option("--plane", plane);
    construct->add_option("--hyperplane", hyperplane);
    construct->add_option("--hyperoval", oval_csv);
    construct->add_option("--out", out_path)->required();
    construct->add_option("--cert", cert_path);

    auto* spread = app.add_subcommand("spread-check", "regular-spread section count");
    spread->add_option("--in", in_path)->required();
    spread->add_option("--x", x_given);
    spread->add_option("--out", cert_path);

    auto* ryser = app.add_subcommand("ryser", "0/1-matrix feasibility for given sums");
    ryser->add_option("--rows", rows_csv)->required();
    ryser->add_option("--cols", cols_csv)->required();
    ryser->add_option("--out", cert_path);

    auto* restrict_cmd = app.add_subcommand("restrict", "restrict a class to a solid");
    restrict_cmd->add_option("--in", in_path)->required();
    restrict_cmd->add_option("--solid", solid)->required();
    restrict_cmd->add_option("--out", out_path)->required();
    restrict_cmd->add_option("--cert", cert_path);

    auto* search = app.add_subcommand("search-x1", "exhaustive parameter-1 search");
    search->add_option("--geometry", geometry)->required();
    search->add_option("--out", cert_path);

    CLI11_PARSE(app, argc, argv);

    try {
        Output out{cert_path};
        if (geom_info->parsed()) return run_geom_info(geometry, out);
        if (graph_check->parsed()) return run_graph_check(geometry, edges_path, out);
        if (verify->parsed())
            return run_class_verify(
                in_path, x_given >= 0 ? std::optional<long long>(x_given) : std::nullopt,
                out);
        if (spectrum->parsed()) return run_class_spectrum(in_path, out);
        if (quotient->parsed()) return run_class_quotient(in_path, out);
        if (penum->parsed())
            return run_patterns_enumerate(q, x, chi, preset, no_square, threads, out);
        if (pnon->parsed())
            return run_patterns_nonexistence(q, x, preset, replay_path, threads, out);
        if (construct->parsed())
            return run_construct(kind, geometry, point, plane, hyperplane, oval_csv,
                                 out_path, out);
        if (spread->parsed())
            return run_spread_check(
                in_path, x_given >= 0 ? std::optional<long long>(x_given) : std::nullopt,
                out);
        if (ryser->parsed()) return run_ryser(rows_csv, cols_csv, out);
        if (restrict_cmd->parsed()) return run_restrict(in_path, solid, out_path, out);
        if (search->parsed()) return run_search_x1(geometry, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
