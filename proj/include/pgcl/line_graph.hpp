#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <pgcl/bitset.hpp>
#include <pgcl/geometry.hpp>

namespace pgcl {

// Line-meeting graph of PG(n,q): vertices are the canonical line indices, two
// distinct lines adjacent exactly when they share a point. For n = 3 this is
// the Grassmann graph on 2-subspaces, whose maximal cliques split into the
// plane family (all lines of a plane) and the star family (all lines through
// a point).
class LineGraph {
public:
    const Geometry* geom = nullptr;
    std::vector<Bitset> adj;
    int valency = 0;

    std::size_t size() const { return adj.size(); }

    const Bitset& neighbors(int u) const { return adj[u]; }

    Bitset second_neighborhood(int u) const {
        Bitset g2 = adj[u].complemented();
        g2.reset(u);
        return g2;
    }

    Bitset common_neighbors(int u, int v) const { return adj[u] & adj[v]; }

    // shared point of two adjacent lines
    std::optional<int> meet_point(int u, int v) const {
        const auto& a = geom->points_on_line[u];
        const auto& b = geom->points_on_line[v];
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) return a[i];
            (a[i] < b[j]) ? ++i : ++j;
        }
        return std::nullopt;
    }

    // shared plane of two adjacent (or equal) lines, n >= 3
    std::optional<int> common_plane(int u, int v) const {
        const auto& a = geom->planes_through_line[u];
        const auto& b = geom->planes_through_line[v];
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) return a[i];
            (a[i] < b[j]) ? ++i : ++j;
        }
        return std::nullopt;
    }
};

inline LineGraph build_graph(const Geometry& g) {
    LineGraph G;
    G.geom = &g;
    const std::size_t L = g.lines.size();
    G.adj.assign(L, Bitset(L));
    for (std::size_t u = 0; u < L; ++u) {
        for (int p : g.points_on_line[u]) G.adj[u] |= g.star[p];
        G.adj[u].reset(u);
    }
    G.valency = (int)G.adj[0].count();
    return G;
}

// Structural verification of the local shape of the graph for n = 3:
//  - G(v) splits into (q+1)^2 pencil residues of size q forming the q-clique
//    extension of the (q+1)x(q+1) grid,
//  - for skew u,v the common neighborhood is the (q+1)x(q+1) grid,
//  - adjacent pairs lie in exactly one plane clique and one star clique, and
//    |G(v) ∩ G2(u)| = q^3,
//  - clique family intersection laws.
struct StructureReport {
    bool pass = false;
    long long vertices = 0;
    long long neighborhoods_checked = 0;
    long long skew_pairs_checked = 0;
    long long adjacent_pairs_checked = 0;
    long long clique_pairs_checked = 0;
    std::string failure; // first violation, empty when pass

    std::string summary() const {
        std::ostringstream os;
        os << (pass ? "pass" : "FAIL") << ": " << vertices << " vertices, "
           << neighborhoods_checked << " neighborhoods, " << skew_pairs_checked
           << " skew pairs, " << adjacent_pairs_checked << " adjacent pairs, "
           << clique_pairs_checked << " clique pairs";
        if (!failure.empty()) os << "; " << failure;
        return os.str();
    }
};

inline StructureReport check_local_structure(const LineGraph& G) {
    const Geometry& g = *G.geom;
    if (g.n != 3) throw std::invalid_argument("local structure check targets PG(3,q)");
    const int q = g.q;
    const std::size_t L = G.size();
    StructureReport rep;
    rep.vertices = (long long)L;

    auto fail = [&](std::string msg) {
        if (rep.failure.empty()) rep.failure = std::move(msg);
    };

    if (G.valency != q * (q + 1) * (q + 1)) fail("wrong valency");
    for (std::size_t v = 0; v < L && rep.failure.empty(); ++v)
        if ((int)G.adj[v].count() != G.valency) fail("graph is not regular");

    // neighborhoods: q-clique extension of the grid
    for (std::size_t v = 0; v < L && rep.failure.empty(); ++v) {
        const auto& pts = g.points_on_line[v];
        const auto& pls = g.planes_through_line[v];
        if ((int)pls.size() != q + 1) {
            fail("line lies in a wrong number of planes");
            break;
        }
        // residue labels per neighbor
        std::vector<int> row_of(L, -1), col_of(L, -1);
        long long labeled = 0;
        for (int r = 0; r < q + 1; ++r)
            for (int c = 0; c < q + 1; ++c) {
                Bitset block = g.star[pts[c]] & g.plane_lines[pls[r]];
                block.reset(v);
                if ((int)block.count() != q) {
                    fail("pencil residue of the wrong size");
                    break;
                }
                block.for_each([&](std::size_t w) {
                    row_of[w] = r;
                    col_of[w] = c;
                    ++labeled;
                });
            }
        if (!rep.failure.empty()) break;
        if (labeled != (long long)G.valency) {
            fail("pencil residues do not partition the neighborhood");
            break;
        }
        auto nbrs = G.adj[v].to_indices();
        for (std::size_t i = 0; i < nbrs.size() && rep.failure.empty(); ++i) {
            if (row_of[nbrs[i]] < 0) {
                fail("neighbor outside every pencil residue");
                break;
            }
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                int a = nbrs[i], b = nbrs[j];
                bool same_row = row_of[a] == row_of[b];
                bool same_col = col_of[a] == col_of[b];
                bool expected = same_row || same_col; // includes the residue clique
                if (G.adj[a].test(b) != expected) {
                    fail("grid adjacency violated inside a neighborhood");
                    break;
                }
            }
        }
        ++rep.neighborhoods_checked;
    }

    // skew pairs: the common neighborhood is the (q+1)x(q+1) grid
    for (std::size_t u = 0; u < L && rep.failure.empty(); ++u) {
        Bitset g2 = G.second_neighborhood((int)u);
        g2.for_each([&](std::size_t v) {
            if (v <= u || !rep.failure.empty()) return;
            Bitset common = G.adj[u] & G.adj[v];
            if ((int)common.count() != (q + 1) * (q + 1)) {
                fail("skew pair with a wrong number of transversals");
                return;
            }
            auto ws = common.to_indices();
            std::vector<std::pair<int, int>> label(ws.size());
            for (std::size_t i = 0; i < ws.size(); ++i) {
                auto pu = G.meet_point((int)u, ws[i]);
                auto pv = G.meet_point((int)v, ws[i]);
                if (!pu || !pv) {
                    fail("transversal missing a meet point");
                    return;
                }
                label[i] = {*pu, *pv};
            }
            {
                auto sorted = label;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                    fail("two transversals with identical feet");
                    return;
                }
            }
            for (std::size_t i = 0; i < ws.size(); ++i)
                for (std::size_t j = i + 1; j < ws.size(); ++j) {
                    bool expected = (label[i].first == label[j].first) !=
                                    (label[i].second == label[j].second);
                    if (G.adj[ws[i]].test(ws[j]) != expected) {
                        fail("common neighborhood of a skew pair is not the grid");
                        return;
                    }
                }
            ++rep.skew_pairs_checked;
        });
    }

    // adjacent pairs: unique clique pair and second-neighborhood count q^3
    for (std::size_t u = 0; u < L && rep.failure.empty(); ++u) {
        Bitset g2 = G.second_neighborhood((int)u);
        G.adj[u].for_each([&](std::size_t v) {
            if (!rep.failure.empty()) return;
            // common points and common planes must both be unique
            const auto& pu = g.points_on_line[u];
            const auto& pv = g.points_on_line[v];
            int common_pts = 0;
            for (int a : pu)
                for (int b : pv)
                    if (a == b) ++common_pts;
            if (common_pts != 1) {
                fail("adjacent pair with common point count != 1");
                return;
            }
            int common_planes = 0;
            for (int a : g.planes_through_line[u])
                for (int b : g.planes_through_line[v])
                    if (a == b) ++common_planes;
            if (common_planes != 1) {
                fail("adjacent pair with common plane count != 1");
                return;
            }
            if ((long long)G.adj[v].count_and(g2) != (long long)q * q * q) {
                fail("second-neighborhood slice of an adjacent pair is not q^3");
                return;
            }
            ++rep.adjacent_pairs_checked;
        });
    }

    // clique families: plane cliques and star cliques
    const std::size_t S = g.planes.size();
    for (std::size_t i = 0; i < S && rep.failure.empty(); ++i) {
        if ((int)g.plane_lines[i].count() != q * (q + 1) + 1) fail("plane clique size");
        if ((int)g.star[i].count() != q * (q + 1) + 1) fail("star clique size");
    }
    for (std::size_t i = 0; i < S && rep.failure.empty(); ++i)
        for (std::size_t j = 0; j < S; ++j) {
            if (j > i) {
                if (g.plane_lines[i].count_and(g.plane_lines[j]) != 1) {
                    fail("two plane cliques sharing != 1 line");
                    break;
                }
                if (g.star[i].count_and(g.star[j]) != 1) {
                    fail("two star cliques sharing != 1 line");
                    break;
                }
            }
            std::size_t across = g.plane_lines[i].count_and(g.star[j]);
            if (across != 0 && across != (std::size_t)q + 1) {
                fail("plane/star clique intersection outside {0, q+1}");
                break;
            }
            ++rep.clique_pairs_checked;
        }

    rep.pass = rep.failure.empty();
    return rep;
}

// edge list keyed by canonical line indices, one "u v" pair per line
inline std::string export_edges(const LineGraph& G) {
    std::ostringstream os;
    for (std::size_t u = 0; u < G.size(); ++u)
        G.adj[u].for_each([&](std::size_t v) {
            if (v > u) os << u << ' ' << v << '\n';
        });
    return os.str();
}

} // namespace pgcl
