#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <pgcl/cl_core.hpp>
#include <pgcl/line_class.hpp>
#include <pgcl/line_graph.hpp>

namespace pgcl {

// ---- the classical families -------------------------------------------

inline LineClass standard_empty(const Geometry& g) {
    return LineClass(g, Bitset(g.lines.size()));
}

inline LineClass standard_all(const Geometry& g) {
    return LineClass(g, Bitset(g.lines.size(), true));
}

inline LineClass standard_star(const Geometry& g, int point) {
    if (point < 0 || point >= (int)g.points.size())
        throw std::invalid_argument("point index out of range");
    return LineClass(g, g.star[point]);
}

// all lines inside one hyperplane (a plane when n = 3)
inline LineClass standard_hyperplane(const Geometry& g, int h) {
    if (h < 0 || h >= (int)g.hyperplane_count())
        throw std::invalid_argument("hyperplane index out of range");
    return LineClass(g, g.lines_in_hyperplane(h));
}

inline const Bitset& hyperplane_points(const Geometry& g, int h) {
    if (g.n == 3) return g.plane_points[h];
    if (g.n == 4) return g.solid_points[h];
    throw std::invalid_argument("no hyperplane point masks in this dimension");
}

// lines through P plus lines inside H, for a non-incident pair (P, H)
inline LineClass standard_union(const Geometry& g, int point, int h) {
    if (hyperplane_points(g, h).test(point))
        throw std::invalid_argument("union construction needs a non-incident pair");
    return LineClass(g, g.star[point] | g.lines_in_hyperplane(h));
}

// ---- the parameter-7 class in PG(3,4) ------------------------------------
//
// From a point P, a plane pi not through P and a hyperoval O of pi: the cone
// of lines joining P to O, the lines of pi external to O, and every line
// that meets exactly two cone lines with both meeting points off pi.

struct GP7Input {
    int point = -1;
    int plane = -1;
    std::optional<Bitset> hyperoval; // defaults to the lexicographically least one
};

struct GP7Result {
    LineClass line_class;
    std::vector<int> cone_lines;   // sorted
    Bitset hyperoval;              // the point set actually used
};

inline GP7Result gp_x7(const LineGraph& G, const GP7Input& in) {
    const Geometry& g = *G.geom;
    if (g.n != 3 || g.q != 4)
        throw std::invalid_argument("this construction lives in PG(3,4)");
    if (in.plane < 0 || in.plane >= (int)g.planes.size())
        throw std::invalid_argument("plane index out of range");
    if (in.point < 0 || in.point >= (int)g.points.size())
        throw std::invalid_argument("point index out of range");
    if (g.plane_points[in.plane].test(in.point))
        throw std::invalid_argument("apex must avoid the base plane");

    Bitset oval = in.hyperoval ? *in.hyperoval : find_hyperoval(g, in.plane);
    if (!g.plane_points[in.plane].contains(oval) || oval.count() != (std::size_t)g.q + 2)
        throw std::invalid_argument("hyperoval must be q+2 points of the base plane");
    {
        // no 3 collinear
        auto pts = oval.to_indices();
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b) {
                int li = g.line_of_points(pts[a], pts[b]);
                int on = 0;
                for (int p : g.points_on_line[li])
                    if (oval.test(p)) ++on;
                if (on != 2) throw std::invalid_argument("point set is not an arc");
            }
    }

    std::vector<int> cone;
    oval.for_each([&](std::size_t qpt) {
        cone.push_back(g.line_of_points(in.point, (int)qpt));
    });
    std::sort(cone.begin(), cone.end());
    Bitset cone_mask(g.lines.size());
    for (int li : cone) cone_mask.set(li);

    Bitset mask(g.lines.size());
    const Bitset& in_plane = g.plane_lines[in.plane];
    for (std::size_t w = 0; w < g.lines.size(); ++w) {
        if (in_plane.test(w)) {
            int on_oval = 0;
            for (int p : g.points_on_line[w])
                if (oval.test(p)) ++on_oval;
            if (on_oval == 0) mask.set(w); // external line of the base plane
            continue;
        }
        if (g.star[in.point].test(w)) {
            if (cone_mask.test(w)) mask.set(w);
            continue;
        }
        int met = 0;
        bool feet_off_plane = true;
        for (int li : cone) {
            auto mp = G.meet_point((int)w, li);
            if (!mp) continue;
            ++met;
            if (g.plane_points[in.plane].test(*mp)) feet_off_plane = false;
        }
        if (met == 2 && feet_off_plane) mask.set(w);
    }
    return GP7Result{LineClass(g, std::move(mask)), std::move(cone), std::move(oval)};
}

// ---- poor points -------------------------------------------------------------

// the point of a member line lying on no other member, when it is unique
inline std::optional<int> poor_point(const LineGraph& G, const LineClass& c, int u) {
    if (!c.contains(u)) throw std::invalid_argument("poor points are defined on members");
    const Geometry& g = *G.geom;
    std::vector<int> candidates;
    for (int p : g.points_on_line[u])
        if (g.star[p].count_and(c.mask()) == 1) candidates.push_back(p);
    if (candidates.size() == 1) return candidates[0];
    return std::nullopt;
}

// ---- exhaustive parameter-1 search in PG(3,2) ----------------------------------

// Every member of a parameter-1 class meets 3*1 + 3 = 6 members, i.e. all six
// others, so a valid class is a 7-clique; the search walks all cliques in
// index order and keeps those whose full count identity verifies.
inline std::vector<LineClass> search_x1(const LineGraph& G) {
    const Geometry& g = *G.geom;
    if (g.n != 3 || g.q != 2)
        throw std::invalid_argument("exhaustive parameter-1 search is sized for PG(3,2)");
    const std::size_t L = g.lines.size();
    std::vector<LineClass> out;
    std::vector<int> chosen;

    auto emit = [&]() {
        LineClass c(g, chosen);
        if (auto x = cl_parameter(G, c); x && *x == 1) out.push_back(std::move(c));
    };

    // dfs over increasing indices, candidates restricted to common neighbors
    auto dfs = [&](auto&& self, int min_next, const Bitset& candidates) -> void {
        if (chosen.size() == 7) {
            emit();
            return;
        }
        std::size_t need = 7 - chosen.size();
        if (candidates.count() < need) return;
        candidates.for_each([&](std::size_t v) {
            if ((int)v < min_next) return;
            chosen.push_back((int)v);
            self(self, (int)v + 1, candidates & G.adj[v]);
            chosen.pop_back();
        });
    };
    dfs(dfs, 0, Bitset(L, true));
    return out;
}

} // namespace pgcl
