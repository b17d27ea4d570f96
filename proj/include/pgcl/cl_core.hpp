#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <pgcl/line_class.hpp>
#include <pgcl/line_graph.hpp>
#include <pgcl/pattern.hpp>

namespace pgcl {

// ---- the defining count -----------------------------------------------
//
// A line class of PG(3,q) is Cameron-Liebler with parameter x exactly when
// every line l meets (q+1)x + (q^2-1)chi(l) members other than itself.

inline std::optional<long long> cl_parameter(const LineGraph& G, const LineClass& c) {
    const Geometry& g = *G.geom;
    if (g.n != 3) throw std::invalid_argument("cl_parameter targets PG(3,q)");
    const long long q = g.q;
    std::optional<long long> x;
    for (std::size_t l = 0; l < G.size(); ++l) {
        long long meets = (long long)G.adj[l].count_and(c.mask());
        long long num = meets - (q * q - 1) * c.chi((int)l);
        if (num < 0 || num % (q + 1) != 0) return std::nullopt;
        long long cand = num / (q + 1);
        if (!x)
            x = cand;
        else if (*x != cand)
            return std::nullopt;
    }
    if (x && (long long)c.size() != *x * (q * q + q + 1))
        throw std::logic_error("count identity held but the class size is off");
    return x;
}

// ---- the equivalent formulations ----------------------------------------

struct IdentityFamily {
    std::string name;
    long long checked = 0;
    long long passed = 0;
    bool ok() const { return checked == passed; }
};

struct EquivalenceReport {
    IdentityFamily point_plane;   // star/line/pencil identity over incident pairs
    IdentityFamily skew_pairs;    // common-neighbor count over skew pairs
    IdentityFamily adjacent_pairs; // second-neighborhood slice over ordered adjacent pairs
    std::string first_violation;
    bool all_pass() const {
        return point_plane.ok() && skew_pairs.ok() && adjacent_pairs.ok();
    }
};

inline EquivalenceReport verify_equivalents(const LineGraph& G, const LineClass& c,
                                            long long x) {
    const Geometry& g = *G.geom;
    if (g.n != 3) throw std::invalid_argument("verify_equivalents targets PG(3,q)");
    const long long q = g.q;
    EquivalenceReport rep;
    rep.point_plane.name = "star+line vs pencil";
    rep.skew_pairs.name = "skew-pair common count";
    rep.adjacent_pairs.name = "adjacent-pair second-neighborhood count";
    auto violate = [&](std::string msg) {
        if (rep.first_violation.empty()) rep.first_violation = std::move(msg);
    };

    for (std::size_t pl = 0; pl < g.planes.size(); ++pl) {
        long long in_plane = (long long)g.plane_lines[pl].count_and(c.mask());
        g.plane_points[pl].for_each([&](std::size_t pt) {
            long long in_star = (long long)g.star[pt].count_and(c.mask());
            long long in_pen = (long long)g.star[pt].count_and(g.plane_lines[pl], c.mask());
            ++rep.point_plane.checked;
            if (in_star + in_plane == x + (q + 1) * in_pen)
                ++rep.point_plane.passed;
            else
                violate("point " + std::to_string(pt) + " / plane " + std::to_string(pl));
        });
    }

    for (std::size_t u = 0; u < G.size(); ++u) {
        Bitset g2 = G.second_neighborhood((int)u);
        g2.for_each([&](std::size_t v) {
            if (v <= u) return;
            long long common = (long long)G.adj[u].count_and(G.adj[v], c.mask());
            ++rep.skew_pairs.checked;
            if (common == x + q * (c.chi((int)u) + c.chi((int)v)))
                ++rep.skew_pairs.passed;
            else
                violate("skew pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
        });
    }

    for (std::size_t u = 0; u < G.size(); ++u) {
        Bitset g2 = G.second_neighborhood((int)u);
        G.adj[u].for_each([&](std::size_t v) {
            auto mp = G.meet_point((int)u, (int)v);
            auto cp = G.common_plane((int)u, (int)v);
            long long in_pen = (long long)g.star[*mp].count_and(g.plane_lines[*cp], c.mask());
            long long slice = (long long)G.adj[v].count_and(g2, c.mask());
            ++rep.adjacent_pairs.checked;
            if (slice == q * (x + q * c.chi((int)v) - in_pen))
                ++rep.adjacent_pairs.passed;
            else
                violate("adjacent pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
        });
    }
    return rep;
}

// ---- equitable partition -----------------------------------------------

struct QuotientMatrix {
    long long p[2][2] = {{0, 0}, {0, 0}}; // row/col 0: the class, 1: its complement
    bool equitable = false;
    std::string witness; // first vertex with a deviating count, when not equitable
};

inline QuotientMatrix quotient_matrix(const LineGraph& G, const LineClass& c) {
    if (c.size() == 0 || c.size() == G.size())
        throw std::invalid_argument("degenerate partition: one side is empty");
    QuotientMatrix qm;
    std::optional<long long> in_count[2];
    qm.equitable = true;
    for (std::size_t v = 0; v < G.size(); ++v) {
        int side = c.contains((int)v) ? 0 : 1;
        long long inside = (long long)G.adj[v].count_and(c.mask());
        if (!in_count[side]) {
            in_count[side] = inside;
        } else if (*in_count[side] != inside && qm.equitable) {
            qm.equitable = false;
            qm.witness = "vertex " + std::to_string(v);
        }
    }
    qm.p[0][0] = *in_count[0];
    qm.p[0][1] = G.valency - *in_count[0];
    qm.p[1][0] = *in_count[1];
    qm.p[1][1] = G.valency - *in_count[1];
    return qm;
}

// ---- pencil patterns -----------------------------------------------------

// rows follow the points on u (ascending), columns the planes through u
inline Pattern pattern_of(const LineGraph& G, const LineClass& c, int u) {
    const Geometry& g = *G.geom;
    if (g.n != 3) throw std::invalid_argument("patterns target PG(3,q)");
    const int q = g.q;
    Pattern p;
    p.q = q;
    p.chi = c.chi(u);
    p.entries.assign((std::size_t)(q + 1) * (q + 1), 0);
    const auto& pls = g.planes_through_line[u];
    const auto& pts = g.points_on_line[u];
    for (int r = 0; r <= q; ++r)
        for (int col = 0; col <= q; ++col) {
            long long in_pen =
                (long long)g.star[pts[r]].count_and(g.plane_lines[pls[col]], c.mask());
            p.entries[(std::size_t)r * (q + 1) + col] = (int)(in_pen - p.chi);
        }
    return p;
}

struct SpectrumEntry {
    Pattern pattern; // canonical
    long long count = 0;
};

struct PatternSpectrum {
    std::vector<SpectrumEntry> member;     // chi = 1
    std::vector<SpectrumEntry> non_member; // chi = 0
    long long total() const {
        long long t = 0;
        for (const auto& e : member) t += e.count;
        for (const auto& e : non_member) t += e.count;
        return t;
    }
};

inline PatternSpectrum pattern_spectrum(const LineGraph& G, const LineClass& c) {
    std::map<std::pair<int, std::vector<int>>, long long> acc;
    for (std::size_t u = 0; u < G.size(); ++u) {
        auto p = pattern_of(G, c, (int)u).canonicalized();
        ++acc[{p.chi, p.entries}];
    }
    PatternSpectrum s;
    for (auto& [key, count] : acc) {
        SpectrumEntry e{Pattern{G.geom->q, key.first, key.second, true}, count};
        (key.first ? s.member : s.non_member).push_back(std::move(e));
    }
    return s;
}

// ---- grid slices over skew pairs ------------------------------------------

// 0/1 matrix over the (q+1)x(q+1) transversals of a skew pair; rows follow
// the points of v, columns the points of u (both ascending).
struct GridSlice {
    std::vector<int> matrix; // row-major
    std::vector<long long> row_sums;
    std::vector<long long> col_sums;
    long long members = 0;
};

inline GridSlice grid_slice(const LineGraph& G, const LineClass& c, int u, int v) {
    const Geometry& g = *G.geom;
    if (u == v || G.adj[u].test(v))
        throw std::invalid_argument("grid slice needs a skew line pair");
    const int n = g.q + 1;
    GridSlice s;
    s.matrix.assign((std::size_t)n * n, 0);
    s.row_sums.assign(n, 0);
    s.col_sums.assign(n, 0);
    const auto& pv = g.points_on_line[v];
    const auto& pu = g.points_on_line[u];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int t = g.line_of_points(pv[i], pu[j]);
            if (c.contains(t)) {
                s.matrix[(std::size_t)i * n + j] = 1;
                ++s.row_sums[i];
                ++s.col_sums[j];
                ++s.members;
            }
        }
    return s;
}

// ---- Gale-Ryser feasibility ------------------------------------------------

// existence of a 0/1 matrix with the given row and column sums
inline bool gale_ryser(std::vector<long long> rows, std::vector<long long> cols) {
    for (long long r : rows)
        if (r < 0 || r > (long long)cols.size()) return false;
    for (long long c : cols)
        if (c < 0 || c > (long long)rows.size()) return false;
    long long sr = 0, sc = 0;
    for (long long r : rows) sr += r;
    for (long long c : cols) sc += c;
    if (sr != sc) return false;
    std::sort(rows.begin(), rows.end(), std::greater<>());
    for (std::size_t k = 1; k <= rows.size(); ++k) {
        long long lhs = 0;
        for (std::size_t i = 0; i < k; ++i) lhs += rows[i];
        long long rhs = 0;
        for (long long c : cols) rhs += std::min<long long>(c, (long long)k);
        if (lhs > rhs) return false;
    }
    return true;
}

} // namespace pgcl
