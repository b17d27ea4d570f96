#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <pgcl/cl_core.hpp>
#include <pgcl/line_class.hpp>
#include <pgcl/line_graph.hpp>
#include <pgcl/rational.hpp>

namespace pgcl {

// theta_d = q^d + ... + 1 (theta_{-1} = 0)
inline long long theta(int q, int d) {
    long long t = 0, p = 1;
    for (int i = 0; i <= d; ++i) {
        t += p;
        p *= q;
    }
    return t;
}

// ---- the defining count in PG(n,q) ----------------------------------------
//
// Every line l meets (q+1)x + (q^{n-1}+...+q^2-1)chi(l) members other than
// itself; x is rational in general, with denominator dividing q+1.

inline long long general_chi_offset(int n, int q) {
    // q^2 + q^3 + ... + q^{n-1} - 1
    long long k = 0, p = (long long)q * q;
    for (int e = 2; e <= n - 1; ++e) {
        k += p;
        p *= q;
    }
    return k - 1;
}

inline std::optional<Rational> cl_parameter_general(const LineGraph& G,
                                                    const LineClass& c) {
    const Geometry& g = *G.geom;
    if (g.n < 3) throw std::invalid_argument("general parameter needs n >= 3");
    const long long q = g.q;
    const long long K = general_chi_offset(g.n, g.q);
    std::optional<Rational> x;
    for (std::size_t l = 0; l < G.size(); ++l) {
        long long meets = (long long)G.adj[l].count_and(c.mask());
        Rational cand(meets - K * c.chi((int)l), q + 1);
        if (!x)
            x = cand;
        else if (*x != cand)
            return std::nullopt;
    }
    if (x && (q + 1) % x->den() != 0)
        throw std::logic_error("parameter denominator does not divide q+1");
    return x;
}

// ---- flag condition ---------------------------------------------------------

struct SubspaceRef {
    int dim;   // projective dimension, 2 or 3
    int index; // canonical index within the geometry's list for that dimension
};

inline const Bitset& lines_in(const Geometry& g, const SubspaceRef& X) {
    if (X.dim == 2) return g.plane_lines[X.index];
    if (X.dim == 3 && g.n == 4) return g.solid_lines[X.index];
    throw std::invalid_argument("unsupported subspace dimension for line queries");
}

inline const Bitset& points_in(const Geometry& g, const SubspaceRef& X) {
    if (X.dim == 2) return g.plane_points[X.index];
    if (X.dim == 3 && g.n == 4) return g.solid_points[X.index];
    throw std::invalid_argument("unsupported subspace dimension for point queries");
}

// Exact-rational check of the incidence identity for a flag (P, X) with X of
// projective dimension i:
//   |Star(P) ∩ L| + (th_{n-2}/(th_{i-1} th_{i-2})) |line(X) ∩ L|
//     = x + (th_{n-2}/th_{i-2}) |pen(P,X) ∩ L|
inline bool flag_condition(const LineGraph& G, const LineClass& c, int point,
                           const SubspaceRef& X, const Rational& x) {
    const Geometry& g = *G.geom;
    if (X.dim < 2) throw std::invalid_argument("flag subspace must have dimension >= 2");
    if (!points_in(g, X).test(point))
        throw std::invalid_argument("flag is not incident");
    const int n = g.n, q = g.q, i = X.dim;
    long long star_c = (long long)g.star[point].count_and(c.mask());
    long long lineX_c = (long long)lines_in(g, X).count_and(c.mask());
    long long pen_c = (long long)g.star[point].count_and(lines_in(g, X), c.mask());

    Rational lhs = Rational(star_c) +
                   Rational(theta(q, n - 2), theta(q, i - 1) * theta(q, i - 2)) *
                       Rational(lineX_c);
    Rational rhs = x + Rational(theta(q, n - 2), theta(q, i - 2)) * Rational(pen_c);
    return lhs == rhs;
}

// ---- spreads -----------------------------------------------------------------

inline bool spread_check(const LineGraph& G, const LineClass& c,
                         const std::vector<int>& spread, const Rational& x) {
    const Geometry& g = *G.geom;
    Bitset covered(g.points.size());
    for (int li : spread) {
        if (li < 0 || li >= (int)g.lines.size())
            throw std::invalid_argument("spread line out of range");
        for (int p : g.points_on_line[li]) {
            if (covered.test(p)) throw std::invalid_argument("not a spread: lines overlap");
            covered.set(p);
        }
    }
    if (covered.count() != g.points.size())
        throw std::invalid_argument("not a spread: points left uncovered");
    long long hit = 0;
    for (int li : spread) hit += c.contains(li) ? 1 : 0;
    return Rational(hit) == x;
}

// ---- restriction to a solid ----------------------------------------------------

// Lines of the class inside a 3-dimensional subspace of PG(n,q), re-indexed
// in the canonical PG(3,q). Coordinates relative to the solid's reduced basis
// are read off at its pivot columns.
inline LineClass restrict_to_solid(const LineClass& c, int solid, const Geometry& g3) {
    const Geometry& g = c.geometry();
    if (g.n < 4) throw std::invalid_argument("restriction needs an ambient PG(n,q), n >= 4");
    if (g3.n != 3 || g3.q != g.q)
        throw std::invalid_argument("target geometry must be PG(3,q) over the same field");
    const Subspace& X = g.solids[solid];
    std::vector<int> pivots;
    for (int r = 0; r < X.rows(); ++r)
        for (int ccol = 0; ccol < X.cols(); ++ccol)
            if (X.at(r, ccol)) {
                pivots.push_back(ccol);
                break;
            }

    Bitset mask(g3.lines.size());
    g.solid_lines[solid].for_each([&](std::size_t li) {
        if (!c.contains((int)li)) return;
        const Subspace& l = g.lines[li];
        std::vector<FieldCode> m(2ul * 4);
        for (int r = 0; r < 2; ++r)
            for (int k = 0; k < 4; ++k) m[(std::size_t)r * 4 + k] = l.at(r, pivots[k]);
        int rank = detail::rref(m, 2, 4, g.F);
        if (rank != 2) throw std::logic_error("restricted line degenerated");
        Subspace s;
        s.n = 3;
        s.d = 1;
        s.mat = std::move(m);
        int idx = g3.line_index(s);
        if (idx < 0) throw std::logic_error("restricted line missing from PG(3,q)");
        mask.set(idx);
    });
    return LineClass(g3, std::move(mask));
}

} // namespace pgcl
