#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <pgcl/bitset.hpp>
#include <pgcl/gf.hpp>

namespace pgcl {

// Projective subspace of PG(n,q), stored as its reduced-row-echelon basis
// matrix of field codes, (d+1) rows by (n+1) columns. The reduced form is a
// unique representative, so equal subspaces compare equal byte for byte and
// lexicographic order of the flattened matrix is well defined.
struct Subspace {
    int n = 0; // ambient projective dimension
    int d = 0; // projective dimension: 0 point, 1 line, 2 plane, 3 solid
    std::vector<FieldCode> mat;

    int rows() const { return d + 1; }
    int cols() const { return n + 1; }
    FieldCode at(int r, int c) const { return mat[(std::size_t)r * cols() + c]; }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.n == b.n && a.d == b.d && a.mat == b.mat;
    }
    friend bool operator<(const Subspace& a, const Subspace& b) { return a.mat < b.mat; }
};

namespace detail {

// in-place Gauss-Jordan reduction, returns rank; rows come out sorted by
// pivot column with zeros above and below each leading 1
inline int rref(std::vector<FieldCode>& m, int rows, int cols, const FieldTable& F) {
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[(std::size_t)i * cols + c]) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < cols; ++j)
            std::swap(m[(std::size_t)piv * cols + j], m[(std::size_t)r * cols + j]);
        FieldCode s = F.inv(m[(std::size_t)r * cols + c]);
        for (int j = 0; j < cols; ++j)
            m[(std::size_t)r * cols + j] = F.mul(m[(std::size_t)r * cols + j], s);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            FieldCode f = m[(std::size_t)i * cols + c];
            if (!f) continue;
            for (int j = 0; j < cols; ++j)
                m[(std::size_t)i * cols + j] =
                    F.sub(m[(std::size_t)i * cols + j], F.mul(f, m[(std::size_t)r * cols + j]));
        }
        ++r;
    }
    return r;
}

inline std::string key_of(const std::vector<FieldCode>& m) {
    return std::string(m.begin(), m.end());
}

// all subspaces of projective dimension d, one representative per Schubert
// cell: choose pivot columns, then sweep the free entries
inline std::vector<Subspace> enumerate_subspaces(int n, int d, const FieldTable& F) {
    const int rows = d + 1, cols = n + 1;
    std::vector<Subspace> out;
    std::vector<int> piv(rows);
    // iterate over increasing pivot-column combinations
    for (int i = 0; i < rows; ++i) piv[i] = i;
    while (true) {
        std::vector<std::pair<int, int>> free_pos; // (row, col)
        for (int i = 0; i < rows; ++i)
            for (int c = piv[i] + 1; c < cols; ++c) {
                bool is_piv = false;
                for (int j = 0; j < rows; ++j)
                    if (piv[j] == c) is_piv = true;
                if (!is_piv) free_pos.emplace_back(i, c);
            }
        std::vector<FieldCode> vals(free_pos.size(), 0);
        while (true) {
            Subspace s;
            s.n = n;
            s.d = d;
            s.mat.assign((std::size_t)rows * cols, 0);
            for (int i = 0; i < rows; ++i) s.mat[(std::size_t)i * cols + piv[i]] = 1;
            for (std::size_t k = 0; k < free_pos.size(); ++k)
                s.mat[(std::size_t)free_pos[k].first * cols + free_pos[k].second] = vals[k];
            out.push_back(std::move(s));
            // mixed-radix increment
            std::size_t k = 0;
            for (; k < vals.size(); ++k) {
                if (++vals[k] < F.q) break;
                vals[k] = 0;
            }
            if (k == vals.size()) break;
        }
        // next combination
        int i = rows - 1;
        while (i >= 0 && piv[i] == cols - rows + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < rows; ++j) piv[j] = piv[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline long long gaussian_binomial(int n, int k, int q) {
    // [n choose k]_q with small exact arithmetic
    long long num = 1, den = 1;
    auto qpow = [&](int e) {
        long long r = 1;
        for (int i = 0; i < e; ++i) r *= q;
        return r;
    };
    long long result = 1;
    for (int i = 0; i < k; ++i) {
        num = qpow(n - i) - 1;
        den = qpow(i + 1) - 1;
        result = result * num / den; // exact at every step for the q-binomial
    }
    (void)num;
    (void)den;
    return result;
}

} // namespace detail

// Indexed model of PG(n,q). All object lists are sorted by the flattened
// canonical basis matrix; indices into them are the canonical indices quoted
// by every file format and certificate.
class Geometry {
public:
    int n = 0, q = 0;
    FieldTable F;

    std::vector<Subspace> points;
    std::vector<Subspace> lines;
    std::vector<Subspace> planes; // n >= 2; for n == 2 the single full plane
    std::vector<Subspace> solids; // n == 4 only

    std::vector<std::vector<int>> points_on_line; // q+1 sorted point indices
    std::vector<Bitset> star;                     // per point: lines through it
    std::vector<Bitset> plane_points;             // per plane: point mask
    std::vector<Bitset> plane_lines;              // per plane: line mask
    std::vector<Bitset> solid_points;             // n == 4
    std::vector<Bitset> solid_lines;              // n == 4
    std::vector<std::vector<int>> planes_through_line;
    std::vector<int> line_through_pair;           // point-pair -> line index

    std::string descriptor() const {
        return "PG(" + std::to_string(n) + "," + std::to_string(q) + ")";
    }

    std::size_t hyperplane_count() const {
        return n == 2 ? lines.size() : (n == 3 ? planes.size() : solids.size());
    }
    const Bitset& lines_in_hyperplane(int h) const {
        if (n == 3) return plane_lines[h];
        if (n == 4) return solid_lines[h];
        throw std::invalid_argument("no line set for hyperplanes of a plane");
    }

    int line_of_points(int a, int b) const {
        return line_through_pair[(std::size_t)a * points.size() + b];
    }

    int point_index(const std::vector<FieldCode>& v) const {
        auto it = point_idx_.find(detail::key_of(v));
        return it == point_idx_.end() ? -1 : it->second;
    }
    int line_index(const Subspace& s) const {
        auto it = line_idx_.find(detail::key_of(s.mat));
        return it == line_idx_.end() ? -1 : it->second;
    }

    bool point_in(int point, const Subspace& s) const {
        return vector_in_span(points[point].mat, s);
    }

    // membership of a row vector in the row space of a reduced basis
    bool vector_in_span(const std::vector<FieldCode>& v, const Subspace& s) const {
        std::vector<FieldCode> w = v;
        const int cols = s.cols();
        for (int i = 0; i < s.rows(); ++i) {
            int piv = -1;
            for (int c = 0; c < cols; ++c)
                if (s.at(i, c)) {
                    piv = c;
                    break;
                }
            FieldCode f = w[piv];
            if (!f) continue;
            for (int c = 0; c < cols; ++c) w[c] = F.sub(w[c], F.mul(f, s.at(i, c)));
        }
        return std::all_of(w.begin(), w.end(), [](FieldCode c) { return c == 0; });
    }

    friend Geometry build_geometry(int n, int q);

private:
    std::unordered_map<std::string, int> point_idx_, line_idx_;
};

inline Geometry build_geometry(int n, int q) {
    if (n < 2 || n > 4) throw std::invalid_argument("unsupported dimension n=" + std::to_string(n));
    if (!is_supported_order(q))
        throw std::invalid_argument("unsupported field order q=" + std::to_string(q));
    if (detail::gaussian_binomial(n + 1, 2, q) > 100000)
        throw std::invalid_argument("line count beyond supported scale");

    Geometry g;
    g.n = n;
    g.q = q;
    g.F = make_field(q);

    g.points = detail::enumerate_subspaces(n, 0, g.F);
    g.lines = detail::enumerate_subspaces(n, 1, g.F);
    g.planes = detail::enumerate_subspaces(n, 2, g.F);
    if (n == 4) g.solids = detail::enumerate_subspaces(n, 3, g.F);

    if ((long long)g.points.size() != detail::gaussian_binomial(n + 1, 1, q))
        throw std::logic_error("point enumeration incomplete");
    if ((long long)g.lines.size() != detail::gaussian_binomial(n + 1, 2, q))
        throw std::logic_error("line enumeration incomplete");

    for (std::size_t i = 0; i < g.points.size(); ++i)
        g.point_idx_[detail::key_of(g.points[i].mat)] = (int)i;
    for (std::size_t i = 0; i < g.lines.size(); ++i)
        g.line_idx_[detail::key_of(g.lines[i].mat)] = (int)i;

    const std::size_t P = g.points.size(), L = g.lines.size();

    // points on each line: the q+1 projective combinations of the two rows
    g.points_on_line.assign(L, {});
    g.star.assign(P, Bitset(L));
    for (std::size_t li = 0; li < L; ++li) {
        const Subspace& s = g.lines[li];
        const int cols = s.cols();
        std::vector<std::vector<FieldCode>> reps;
        std::vector<FieldCode> v(cols);
        for (int c = 0; c < cols; ++c) v[c] = s.at(0, c);
        reps.push_back(v);
        for (int a = 0; a < q; ++a) {
            for (int c = 0; c < cols; ++c) v[c] = g.F.add(s.at(1, c), g.F.mul((FieldCode)a, s.at(0, c)));
            reps.push_back(v);
        }
        for (auto& r : reps) {
            // normalize to leading 1
            int lead = 0;
            while (!r[lead]) ++lead;
            FieldCode sc = g.F.inv(r[lead]);
            for (auto& c : r) c = g.F.mul(c, sc);
            int pi = g.point_index(r);
            if (pi < 0) throw std::logic_error("line point outside point list");
            g.points_on_line[li].push_back(pi);
            g.star[pi].set(li);
        }
        std::sort(g.points_on_line[li].begin(), g.points_on_line[li].end());
        if ((int)g.points_on_line[li].size() != q + 1)
            throw std::logic_error("line carries a wrong number of points");
    }

    g.line_through_pair.assign(P * P, -1);
    for (std::size_t li = 0; li < L; ++li)
        for (int a : g.points_on_line[li])
            for (int b : g.points_on_line[li])
                if (a != b) g.line_through_pair[(std::size_t)a * P + b] = (int)li;

    auto fill_masks = [&](const std::vector<Subspace>& spaces, std::vector<Bitset>& pts,
                          std::vector<Bitset>& lns) {
        pts.assign(spaces.size(), Bitset(P));
        lns.assign(spaces.size(), Bitset(L));
        for (std::size_t si = 0; si < spaces.size(); ++si) {
            for (std::size_t pi = 0; pi < P; ++pi)
                if (g.point_in((int)pi, spaces[si])) pts[si].set(pi);
            for (std::size_t li = 0; li < L; ++li) {
                const auto& pol = g.points_on_line[li];
                if (pts[si].test(pol[0]) && pts[si].test(pol[1])) lns[si].set(li);
            }
        }
    };
    fill_masks(g.planes, g.plane_points, g.plane_lines);
    if (n == 4) fill_masks(g.solids, g.solid_points, g.solid_lines);

    g.planes_through_line.assign(L, {});
    for (std::size_t si = 0; si < g.planes.size(); ++si)
        g.plane_lines[si].for_each([&](std::size_t li) {
            g.planes_through_line[li].push_back((int)si);
        });

    return g;
}

// ---- subspace algebra -------------------------------------------------

struct SpanMeet {
    Subspace span;
    std::optional<Subspace> meet; // empty intersection -> nullopt
};

inline SpanMeet span_meet(const Geometry& g, const Subspace& A, const Subspace& B) {
    if (A.n != g.n || B.n != g.n) throw std::invalid_argument("subspace from a different geometry");
    const int cols = g.n + 1;

    std::vector<FieldCode> stacked;
    stacked.insert(stacked.end(), A.mat.begin(), A.mat.end());
    stacked.insert(stacked.end(), B.mat.begin(), B.mat.end());
    int rows = A.rows() + B.rows();
    int rank = detail::rref(stacked, rows, cols, g.F);
    SpanMeet r;
    r.span.n = g.n;
    r.span.d = rank - 1;
    r.span.mat.assign(stacked.begin(), stacked.begin() + (std::size_t)rank * cols);

    // Zassenhaus: rref of [A|A; B|0], rows with zero left block carry an
    // intersection basis on the right
    std::vector<FieldCode> z((std::size_t)rows * 2 * cols, 0);
    for (int i = 0; i < A.rows(); ++i)
        for (int c = 0; c < cols; ++c) {
            z[(std::size_t)i * 2 * cols + c] = A.at(i, c);
            z[(std::size_t)i * 2 * cols + cols + c] = A.at(i, c);
        }
    for (int i = 0; i < B.rows(); ++i)
        for (int c = 0; c < cols; ++c)
            z[((std::size_t)A.rows() + i) * 2 * cols + c] = B.at(i, c);
    int zrank = detail::rref(z, rows, 2 * cols, g.F);
    std::vector<FieldCode> meet_rows;
    int meet_rank = 0;
    for (int i = 0; i < zrank; ++i) {
        bool left_zero = true;
        for (int c = 0; c < cols; ++c)
            if (z[(std::size_t)i * 2 * cols + c]) left_zero = false;
        if (!left_zero) continue;
        for (int c = 0; c < cols; ++c) meet_rows.push_back(z[(std::size_t)i * 2 * cols + cols + c]);
        ++meet_rank;
    }
    if (meet_rank == 0) {
        r.meet = std::nullopt;
    } else {
        int mr = detail::rref(meet_rows, meet_rank, cols, g.F);
        Subspace m;
        m.n = g.n;
        m.d = mr - 1;
        m.mat.assign(meet_rows.begin(), meet_rows.begin() + (std::size_t)mr * cols);
        r.meet = std::move(m);
    }
    return r;
}

// ---- line-set queries --------------------------------------------------

inline const Bitset& star_lines(const Geometry& g, int point) { return g.star[point]; }

// the unique plane spanned by a line and a point off it
inline std::optional<int> span_plane(const Geometry& g, int line, int point) {
    for (int pl : g.planes_through_line[line])
        if (g.plane_points[pl].test(point)) {
            // ambiguous when the point lies on the line itself
            for (int p : g.points_on_line[line])
                if (p == point) return std::nullopt;
            return pl;
        }
    return std::nullopt;
}

inline Bitset pencil(const Geometry& g, int point, int plane) {
    if (!g.plane_points[plane].test(point))
        throw std::invalid_argument("pencil of a non-incident point-plane pair");
    return g.star[point] & g.plane_lines[plane];
}

// ---- plane-level predicates ---------------------------------------------

struct BlockingReport {
    bool is_blocking = false;
    bool is_trivial = false; // contains a full line (the t = 1 notion)
};

inline BlockingReport is_blocking_set(const Geometry& g, int plane, const Bitset& pts,
                                      int t) {
    if (!g.plane_points[plane].contains(pts))
        throw std::invalid_argument("point set leaves the plane");
    BlockingReport r;
    r.is_blocking = true;
    g.plane_lines[plane].for_each([&](std::size_t li) {
        int hit = 0;
        for (int p : g.points_on_line[li])
            if (pts.test(p)) ++hit;
        if (hit < t) r.is_blocking = false;
        if (hit == g.q + 1) r.is_trivial = true;
    });
    return r;
}

// Lexicographically least (q+2)-arc of the plane: no 3 points collinear.
inline Bitset find_hyperoval(const Geometry& g, int plane) {
    if (g.q % 2 != 0) throw std::domain_error("no hyperoval: field order is odd");
    const auto plane_pts = g.plane_points[plane].to_indices();
    const std::size_t target = (std::size_t)g.q + 2;

    std::vector<int> chosen;
    std::vector<Bitset> forbidden_stack;
    forbidden_stack.emplace_back(g.points.size());

    std::vector<std::size_t> start_stack{0};
    while (true) {
        bool advanced = false;
        for (std::size_t i = start_stack.back(); i < plane_pts.size(); ++i) {
            int p = plane_pts[i];
            if (forbidden_stack.back().test(p)) continue;
            // extend: secants through p and each chosen point become forbidden
            Bitset forb = forbidden_stack.back();
            for (int c : chosen) {
                int li = g.line_of_points(c, p);
                for (int pt : g.points_on_line[li]) forb.set(pt);
            }
            chosen.push_back(p);
            forbidden_stack.push_back(std::move(forb));
            start_stack.back() = i + 1;
            start_stack.push_back(i + 1);
            advanced = true;
            break;
        }
        if (chosen.size() == target) break;
        if (!advanced) {
            if (chosen.empty()) throw std::logic_error("hyperoval search exhausted");
            chosen.pop_back();
            forbidden_stack.pop_back();
            start_stack.pop_back();
        }
    }
    Bitset out(g.points.size());
    for (int p : chosen) out.set(p);
    return out;
}

// ---- regular spread ------------------------------------------------------

// The q^2+1 lines obtained from the one-dimensional GF(q^2)-subspaces of
// GF(q^2)^2 under a fixed GF(q)-basis identification of GF(q^2)^2 with
// GF(q)^4. Pairwise disjoint and point-covering by construction.
inline std::vector<int> regular_spread(const Geometry& g) {
    if (g.n != 3) throw std::invalid_argument("spreads are built in PG(3,q) only");
    if (g.q > 4) throw std::invalid_argument("spread construction needs GF(q^2) <= GF(16)");
    auto ext = make_extension(g.F);
    const FieldTable& E = ext.field;
    const FieldCode gen = (FieldCode)g.q; // the element y of the extension basis {1, y}

    std::vector<std::pair<FieldCode, FieldCode>> dirs;
    for (int z = 0; z < E.q; ++z) dirs.push_back({1, (FieldCode)z});
    dirs.push_back({0, 1});

    std::vector<int> out;
    for (auto [u, v] : dirs) {
        std::vector<FieldCode> m(2ul * 4, 0);
        auto put = [&](int row, FieldCode a, FieldCode b) {
            auto [lo1, hi1] = ext.decompose(a);
            auto [lo2, hi2] = ext.decompose(b);
            m[(std::size_t)row * 4 + 0] = lo1;
            m[(std::size_t)row * 4 + 1] = hi1;
            m[(std::size_t)row * 4 + 2] = lo2;
            m[(std::size_t)row * 4 + 3] = hi2;
        };
        put(0, u, v);
        put(1, E.mul(gen, u), E.mul(gen, v));
        int rank = detail::rref(m, 2, 4, g.F);
        if (rank != 2) throw std::logic_error("spread direction degenerated");
        Subspace s;
        s.n = 3;
        s.d = 1;
        s.mat = m;
        s.mat.resize(2ul * 4);
        int li = g.line_index(s);
        if (li < 0) throw std::logic_error("spread line not found in the line list");
        out.push_back(li);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- descriptor parsing ---------------------------------------------------

inline std::pair<int, int> parse_descriptor(const std::string& s) {
    // accepted form: PG(n,q)
    if (s.rfind("PG(", 0) != 0 || s.back() != ')')
        throw std::invalid_argument("bad geometry descriptor '" + s + "'");
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("bad geometry descriptor '" + s + "'");
    int n = std::stoi(s.substr(3, comma - 3));
    int q = std::stoi(s.substr(comma + 1, s.size() - comma - 2));
    return {n, q};
}

} // namespace pgcl
