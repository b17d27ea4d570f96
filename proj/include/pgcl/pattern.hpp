#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgcl {

// Pencil pattern of a line u in PG(3,q): the (q+1)x(q+1) matrix whose (k,l)
// entry counts the class members, other than u itself, in the pencil
// pen(P_k, pi_l) determined by a point of u and a plane through u. Rows
// correspond to points on u, columns to planes through u. Two patterns are
// regarded as equal when they differ by row/column permutations or
// transposition; the canonical representative is the lexicographically least
// row-major flattening over that symmetry group.
struct Pattern {
    int q = 0;
    int chi = 0;                // 1 when the base line belongs to the class
    std::vector<int> entries;   // row-major, (q+1)^2 values
    bool canonical = false;

    int dim() const { return q + 1; }
    int at(int r, int c) const { return entries[(std::size_t)r * dim() + c]; }

    std::vector<long long> row_sums() const {
        const int n = dim();
        std::vector<long long> s(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s[i] += at(i, j);
        return s;
    }
    std::vector<long long> col_sums() const {
        const int n = dim();
        std::vector<long long> s(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s[j] += at(i, j);
        return s;
    }
    long long total() const {
        return std::accumulate(entries.begin(), entries.end(), 0LL);
    }
    long long square_sum() const {
        long long s = 0;
        for (int v : entries) s += (long long)v * v;
        return s;
    }

    Pattern canonicalized() const {
        Pattern out = *this;
        out.entries = canonical_entries(entries, dim());
        out.canonical = true;
        return out;
    }

    std::string str() const {
        const int n = dim();
        std::ostringstream os;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j) os << ' ';
                os << at(i, j);
            }
            os << '\n';
        }
        return os.str();
    }

    friend bool operator==(const Pattern& a, const Pattern& b) {
        return a.q == b.q && a.chi == b.chi && a.entries == b.entries;
    }

    // Exact lexicographic minimum over row permutations x column permutations
    // x transposition. For a fixed column order the optimal row order of the
    // row-major flattening is the sorted row list, so it suffices to scan
    // 2*(q+1)! column arrangements.
    static std::vector<int> canonical_entries(const std::vector<int>& m, int n) {
        if ((int)m.size() != n * n) throw std::invalid_argument("pattern shape mismatch");
        if (n > 6)
            throw std::invalid_argument("pattern canonicalization is sized for q <= 5");
        std::vector<int> best;
        std::vector<int> perm(n);
        std::vector<std::vector<int>> rows(n, std::vector<int>(n));
        for (int tr = 0; tr < 2; ++tr) {
            std::iota(perm.begin(), perm.end(), 0);
            do {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        rows[i][j] = tr ? m[(std::size_t)perm[j] * n + i]
                                        : m[(std::size_t)i * n + perm[j]];
                std::sort(rows.begin(), rows.end());
                std::vector<int> flat;
                flat.reserve(n * n);
                for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
                if (best.empty() || flat < best) best = std::move(flat);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return best;
    }
};

// Targets of the counting identities a pattern of a class with parameter x
// must satisfy.
inline long long pattern_total_target(int q, int x, int chi) {
    return (long long)x * (q + 1) + (long long)chi * ((long long)q * q - 1);
}
inline long long pattern_square_target(int q, int x, int chi) {
    long long d = x - chi;
    return d * d + (long long)q * d + (long long)chi * q * q * (q + 1);
}

// Linear identity linking an entry to its row and column sums; equivalently
// the star/line/pencil identity applied to the two cliques through the cell:
//   R_k + C_l = x + (q+1) t_kl + (q-1) chi.
inline bool pattern_entry_from_sums(int q, int x, int chi, long long r, long long c,
                                    int& entry) {
    long long num = r + c - x - (long long)(q - 1) * chi;
    if (num % (q + 1) != 0) return false;
    long long t = num / (q + 1);
    if (t < 0 || t > q) return false;
    entry = (int)t;
    return true;
}

struct PatternCheck {
    bool range_ok = false;   // entries within [0, q]
    bool total_ok = false;   // sum of entries
    bool linear_ok = false;  // row/column sum identity at every cell
    bool square_ok = false;  // sum of squared entries
    bool all() const { return range_ok && total_ok && linear_ok && square_ok; }
};

inline PatternCheck check_pattern_conditions(const Pattern& p, int x) {
    PatternCheck r;
    r.range_ok = std::all_of(p.entries.begin(), p.entries.end(),
                             [&](int v) { return 0 <= v && v <= p.q; });
    r.total_ok = p.total() == pattern_total_target(p.q, x, p.chi);
    r.linear_ok = true;
    auto rs = p.row_sums(), cs = p.col_sums();
    for (int k = 0; k < p.dim() && r.linear_ok; ++k)
        for (int l = 0; l < p.dim(); ++l) {
            int t;
            if (!pattern_entry_from_sums(p.q, x, p.chi, rs[k], cs[l], t) ||
                t != p.at(k, l)) {
                r.linear_ok = false;
                break;
            }
        }
    r.square_ok = p.square_sum() == pattern_square_target(p.q, x, p.chi);
    return r;
}

} // namespace pgcl
