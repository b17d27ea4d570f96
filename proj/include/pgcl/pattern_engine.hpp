#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <pgcl/pattern.hpp>

namespace pgcl {

// Optional restrictions applied during pattern enumeration.
struct PatternConstraints {
    // admissible values of |maximal clique ∩ class| for cliques through the
    // base line; a pattern row/column with sum s corresponds to value s + chi
    std::optional<std::vector<int>> clique_values;
    bool square_condition = true;

    bool value_allowed(long long v) const {
        if (!clique_values) return true;
        return std::find(clique_values->begin(), clique_values->end(), (int)v) !=
               clique_values->end();
    }
};

// Named constraint presets shipped with the tool. "gp-mod5" carries the
// published q=4, x=6 clique condition (every maximal clique meets the class
// in 3 mod 5 lines).
inline std::optional<std::vector<int>> preset_clique_values(const std::string& name) {
    if (name == "none") return std::nullopt;
    if (name == "gp-mod5") return std::vector<int>{3, 8, 13, 18};
    throw std::invalid_argument("unknown constraint preset '" + name + "'");
}

struct EliminatedPattern {
    Pattern pattern;        // canonical
    long long square_sum;   // value of the failing square-sum condition
    long long required;
};

struct PatternEnumeration {
    std::vector<Pattern> admissible;            // canonical, sorted
    std::vector<EliminatedPattern> square_rejects; // canonical, sorted, deduplicated
};

namespace detail {

// descending multisets of `parts` nonnegative integers with the given sum and
// per-part cap
inline void gen_multisets(int parts, long long sum, long long cap,
                          std::vector<long long>& cur,
                          std::vector<std::vector<long long>>& out) {
    if (parts == 0) {
        if (sum == 0) out.push_back(cur);
        return;
    }
    long long hi = std::min<long long>(cap, sum);
    // remaining parts must be able to absorb the rest
    for (long long v = hi; v >= 0; --v) {
        if (v * parts < sum) break;
        cur.push_back(v);
        gen_multisets(parts - 1, sum - v, v, cur, out);
        cur.pop_back();
    }
}

struct EnumShard {
    std::set<std::vector<int>> admissible;
    std::map<std::vector<int>, std::pair<long long, long long>> rejects;
};

inline void enumerate_pairs(int q, int x, int chi, const PatternConstraints& pc,
                            const std::vector<std::vector<long long>>& rows,
                            std::size_t row_begin, std::size_t row_end,
                            const std::vector<std::vector<long long>>& cols,
                            EnumShard& shard) {
    const int n = q + 1;
    std::vector<int> m((std::size_t)n * n);
    for (std::size_t ri = row_begin; ri < row_end; ++ri) {
        const auto& R = rows[ri];
        for (const auto& C : cols) {
            bool ok = true;
            long long sq = 0;
            for (int k = 0; k < n && ok; ++k)
                for (int l = 0; l < n; ++l) {
                    int t;
                    if (!pattern_entry_from_sums(q, x, chi, R[k], C[l], t)) {
                        ok = false;
                        break;
                    }
                    m[(std::size_t)k * n + l] = t;
                    sq += (long long)t * t;
                }
            if (!ok) continue;
            // reconstruction identity: derived entries must reproduce the sums
            for (int k = 0; k < n && ok; ++k) {
                long long s = 0;
                for (int l = 0; l < n; ++l) s += m[(std::size_t)k * n + l];
                ok = s == R[k];
            }
            for (int l = 0; l < n && ok; ++l) {
                long long s = 0;
                for (int k = 0; k < n; ++k) s += m[(std::size_t)k * n + l];
                ok = s == C[l];
            }
            if (!ok) continue;
            auto canon = Pattern::canonical_entries(m, n);
            if (pc.square_condition && sq != pattern_square_target(q, x, chi)) {
                shard.rejects.emplace(std::move(canon),
                                      std::make_pair(sq, pattern_square_target(q, x, chi)));
                continue;
            }
            shard.admissible.insert(std::move(canon));
        }
    }
}

} // namespace detail

// Complete enumeration of the patterns compatible with parameter x for lines
// with membership indicator chi. Row and column sum multisets with the
// required total are paired; the linear identity determines every entry from
// its row and column sum, so the sweep is exhaustive.
inline PatternEnumeration enumerate_patterns(int q, int x, int chi,
                                             const PatternConstraints& pc = {},
                                             int threads = 1) {
    if (x < 0 || x > q * q + 1) throw std::invalid_argument("parameter x out of range");
    if (chi != 0 && chi != 1) throw std::invalid_argument("chi must be 0 or 1");
    const int n = q + 1;
    const long long total = pattern_total_target(q, x, chi);

    std::vector<std::vector<long long>> sums;
    {
        std::vector<long long> cur;
        detail::gen_multisets(n, total, (long long)q * n, cur, sums);
    }
    // clique-value restriction applies to every row and column sum
    std::vector<std::vector<long long>> filtered;
    for (auto& s : sums) {
        bool ok = true;
        for (long long v : s)
            if (!pc.value_allowed(v + chi)) {
                ok = false;
                break;
            }
        if (ok) filtered.push_back(s);
    }

    detail::EnumShard merged;
    if (threads <= 1 || filtered.size() < 2) {
        detail::enumerate_pairs(q, x, chi, pc, filtered, 0, filtered.size(), filtered,
                                merged);
    } else {
        std::size_t nshards = std::min<std::size_t>(threads, filtered.size());
        std::vector<detail::EnumShard> shards(nshards);
        std::vector<std::future<void>> jobs;
        std::size_t chunk = (filtered.size() + nshards - 1) / nshards;
        for (std::size_t s = 0; s < nshards; ++s) {
            std::size_t b = s * chunk, e = std::min(filtered.size(), b + chunk);
            jobs.push_back(std::async(std::launch::async, [&, b, e, s] {
                detail::enumerate_pairs(q, x, chi, pc, filtered, b, e, filtered,
                                        shards[s]);
            }));
        }
        for (auto& j : jobs) j.get();
        for (auto& s : shards) {
            merged.admissible.insert(s.admissible.begin(), s.admissible.end());
            merged.rejects.insert(s.rejects.begin(), s.rejects.end());
        }
    }
    PatternEnumeration out;
    for (auto& e : merged.admissible)
        out.admissible.push_back(Pattern{q, chi, e, true});
    for (auto& [e, v] : merged.rejects)
        out.square_rejects.push_back(
            EliminatedPattern{Pattern{q, chi, e, true}, v.first, v.second});
    return out;
}

inline std::vector<Pattern> admissible_patterns(int q, int x, int chi,
                                                const PatternConstraints& pc = {},
                                                int threads = 1) {
    return enumerate_patterns(q, x, chi, pc, threads).admissible;
}

// same sweep with the square-sum condition switched off
inline std::vector<Pattern> intermediate_candidates(int q, int x, int chi,
                                                    PatternConstraints pc = {},
                                                    int threads = 1) {
    pc.square_condition = false;
    return enumerate_patterns(q, x, chi, pc, threads).admissible;
}

// Cross-consistency of the two pattern sets: every clique value exhibited on
// the non-member side that admits a member line must appear on the member
// side, and vice versa. Witnesses list the values with no counterpart.
struct CrossWitness {
    int value;
    bool missing_from_member_side; // true: value in V0 but not V1
};

struct CrossConsistency {
    bool evaluated = false; // false when one side is empty
    bool consistent = false;
    std::vector<int> v0, v1; // sorted clique-value sets
    std::vector<CrossWitness> witnesses;
};

inline CrossConsistency cross_consistency(const std::vector<Pattern>& s0,
                                          const std::vector<Pattern>& s1, int q, int x) {
    if (x < 1 || x > q * q)
        throw std::invalid_argument("cross-consistency requires 1 <= x <= q^2");
    CrossConsistency r;
    if (s0.empty() || s1.empty()) {
        r.evaluated = false;
        r.consistent = false;
        return r;
    }
    std::set<int> v0, v1;
    for (const auto& p : s0) {
        for (long long s : p.row_sums()) v0.insert((int)s);
        for (long long s : p.col_sums()) v0.insert((int)s);
    }
    for (const auto& p : s1) {
        for (long long s : p.row_sums()) v1.insert((int)(s + 1));
        for (long long s : p.col_sums()) v1.insert((int)(s + 1));
    }
    r.evaluated = true;
    r.v0.assign(v0.begin(), v0.end());
    r.v1.assign(v1.begin(), v1.end());
    for (int v : r.v0)
        if (v >= 1 && !v1.count(v)) r.witnesses.push_back({v, true});
    for (int v : r.v1)
        if (v <= q * q + q && !v0.count(v)) r.witnesses.push_back({v, false});
    r.consistent = r.witnesses.empty();
    return r;
}

// Full refutation pipeline for one (q, x). The verdict vocabulary is
// deliberately {nonexistent, undecided}: pattern analysis can only refute.
struct NonexistenceCertificate {
    int q = 0;
    int x = 0;
    std::string preset = "none";
    std::optional<std::vector<int>> clique_values;
    bool square_condition = true;
    PatternEnumeration chi0, chi1;
    CrossConsistency cross;
    std::string verdict;  // "nonexistent" or "undecided"
    std::string reason;

    std::string to_text() const;
};

inline NonexistenceCertificate nonexistence(int q, int x,
                                            const std::string& preset = "none",
                                            int threads = 1) {
    if (x < 1 || x > q * q)
        throw std::invalid_argument("nonexistence analysis requires 1 <= x <= q^2");
    NonexistenceCertificate cert;
    cert.q = q;
    cert.x = x;
    cert.preset = preset;
    cert.clique_values = preset_clique_values(preset);
    PatternConstraints pc;
    pc.clique_values = cert.clique_values;
    cert.chi0 = enumerate_patterns(q, x, 0, pc, threads);
    cert.chi1 = enumerate_patterns(q, x, 1, pc, threads);
    cert.cross = cross_consistency(cert.chi0.admissible, cert.chi1.admissible, q, x);
    if (cert.chi0.admissible.empty()) {
        cert.verdict = "nonexistent";
        cert.reason = "no admissible non-member pattern";
    } else if (cert.chi1.admissible.empty()) {
        cert.verdict = "nonexistent";
        cert.reason = "no admissible member pattern";
    } else if (!cert.cross.consistent) {
        cert.verdict = "nonexistent";
        cert.reason = "clique values of the two pattern sets are inconsistent";
    } else {
        cert.verdict = "undecided";
        cert.reason = "pattern analysis does not refute this parameter";
    }
    return cert;
}

namespace detail {

inline void print_matrix(std::ostringstream& os, const Pattern& p,
                         const char* indent = "  ") {
    const int n = p.dim();
    for (int i = 0; i < n; ++i) {
        os << indent;
        for (int j = 0; j < n; ++j) {
            if (j) os << ' ';
            os << p.at(i, j);
        }
        os << '\n';
    }
}

} // namespace detail

inline std::string NonexistenceCertificate::to_text() const {
    std::ostringstream os;
    os << "pgcl-nonexistence-certificate v1\n";
    os << "q: " << q << "\n";
    os << "x: " << x << "\n";
    os << "preset: " << preset << "\n";
    os << "clique-values:";
    if (!clique_values)
        os << " unrestricted";
    else
        for (int v : *clique_values) os << ' ' << v;
    os << "\n";
    os << "square-condition: " << (square_condition ? "on" : "off") << "\n";
    for (int chi = 0; chi <= 1; ++chi) {
        const PatternEnumeration& e = chi ? chi1 : chi0;
        os << "[admissible chi=" << chi << "]\n";
        os << "count: " << e.admissible.size() << "\n";
        for (const auto& p : e.admissible) {
            os << "- pattern\n";
            detail::print_matrix(os, p);
        }
        os << "[eliminated chi=" << chi << "]\n";
        os << "count: " << e.square_rejects.size() << "\n";
        for (const auto& r : e.square_rejects) {
            os << "- square-sum: " << r.square_sum << " required: " << r.required
               << "\n";
            detail::print_matrix(os, r.pattern);
        }
    }
    os << "[cross-consistency]\n";
    if (!cross.evaluated) {
        os << "status: skipped (a pattern set is empty)\n";
    } else {
        os << "status: " << (cross.consistent ? "consistent" : "inconsistent") << "\n";
        os << "non-member-values:";
        for (int v : cross.v0) os << ' ' << v;
        os << "\nmember-values:";
        for (int v : cross.v1) os << ' ' << v;
        os << "\n";
        for (const auto& w : cross.witnesses)
            os << "witness: clique value " << w.value << " has no "
               << (w.missing_from_member_side ? "member" : "non-member")
               << "-side pattern\n";
    }
    os << "verdict: " << verdict << "\n";
    os << "reason: " << reason << "\n";
    return os.str();
}

// Re-derives a certificate from the parameters recorded in its header and
// compares the result byte for byte.
struct ReplayResult {
    bool ok = false;
    std::string recomputed;
};

inline ReplayResult replay_certificate(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int q = -1, x = -1;
    std::string preset;
    while (std::getline(is, line)) {
        if (line.rfind("q: ", 0) == 0) q = std::stoi(line.substr(3));
        if (line.rfind("x: ", 0) == 0) x = std::stoi(line.substr(3));
        if (line.rfind("preset: ", 0) == 0) preset = line.substr(8);
    }
    if (q < 0 || x < 0 || preset.empty())
        throw std::invalid_argument("malformed nonexistence certificate");
    ReplayResult r;
    r.recomputed = nonexistence(q, x, preset).to_text();
    r.ok = r.recomputed == text;
    return r;
}

} // namespace pgcl
