// Acceptance suite: one timed verdict line per criterion, exact arithmetic
// throughout, zero tolerance. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include <pgcl/cl_core.hpp>
#include <pgcl/cl_general.hpp>
#include <pgcl/constructions.hpp>
#include <pgcl/line_graph.hpp>
#include <pgcl/pattern_engine.hpp>

#include "support/published_matrices.hpp"

using namespace pgcl;

namespace {

struct Criterion {
    int failures = 0;
    std::ostringstream log;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            log << "    violated: " << what << "\n";
        }
    }
};

int g_failed_criteria = 0;

void run_criterion(int number, const std::string& title, double budget_seconds,
                   const std::function<void(Criterion&)>& body) {
    Criterion c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        ++c.failures;
        c.log << "    exception: " << e.what() << "\n";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_seconds) {
        ++c.failures;
        c.log << "    over budget: " << secs << " s > " << budget_seconds << " s\n";
    }
    bool pass = c.failures == 0;
    if (!pass) ++g_failed_criteria;
    std::printf("[%s] criterion %d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", number,
                title.c_str(), secs);
    if (!pass) std::fputs(c.log.str().c_str(), stdout);
}

std::vector<int> canon(const ref::Mat& m) { return Pattern::canonical_entries(m, 5); }

std::set<std::vector<int>> entry_set(const std::vector<Pattern>& ps) {
    std::set<std::vector<int>> s;
    for (const auto& p : ps) s.insert(p.entries);
    return s;
}

std::string show(const std::set<std::vector<int>>& s) {
    std::ostringstream os;
    for (const auto& e : s) {
        for (int i = 0; i < 25; ++i) os << e[i] << ((i % 5 == 4) ? "; " : " ");
        os << " | ";
    }
    return os.str();
}

int first_point_off_plane(const Geometry& g, int plane) {
    for (std::size_t p = 0; p < g.points.size(); ++p)
        if (!g.plane_points[plane].test(p)) return (int)p;
    return -1;
}

} // namespace

int main() {
    // shared spaces
    Geometry g34 = build_geometry(3, 4);
    LineGraph G34 = build_graph(g34);

    run_criterion(1, "geometry and graph facts", 5.0, [&](Criterion& c) {
        c.require(g34.points.size() == 85, "85 points in PG(3,4)");
        c.require(g34.lines.size() == 357, "357 lines in PG(3,4)");
        c.require(g34.planes.size() == 85, "85 planes in PG(3,4)");
        c.require(G34.valency == 100, "valency 100");
        for (std::size_t i = 0; i < 85; ++i) {
            if (g34.plane_lines[i].count() != 21 || g34.star[i].count() != 21) {
                c.require(false, "maximal clique of size 21");
                break;
            }
        }
        for (int q : {2, 3, 4}) {
            Geometry g = q == 4 ? g34 : build_geometry(3, q);
            LineGraph G = q == 4 ? G34 : build_graph(g);
            auto rep = check_local_structure(G);
            c.require(rep.pass, "local structure at q=" + std::to_string(q) + ": " +
                                    rep.failure);
            c.require(rep.neighborhoods_checked == (long long)G.size(),
                      "exhaustive neighborhood sweep");
        }
    });

    GP7Input gin;
    gin.plane = 0;
    gin.point = first_point_off_plane(g34, 0);
    GP7Result gp = gp_x7(G34, gin);

    run_criterion(2, "the parameter-7 class", 10.0, [&](Criterion& c) {
        const auto& cls = gp.line_class;
        c.require(cls.size() == 147, "size 147");
        c.require(cl_parameter(G34, cls) == 7, "parameter 7");
        c.require(verify_equivalents(G34, cls, 7).all_pass(), "equivalent conditions");
        auto qm = quotient_matrix(G34, cls);
        c.require(qm.equitable && qm.p[0][0] == 50 && qm.p[0][1] == 50 &&
                      qm.p[1][0] == 35 && qm.p[1][1] == 65,
                  "quotient matrix [[50,50],[35,65]] equitable");
        c.require(cl_parameter(G34, cls.complemented()) == 10, "complement parameter 10");
        c.require(spread_check(G34, cls, regular_spread(g34), Rational(7)),
                  "regular spread meets the class in 7 lines");

        auto spec = pattern_spectrum(G34, cls);
        std::set<std::vector<int>> member, non_member;
        for (const auto& e : spec.member) member.insert(e.pattern.entries);
        for (const auto& e : spec.non_member) non_member.insert(e.pattern.entries);
        std::set<std::vector<int>> w12{canon(ref::x7_member_a), canon(ref::x7_member_b)};
        std::set<std::vector<int>> b12{canon(ref::x7_nonmember_a), canon(ref::x7_nonmember_b)};
        c.require(std::includes(w12.begin(), w12.end(), member.begin(), member.end()),
                  "member patterns within the two realized matrices");
        c.require(std::includes(b12.begin(), b12.end(), non_member.begin(), non_member.end()),
                  "non-member patterns within the two matrices");

        Bitset poor(g34.points.size());
        for (int li : gp.cone_lines) {
            auto p = poor_point(G34, cls, li);
            if (!p) {
                c.require(false, "cone line with a poor point");
                break;
            }
            poor.set(*p);
        }
        c.require(poor == gp.hyperoval, "poor points of the cone form the hyperoval");

        auto oval_pts = gp.hyperoval.to_indices();
        std::set<int> secants;
        for (std::size_t a = 0; a < oval_pts.size(); ++a)
            for (std::size_t b = a + 1; b < oval_pts.size(); ++b)
                secants.insert(g34.line_of_points(oval_pts[a], oval_pts[b]));
        std::set<int> nm_in_plane;
        g34.plane_lines[0].for_each([&](std::size_t li) {
            if (!cls.contains((int)li)) nm_in_plane.insert((int)li);
        });
        c.require(secants.size() == 15 && nm_in_plane == secants,
                  "the 15 hyperoval secants are exactly the plane's non-members");

        Bitset cone_mask(g34.lines.size());
        for (int li : gp.cone_lines) cone_mask.set(li);
        bool cone_plane_ok = true;
        for (std::size_t pl = 0; pl < g34.planes.size(); ++pl) {
            auto k = g34.plane_lines[pl].count_and(cone_mask);
            if (k != 0 && k != 2) cone_plane_ok = false;
        }
        c.require(cone_plane_ok, "every plane carries 0 or 2 cone lines");
    });

    run_criterion(3, "pattern engine reproduction", 60.0, [&](Criterion& c) {
        auto m1 = entry_set(admissible_patterns(4, 7, 1));
        std::set<std::vector<int>> w123{canon(ref::x7_member_a), canon(ref::x7_member_b),
                                        canon(ref::x7_member_c)};
        c.require(m1 == w123, "(q=4,x=7,chi=1) admissible set equals the three classical "
                              "matrices; enumeration found: " +
                                  show(m1));

        auto m0 = entry_set(admissible_patterns(4, 7, 0));
        c.require(m0 == std::set<std::vector<int>>{canon(ref::x7_nonmember_a),
                                                   canon(ref::x7_nonmember_b)},
                  "(q=4,x=7,chi=0) admissible set equals the two classical matrices");

        auto f0 = entry_set(admissible_patterns(4, 5, 0));
        auto f1 = entry_set(admissible_patterns(4, 5, 1));
        c.require(f0 == std::set<std::vector<int>>{canon(ref::x5_nonmember)},
                  "(q=4,x=5,chi=0) unique pattern");
        c.require(f1 == std::set<std::vector<int>>{canon(ref::x5_member)},
                  "(q=4,x=5,chi=1) unique pattern");
        auto cross5 = cross_consistency(admissible_patterns(4, 5, 0),
                                        admissible_patterns(4, 5, 1), 4, 5);
        bool witness10 = false;
        for (const auto& w : cross5.witnesses)
            if (w.value == 10 && w.missing_from_member_side) witness10 = true;
        c.require(cross5.evaluated && !cross5.consistent && witness10,
                  "(q=4,x=5) cross-consistency refutes with witness value 10");

        PatternConstraints pc;
        pc.clique_values = preset_clique_values("gp-mod5");
        auto inter = entry_set(intermediate_candidates(4, 6, 0, pc));
        c.require(inter == std::set<std::vector<int>>{canon(ref::x6_t1), canon(ref::x6_t2),
                                                      canon(ref::x6_t3), canon(ref::x6_t4)},
                  "(q=4,x=6) intermediate candidates are the four published matrices");
        auto res6 = enumerate_patterns(4, 6, 0, pc);
        std::multiset<long long> sums;
        for (const auto& r : res6.square_rejects) {
            sums.insert(r.square_sum);
            if (r.required != 60) c.require(false, "square-sum requirement 60");
        }
        c.require(sums == std::multiset<long long>{48, 58, 68, 78},
                  "square sums 78/68/58/48");
        c.require(nonexistence(4, 6, "gp-mod5").verdict == "nonexistent",
                  "(q=4,x=6) verdict nonexistent");
    });

    run_criterion(4, "parameters 4 and 8", 600.0, [&](Criterion& c) {
        for (int x : {4, 8}) {
            auto cert = nonexistence(4, x, "none");
            c.require(cert.verdict == "nonexistent",
                      "x=" + std::to_string(x) + " verdict nonexistent");
            auto text = cert.to_text();
            c.require(text.find("preset: none") != std::string::npos,
                      "certificate records the preset");
            c.require(replay_certificate(text).ok,
                      "x=" + std::to_string(x) + " certificate replays");
        }
    });

    run_criterion(5, "soundness across the fixture classes", 120.0, [&](Criterion& c) {
        int apex = first_point_off_plane(g34, 0);
        std::vector<std::pair<std::string, LineClass>> fixtures;
        fixtures.emplace_back("empty", standard_empty(g34));
        fixtures.emplace_back("all", standard_all(g34));
        fixtures.emplace_back("star", standard_star(g34, 0));
        fixtures.emplace_back("plane", standard_hyperplane(g34, 0));
        fixtures.emplace_back("union", standard_union(g34, apex, 0));
        fixtures.emplace_back("gp7", gp.line_class);
        std::size_t base = fixtures.size();
        for (std::size_t i = 0; i < base; ++i)
            fixtures.emplace_back(fixtures[i].first + "-complement",
                                  fixtures[i].second.complemented());

        std::map<std::pair<long long, int>, std::set<std::vector<int>>> admissible_cache;
        auto admissible_for = [&](long long x, int chi) -> const std::set<std::vector<int>>& {
            auto key = std::make_pair(x, chi);
            auto it = admissible_cache.find(key);
            if (it == admissible_cache.end())
                it = admissible_cache.emplace(key, entry_set(admissible_patterns(4, (int)x, chi)))
                         .first;
            return it->second;
        };

        for (auto& [name, cls] : fixtures) {
            auto x = cl_parameter(G34, cls);
            if (!x) {
                c.require(false, name + " has a parameter");
                continue;
            }
            c.require(verify_equivalents(G34, cls, *x).all_pass(),
                      name + ": equivalent conditions agree");
            bool patterns_ok = true, member_ok = true;
            for (std::size_t u = 0; u < G34.size(); ++u) {
                auto p = pattern_of(G34, cls, (int)u);
                if (!check_pattern_conditions(p, (int)*x).all()) patterns_ok = false;
                if (!admissible_for(*x, p.chi).count(p.canonicalized().entries))
                    member_ok = false;
            }
            c.require(patterns_ok, name + ": every pattern satisfies the four conditions");
            c.require(member_ok, name + ": every pattern is in the admissible set");

            // single-line perturbations are rejected by both formulations
            int first_member = -1, first_non_member = -1;
            for (std::size_t li = 0; li < G34.size(); ++li) {
                if (cls.contains((int)li) && first_member < 0) first_member = (int)li;
                if (!cls.contains((int)li) && first_non_member < 0) first_non_member = (int)li;
            }
            for (int flip : {first_member, first_non_member}) {
                if (flip < 0) continue;
                auto poked = cls.with_flipped(flip);
                c.require(!cl_parameter(G34, poked).has_value(),
                          name + ": perturbation loses the parameter");
                c.require(!verify_equivalents(G34, poked, *x).all_pass(),
                          name + ": perturbation fails the equivalent conditions");
            }
        }
    });

    run_criterion(6, "generalized conditions in PG(4,2)", 60.0, [&](Criterion& c) {
        Geometry g42 = build_geometry(4, 2);
        LineGraph G42 = build_graph(g42);
        Geometry g32 = build_geometry(3, 2);
        LineGraph G32 = build_graph(g32);

        auto star = standard_star(g42, 0);
        auto all = standard_all(g42);
        int apex = -1;
        for (std::size_t p = 0; p < g42.points.size(); ++p)
            if (!g42.solid_points[0].test(p)) {
                apex = (int)p;
                break;
            }
        auto uni = standard_union(g42, apex, 0);

        auto x_star = cl_parameter_general(G42, star);
        c.require(x_star && *x_star == Rational(1), "star parameter 1");
        bool meets14 = true;
        for (int li : star.indices())
            if (G42.adj[li].count_and(star.mask()) != 14) meets14 = false;
        c.require(meets14, "every star member meets 14 members");
        auto x_all = cl_parameter_general(G42, all);
        c.require(x_all && *x_all == Rational(31, 3), "all-lines parameter 31/3");
        auto x_uni = cl_parameter_general(G42, uni);
        c.require(x_uni && *x_uni == Rational(10, 3), "union parameter 10/3");

        struct Fx {
            const char* name;
            const LineClass* cls;
            Rational x;
        } fixtures[] = {{"star", &star, Rational(1)},
                        {"all", &all, Rational(31, 3)},
                        {"union", &uni, Rational(10, 3)}};
        for (const auto& f : fixtures) {
            bool flags_ok = true;
            for (int pt = 0; pt < (int)g42.points.size(); ++pt) {
                for (int pl = 0; pl < (int)g42.planes.size(); ++pl)
                    if (g42.plane_points[pl].test(pt) &&
                        !flag_condition(G42, *f.cls, pt, SubspaceRef{2, pl}, f.x))
                        flags_ok = false;
                for (int so = 0; so < (int)g42.solids.size(); ++so)
                    if (g42.solid_points[so].test(pt) &&
                        !flag_condition(G42, *f.cls, pt, SubspaceRef{3, so}, f.x))
                        flags_ok = false;
            }
            c.require(flags_ok, std::string(f.name) + ": every flag identity holds");

            bool restrictions_ok = true;
            for (int so = 0; so < (int)g42.solids.size(); ++so) {
                auto r = restrict_to_solid(*f.cls, so, g32);
                if (!cl_parameter(G32, r).has_value()) restrictions_ok = false;
            }
            c.require(restrictions_ok,
                      std::string(f.name) + ": every solid restriction verifies");
        }
    });

    run_criterion(7, "feasibility criterion equals brute force", 60.0, [&](Criterion& c) {
        bool all_ok = true;
        for (int m = 1; m <= 4 && all_ok; ++m)
            for (int n = 1; n <= 4 && all_ok; ++n) {
                std::set<std::pair<std::vector<long long>, std::vector<long long>>> feasible;
                for (unsigned bits = 0; bits < (1u << (m * n)); ++bits) {
                    std::vector<long long> r(m, 0), co(n, 0);
                    for (int i = 0; i < m; ++i)
                        for (int j = 0; j < n; ++j)
                            if (bits >> (i * n + j) & 1) {
                                ++r[i];
                                ++co[j];
                            }
                    feasible.insert({r, co});
                }
                std::vector<long long> r(m), co(n);
                std::function<void(int)> sweep = [&](int pos) {
                    if (!all_ok) return;
                    if (pos == m + n) {
                        bool want = feasible.count({r, co}) > 0;
                        if (gale_ryser(r, co) != want) all_ok = false;
                        return;
                    }
                    for (long long v = 0; v <= 4; ++v) {
                        (pos < m ? r[pos] : co[pos - m]) = v;
                        sweep(pos + 1);
                    }
                };
                sweep(0);
            }
        c.require(all_ok, "agreement on every sum vector up to 4x4 with entries <= 4");
    });

    run_criterion(8, "exhaustive parameter-1 search in PG(3,2)", 600.0, [&](Criterion& c) {
        Geometry g = build_geometry(3, 2);
        LineGraph G = build_graph(g);
        auto found = search_x1(G);
        c.require(found.size() == 30, "exactly 30 classes");
        int stars = 0, planes = 0;
        for (const auto& cls : found) {
            c.require(cls.size() == 7, "class size 7");
            for (std::size_t p = 0; p < g.points.size(); ++p)
                if (cls.mask() == g.star[p]) ++stars;
            for (std::size_t pl = 0; pl < g.planes.size(); ++pl)
                if (cls.mask() == g.plane_lines[pl]) ++planes;
        }
        c.require(stars == 15, "15 stars");
        c.require(planes == 15, "15 plane classes");
    });

    if (g_failed_criteria == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", g_failed_criteria);
    return g_failed_criteria;
}
