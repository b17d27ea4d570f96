#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pgcl/cl_core.hpp>
#include <pgcl/constructions.hpp>

#include <random>
#include <set>

using namespace pgcl;

namespace {

struct Space34 {
    Geometry g = build_geometry(3, 4);
    LineGraph G = build_graph(g);
};

Space34& space() {
    static Space34 s;
    return s;
}

int point_off_plane(const Geometry& g, int plane) {
    for (std::size_t p = 0; p < g.points.size(); ++p)
        if (!g.plane_points[plane].test(p)) return (int)p;
    throw std::logic_error("no point off the plane");
}

} // namespace

TEST_CASE("parameters of the classical families") {
    auto& [g, G] = space();
    CHECK(cl_parameter(G, standard_empty(g)) == 0);
    CHECK(cl_parameter(G, standard_all(g)) == 17);

    auto star = standard_star(g, 0);
    CHECK(star.size() == 21);
    CHECK(cl_parameter(G, star) == 1);

    auto plane = standard_hyperplane(g, 0);
    CHECK(plane.size() == 21);
    CHECK(cl_parameter(G, plane) == 1);

    int p = point_off_plane(g, 0);
    auto uni = standard_union(g, p, 0);
    CHECK(uni.size() == 42);
    CHECK(cl_parameter(G, uni) == 2);

    // incident pair is refused
    int inside = g.plane_points[0].to_indices()[0];
    CHECK_THROWS_AS(standard_union(g, inside, 0), std::invalid_argument);
}

TEST_CASE("complement laws") {
    auto& [g, G] = space();
    auto star = standard_star(g, 5);
    auto co = star.complemented();
    CHECK(cl_parameter(G, co) == 16); // q^2 + 1 - x
    CHECK(co.complemented().mask() == star.mask());
    CHECK(cl_parameter(G, standard_all(g).complemented()) == 0);
}

TEST_CASE("a seeded random mask of the right size is not a class") {
    auto& [g, G] = space();
    std::mt19937 rng(424242);
    std::vector<int> all(g.lines.size());
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(147);
    LineClass c(g, all);
    CHECK(!cl_parameter(G, c).has_value());
}

TEST_CASE("equivalent formulations agree with the defining count") {
    auto& [g, G] = space();
    auto star = standard_star(g, 0);

    auto rep = verify_equivalents(G, star, 1);
    CHECK(rep.all_pass());
    CHECK(rep.point_plane.checked == 85 * 21);
    CHECK(rep.skew_pairs.checked == 357 * 256 / 2);
    CHECK(rep.adjacent_pairs.checked == 357 * 100);

    // wrong parameter: the skew-pair identity breaks
    auto bad = verify_equivalents(G, star, 2);
    CHECK(!bad.all_pass());
    CHECK(!bad.skew_pairs.ok());
    CHECK(!bad.first_violation.empty());

    // perturbation: both the verifier and the defining count reject
    auto poked = star.with_flipped(300);
    CHECK(!cl_parameter(G, poked).has_value());
    CHECK(!verify_equivalents(G, poked, 1).all_pass());
}

TEST_CASE("quotient matrices") {
    auto& [g, G] = space();

    auto qm = quotient_matrix(G, standard_star(g, 0));
    CHECK(qm.equitable);
    CHECK(qm.p[0][0] == 20);
    CHECK(qm.p[0][1] == 80);
    CHECK(qm.p[1][0] == 5);
    CHECK(qm.p[1][1] == 95);

    CHECK_THROWS_AS(quotient_matrix(G, standard_empty(g)), std::invalid_argument);
    CHECK_THROWS_AS(quotient_matrix(G, standard_all(g)), std::invalid_argument);

    auto poked = standard_star(g, 0).with_flipped(300);
    auto qm2 = quotient_matrix(G, poked);
    CHECK(!qm2.equitable);
    CHECK(!qm2.witness.empty());

    // the refuted parameter-6 quotient matrix never shows up on the fixtures
    for (const LineClass& c : {standard_star(g, 3), standard_hyperplane(g, 7),
                               standard_union(g, point_off_plane(g, 2), 2)}) {
        auto m = quotient_matrix(G, c);
        bool is_x6 = m.p[0][0] == 45 && m.p[0][1] == 55 && m.p[1][0] == 30 && m.p[1][1] == 70;
        CHECK(!is_x6);
    }
}

TEST_CASE("patterns of the degenerate and star classes") {
    auto& [g, G] = space();

    SUBCASE("empty class: zero matrix") {
        auto p = pattern_of(G, standard_empty(g), 10);
        CHECK(p.chi == 0);
        CHECK(p.total() == 0);
    }
    SUBCASE("all lines: constant q") {
        auto p = pattern_of(G, standard_all(g), 10);
        CHECK(p.chi == 1);
        for (int v : p.entries) CHECK(v == 4);
    }
    SUBCASE("star member: one full line of the matrix, zero elsewhere") {
        auto star = standard_star(g, 0);
        int u = g.star[0].to_indices()[0];
        auto p = pattern_of(G, star, u).canonicalized();
        std::vector<int> want(25, 0);
        for (int j = 20; j < 25; ++j) want[j] = 4;
        CHECK(p.entries == want);
    }
    SUBCASE("spectrum of a star: two canonical patterns") {
        auto spec = pattern_spectrum(G, standard_star(g, 0));
        CHECK(spec.member.size() == 1);
        CHECK(spec.non_member.size() == 1);
        CHECK(spec.member[0].count == 21);
        CHECK(spec.non_member[0].count == 336);
        CHECK(spec.total() == 357);
    }
}

TEST_CASE("grid slices over skew pairs") {
    auto& [g, G] = space();
    auto star = standard_star(g, 0);

    // locate a skew pair with u through the star point and v off it
    int u = g.star[0].to_indices()[0];
    int v = -1;
    G.second_neighborhood(u).for_each([&](std::size_t w) {
        if (v < 0 && !g.star[0].test(w)) v = (int)w;
    });
    REQUIRE(v >= 0);

    auto s = grid_slice(G, star, u, v);
    long long mr = 0, mc = 0;
    for (auto x : s.row_sums) mr += x;
    for (auto x : s.col_sums) mc += x;
    CHECK(mr == s.members);
    CHECK(mc == s.members);
    CHECK(s.members == 1 + 4 * (star.chi(u) + star.chi(v))); // x + q(chi_u + chi_v)
    CHECK(gale_ryser(s.row_sums, s.col_sums));

    // non-skew input is refused
    int w = G.adj[u].to_indices()[0];
    CHECK_THROWS_AS(grid_slice(G, star, u, w), std::invalid_argument);
    CHECK_THROWS_AS(grid_slice(G, star, u, u), std::invalid_argument);
}

TEST_CASE("Gale-Ryser feasibility") {
    CHECK(gale_ryser({2, 1}, {2, 1}));
    CHECK(!gale_ryser({2, 0}, {2, 0}));
    CHECK(gale_ryser({2, 2, 2}, {3, 3, 0})); // witness: two full columns
    CHECK(!gale_ryser({3, 3, 3}, {3, 3, 0}));
    CHECK(gale_ryser({}, {}));
    CHECK(!gale_ryser({1}, {2}));

    // brute force over all shapes up to 3x3
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) {
            std::set<std::pair<std::vector<long long>, std::vector<long long>>> feasible;
            for (unsigned bits = 0; bits < (1u << (m * n)); ++bits) {
                std::vector<long long> r(m, 0), c(n, 0);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j)
                        if (bits >> (i * n + j) & 1) {
                            ++r[i];
                            ++c[j];
                        }
                feasible.insert({r, c});
            }
            std::vector<long long> r(m), c(n);
            auto sweep = [&](auto&& self, int pos) -> void {
                if (pos == m + n) {
                    bool want = feasible.count({r, c}) > 0;
                    CAPTURE(r);
                    CAPTURE(c);
                    CHECK(gale_ryser(r, c) == want);
                    return;
                }
                long long hi = pos < m ? n : m;
                for (long long v = 0; v <= hi; ++v) {
                    (pos < m ? r[pos] : c[pos - m]) = v;
                    self(self, pos + 1);
                }
            };
            sweep(sweep, 0);
        }
}

TEST_CASE("line class files round-trip and reject malformed input") {
    auto& [g, G] = space();
    auto star = standard_star(g, 0);

    auto text = line_class_to_text(star);
    auto file = parse_line_class_text(text);
    CHECK(file.geometry == "PG(3,4)");
    auto back = line_class_from_file(g, file);
    CHECK(back.mask() == star.mask());
    CHECK(line_class_to_text(back) == text);

    CHECK_THROWS_AS(parse_line_class_text("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_line_class_text("{\"geometry\":\"PG(3,4)\"}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_line_class_text(
                        "{\"geometry\":\"PG(3,4)\",\"lines\":[1,\"two\"]}"),
                    std::invalid_argument);
    auto g2 = build_geometry(3, 2);
    CHECK_THROWS_AS(line_class_from_file(g2, file), std::invalid_argument);

    LineClassFile dup;
    dup.geometry = "PG(3,4)";
    dup.lines = {1, 1};
    CHECK_THROWS_AS(line_class_from_file(g, dup), std::invalid_argument);
    LineClassFile oob;
    oob.geometry = "PG(3,4)";
    oob.lines = {357};
    CHECK_THROWS_AS(line_class_from_file(g, oob), std::invalid_argument);
}
