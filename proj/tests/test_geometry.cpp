#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <set>

#include "pq/grid.hpp"
#include "pq/rng.hpp"

using namespace pq::geom;

TEST_CASE("unit square grid at h=1/4 has the 3x3 interior lattice") {
    const Grid g = build_grid(PlanarDomain::rectangle(0, 1, 0, 1), 0.25);
    REQUIRE(g.n() == 9);
    for (int k = 0; k < g.n(); ++k) {
        REQUIRE(g.x(k) > 0.0);
        REQUIRE(g.x(k) < 1.0);
        REQUIRE(g.dist[k] >= 0.25 - 1e-12);
    }
}

TEST_CASE("unit disk grid at h=1/2 keeps exactly the five axis nodes") {
    const Grid g = build_grid(PlanarDomain::disk(0, 0, 1), 0.5);
    REQUIRE(g.n() == 5);
    std::set<std::pair<double, double>> got;
    for (int k = 0; k < g.n(); ++k) got.insert({g.x(k), g.y(k)});
    const std::set<std::pair<double, double>> want = {
        {0.0, 0.0}, {0.5, 0.0}, {-0.5, 0.0}, {0.0, 0.5}, {0.0, -0.5}};
    REQUIRE(got == want);
}

TEST_CASE("too-coarse spacing yields a degenerate grid error") {
    REQUIRE_THROWS_WITH(build_grid(PlanarDomain::rectangle(0, 1, 0, 1), 0.6),
                        Catch::Matchers::ContainsSubstring("degenerate grid"));
}

TEST_CASE("square grid at h=1/2 has the single center node") {
    const Grid g = build_grid(PlanarDomain::rectangle(0, 1, 0, 1), 0.5);
    REQUIRE(g.n() == 1);
    REQUIRE(g.x(0) == 0.5);
    REQUIRE(g.y(0) == 0.5);
}

TEST_CASE("eval_weight closed forms") {
    SECTION("|z|^2 at (1,1)") {
        const Weight w = Weight::polynomial({{1, 2, 0}, {1, 0, 2}}, true);
        const WeightEval e = eval_weight(w, 1, 1);
        REQUIRE(e.phi == 2.0);
        REQUIRE(e.phi_x == 2.0);
        REQUIRE(e.phi_y == 2.0);
        REQUIRE(e.lap == 4.0);
    }
    SECTION("Re z at (3,-2)") {
        const Weight w = Weight::harmonic_linear(0, 1, 0);
        const WeightEval e = eval_weight(w, 3, -2);
        REQUIRE(e.phi == 3.0);
        REQUIRE(e.phi_x == 1.0);
        REQUIRE(e.phi_y == 0.0);
        REQUIRE(e.lap == 0.0);
    }
    SECTION("radial-flat is flat inside |z| <= 1/2") {
        const Weight w = Weight::radial_flat(0.5);
        const WeightEval e = eval_weight(w, 0.25, 0.0);
        REQUIRE(e.phi == 0.0);
        REQUIRE(e.lap == 0.0);
        const WeightEval o = eval_weight(w, 0.75, 0.0);
        REQUIRE(o.lap == Catch::Approx(0.0625).epsilon(1e-14));
    }
}

TEST_CASE("radial-flat weight is C^2 across the flat rim") {
    const Weight w = Weight::radial_flat(0.5);
    const WeightEval lo = eval_weight(w, 0.5 - 1e-7, 0.0);
    const WeightEval hi = eval_weight(w, 0.5 + 1e-7, 0.0);
    REQUIRE(std::abs(hi.phi - lo.phi) < 1e-12);
    REQUIRE(std::abs(hi.phi_x - lo.phi_x) < 1e-12);
    REQUIRE(std::abs(hi.lap - lo.lap) < 1e-12);
}

TEST_CASE("zero_set masks") {
    const Grid g = build_grid(PlanarDomain::disk(0, 0, 2), 0.125);
    SECTION("|z|^2 has empty zero set even at tau=1") {
        const Weight w = Weight::polynomial({{1, 2, 0}, {1, 0, 2}}, true);
        REQUIRE(mask_count(zero_set(w, g, 1.0)) == 0);
    }
    SECTION("harmonic weight at tau=0 marks every node") {
        const Weight w = Weight::harmonic_linear(0, 1, 0);
        REQUIRE(mask_count(zero_set(w, g, 0.0)) == g.n());
    }
    SECTION("radial-flat at tau=0 marks exactly |z| <= 1/2") {
        const Weight w = Weight::radial_flat(0.5);
        const NodeMask m = zero_set(w, g, 0.0);
        for (int k = 0; k < g.n(); ++k) {
            const bool in_flat = std::hypot(g.x(k), g.y(k)) <= 0.5;
            REQUIRE((m[k] != 0) == in_flat);
        }
    }
}

TEST_CASE("shrink_neighborhoods") {
    const Grid g = build_grid(PlanarDomain::rectangle(-1, 1, -1, 1), 0.1);
    NodeMask seed(g.n(), 0);
    const int center = g.node(0, 0);
    REQUIRE(center >= 0);
    seed[center] = 1;

    SECTION("nested lattice discs around a singleton") {
        const auto us = shrink_neighborhoods(seed, g, {0.5, 0.25});
        REQUIRE(us.size() == 2);
        for (int k = 0; k < g.n(); ++k) {
            const double d = std::hypot(g.x(k), g.y(k));
            REQUIRE((us[0][k] != 0) == (d <= 0.5 + 1e-12));
            REQUIRE((us[1][k] != 0) == (d <= 0.25 + 1e-12));
            if (us[1][k]) REQUIRE(us[0][k]);  // nested
        }
        REQUIRE(us[0][center]);
        REQUIRE(us[1][center]);
    }
    SECTION("empty mask gives empty neighborhoods") {
        const NodeMask empty(g.n(), 0);
        const auto us = shrink_neighborhoods(empty, g, {0.5, 0.25});
        REQUIRE(mask_count(us[0]) == 0);
        REQUIRE(mask_count(us[1]) == 0);
    }
    SECTION("non-decreasing widths are rejected") {
        REQUIRE_THROWS_AS(shrink_neighborhoods(seed, g, {0.2, 0.3}), std::invalid_argument);
    }
    SECTION("width at or below h is unresolvable") {
        REQUIRE_THROWS_WITH(shrink_neighborhoods(seed, g, {0.05}),
                            Catch::Matchers::ContainsSubstring("unresolvable neighborhood"));
    }
}

TEST_CASE("neighborhood nestedness holds for random masks and widths") {
    const Grid g = build_grid(PlanarDomain::disk(0, 0, 1), 0.05);
    pq::rng::Rng rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        NodeMask m(g.n(), 0);
        for (int k = 0; k < g.n(); ++k) m[k] = rng.uniform() < 0.02 ? 1 : 0;
        double w1 = rng.uniform(0.2, 0.6);
        double w2 = rng.uniform(0.07, w1 * 0.9);
        const auto us = shrink_neighborhoods(m, g, {w1, w2});
        for (int k = 0; k < g.n(); ++k) {
            if (us[1][k]) REQUIRE(us[0][k] != 0);
            if (m[k]) REQUIRE(us[1][k] != 0);
        }
    }
}

TEST_CASE("boundary distance respects the symmetry group") {
    SECTION("disk: rotation by 90 degrees") {
        const Grid g = build_grid(PlanarDomain::disk(0, 0, 1), 0.125);
        for (int k = 0; k < g.n(); ++k) {
            const int k2 = g.node(-g.ij[k][1], g.ij[k][0]);
            REQUIRE(k2 >= 0);
            REQUIRE(g.dist[k] == Catch::Approx(g.dist[k2]).margin(1e-14));
        }
    }
    SECTION("square: x-mirror") {
        const Grid g = build_grid(PlanarDomain::rectangle(-1, 1, -1, 1), 0.125);
        for (int k = 0; k < g.n(); ++k) {
            const int k2 = g.node(-g.ij[k][0], g.ij[k][1]);
            REQUIRE(k2 >= 0);
            REQUIRE(g.dist[k] == Catch::Approx(g.dist[k2]).margin(1e-14));
        }
    }
}

TEST_CASE("polynomial weight Laplacian matches coefficient-level differentiation") {
    // independent oracle: differentiate the monomial list symbolically
    const std::vector<MonomialTerm> terms = {{0.7, 4, 0}, {-0.3, 2, 2}, {1.1, 0, 4}, {0.5, 1, 1}, {2.0, 0, 0}};
    std::vector<MonomialTerm> lap_terms;
    for (const auto& t : terms) {
        if (t.px >= 2) lap_terms.push_back({t.coef * t.px * (t.px - 1), t.px - 2, t.py});
        if (t.py >= 2) lap_terms.push_back({t.coef * t.py * (t.py - 1), t.px, t.py - 2});
    }
    const Weight w = Weight::polynomial(terms);
    pq::rng::Rng rng(99);
    for (int i = 0; i < 20; ++i) {
        const double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2);
        double lap = 0;
        for (const auto& t : lap_terms) lap += t.coef * std::pow(x, t.px) * std::pow(y, t.py);
        REQUIRE(eval_weight(w, x, y).lap == Catch::Approx(lap).margin(1e-12 * (1 + std::abs(lap))));
    }
}

TEST_CASE("weight constant tracking is exact") {
    const Weight w = Weight::polynomial({{1, 2, 0}, {1, 0, 2}}, true);
    const Weight w2 = w.plus_constant(std::log(7.0));
    pq::rng::Rng rng(7);
    for (int i = 0; i < 10; ++i) {
        const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
        REQUIRE(w.varying(x, y) == w2.varying(x, y));  // bitwise
    }
    REQUIRE(w2.constant_term() == Catch::Approx(std::log(7.0)));
}

TEST_CASE("raster mask round trip and chamfer distance") {
    const std::string path = "raster_test_mask.txt";
    {
        std::ofstream out(path);
        out << "8 8 0.25 -1 -1\n";
        for (int r = 0; r < 8; ++r) {
            for (int c = 0; c < 8; ++c) out << ((r >= 1 && r < 7 && c >= 1 && c < 7) ? '1' : '0');
            out << "\n";
        }
    }
    const PlanarDomain d = PlanarDomain::raster_from_file(path);
    REQUIRE(d.kind() == DomainKind::raster_mask);
    REQUIRE(d.inside(0.0, 0.0));
    REQUIRE_FALSE(d.inside(-0.9, -0.9));
    const Grid g = build_grid(d, 0.25);
    REQUIRE(g.n() > 0);
    for (int k = 0; k < g.n(); ++k) REQUIRE(g.dist[k] >= 0.25 - 1e-12);
    std::remove(path.c_str());
}

TEST_CASE("annulus and polygon membership") {
    const PlanarDomain a = PlanarDomain::annulus(0, 0, 0.5, 1.0);
    REQUIRE(a.inside(0.75, 0));
    REQUIRE_FALSE(a.inside(0.25, 0));
    REQUIRE_FALSE(a.inside(1.25, 0));
    REQUIRE(a.boundary_distance(0.75, 0) == Catch::Approx(0.25));

    const PlanarDomain p = PlanarDomain::polygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
    REQUIRE(p.inside(1, 0.5));
    REQUIRE_FALSE(p.inside(3, 0.5));
    REQUIRE(p.boundary_distance(1, 0.5) == Catch::Approx(0.5));
    REQUIRE_THROWS_AS(PlanarDomain::polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), std::invalid_argument);
}
