#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "openwg/geometry.hpp"

using namespace openwg;
namespace geo = openwg::geometry;

TEST_CASE("complexification map properties") {
    geo::PsiParams p;  // L = 10
    CHECK(geo::psi(0.0, p) == 0.0);
    for (double t : {0.3, 4.0, 9.99, 17.0, 35.0, 44.0, 60.0})
        CHECK(std::fabs(geo::psi(-t, p) + geo::psi(t, p)) < 1e-15);
    for (double t = -10.0; t <= 10.0; t += 0.5) CHECK(std::fabs(geo::psi(t, p)) <= 1e-15);
    double prev = geo::psi(-80.0, p);
    for (double t = -79.5; t <= 80.0; t += 0.5) {
        const double cur = geo::psi(t, p);
        CHECK(cur >= prev);
        CHECK(geo::psi_prime(t, p) >= 0.0);
        prev = cur;
    }
    // paper truncation radius: psi(L+38) * k >= -log(1e-17) at k = 1
    CHECK(geo::psi(p.L + 38.0, p) * 1.0 >= -std::log(1e-17));
    CHECK(std::fabs(geo::psi(p.L + 38.0, p)) >= 39.0);
    CHECK(geo::truncation_bound(p, 1.0) == doctest::Approx(p.L + 38.0));
}

TEST_CASE("waveguide edges reproduce the reference discretization") {
    geo::GuideEdgesSpec spec;  // d=2, L=10, 72 panels, k=1
    const auto c = geo::build_waveguide_edges(spec);
    CHECK(c.panels.size() == 72);
    CHECK(c.num_nodes() == 72 * 16);
    CHECK(c.truncation == doctest::Approx(48.0));
    // imaginary part zero on the window, nondecreasing along direction
    for (const auto& pan : c.panels) {
        for (int j = 0; j < 16; ++j) {
            const double re = pan.nodes[j].x1.real(), im = pan.nodes[j].x1.imag();
            if (std::fabs(re) <= 10.0) CHECK(std::fabs(im) < 1e-14);
        }
        for (int j = 0; j + 1 < 16; ++j)
            CHECK(pan.nodes[j + 1].x1.imag() >= pan.nodes[j].x1.imag() - 1e-15);
    }
}

TEST_CASE("junction line with 96 panels and guide-edge breakpoints") {
    geo::JunctionSpec spec;
    spec.breakpoints = {-4.0, -2.0, 2.0, 4.0};
    const auto c = geo::build_junction_line(spec);
    CHECK(c.panels.size() == 96);  // breakpoints coincide with uniform boundaries
    bool found2 = false;
    for (const auto& pan : c.panels)
        if (std::fabs(pan.a - 2.0) < 1e-12) found2 = true;
    CHECK(found2);
}

TEST_CASE("branch condition Im[r^2] >= 0 over all node pairs") {
    geo::GuideEdgesSpec gs;
    const auto g = geo::build_waveguide_edges(gs);
    geo::JunctionSpec js;
    const auto h = geo::build_junction_line(js);
    auto check_pairs = [](const geo::Contour& a, const geo::Contour& b) {
        for (int i = 0; i < a.num_nodes(); i += 7)
            for (int j = 0; j < b.num_nodes(); j += 7) {
                const Cplx r2 = dist2(a.node(i), b.node(j));
                if (std::abs(r2) == 0.0) continue;
                CHECK(r2.imag() >= -1e-12 * std::abs(r2));
            }
    };
    check_pairs(g, g);
    check_pairs(h, h);
    check_pairs(g, h);
}

TEST_CASE("circle circumference from quadrature weights") {
    const auto c = geo::build_circle({0.0, 0.0}, 1.0, 12);
    Cplx sum(0.0, 0.0);
    for (const auto& pan : c.panels)
        for (int j = 0; j < 16; ++j) sum += pan.weights[j];
    CHECK(std::fabs(sum.real() - 2.0 * kPi) < 1e-12);
    CHECK(std::fabs(sum.imag()) < 1e-14);
    // outward normals
    for (const auto& pan : c.panels)
        for (int j = 0; j < 16; ++j) {
            const auto& n = pan.normals[j];
            CHECK(n.x1 * pan.nodes[j].x1.real() + n.x2 * pan.nodes[j].x2.real() ==
                  doctest::Approx(1.0));
        }
}

TEST_CASE("refinement preserves window assignment") {
    geo::GuideEdgesSpec s1, s2;
    s2.panels = 144;
    const auto a = geo::build_waveguide_edges(s1);
    const auto b = geo::build_waveguide_edges(s2);
    auto count_window = [](const geo::Contour& c) {
        int n = 0;
        for (int i = 0; i < c.num_nodes(); ++i)
            if (std::fabs(c.node(i).x1.real()) <= c.psi.L && std::fabs(c.node(i).x1.imag()) > 1e-13)
                ++n;
        return n;
    };
    CHECK(count_window(a) == 0);
    CHECK(count_window(b) == 0);
}

TEST_CASE("dyadic refinement inserts graded panels") {
    geo::GuideEdgesSpec s;
    s.dyadic_levels = 4;
    const auto c = geo::build_waveguide_edges(s);
    CHECK(c.panels.size() == 72 + 2 * 4 * 2);  // 4 extra panels per side of 0, both edges
}

TEST_CASE("invalid specs are rejected") {
    geo::GuideEdgesSpec bad;
    bad.d = -1.0;
    CHECK_THROWS_AS(geo::build_waveguide_edges(bad), std::invalid_argument);
    CHECK_THROWS_AS(geo::build_circle({0, 0}, 0.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(geo::build_open_arc({0, 0}, {0, 0}, 4), std::invalid_argument);
}

TEST_CASE("open arc carries the cosine parameterization") {
    const auto c = geo::build_open_arc({-1.0, 0.0}, {1.0, 0.0}, 4);
    // integral of du over [0,pi] times |halfvec| = pi
    Cplx sum(0.0, 0.0);
    for (const auto& pan : c.panels)
        for (int j = 0; j < 16; ++j) sum += pan.weights[j];
    CHECK(std::fabs(sum.real() - kPi) < 1e-12);
    // endpoints approached but not attained
    for (const auto& pan : c.panels)
        for (int j = 0; j < 16; ++j) CHECK(std::fabs(pan.nodes[j].x1.real()) < 1.0);
}
