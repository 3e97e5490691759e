#include "openwg/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "openwg/quadrature.hpp"

namespace openwg::geometry {

double psi(double t, const PsiParams& p) {
    const double c = p.L + p.offset;
    return p.amplitude * (std::erfc(-(t - c) / p.width) - std::erfc((t + c) / p.width));
}

double psi_prime(double t, const PsiParams& p) {
    const double c = p.L + p.offset;
    const double s = 2.0 / (std::sqrt(kPi) * p.width);
    const double u1 = (t - c) / p.width;
    const double u2 = (t + c) / p.width;
    return p.amplitude * s * (std::exp(-u1 * u1) + std::exp(-u2 * u2));
}

Cplx complexification_map(double t, const PsiParams& p) { return Cplx(t, psi(t, p)); }

double truncation_bound(const PsiParams& p, double k, double eps) {
    const double need = -std::log(eps) / k;
    if (2.0 * p.amplitude <= need)
        throw std::invalid_argument("truncation_bound: psi saturates below the decay target");
    double lo = p.L, hi = p.L + p.offset + 20.0 * p.width;
    for (int it = 0; it < 200 && psi(hi, p) < need; ++it) hi += 10.0 * p.width;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (psi(mid, p) >= need ? hi : lo) = mid;
    }
    return p.L + std::ceil(hi - p.L);
}

namespace {

Panel make_panel(const std::vector<PieceMap>& pieces, int piece, double a, double b) {
    Panel pan;
    pan.piece = piece;
    pan.a = a;
    pan.b = b;
    const auto& xs = quadrature::panel_gl_nodes();
    const auto& ws = quadrature::panel_gl_weights();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int j = 0; j < 16; ++j) {
        const MapPoint mp = pieces[piece](mid + half * xs[j]);
        pan.nodes[j] = mp.p;
        pan.weights[j] = ws[j] * half * mp.jac;
        pan.normals[j] = mp.normal;
        pan.length += std::abs(pan.weights[j]);
    }
    return pan;
}

// Uniform boundaries with required breakpoints inserted and optional
// dyadic grading toward each refinement point.
std::vector<double> panel_boundaries(double lo, double hi, int count,
                                     const std::vector<double>& breaks, int dyadic_levels,
                                     const std::vector<double>& refine_at) {
    std::vector<double> bd;
    bd.reserve(count + 1 + breaks.size());
    for (int i = 0; i <= count; ++i) bd.push_back(lo + (hi - lo) * i / count);
    const double snap = 1e-9 * (hi - lo);
    for (double brk : breaks) {
        if (brk <= lo + snap || brk >= hi - snap) continue;
        bool present = false;
        for (double v : bd)
            if (std::abs(v - brk) < snap) present = true;
        if (!present) bd.push_back(brk);
    }
    std::sort(bd.begin(), bd.end());
    if (dyadic_levels > 0) {
        std::vector<double> extra;
        for (double pt : refine_at) {
            // Split the panel on each side of pt dyadically toward it.
            for (size_t i = 0; i + 1 < bd.size(); ++i) {
                if (std::abs(bd[i] - pt) < snap) {
                    const double h = bd[i + 1] - bd[i];
                    for (int l = 1; l <= dyadic_levels; ++l)
                        extra.push_back(pt + h / std::pow(2.0, l));
                }
                if (std::abs(bd[i + 1] - pt) < snap) {
                    const double h = bd[i + 1] - bd[i];
                    for (int l = 1; l <= dyadic_levels; ++l)
                        extra.push_back(pt - h / std::pow(2.0, l));
                }
            }
        }
        bd.insert(bd.end(), extra.begin(), extra.end());
        std::sort(bd.begin(), bd.end());
        bd.erase(std::unique(bd.begin(), bd.end(),
                             [&](double x, double y) { return std::abs(x - y) < snap * 1e-3; }),
                 bd.end());
    }
    return bd;
}

}  // namespace

Contour build_waveguide_edges(const GuideEdgesSpec& spec) {
    if (spec.d <= 0) throw std::invalid_argument("waveguide edges: d must be positive");
    if (spec.panels < 2) throw std::invalid_argument("waveguide edges: need at least 2 panels");
    Contour c;
    c.kind = ContourKind::waveguide_edges;
    c.psi = spec.psi;
    c.d = spec.d;
    c.truncation = spec.trunc_override > 0.0 ? spec.trunc_override
                                             : truncation_bound(spec.psi, spec.k, spec.trunc_eps);
    const PsiParams ps = spec.psi;
    const double d = spec.d;
    c.pieces.push_back([ps, d](double t) {
        return MapPoint{CPoint{complexification_map(t, ps), Cplx(d, 0.0)},
                        Cplx(1.0, psi_prime(t, ps)), Vec2{0.0, 1.0}};
    });
    c.pieces.push_back([ps, d](double t) {
        return MapPoint{CPoint{complexification_map(t, ps), Cplx(-d, 0.0)},
                        Cplx(1.0, psi_prime(t, ps)), Vec2{0.0, -1.0}};
    });
    const int per_piece = spec.panels / 2;
    const auto bd = panel_boundaries(-c.truncation, c.truncation, per_piece, {0.0},
                                     spec.dyadic_levels, {0.0});
    for (int piece = 0; piece < 2; ++piece)
        for (size_t i = 0; i + 1 < bd.size(); ++i)
            c.panels.push_back(make_panel(c.pieces, piece, bd[i], bd[i + 1]));
    return c;
}

Contour build_junction_line(const JunctionSpec& spec) {
    if (spec.panels < 2) throw std::invalid_argument("junction line: need at least 2 panels");
    Contour c;
    c.kind = ContourKind::junction_line;
    c.psi = spec.psi;
    c.truncation = truncation_bound(spec.psi, spec.k, spec.trunc_eps);
    const PsiParams ps = spec.psi;
    const double x1 = spec.x1;
    c.pieces.push_back([ps, x1](double t) {
        return MapPoint{CPoint{Cplx(x1, 0.0), complexification_map(t, ps)},
                        Cplx(1.0, psi_prime(t, ps)), Vec2{1.0, 0.0}};
    });
    const auto bd = panel_boundaries(-c.truncation, c.truncation, spec.panels, spec.breakpoints,
                                     spec.dyadic_levels, spec.breakpoints);
    for (size_t i = 0; i + 1 < bd.size(); ++i)
        c.panels.push_back(make_panel(c.pieces, 0, bd[i], bd[i + 1]));
    return c;
}

Contour build_circle(const Vec2& center, double radius, int panels) {
    if (radius <= 0) throw std::invalid_argument("circle: radius must be positive");
    if (panels < 2) throw std::invalid_argument("circle: need at least 2 panels");
    Contour c;
    c.kind = ContourKind::compact_loop;
    c.pieces.push_back([center, radius](double t) {
        const double ct = std::cos(t), st = std::sin(t);
        return MapPoint{CPoint{Cplx(center.x1 + radius * ct, 0.0),
                               Cplx(center.x2 + radius * st, 0.0)},
                        Cplx(radius, 0.0), Vec2{ct, st}};
    });
    for (int i = 0; i < panels; ++i)
        c.panels.push_back(
            make_panel(c.pieces, 0, 2.0 * kPi * i / panels, 2.0 * kPi * (i + 1) / panels));
    return c;
}

Contour build_line_segment(const Vec2& a, const Vec2& b, int panels) {
    const double dx = b.x1 - a.x1, dy = b.x2 - a.x2;
    const double len = std::hypot(dx, dy);
    if (len <= 0) throw std::invalid_argument("line segment: degenerate");
    if (panels < 1) throw std::invalid_argument("line segment: need at least 1 panel");
    Contour c;
    c.kind = ContourKind::open_arc;
    const Vec2 nrm{-dy / len, dx / len};
    const Vec2 a0 = a;
    const Vec2 dir{dx / len, dy / len};
    c.pieces.push_back([a0, dir, nrm](double t) {
        return MapPoint{CPoint{Cplx(a0.x1 + dir.x1 * t, 0.0), Cplx(a0.x2 + dir.x2 * t, 0.0)},
                        Cplx(1.0, 0.0), nrm};
    });
    for (int i = 0; i < panels; ++i)
        c.panels.push_back(make_panel(c.pieces, 0, len * i / panels, len * (i + 1) / panels));
    return c;
}

Contour build_open_arc(const Vec2& a, const Vec2& b, int panels) {
    const double dx = b.x1 - a.x1, dy = b.x2 - a.x2;
    const double len = std::hypot(dx, dy);
    if (len <= 0) throw std::invalid_argument("open arc: degenerate segment");
    if (panels < 1) throw std::invalid_argument("open arc: need at least 1 panel");
    Contour c;
    c.kind = ContourKind::open_arc;
    const Vec2 mid{0.5 * (a.x1 + b.x1), 0.5 * (a.x2 + b.x2)};
    const Vec2 hv{0.5 * dx, 0.5 * dy};
    const double hlen = 0.5 * len;
    const Vec2 nrm{-dy / len, dx / len};
    c.pieces.push_back([mid, hv, hlen, nrm](double u) {
        const double cu = std::cos(u);
        return MapPoint{CPoint{Cplx(mid.x1 + hv.x1 * cu, 0.0), Cplx(mid.x2 + hv.x2 * cu, 0.0)},
                        Cplx(hlen, 0.0), nrm};
    });
    for (int i = 0; i < panels; ++i)
        c.panels.push_back(make_panel(c.pieces, 0, kPi * i / panels, kPi * (i + 1) / panels));
    return c;
}

}  // namespace openwg::geometry
