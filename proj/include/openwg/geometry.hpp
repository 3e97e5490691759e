#pragma once

#include <functional>
#include <vector>

#include "openwg/types.hpp"

namespace openwg::geometry {

/// Parameters of the complexification map t -> t + i psi(t).
/// psi(t) = amplitude * [erfc(-(t-c)/width) - erfc((t+c)/width)] with
/// c = L + offset; odd, monotone non-decreasing, zero to machine
/// precision on [-L, L], saturating at +-2*amplitude.
struct PsiParams {
    double L = 10.0;
    double amplitude = 20.0;
    double width = 5.0;
    double offset = 30.0;  // c = L + offset
};

double psi(double t, const PsiParams& p);
double psi_prime(double t, const PsiParams& p);
Cplx complexification_map(double t, const PsiParams& p);  // t + i psi(t)

/// Smallest integer offset T-L such that psi(T)*k >= -log(eps).
double truncation_bound(const PsiParams& p, double k, double eps = 1e-17);

struct MapPoint {
    CPoint p;
    Cplx jac;     // d(point)/dt along the traversal coordinate
    Vec2 normal;  // unit normal (real)
};

using PieceMap = std::function<MapPoint(double)>;

struct Panel {
    int piece = 0;
    double a = 0.0, b = 0.0;
    std::array<CPoint, 16> nodes;
    std::array<Cplx, 16> weights;  // GL weight x (b-a)/2 x jacobian
    std::array<Vec2, 16> normals;
    double length = 0.0;  // sum |weights|, the panel scale
};

enum class ContourKind { waveguide_edges, junction_line, compact_loop, open_arc, dirichlet_walls };

struct Contour {
    ContourKind kind = ContourKind::compact_loop;
    std::vector<PieceMap> pieces;
    std::vector<Panel> panels;
    PsiParams psi;           // meaningful for complexified kinds
    double truncation = 0.0; // |Re parameter| bound
    double d = 0.0;          // half-width (guide edges / walls)

    int num_nodes() const { return (int)panels.size() * 16; }
    const CPoint& node(int i) const { return panels[i / 16].nodes[i % 16]; }
    const Cplx& weight(int i) const { return panels[i / 16].weights[i % 16]; }
    const Vec2& normal(int i) const { return panels[i / 16].normals[i % 16]; }
    int panel_of(int i) const { return i / 16; }
    MapPoint map(int piece, double t) const { return pieces[piece](t); }
};

struct GuideEdgesSpec {
    double d = 2.0;
    double k = 1.0;  // slowest exterior wavenumber, sets the truncation
    PsiParams psi;
    int panels = 72;         // total across both edges
    int dyadic_levels = 0;   // refinement toward t = 0 (junction crossing)
    double trunc_eps = 1e-17;
    double trunc_override = 0.0;  // > 0: truncate at |Re x1| = this value
};

struct JunctionSpec {
    double x1 = 0.0;
    double k = 1.0;
    PsiParams psi;
    int panels = 96;
    std::vector<double> breakpoints;  // inserted panel boundaries (guide edges)
    int dyadic_levels = 0;            // refinement toward each breakpoint
    double trunc_eps = 1e-17;
};

Contour build_waveguide_edges(const GuideEdgesSpec& spec);
Contour build_junction_line(const JunctionSpec& spec);
Contour build_circle(const Vec2& center, double radius, int panels);
/// Plain straight segment traversed from a to b (real, arc-length
/// measure, left normal).
Contour build_line_segment(const Vec2& a, const Vec2& b, int panels);
/// Straight segment under the cosine change of variables u in [0, pi],
/// point = mid + halfvec * cos(u); weights carry |halfvec| du.
Contour build_open_arc(const Vec2& a, const Vec2& b, int panels);

/// Dirichlet walls share the guide-edge geometry.
inline Contour build_dirichlet_walls(const GuideEdgesSpec& spec) {
    Contour c = build_waveguide_edges(spec);
    c.kind = ContourKind::dirichlet_walls;
    return c;
}

}  // namespace openwg::geometry
