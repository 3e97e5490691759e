#include "openwg/kernels.hpp"

#include <cmath>

#include "openwg/parallel.hpp"
#include "openwg/specfun.hpp"

namespace openwg::kernels {

namespace {

constexpr Cplx kI(0.0, 1.0);
constexpr double kInv2Pi = 1.0 / (2.0 * kPi);

struct PairGeom {
    Cplx r, r2;
    Cplx e1, e2;  // (x - y)/r
    Cplx ax, ay;  // <nx,e>, <ny,e>
    Cplx nxny;
};

PairGeom pair_geom(const CPoint& x, const Vec2& nx, const CPoint& y, const Vec2& ny) {
    PairGeom g;
    const Cplx d1 = x.x1 - y.x1, d2 = x.x2 - y.x2;
    g.r2 = d1 * d1 + d2 * d2;
    if (g.r2 == Cplx(0.0, 0.0)) throw NumericalError("kernel_eval: coincident points");
    if (g.r2.imag() < -1e-10 * std::abs(g.r2))
        throw NumericalError("kernel_eval: Im[r^2] < 0 violates the supported branch");
    g.r = std::sqrt(g.r2);
    g.e1 = d1 / g.r;
    g.e2 = d2 / g.r;
    g.ax = nx.x1 * g.e1 + nx.x2 * g.e2;
    g.ay = ny.x1 * g.e1 + ny.x2 * g.e2;
    g.nxny = Cplx(dot(nx, ny), 0.0);
    return g;
}

}  // namespace

Cplx helm_value(LayerKind kind, double k, const CPoint& x, const Vec2& nx, const CPoint& y,
                const Vec2& ny) {
    const PairGeom g = pair_geom(x, nx, y, ny);
    const Cplx kr = k * g.r;
    switch (kind) {
        case LayerKind::single:
            return 0.25 * kI * specfun::hankel1(0, kr);
        case LayerKind::double_layer:
            return 0.25 * kI * k * specfun::hankel1(1, kr) * g.ay;
        case LayerKind::single_prime:
            return -0.25 * kI * k * specfun::hankel1(1, kr) * g.ax;
        case LayerKind::double_prime: {
            const Cplx h0 = specfun::hankel1(0, kr);
            const Cplx h1 = specfun::hankel1(1, kr);
            return 0.25 * kI * k *
                   (k * h0 * g.ax * g.ay + (h1 / g.r) * (g.nxny - 2.0 * g.ax * g.ay));
        }
    }
    throw std::logic_error("helm_value: bad kind");
}

Cplx helm_logcoef(LayerKind kind, double k, const CPoint& x, const Vec2& nx, const CPoint& y,
                  const Vec2& ny) {
    const PairGeom g = pair_geom(x, nx, y, ny);
    const Cplx kr = k * g.r;
    switch (kind) {
        case LayerKind::single:
            return -kInv2Pi * specfun::besselj(0, kr);
        case LayerKind::double_layer:
            return -kInv2Pi * k * specfun::besselj(1, kr) * g.ay;
        case LayerKind::single_prime:
            return kInv2Pi * k * specfun::besselj(1, kr) * g.ax;
        case LayerKind::double_prime: {
            const Cplx j0 = specfun::besselj(0, kr);
            const Cplx j1 = specfun::besselj(1, kr);
            return -kInv2Pi * k *
                   (k * j0 * g.ax * g.ay + (j1 / g.r) * (g.nxny - 2.0 * g.ax * g.ay));
        }
    }
    throw std::logic_error("helm_logcoef: bad kind");
}

std::array<Cplx, 2> helm_grad_x(LayerKind kind, double k, const CPoint& x, const CPoint& y,
                                const Vec2& ny) {
    const PairGeom g = pair_geom(x, Vec2{0.0, 0.0}, y, ny);
    const Cplx kr = k * g.r;
    const Cplx h1 = specfun::hankel1(1, kr);
    if (kind == LayerKind::single) {
        const Cplx f = -0.25 * kI * k * h1;
        return {f * g.e1, f * g.e2};
    }
    if (kind == LayerKind::double_layer) {
        const Cplx h0 = specfun::hankel1(0, kr);
        const Cplx c = 0.25 * kI * k;
        const Cplx t1 = k * h0 * g.ay;
        const Cplx t2 = h1 / g.r;
        return {c * (t1 * g.e1 + t2 * (ny.x1 - 2.0 * g.ay * g.e1)),
                c * (t1 * g.e2 + t2 * (ny.x2 - 2.0 * g.ay * g.e2))};
    }
    throw std::logic_error("helm_grad_x: only single / double_layer");
}

Cplx kernel_eval(const KernelSelector& sel, const CPoint& x, const Vec2& nx, const CPoint& y,
                 const Vec2& ny) {
    if (sel.wavenumber <= 0) throw std::invalid_argument("kernel_eval: wavenumber must be positive");
    return helm_value(sel.kind, sel.wavenumber, x, nx, y, ny);
}

Cplx HelmholtzKernel::eval(const CPoint& x, const Vec2& nx, const CPoint& y,
                           const Vec2& ny) const {
    return helm_value(kind_, k_, x, nx, y, ny);
}

LogSplit HelmholtzKernel::log_split(const CPoint& x, const Vec2& nx, const CPoint& y,
                                    const Vec2& ny) const {
    const Cplx v = helm_value(kind_, k_, x, nx, y, ny);
    const Cplx b = helm_logcoef(kind_, k_, x, nx, y, ny);
    const Cplx logr = 0.5 * std::log(dist2(x, y));
    return {v - b * logr, b};
}

Cplx DifferenceKernel::eval(const CPoint& x, const Vec2& nx, const CPoint& y,
                            const Vec2& ny) const {
    return helm_value(kind_, ka_, x, nx, y, ny) - helm_value(kind_, kb_, x, nx, y, ny);
}

LogSplit DifferenceKernel::log_split(const CPoint& x, const Vec2& nx, const CPoint& y,
                                     const Vec2& ny) const {
    const Cplx v = eval(x, nx, y, ny);
    const Cplx b = helm_logcoef(kind_, ka_, x, nx, y, ny) - helm_logcoef(kind_, kb_, x, nx, y, ny);
    const Cplx logr = 0.5 * std::log(dist2(x, y));
    return {v - b * logr, b};
}

Cplx GradKernel::eval(const CPoint& x, const Vec2&, const CPoint& y, const Vec2& ny) const {
    return helm_grad_x(base_, k_, x, y, ny)[comp_];
}

TargetSet targets_from_contour(const geometry::Contour& c) {
    TargetSet t;
    const int n = c.num_nodes();
    t.points.reserve(n);
    t.normals.reserve(n);
    t.node_index.reserve(n);
    for (int i = 0; i < n; ++i) {
        t.points.push_back(c.node(i));
        t.normals.push_back(c.normal(i));
        t.node_index.push_back(i);
    }
    return t;
}

TargetSet targets_from_points(std::span<const CPoint> pts) {
    TargetSet t;
    t.points.assign(pts.begin(), pts.end());
    return t;
}

Eigen::MatrixXcd assemble_matrix(const KernelBase& K, const geometry::Contour& contour,
                                 const TargetSet& targets, const PanelQuadOptions& opt) {
    const int nt = (int)targets.points.size();
    const int np = (int)contour.panels.size();
    Eigen::MatrixXcd A(nt, 16 * np);
    const bool have_norm = !targets.normals.empty();
    const bool have_idx = !targets.node_index.empty();
    parallel_for(nt, [&](int i) {
        const CPoint& xt = targets.points[i];
        const Vec2 nx = have_norm ? targets.normals[i] : Vec2{0.0, 0.0};
        const int self_global = have_idx ? targets.node_index[i] : -1;
        for (int p = 0; p < np; ++p) {
            quadrature::Regime regime;
            int self_node = -1;
            if (self_global >= 0 && contour.panel_of(self_global) == p) {
                regime = quadrature::Regime::self;
                self_node = self_global % 16;
            } else {
                regime = quadrature::classify_regime(xt, contour.panels[p]);
            }
            const auto row = quadrature::panel_row(K, contour, p, xt, nx, regime, self_node, opt);
            for (int j = 0; j < 16; ++j) A(i, 16 * p + j) = row[j];
        }
    });
    return A;
}

std::vector<Cplx> layer_potential(const KernelSelector& sel, const geometry::Contour& contour,
                                  std::span<const Cplx> density, std::span<const CPoint> targets,
                                  const PanelQuadOptions& opt) {
    if ((int)density.size() != contour.num_nodes())
        throw std::invalid_argument("layer_potential: density must be sampled at all nodes");
    const HelmholtzKernel K(sel.kind, sel.wavenumber);
    std::vector<Cplx> out(targets.size());
    std::vector<int> failed(targets.size(), -1);
    parallel_for((int)targets.size(), [&](int i) {
        Cplx acc(0.0, 0.0);
        for (int p = 0; p < (int)contour.panels.size(); ++p) {
            const auto regime = quadrature::classify_regime(targets[i], contour.panels[p]);
            try {
                acc += quadrature::integrate_panel(
                    K, std::span<const Cplx>(density.data() + 16 * p, 16), contour, p, targets[i],
                    Vec2{0.0, 0.0}, regime, -1, opt);
            } catch (const NumericalError&) {
                failed[i] = p;
                return;
            }
        }
        out[i] = acc;
    });
    for (size_t i = 0; i < targets.size(); ++i)
        if (failed[i] >= 0)
            throw NumericalError("layer_potential: quadrature non-convergence at target " +
                                 std::to_string(i) + ", panel " + std::to_string(failed[i]));
    return out;
}

}  // namespace openwg::kernels
