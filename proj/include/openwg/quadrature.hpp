#pragma once

#include <span>

#include "openwg/geometry.hpp"
#include "openwg/types.hpp"

namespace openwg::quadrature {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
};

/// Gauss-Legendre rule on [-1,1]; 2 <= n <= 64.
QuadratureRule gauss_legendre(int n);

inline constexpr int kPanelOrder = 16;

const std::array<double, kPanelOrder>& panel_gl_nodes();
const std::array<double, kPanelOrder>& panel_gl_weights();

/// Values of the 16 Lagrange cardinal polynomials (through the GL16
/// nodes) at s, by the barycentric formula.
void cardinal_values(double s, std::array<double, kPanelOrder>& out);

/// Kernel through the quadrature interface.  Log-split is required for
/// self-regime integration: K = smooth + logcoef * Log r(x;y).
struct LogSplit {
    Cplx smooth;
    Cplx logcoef;
};

struct KernelBase {
    virtual ~KernelBase() = default;
    virtual Cplx eval(const CPoint& x, const Vec2& nx, const CPoint& y, const Vec2& ny) const = 0;
    virtual LogSplit log_split(const CPoint& x, const Vec2& nx, const CPoint& y,
                               const Vec2& ny) const;
};

enum class Regime { far, near, self };

/// far if the target is more than one panel length from every node.
Regime classify_regime(const CPoint& target, const geometry::Panel& panel);

struct PanelQuadOptions {
    double tol = 1e-12;
    int max_depth = 40;
};

/// Coefficient row c_j with  integral over the panel of
/// K(target, y(s)) * l_j(s) * jac(s) ds  =  sum_j c_j * density_j.
/// self_node in [0,16) identifies the target's own node for the self
/// regime; pass -1 otherwise.
std::array<Cplx, kPanelOrder> panel_row(const KernelBase& K, const geometry::Contour& contour,
                                        int panel_index, const CPoint& target,
                                        const Vec2& target_normal, Regime regime, int self_node,
                                        const PanelQuadOptions& opt = {});

/// Spec-level operation: integral of kernel x density interpolant over
/// one panel for a single target.
Cplx integrate_panel(const KernelBase& K, std::span<const Cplx> density,
                     const geometry::Contour& contour, int panel_index, const CPoint& target,
                     const Vec2& target_normal, Regime regime, int self_node = -1,
                     const PanelQuadOptions& opt = {});

/// Legendre log moments: m_n = integral over [-1,1] of P_n(s) log|s-t0| ds.
inline constexpr int kLogMomN = 32;
std::array<double, kLogMomN> legendre_log_moments(double t0);

}  // namespace openwg::quadrature
