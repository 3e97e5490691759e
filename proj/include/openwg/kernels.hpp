#pragma once

#include <Eigen/Dense>
#include <span>

#include "openwg/geometry.hpp"
#include "openwg/quadrature.hpp"
#include "openwg/types.hpp"

namespace openwg::kernels {

using quadrature::KernelBase;
using quadrature::LogSplit;
using quadrature::PanelQuadOptions;

enum class LayerKind { single, double_layer, single_prime, double_prime };

struct KernelSelector {
    LayerKind kind = LayerKind::single;
    double wavenumber = 1.0;
};

/// Analytically continued Helmholtz kernel values, prefactor i/4.
/// single:        G = (i/4) H0(kr)
/// double_layer:  dG/dn_y
/// single_prime:  dG/dn_x
/// double_prime:  d^2 G / dn_x dn_y
Cplx helm_value(LayerKind kind, double k, const CPoint& x, const Vec2& nx, const CPoint& y,
                const Vec2& ny);

/// Coefficient of Log r in the kernel (entire function of r^2 up to the
/// directional factors); kernel = smooth + logcoef * Log r.
Cplx helm_logcoef(LayerKind kind, double k, const CPoint& x, const Vec2& nx, const CPoint& y,
                  const Vec2& ny);

/// d/dx_j of the single (kind=single) or double (kind=double_layer)
/// kernel; for field gradients.
std::array<Cplx, 2> helm_grad_x(LayerKind kind, double k, const CPoint& x, const CPoint& y,
                                const Vec2& ny);

/// Spec-level operation.
Cplx kernel_eval(const KernelSelector& sel, const CPoint& x, const Vec2& nx, const CPoint& y,
                 const Vec2& ny);

class HelmholtzKernel final : public KernelBase {
  public:
    HelmholtzKernel(LayerKind kind, double k) : kind_(kind), k_(k) {}
    Cplx eval(const CPoint& x, const Vec2& nx, const CPoint& y, const Vec2& ny) const override;
    LogSplit log_split(const CPoint& x, const Vec2& nx, const CPoint& y,
                       const Vec2& ny) const override;

  private:
    LayerKind kind_;
    double k_;
};

/// G_{ka} - G_{kb} for each layer kind; the leading log singularities
/// cancel so the remaining log coefficient is O(r^2) (value/prime
/// kinds) or O(1) (double_prime).
class DifferenceKernel final : public KernelBase {
  public:
    DifferenceKernel(LayerKind kind, double ka, double kb) : kind_(kind), ka_(ka), kb_(kb) {}
    Cplx eval(const CPoint& x, const Vec2& nx, const CPoint& y, const Vec2& ny) const override;
    LogSplit log_split(const CPoint& x, const Vec2& nx, const CPoint& y,
                       const Vec2& ny) const override;

  private:
    LayerKind kind_;
    double ka_, kb_;
};

/// Gradient component d/dx_j of single / double kernels as a quadrature
/// kernel (for evaluation matrices of field gradients).
class GradKernel final : public KernelBase {
  public:
    GradKernel(LayerKind base, int component, double k) : base_(base), comp_(component), k_(k) {}
    Cplx eval(const CPoint& x, const Vec2& nx, const CPoint& y, const Vec2& ny) const override;

  private:
    LayerKind base_;
    int comp_;
    double k_;
};

/// Targets for matrix assembly.  node_index[i] >= 0 identifies target i
/// with that contour node (enables the self regime).
struct TargetSet {
    std::vector<CPoint> points;
    std::vector<Vec2> normals;     // may be empty when the kernel ignores nx
    std::vector<int> node_index;   // may be empty (all -1)
};

TargetSet targets_from_contour(const geometry::Contour& c);
TargetSet targets_from_points(std::span<const CPoint> pts);

/// Dense matrix A with (A * density)_i = potential of the density at
/// target i, regime-aware quadrature per (target, panel).
Eigen::MatrixXcd assemble_matrix(const KernelBase& K, const geometry::Contour& contour,
                                 const TargetSet& targets, const PanelQuadOptions& opt = {});

/// Spec-level operation: potential values at targets, deterministic
/// panel-ascending summation.
std::vector<Cplx> layer_potential(const KernelSelector& sel, const geometry::Contour& contour,
                                  std::span<const Cplx> density, std::span<const CPoint> targets,
                                  const PanelQuadOptions& opt = {});

}  // namespace openwg::kernels
