#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <span>

#include "openwg/geometry.hpp"
#include "openwg/kernels.hpp"

namespace openwg::transmission {

using kernels::PanelQuadOptions;

/// Derivative selectors for the waveguide Green's function.
enum class Deriv { none, dx1, dy1, dx1dy1 };

struct TransmissionProblem {
    geometry::Contour contour;
    double k_ext = 1.0;
    double k_int = 2.0;
    /// point -> local wavenumber
    std::function<double(const CPoint&)> local_k;
};

/// Bi-infinite guide of half-width d: interior |Re x2| < d.
TransmissionProblem make_guide_problem(double k, double k1, geometry::Contour contour);
/// Compact interface: interior = inside the closed contour (circle).
TransmissionProblem make_loop_problem(double k, double k1, geometry::Contour contour,
                                      const Vec2& center, double radius);

struct DensityPair {
    Eigen::VectorXcd mu;   // double-layer density
    Eigen::VectorXcd rho;  // single-layer density
};

class TransmissionSystem {
  public:
    static TransmissionSystem assemble(TransmissionProblem prob,
                                       const PanelQuadOptions& opt = {});

    /// Data rows follow the transmission conditions: jump of the
    /// incoming value and of its normal derivative at the nodes.
    DensityPair solve(const Eigen::VectorXcd& jump_value,
                      const Eigen::VectorXcd& jump_normal_deriv) const;

    /// Stacked right-hand sides (2n x m), rows ordered [value; deriv]
    /// with the solver's internal signs already applied.
    Eigen::MatrixXcd solve_raw(const Eigen::MatrixXcd& rhs) const;

    const TransmissionProblem& problem() const { return prob_; }
    int num_nodes() const { return n_; }
    double condition_estimate() const { return cond_; }
    double last_residual() const { return residual_; }

  private:
    TransmissionSystem(TransmissionProblem p, Eigen::MatrixXcd m);
    TransmissionProblem prob_;
    int n_ = 0;
    Eigen::MatrixXcd mat_;
    std::unique_ptr<Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXcd>>> lu_;
    double cond_ = 0.0;
    mutable double residual_ = 0.0;
};

/// Evaluation operator at fixed targets: v = Amu * mu + Arho * rho.
/// deriv: 0 value, 1 d/dx1, 2 d/dx2.
struct FieldEvalOp {
    Eigen::MatrixXcd Amu, Arho;
};
FieldEvalOp field_eval_op(const TransmissionProblem& prob, std::span<const CPoint> targets,
                          int deriv, const PanelQuadOptions& opt = {});

std::vector<Cplx> evaluate_field(const TransmissionProblem& prob, const DensityPair& dens,
                                 std::span<const CPoint> targets,
                                 const PanelQuadOptions& opt = {});
/// Gradient rows (d/dx1, d/dx2) per target.
std::vector<std::array<Cplx, 2>> evaluate_field_gradient(const TransmissionProblem& prob,
                                                         const DensityPair& dens,
                                                         std::span<const CPoint> targets,
                                                         const PanelQuadOptions& opt = {});

/// Bi-infinite waveguide Green's function G_q = G_{k(x)} + G_q^out via
/// the transmission solve; uncompressed reference path.
class WaveguideGreens {
  public:
    WaveguideGreens(double k, double k1, double d, int panels = 72,
                    geometry::PsiParams psi = {}, const PanelQuadOptions& opt = {},
                    int dyadic_levels = 0);

    const TransmissionSystem& system() const { return *sys_; }
    const TransmissionProblem& problem() const { return sys_->problem(); }
    double k() const { return k_; }
    double k1() const { return k1_; }
    double d() const { return d_; }
    double local_k(const CPoint& x) const { return problem().local_k(x); }

    /// Right-hand side of the transmission solve for a point source at
    /// y (signs included); dy1 selects the d/dy1-differentiated data.
    Eigen::VectorXcd source_rhs(const CPoint& y, bool dy1) const;
    /// Stacked over sources.
    Eigen::MatrixXcd source_rhs_matrix(std::span<const CPoint> ys, bool dy1) const;

    /// Free-space part at the local wavenumber of x.
    Cplx free_part(const CPoint& x, const CPoint& y, Deriv sel) const;
    /// Full G_q (or derivative).
    Cplx eval(const CPoint& x, const CPoint& y, Deriv sel) const;
    /// G_q^out only.
    Cplx out_part(const CPoint& x, const CPoint& y, Deriv sel) const;
    /// Batched out-part matrix (targets x sources).
    Eigen::MatrixXcd out_matrix(std::span<const CPoint> targets, std::span<const CPoint> sources,
                                Deriv sel) const;

  private:
    double k_, k1_, d_;
    PanelQuadOptions opt_;
    std::unique_ptr<TransmissionSystem> sys_;
};

}  // namespace openwg::transmission
