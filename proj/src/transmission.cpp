#include "openwg/transmission.hpp"

#include "openwg/parallel.hpp"

namespace openwg::transmission {

using kernels::DifferenceKernel;
using kernels::GradKernel;
using kernels::HelmholtzKernel;
using kernels::LayerKind;

TransmissionProblem make_guide_problem(double k, double k1, geometry::Contour contour) {
    if (k <= 0 || k1 <= 0) throw std::invalid_argument("wavenumbers must be positive");
    TransmissionProblem p;
    const double d = contour.d;
    p.contour = std::move(contour);
    p.k_ext = k;
    p.k_int = k1;
    p.local_k = [k, k1, d](const CPoint& x) { return std::abs(x.x2.real()) < d ? k1 : k; };
    return p;
}

TransmissionProblem make_loop_problem(double k, double k1, geometry::Contour contour,
                                      const Vec2& center, double radius) {
    TransmissionProblem p;
    p.contour = std::move(contour);
    p.k_ext = k;
    p.k_int = k1;
    p.local_k = [k, k1, center, radius](const CPoint& x) {
        const double dx = x.x1.real() - center.x1, dy = x.x2.real() - center.x2;
        return std::hypot(dx, dy) < radius ? k1 : k;
    };
    return p;
}

TransmissionSystem::TransmissionSystem(TransmissionProblem p, Eigen::MatrixXcd m)
    : prob_(std::move(p)), n_(static_cast<int>(m.rows()) / 2), mat_(std::move(m)) {
    lu_ = std::make_unique<Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXcd>>>(mat_);
    const double rc = lu_->rcond();
    cond_ = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (!(cond_ < 1e15))
        throw NumericalError("transmission system numerically singular, cond ~ " +
                             std::to_string(cond_));
}

TransmissionSystem TransmissionSystem::assemble(TransmissionProblem prob,
                                                const PanelQuadOptions& opt) {
    const auto& c = prob.contour;
    const int n = c.num_nodes();
    const auto targets = kernels::targets_from_contour(c);
    const double k = prob.k_ext, k1 = prob.k_int;

    Eigen::MatrixXcd M(2 * n, 2 * n);
    const DifferenceKernel Kd(LayerKind::double_layer, k, k1);
    const DifferenceKernel Ks(LayerKind::single, k, k1);
    const DifferenceKernel Kdp(LayerKind::double_prime, k, k1);
    const DifferenceKernel Ksp(LayerKind::single_prime, k, k1);
    M.topLeftCorner(n, n) = kernels::assemble_matrix(Kd, c, targets, opt);
    M.topRightCorner(n, n) = kernels::assemble_matrix(Ks, c, targets, opt);
    M.bottomLeftCorner(n, n) = -kernels::assemble_matrix(Kdp, c, targets, opt);
    M.bottomRightCorner(n, n) = -kernels::assemble_matrix(Ksp, c, targets, opt);
    M += Eigen::MatrixXcd::Identity(2 * n, 2 * n);
    return TransmissionSystem(std::move(prob), std::move(M));
}

DensityPair TransmissionSystem::solve(const Eigen::VectorXcd& jump_value,
                                      const Eigen::VectorXcd& jump_normal_deriv) const {
    if (jump_value.size() != n_ || jump_normal_deriv.size() != n_)
        throw std::invalid_argument("solve: data must be sampled at all nodes");
    Eigen::VectorXcd rhs(2 * n_);
    rhs.head(n_) = -jump_value;
    rhs.tail(n_) = jump_normal_deriv;
    Eigen::VectorXcd x = lu_->solve(rhs);
    const double rn = rhs.norm();
    residual_ = rn > 0 ? (mat_ * x - rhs).norm() / rn : 0.0;
    DensityPair d;
    d.mu = x.head(n_);
    d.rho = x.tail(n_);
    return d;
}

Eigen::MatrixXcd TransmissionSystem::solve_raw(const Eigen::MatrixXcd& rhs) const {
    if (rhs.rows() != 2 * n_) throw std::invalid_argument("solve_raw: bad row count");
    return lu_->solve(rhs);
}

namespace {

std::vector<std::vector<int>> group_by_wavenumber(const TransmissionProblem& prob,
                                                  std::span<const CPoint> targets,
                                                  std::vector<double>& ks) {
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < (int)targets.size(); ++i) {
        const double k = prob.local_k(targets[i]);
        int g = -1;
        for (int j = 0; j < (int)ks.size(); ++j)
            if (ks[j] == k) g = j;
        if (g < 0) {
            ks.push_back(k);
            groups.emplace_back();
            g = (int)ks.size() - 1;
        }
        groups[g].push_back(i);
    }
    return groups;
}

}  // namespace

FieldEvalOp field_eval_op(const TransmissionProblem& prob, std::span<const CPoint> targets,
                          int deriv, const PanelQuadOptions& opt) {
    const auto& c = prob.contour;
    const int n = c.num_nodes();
    FieldEvalOp op;
    op.Amu.setZero(targets.size(), n);
    op.Arho.setZero(targets.size(), n);
    std::vector<double> ks;
    const auto groups = group_by_wavenumber(prob, targets, ks);
    for (size_t g = 0; g < groups.size(); ++g) {
        std::vector<CPoint> pts;
        for (int idx : groups[g]) pts.push_back(targets[idx]);
        const auto tset = kernels::targets_from_points(pts);
        Eigen::MatrixXcd Am, Ar;
        if (deriv == 0) {
            Am = kernels::assemble_matrix(HelmholtzKernel(LayerKind::double_layer, ks[g]), c, tset,
                                          opt);
            Ar = kernels::assemble_matrix(HelmholtzKernel(LayerKind::single, ks[g]), c, tset, opt);
        } else {
            Am = kernels::assemble_matrix(GradKernel(LayerKind::double_layer, deriv - 1, ks[g]), c,
                                          tset, opt);
            Ar = kernels::assemble_matrix(GradKernel(LayerKind::single, deriv - 1, ks[g]), c, tset,
                                          opt);
        }
        for (size_t r = 0; r < groups[g].size(); ++r) {
            op.Amu.row(groups[g][r]) = Am.row(r);
            op.Arho.row(groups[g][r]) = Ar.row(r);
        }
    }
    return op;
}

std::vector<Cplx> evaluate_field(const TransmissionProblem& prob, const DensityPair& dens,
                                 std::span<const CPoint> targets, const PanelQuadOptions& opt) {
    const auto op = field_eval_op(prob, targets, 0, opt);
    Eigen::VectorXcd v = op.Amu * dens.mu + op.Arho * dens.rho;
    return {v.data(), v.data() + v.size()};
}

std::vector<std::array<Cplx, 2>> evaluate_field_gradient(const TransmissionProblem& prob,
                                                         const DensityPair& dens,
                                                         std::span<const CPoint> targets,
                                                         const PanelQuadOptions& opt) {
    const auto op1 = field_eval_op(prob, targets, 1, opt);
    const auto op2 = field_eval_op(prob, targets, 2, opt);
    Eigen::VectorXcd g1 = op1.Amu * dens.mu + op1.Arho * dens.rho;
    Eigen::VectorXcd g2 = op2.Amu * dens.mu + op2.Arho * dens.rho;
    std::vector<std::array<Cplx, 2>> out(targets.size());
    for (size_t i = 0; i < targets.size(); ++i) out[i] = {g1(i), g2(i)};
    return out;
}

WaveguideGreens::WaveguideGreens(double k, double k1, double d, int panels,
                                 geometry::PsiParams psi, const PanelQuadOptions& opt,
                                 int dyadic_levels)
    : k_(k), k1_(k1), d_(d), opt_(opt) {
    geometry::GuideEdgesSpec spec;
    spec.d = d;
    spec.k = k;
    spec.psi = psi;
    spec.panels = panels;
    spec.dyadic_levels = dyadic_levels;
    auto contour = geometry::build_waveguide_edges(spec);
    auto prob = make_guide_problem(k, k1, std::move(contour));
    sys_ = std::make_unique<TransmissionSystem>(
        TransmissionSystem::assemble(std::move(prob), opt));
}

Eigen::VectorXcd WaveguideGreens::source_rhs(const CPoint& y, bool dy1) const {
    return source_rhs_matrix(std::span<const CPoint>(&y, 1), dy1).col(0);
}

Eigen::MatrixXcd WaveguideGreens::source_rhs_matrix(std::span<const CPoint> ys, bool dy1) const {
    const auto& c = problem().contour;
    const int n = c.num_nodes();
    Eigen::MatrixXcd rhs(2 * n, ys.size());
    const Vec2 e1{1.0, 0.0};
    parallel_for((int)ys.size(), [&](int j) {
        for (int i = 0; i < n; ++i) {
            const CPoint& xi = c.node(i);
            const Vec2& ni = c.normal(i);
            Cplx f, g;
            if (!dy1) {
                f = kernels::helm_value(LayerKind::single, k_, xi, ni, ys[j], e1) -
                    kernels::helm_value(LayerKind::single, k1_, xi, ni, ys[j], e1);
                g = kernels::helm_value(LayerKind::single_prime, k_, xi, ni, ys[j], e1) -
                    kernels::helm_value(LayerKind::single_prime, k1_, xi, ni, ys[j], e1);
            } else {
                f = kernels::helm_value(LayerKind::double_layer, k_, xi, ni, ys[j], e1) -
                    kernels::helm_value(LayerKind::double_layer, k1_, xi, ni, ys[j], e1);
                g = kernels::helm_value(LayerKind::double_prime, k_, xi, ni, ys[j], e1) -
                    kernels::helm_value(LayerKind::double_prime, k1_, xi, ni, ys[j], e1);
            }
            rhs(i, j) = -f;
            rhs(n + i, j) = g;
        }
    });
    return rhs;
}

Cplx WaveguideGreens::free_part(const CPoint& x, const CPoint& y, Deriv sel) const {
    const double kl = local_k(x);
    const Vec2 e1{1.0, 0.0};
    switch (sel) {
        case Deriv::none:
            return kernels::helm_value(LayerKind::single, kl, x, e1, y, e1);
        case Deriv::dx1:
            return kernels::helm_grad_x(LayerKind::single, kl, x, y, e1)[0];
        case Deriv::dy1:
            return kernels::helm_value(LayerKind::double_layer, kl, x, e1, y, e1);
        case Deriv::dx1dy1:
            return kernels::helm_value(LayerKind::double_prime, kl, x, e1, y, e1);
    }
    throw std::logic_error("free_part: bad selector");
}

Cplx WaveguideGreens::out_part(const CPoint& x, const CPoint& y, Deriv sel) const {
    const CPoint xs[1] = {x};
    const CPoint ys[1] = {y};
    return out_matrix(xs, ys, sel)(0, 0);
}

Cplx WaveguideGreens::eval(const CPoint& x, const CPoint& y, Deriv sel) const {
    return free_part(x, y, sel) + out_part(x, y, sel);
}

Eigen::MatrixXcd WaveguideGreens::out_matrix(std::span<const CPoint> targets,
                                             std::span<const CPoint> sources, Deriv sel) const {
    const bool dy = (sel == Deriv::dy1 || sel == Deriv::dx1dy1);
    const bool dx = (sel == Deriv::dx1 || sel == Deriv::dx1dy1);
    const int n = sys_->num_nodes();
    Eigen::MatrixXcd dens = sys_->solve_raw(source_rhs_matrix(sources, dy));
    const auto op = field_eval_op(problem(), targets, dx ? 1 : 0, opt_);
    return op.Amu * dens.topRows(n) + op.Arho * dens.bottomRows(n);
}

}  // namespace openwg::transmission
