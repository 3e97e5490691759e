#include "openwg/quadrature.hpp"

#include <cmath>
#include <mutex>

namespace openwg::quadrature {

namespace {

using LD = long double;

void legendre_eval(int n, LD x, LD& p, LD& dp) {
    LD p0 = 1.0L, p1 = x;
    if (n == 0) {
        p = p0;
        dp = 0.0L;
        return;
    }
    for (int j = 2; j <= n; ++j) {
        const LD p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0L);
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
    if (n < 2 || n > 64) throw std::invalid_argument("gauss_legendre: order out of range [2,64]");
    QuadratureRule r;
    r.order = n;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        LD x = std::cos(kPi * (i + 0.75L) / (n + 0.5L));
        LD p, dp;
        for (int it = 0; it < 100; ++it) {
            legendre_eval(n, x, p, dp);
            const LD dx = -p / dp;
            x += dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        legendre_eval(n, x, p, dp);
        const LD w = 2.0L / ((1.0L - x * x) * dp * dp);
        r.nodes[i] = (double)-x;  // ascending order
        r.nodes[n - 1 - i] = (double)x;
        r.weights[i] = (double)w;
        r.weights[n - 1 - i] = (double)w;
    }
    if (n % 2 == 1) {
        r.nodes[n / 2] = 0.0;
        LD p, dp;
        legendre_eval(n, 0.0L, p, dp);
        r.weights[n / 2] = (double)(2.0L / (dp * dp));
    }
    return r;
}

namespace {

struct PanelTables {
    std::array<double, 16> x16, w16, bary;
    std::array<double, 32> x32, w32;
    // P_n(x32_m), n = 0..31
    double P[32][32];
    // cardinal l_j(x32_m)
    double card[16][32];
    // log moments per GL16 node position
    std::array<double, kLogMomN> logmom[16];
};

std::array<double, kLogMomN> compute_log_moments(double t0) {
    std::array<double, kLogMomN> mom{};
    const QuadratureRule g = gauss_legendre(16);
    // Integrate P_n(s) log|s-t0| over [t0, edge] with dyadic grading
    // toward the singular endpoint.
    auto side = [&](double edge) {
        const double w = std::abs(edge - t0);
        if (w < 1e-300) return;
        const double sgn = edge > t0 ? 1.0 : -1.0;
        double hi = w;
        for (int lvl = 0; lvl < 240; ++lvl) {
            const double lo = (lvl == 239) ? 0.0 : hi * 0.5;
            for (int m = 0; m < 16; ++m) {
                const double u = lo + (hi - lo) * 0.5 * (g.nodes[m] + 1.0);
                if (u <= 0.0) continue;
                const double s = t0 + sgn * u;
                const double wq = g.weights[m] * 0.5 * (hi - lo) * std::log(u);
                LD p0 = 1.0L, p1 = s;
                mom[0] += wq;
                mom[1] += wq * s;
                for (int n = 2; n < kLogMomN; ++n) {
                    const LD p2 = ((2 * n - 1) * (LD)s * p1 - (n - 1) * p0) / n;
                    p0 = p1;
                    p1 = p2;
                    mom[n] += wq * (double)p2;
                }
            }
            hi = lo;
            if (hi < 1e-290) break;
        }
    };
    side(1.0);
    side(-1.0);
    return mom;
}

const PanelTables& tables() {
    static PanelTables t = [] {
        PanelTables tb;
        const QuadratureRule g16 = gauss_legendre(16);
        const QuadratureRule g32 = gauss_legendre(32);
        for (int i = 0; i < 16; ++i) {
            tb.x16[i] = g16.nodes[i];
            tb.w16[i] = g16.weights[i];
        }
        for (int i = 0; i < 32; ++i) {
            tb.x32[i] = g32.nodes[i];
            tb.w32[i] = g32.weights[i];
        }
        for (int j = 0; j < 16; ++j) {
            LD prod = 1.0L;
            for (int m = 0; m < 16; ++m)
                if (m != j) prod *= (LD)(tb.x16[j] - tb.x16[m]);
            tb.bary[j] = (double)(1.0L / prod);
        }
        for (int m = 0; m < 32; ++m) {
            LD p0 = 1.0L, p1 = tb.x32[m];
            tb.P[0][m] = 1.0;
            tb.P[1][m] = tb.x32[m];
            for (int n = 2; n < 32; ++n) {
                const LD p2 = ((2 * n - 1) * (LD)tb.x32[m] * p1 - (n - 1) * p0) / n;
                p0 = p1;
                p1 = p2;
                tb.P[n][m] = (double)p2;
            }
            std::array<double, 16> c;
            cardinal_values(tb.x32[m], c);
            for (int j = 0; j < 16; ++j) tb.card[j][m] = c[j];
        }
        for (int j = 0; j < 16; ++j) tb.logmom[j] = compute_log_moments(tb.x16[j]);
        return tb;
    }();
    return t;
}

}  // namespace

const std::array<double, kPanelOrder>& panel_gl_nodes() {
    static std::array<double, 16> x = [] {
        auto g = gauss_legendre(16);
        std::array<double, 16> a;
        std::copy(g.nodes.begin(), g.nodes.end(), a.begin());
        return a;
    }();
    return x;
}

const std::array<double, kPanelOrder>& panel_gl_weights() {
    static std::array<double, 16> w = [] {
        auto g = gauss_legendre(16);
        std::array<double, 16> a;
        std::copy(g.weights.begin(), g.weights.end(), a.begin());
        return a;
    }();
    return w;
}

void cardinal_values(double s, std::array<double, kPanelOrder>& out) {
    const auto& x = panel_gl_nodes();
    // Barycentric weights (panel-local static copy avoids tables() recursion).
    static std::array<double, 16> lam = [] {
        const auto& xs = panel_gl_nodes();
        std::array<double, 16> l;
        for (int j = 0; j < 16; ++j) {
            LD prod = 1.0L;
            for (int m = 0; m < 16; ++m)
                if (m != j) prod *= (LD)(xs[j] - xs[m]);
            l[j] = (double)(1.0L / prod);
        }
        return l;
    }();
    for (int j = 0; j < 16; ++j) {
        if (std::abs(s - x[j]) < 1e-14) {
            out.fill(0.0);
            out[j] = 1.0;
            return;
        }
    }
    double node_prod = 1.0;
    for (int m = 0; m < 16; ++m) node_prod *= (s - x[m]);
    for (int j = 0; j < 16; ++j) out[j] = node_prod * lam[j] / (s - x[j]);
}

std::array<double, kLogMomN> legendre_log_moments(double t0) { return compute_log_moments(t0); }

LogSplit KernelBase::log_split(const CPoint&, const Vec2&, const CPoint&, const Vec2&) const {
    throw NumericalError("kernel does not provide a log split (self regime unsupported)");
}

Regime classify_regime(const CPoint& target, const geometry::Panel& panel) {
    double mind = 1e300;
    for (int j = 0; j < 16; ++j) mind = std::min(mind, std::abs(cdist(target, panel.nodes[j])));
    return mind > panel.length ? Regime::far : Regime::near;
}

namespace {

using Row = std::array<Cplx, 16>;

Row& operator+=(Row& a, const Row& b) {
    for (int j = 0; j < 16; ++j) a[j] += b[j];
    return a;
}

double maxdiff(const Row& a, const Row& b) {
    double m = 0.0;
    for (int j = 0; j < 16; ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

// One GL16 evaluation of integrand(s) * cardinal_j(s) over [a,b] in
// panel coordinates.
template <class F>
Row gl16_row(F&& f, double a, double b) {
    const auto& t = tables();
    Row r{};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int m = 0; m < 16; ++m) {
        const double s = mid + half * t.x16[m];
        const Cplx v = f(s) * (t.w16[m] * half);
        std::array<double, 16> c;
        cardinal_values(s, c);
        for (int j = 0; j < 16; ++j) r[j] += v * c[j];
    }
    return r;
}

template <class F>
Row adaptive_rows(F&& f, double a, double b, const Row& estimate, double tol, int depth,
                  int max_depth) {
    const double mid = 0.5 * (a + b);
    Row left = gl16_row(f, a, mid);
    Row right = gl16_row(f, mid, b);
    Row sum = left;
    sum += right;
    const double thresh = tol * (0.02 + 0.25 * (b - a));
    if (maxdiff(sum, estimate) <= thresh || (b - a) < 1e-14) return sum;
    if (depth >= max_depth) {
        throw NumericalError("adaptive panel integration did not converge at depth " +
                             std::to_string(max_depth) + "; achieved ~" +
                             std::to_string(maxdiff(sum, estimate)));
    }
    Row rl = adaptive_rows(f, a, mid, left, tol, depth + 1, max_depth);
    Row rr = adaptive_rows(f, mid, b, right, tol, depth + 1, max_depth);
    rl += rr;
    return rl;
}

}  // namespace

std::array<Cplx, kPanelOrder> panel_row(const KernelBase& K, const geometry::Contour& contour,
                                        int panel_index, const CPoint& target,
                                        const Vec2& target_normal, Regime regime, int self_node,
                                        const PanelQuadOptions& opt) {
    const geometry::Panel& pan = contour.panels[panel_index];
    const auto& t = tables();
    Row row{};

    if (regime == Regime::far) {
        for (int j = 0; j < 16; ++j)
            row[j] = K.eval(target, target_normal, pan.nodes[j], pan.normals[j]) * pan.weights[j];
        return row;
    }

    const double pm = 0.5 * (pan.a + pan.b), ph = 0.5 * (pan.b - pan.a);
    auto point_at = [&](double s) { return contour.map(pan.piece, pm + ph * s); };

    if (regime == Regime::near) {
        auto f = [&](double s) {
            const geometry::MapPoint mp = point_at(s);
            return K.eval(target, target_normal, mp.p, mp.normal) * mp.jac * ph;
        };
        Row est = gl16_row(f, -1.0, 1.0);
        return adaptive_rows(f, -1.0, 1.0, est, opt.tol, 0, opt.max_depth);
    }

    // Self regime: product integration of the log part against
    // precomputed Legendre log moments plus adaptive treatment of the
    // remaining analytic part.
    if (self_node < 0 || self_node >= 16)
        throw std::invalid_argument("panel_row: self regime needs the target node index");
    const double t0 = t.x16[self_node];

    auto smooth_part = [&](double s) {
        const geometry::MapPoint mp = point_at(s);
        const LogSplit ls = K.log_split(target, target_normal, mp.p, mp.normal);
        const Cplx r2 = dist2(target, mp.p);
        const Cplx phi = 0.5 * std::log(r2) - std::log(std::abs(s - t0));
        return (ls.smooth + ls.logcoef * phi) * mp.jac * ph;
    };
    {
        Row estl = gl16_row(smooth_part, -1.0, t0);
        row += adaptive_rows(smooth_part, -1.0, t0, estl, opt.tol, 0, opt.max_depth);
        Row estr = gl16_row(smooth_part, t0, 1.0);
        row += adaptive_rows(smooth_part, t0, 1.0, estr, opt.tol, 0, opt.max_depth);
    }

    // q(s) = logcoef(s) * jac(s) * ph, expanded against Legendre.
    std::array<Cplx, 32> q;
    for (int m = 0; m < 32; ++m) {
        const geometry::MapPoint mp = point_at(t.x32[m]);
        q[m] = K.log_split(target, target_normal, mp.p, mp.normal).logcoef * mp.jac * ph;
    }
    const auto& mom = t.logmom[self_node];
    // g(s_m) = sum_n (2n+1)/2 P_n(s_m) mom_n, the discrete image of the
    // log factor; then row_j += sum_m w_m q_m card_j(s_m) g(s_m).
    std::array<double, 32> g{};
    for (int m = 0; m < 32; ++m)
        for (int n = 0; n < kLogMomN; ++n) g[m] += 0.5 * (2.0 * n + 1.0) * t.P[n][m] * mom[n];
    for (int j = 0; j < 16; ++j) {
        Cplx acc(0.0, 0.0);
        for (int m = 0; m < 32; ++m) acc += t.w32[m] * q[m] * t.card[j][m] * g[m];
        row[j] += acc;
    }
    return row;
}

Cplx integrate_panel(const KernelBase& K, std::span<const Cplx> density,
                     const geometry::Contour& contour, int panel_index, const CPoint& target,
                     const Vec2& target_normal, Regime regime, int self_node,
                     const PanelQuadOptions& opt) {
    if (density.size() != 16) throw std::invalid_argument("integrate_panel: need 16 density samples");
    const auto row = panel_row(K, contour, panel_index, target, target_normal, regime, self_node, opt);
    Cplx acc(0.0, 0.0);
    for (int j = 0; j < 16; ++j) acc += row[j] * density[j];
    return acc;
}

}  // namespace openwg::quadrature
