#include "openwg/specfun.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace openwg::specfun {
namespace {

using LD = long double;
using CLD = std::complex<LD>;

constexpr LD kGammaE = 0.577215664901532860606512090082402431L;
constexpr LD kPiL = 3.141592653589793238462643383279502884L;

struct JYSet {
    CLD j0, y0, j1, y1;
};

// Ascending series for J0, Y0, J1, Y1.  Adequate while |z| + Im z is
// moderate; cancellation grows like e^{|z|}.
JYSet series_jy(CLD z) {
    const CLD q = z * z * (LD(-0.25));  // -(z/2)^2
    const CLD lg = std::log(z / LD(2)) + kGammaE;

    // J0 and the harmonic-weighted companion sum.
    CLD term(1.0L, 0.0L);
    CLD j0 = term;
    CLD h0sum(0.0L, 0.0L);
    LD harm = 0.0L;
    for (int m = 1; m <= 120; ++m) {
        term *= q / CLD(LD(m) * LD(m));
        harm += 1.0L / LD(m);
        j0 += term;
        h0sum += term * harm;
        if (std::abs(term) < 1e-24L * (1.0L + std::abs(j0))) break;
    }
    const CLD y0 = (LD(2) / kPiL) * (lg * j0 - h0sum);

    // J1 and its companion.
    term = CLD(1.0L, 0.0L);
    CLD j1 = term;          // sum of q^m/(m!(m+1)!)
    CLD h1sum = CLD(0.0L);  // sum with H_m + H_{m+1} weights
    LD hm = 0.0L, hm1 = 1.0L;
    h1sum += term * (hm + hm1);
    for (int m = 1; m <= 120; ++m) {
        term *= q / CLD(LD(m) * LD(m + 1));
        hm += 1.0L / LD(m);
        hm1 += 1.0L / LD(m + 1);
        j1 += term;
        h1sum += term * (hm + hm1);
        if (std::abs(term) < 1e-24L * (1.0L + std::abs(j1))) break;
    }
    const CLD zh = z * LD(0.5);
    j1 *= zh;
    const CLD y1 = (LD(2) / kPiL) * lg * j1 - (LD(2) / kPiL) / z - (zh / kPiL) * h1sum;
    return {j0, y0, j1 * CLD(1.0L), y1};
}

// Large-argument Hankel expansion, optimally truncated.
CLD asymptotic_h(int order, CLD z) {
    const LD nu4 = LD(4 * order * order);
    CLD c(1.0L, 0.0L);
    CLD s = c;
    LD last = std::abs(c);
    for (int m = 0; m < 40; ++m) {
        const LD odd = LD(2 * m + 1);
        c *= CLD(0.0L, 1.0L) * (nu4 - odd * odd) / (LD(8) * z * LD(m + 1));
        const LD mag = std::abs(c);
        if (mag >= last) break;  // past the optimal truncation point
        s += c;
        last = mag;
        if (mag < 1e-20L) break;
    }
    const CLD phase = z - LD(order) * kPiL / LD(2) - kPiL / LD(4);
    return std::sqrt(LD(2) / (kPiL * z)) * std::exp(CLD(0.0L, 1.0L) * phase) * s;
}

struct HPair {
    CLD h0, h1;
};

// Analytic continuation of the rescaled function w = H0(z) e^{-iz}
// (no exponential variation) by Taylor stepping radially inward from
// the asymptotic-valid circle along arg z = const.  Used in the wedge
// where the ascending series cancels catastrophically and |z| is below
// the asymptotic crossover.  Stepping inward is the stable direction:
// the parasitic second solution decays like e^{2 Im z} relative to
// H^(1) as Im z shrinks.
HPair taylor_wedge(CLD z) {
    const LD r0 = LD(series_asymptotic_crossover) + 0.5L;
    CLD z0 = std::polar(r0, std::arg(z));
    HPair h{asymptotic_h(0, z0), asymptotic_h(1, z0)};
    const CLD i1(0.0L, 1.0L);
    CLD w = h.h0 * std::exp(-i1 * z0);
    CLD wp = (-h.h1 - i1 * h.h0) * std::exp(-i1 * z0);

    const CLD delta = z - z0;
    const LD chord = std::abs(delta);
    const LD dist_line = std::abs(z);  // radial path; closest approach is z itself
    const int nsteps = std::max(1, (int)std::ceil(chord / (0.2L * dist_line)));
    const CLD hstep = delta / LD(nsteps);

    for (int s = 0; s < nsteps; ++s) {
        // Taylor coefficients of z w'' + (2iz + 1) w' + i w = 0 about z0.
        CLD a[44];
        a[0] = w;
        a[1] = wp;
        for (int n = 0; n + 2 < 44; ++n) {
            a[n + 2] = -(CLD(LD(n + 1)) * (LD(n + 1) + LD(2) * i1 * z0) * a[n + 1] +
                         i1 * LD(2 * n + 1) * a[n]) /
                       (z0 * LD(n + 1) * LD(n + 2));
        }
        CLD pw = CLD(1.0L);
        CLD wn = a[0], wpn = a[1];
        for (int n = 1; n < 44; ++n) {
            pw *= hstep;
            wn += a[n] * pw;
            if (n + 1 < 44) wpn += a[n + 1] * LD(n + 1) * pw;
        }
        w = wn;
        wp = wpn;
        z0 += hstep;
    }
    const CLD e = std::exp(i1 * z0);
    const CLD h0 = w * e;
    const CLD h1 = -(wp + i1 * w) * e;
    return {h0, h1};
}

HPair hankel_pair(CLD z) {
    const LD r = std::abs(z);
    if (r >= LD(series_asymptotic_crossover)) {
        return {asymptotic_h(0, z), asymptotic_h(1, z)};
    }
    if (r + z.imag() <= 15.0L) {
        const JYSet jy = series_jy(z);
        return {jy.j0 + CLD(0.0L, 1.0L) * jy.y0, jy.j1 + CLD(0.0L, 1.0L) * jy.y1};
    }
    return taylor_wedge(z);
}

}  // namespace

Cplx hankel1(int order, Cplx z, Status& status) {
    if (order != 0 && order != 1) throw std::domain_error("hankel1: order must be 0 or 1");
    if (z == Cplx(0.0, 0.0)) throw std::domain_error("hankel1: argument must be nonzero");
    const double az = std::abs(z);
    status = Status::ok;
    if (az < 1e-8 || az > 1e4) status = Status::degraded;
    if (z.imag() < -delta_branch * (1.0 + az)) status = Status::degraded;
    const HPair h = hankel_pair(CLD(z.real(), z.imag()));
    const CLD v = (order == 0) ? h.h0 : h.h1;
    return Cplx((double)v.real(), (double)v.imag());
}

Cplx hankel1(int order, Cplx z) {
    Status st;
    return hankel1(order, z, st);
}

Cplx besselj(int order, Cplx z) {
    if (order != 0 && order != 1) throw std::domain_error("besselj: order must be 0 or 1");
    const CLD zl(z.real(), z.imag());
    const CLD q = zl * zl * (LD(-0.25));
    CLD term(1.0L, 0.0L);
    CLD sum = term;
    if (order == 0) {
        for (int m = 1; m <= 80; ++m) {
            term *= q / CLD(LD(m) * LD(m));
            sum += term;
            if (std::abs(term) < 1e-22L * (1.0L + std::abs(sum))) break;
        }
    } else {
        for (int m = 1; m <= 80; ++m) {
            term *= q / CLD(LD(m) * LD(m + 1));
            sum += term;
            if (std::abs(term) < 1e-22L * (1.0L + std::abs(sum))) break;
        }
        sum *= zl * LD(0.5);
    }
    return Cplx((double)sum.real(), (double)sum.imag());
}

}  // namespace openwg::specfun
