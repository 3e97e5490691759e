#pragma once

#include "openwg/types.hpp"

namespace openwg::specfun {

/// Quality flag for evaluations outside the validated argument range.
enum class Status { ok, degraded };

/// Hankel function of the first kind, order 0 or 1, for complex argument
/// in the closed upper half-plane (Im z >= -delta_branch, see below).
///
/// Relative accuracy <= 1e-13 for |z| in [1e-8, 1e4].  Throws
/// std::domain_error for z == 0.
Cplx hankel1(int order, Cplx z);
Cplx hankel1(int order, Cplx z, Status& status);

/// Bessel J of order 0 or 1 by ascending series; intended for the
/// log-singularity splits of the Helmholtz kernels (|z| <= ~30).
Cplx besselj(int order, Cplx z);

/// Arguments with Im z below -delta_branch*(1+|z|) are outside the
/// supported half-plane; the contour maps keep Im[r^2] >= 0 so solver
/// arguments never get there.
inline constexpr double delta_branch = 1e-9;

/// Series/asymptotic switch radius.
inline constexpr double series_asymptotic_crossover = 16.0;

}  // namespace openwg::specfun
