#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace openwg {

using Cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Real 2-vector (normals, directions).
struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x1 * b.x1 + a.x2 * b.x2; }

/// Point with complexified coordinates.  On any contour built by this
/// library at most one coordinate carries a nonzero imaginary part.
struct CPoint {
    Cplx x1{0.0, 0.0};
    Cplx x2{0.0, 0.0};
};

/// Squared complexified distance (x1-y1)^2 + (x2-y2)^2.
inline Cplx dist2(const CPoint& x, const CPoint& y) {
    const Cplx d1 = x.x1 - y.x1;
    const Cplx d2 = x.x2 - y.x2;
    return d1 * d1 + d2 * d2;
}

/// Principal square root of dist2; positive on the positive real axis.
inline Cplx cdist(const CPoint& x, const CPoint& y) { return std::sqrt(dist2(x, y)); }

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace openwg
