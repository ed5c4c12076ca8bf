#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "amfield/grid.hpp"

// Central finite-difference operators on uniform grids.  These serve as
// the independent oracle against the analytic derivative path; no
// one-sided boundary stencils are provided, residual statistics are
// interior-only.

namespace amfield {

struct GridTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int fd_margin(int order) {
    if (order == 2) return 1;
    if (order == 4) return 2;
    throw std::invalid_argument("fd order must be 2 or 4");
}

namespace detail {

// d/dx_axis of a grid of T at an interior node.
template <typename T>
T fd_partial(const Grid<T>& g, int ix, int iy, int iz, int axis, int order) {
    const int s[3] = {axis == 0, axis == 1, axis == 2};
    const double h = g.spec.spacing[axis];
    auto v = [&](int k) -> const T& {
        return g.at(ix + k * s[0], iy + k * s[1], iz + k * s[2]);
    };
    if (order == 2) return (v(1) - v(-1)) / (2.0 * h);
    return (8.0 * (v(1) - v(-1)) - (v(2) - v(-2))) / (12.0 * h);
}

template <typename T>
void check_dims(const Grid<T>& g, int order) {
    const int m = fd_margin(order);
    if (g.spec.nx < 2 * m + 1 || g.spec.ny < 2 * m + 1 ||
        g.spec.nz < 2 * m + 1)
        throw GridTooSmall("grid too small for stencil");
}

}  // namespace detail

inline VecGrid fd_gradient(const ScalarGrid& f, int order) {
    detail::check_dims(f, order);
    const int m = fd_margin(order);
    VecGrid out(f.spec);
    for (int iz = 0; iz < f.spec.nz; ++iz)
        for (int iy = 0; iy < f.spec.ny; ++iy)
            for (int ix = 0; ix < f.spec.nx; ++ix) {
                Vec3 g = Vec3::Zero();
                if (f.spec.interior(ix, iy, iz, m))
                    for (int a = 0; a < 3; ++a)
                        g[a] = detail::fd_partial(f, ix, iy, iz, a, order);
                out.at(ix, iy, iz) = g;
            }
    return out;
}

inline ScalarGrid fd_divergence(const VecGrid& v, int order) {
    detail::check_dims(v, order);
    const int m = fd_margin(order);
    ScalarGrid out(v.spec);
    for (int iz = 0; iz < v.spec.nz; ++iz)
        for (int iy = 0; iy < v.spec.ny; ++iy)
            for (int ix = 0; ix < v.spec.nx; ++ix) {
                double d = 0.0;
                if (v.spec.interior(ix, iy, iz, m))
                    for (int a = 0; a < 3; ++a)
                        d += detail::fd_partial(v, ix, iy, iz, a, order)[a];
                out.at(ix, iy, iz) = d;
            }
    return out;
}

inline VecGrid fd_curl(const VecGrid& v, int order) {
    detail::check_dims(v, order);
    const int m = fd_margin(order);
    VecGrid out(v.spec);
    for (int iz = 0; iz < v.spec.nz; ++iz)
        for (int iy = 0; iy < v.spec.ny; ++iy)
            for (int ix = 0; ix < v.spec.nx; ++ix) {
                Vec3 c = Vec3::Zero();
                if (v.spec.interior(ix, iy, iz, m)) {
                    Vec3 d[3];
                    for (int a = 0; a < 3; ++a)
                        d[a] = detail::fd_partial(v, ix, iy, iz, a, order);
                    c = Vec3(d[1][2] - d[2][1], d[2][0] - d[0][2],
                             d[0][1] - d[1][0]);
                }
                out.at(ix, iy, iz) = c;
            }
    return out;
}

// (div T)_j = d_i T(i,j): contracts the transport (first) index.
inline VecGrid fd_tensor_divergence(const TensorGrid& t, int order) {
    detail::check_dims(t, order);
    const int m = fd_margin(order);
    VecGrid out(t.spec);
    for (int iz = 0; iz < t.spec.nz; ++iz)
        for (int iy = 0; iy < t.spec.ny; ++iy)
            for (int ix = 0; ix < t.spec.nx; ++ix) {
                Vec3 d = Vec3::Zero();
                if (t.spec.interior(ix, iy, iz, m))
                    for (int a = 0; a < 3; ++a)
                        d += detail::fd_partial(t, ix, iy, iz, a, order)
                                 .row(a)
                                 .transpose();
                out.at(ix, iy, iz) = d;
            }
    return out;
}

// Central difference in time from samples at t - dt, t + dt (order 2)
// or t -/+ 2dt as well (order 4).  Samples supplied by the caller.
template <typename T>
T fd_time_derivative(const std::array<T, 4>& stencil, double dt, int order) {
    // stencil: [f(t-2dt), f(t-dt), f(t+dt), f(t+2dt)]; outer pair unused
    // at order 2.
    if (order == 2) return (stencil[2] - stencil[1]) / (2.0 * dt);
    if (order == 4)
        return (8.0 * (stencil[2] - stencil[1]) - (stencil[3] - stencil[0])) /
               (12.0 * dt);
    throw std::invalid_argument("fd order must be 2 or 4");
}

// Richardson order estimate from error norms at h, h/2, h/4.
struct ConvergenceEstimate {
    double order;        // mean of the two pairwise estimates
    double order_pair1;  // from (err_h, err_h2)
    double order_pair2;  // from (err_h2, err_h4)
};

struct ZeroError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline ConvergenceEstimate convergence_order(double err_h, double err_h2,
                                             double err_h4) {
    if (!(err_h > 0.0) || !(err_h2 > 0.0) || !(err_h4 > 0.0))
        throw ZeroError("convergence_order: exact (zero) error norm");
    ConvergenceEstimate e;
    e.order_pair1 = std::log2(err_h / err_h2);
    e.order_pair2 = std::log2(err_h2 / err_h4);
    e.order = 0.5 * (e.order_pair1 + e.order_pair2);
    return e;
}

}  // namespace amfield
