#pragma once

#include <cmath>
#include <stdexcept>

// Bessel J_n and modified K_n with first derivatives, orders 0..10, as
// needed by the step-index fiber mode profiles.  Arguments are real and
// non-negative; no complex orders, no Y/Hankel functions.

namespace amfield {

inline constexpr int kBesselMaxOrder = 10;
inline constexpr double kBesselMaxArg = 500.0;

namespace detail {
inline void check_order(int n) {
    if (n < 0 || n > kBesselMaxOrder)
        throw std::domain_error("bessel: order must be in [0, 10]");
}
}  // namespace detail

inline double bessel_j(int n, double x) {
    detail::check_order(n);
    if (!(x >= 0.0) || x > kBesselMaxArg)
        throw std::domain_error("bessel_j: argument must be in [0, 500]");
    return std::cyl_bessel_j(static_cast<double>(n), x);
}

// J_n' = (J_{n-1} - J_{n+1})/2, J_0' = -J_1.
inline double bessel_j_prime(int n, double x) {
    if (n == 0) return -bessel_j(1, x);
    return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

inline double bessel_k(int n, double x) {
    detail::check_order(n);
    if (!(x > 0.0) || x > kBesselMaxArg)
        throw std::domain_error("bessel_k: argument must be in (0, 500]");
    return std::cyl_bessel_k(static_cast<double>(n), x);
}

// K_n' = -(K_{n-1} + K_{n+1})/2; K_0' = -K_1.
inline double bessel_k_prime(int n, double x) {
    if (n == 0) return -bessel_k(1, x);
    return -0.5 * (bessel_k(n - 1, x) + bessel_k(n + 1, x));
}

}  // namespace amfield
