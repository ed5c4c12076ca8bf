#pragma once

// Test-only Bessel oracles, independent of the library implementation:
// ascending power series in 128-bit floats, the integral representation
// K_n(x) = int_0^inf e^{-x cosh t} cosh(nt) dt by adaptive quadrature,
// and the large-argument asymptotic expansions.

#include <cmath>
#include <functional>

namespace bessel_oracle {

using quad = __float128;

// Ascending series; accurate for x <= ~25 thanks to the 33-digit mantissa.
inline double j_series(int n, double x) {
    const quad half_x = static_cast<quad>(x) / 2;
    quad term = 1;
    for (int k = 0; k < n; ++k) term *= half_x / (k + 1);
    quad sum = term;  // m = 0 term: (x/2)^n / n!
    const quad x2 = half_x * half_x;
    for (int m = 1; m < 200; ++m) {
        term *= -x2 / (static_cast<quad>(m) * (m + n));
        sum += term;
        if (term > static_cast<quad>(-1e-40) && term < static_cast<quad>(1e-40)) break;
    }
    return static_cast<double>(sum);
}

inline double j_series_prime(int n, double x) {
    // termwise derivative of the series
    if (x == 0.0) return n == 1 ? 0.5 : 0.0;
    const quad half_x = static_cast<quad>(x) / 2;
    quad term = 1;
    for (int k = 0; k < n; ++k) term *= half_x / (k + 1);
    const quad x2 = half_x * half_x;
    quad sum = term * n / static_cast<quad>(x);
    for (int m = 1; m < 200; ++m) {
        term *= -x2 / (static_cast<quad>(m) * (m + n));
        sum += term * (2 * m + n) / static_cast<quad>(x);
        if (term > static_cast<quad>(-1e-40) && term < static_cast<quad>(1e-40)) break;
    }
    return static_cast<double>(sum);
}

// Hankel asymptotic expansion, x >= ~20: J_n = sqrt(2/(pi x)) [P cos(chi)
// - Q sin(chi)], chi = x - (n/2 + 1/4) pi.  Series truncated at its
// smallest term.
inline double j_asymptotic(int n, double x) {
    const long double mu = 4.0L * n * n;
    const long double ix8 = 1.0L / (8.0L * static_cast<long double>(x));
    long double p = 1.0L, q = 0.0L;
    long double term = 1.0L;
    long double prev_mag = 1e30L;
    for (int k = 1; k <= 60; ++k) {
        const long double f = (mu - (2 * k - 1) * (2 * k - 1)) * ix8 / k;
        term *= f;
        const long double mag = term < 0 ? -term : term;
        if (mag > prev_mag) break;  // asymptotic: stop at smallest term
        prev_mag = mag;
        if (k % 4 == 1) q += term;
        else if (k % 4 == 2) p -= term;
        else if (k % 4 == 3) q -= term;
        else p += term;
    }
    const long double chi =
        static_cast<long double>(x) -
        (n / 2.0L + 0.25L) * 3.14159265358979323846264338327950288L;
    const long double amp = sqrtl(
        2.0L / (3.14159265358979323846264338327950288L * static_cast<long double>(x)));
    return static_cast<double>(amp * (p * cosl(chi) - q * sinl(chi)));
}

// K_n asymptotic: sqrt(pi/(2x)) e^{-x} sum_k a_k, a_k = prod (mu - (2j-1)^2)
// / (k! (8x)^k) with +, truncated at smallest term.  Returns K_n e^{x}
// sqrt(x) scaled form when scaled = true.
inline double k_asymptotic(int n, double x, bool scaled = false) {
    const long double mu = 4.0L * n * n;
    const long double ix8 = 1.0L / (8.0L * static_cast<long double>(x));
    long double sum = 1.0L, term = 1.0L, prev_mag = 1e30L;
    for (int k = 1; k <= 60; ++k) {
        term *= (mu - (2 * k - 1) * (2 * k - 1)) * ix8 / k;
        const long double mag = term < 0 ? -term : term;
        if (mag > prev_mag) break;
        prev_mag = mag;
        sum += term;
    }
    const long double pi_l = 3.14159265358979323846264338327950288L;
    if (scaled) return static_cast<double>(sqrtl(pi_l / 2.0L) * sum);
    return static_cast<double>(sqrtl(pi_l / (2.0L * static_cast<long double>(x))) *
                               expl(-static_cast<long double>(x)) * sum);
}

namespace detail {
inline long double simpson(const std::function<long double(long double)>& f,
                           long double a, long double b, long double fa,
                           long double fm, long double fb, long double whole,
                           long double tol, int depth) {
    const long double m = 0.5L * (a + b);
    const long double lm = 0.5L * (a + m), rm = 0.5L * (m + b);
    const long double flm = f(lm), frm = f(rm);
    const long double left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
    const long double right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
    const long double delta = left + right - whole;
    if (depth <= 0 || (delta < tol && delta > -tol))
        return left + right + delta / 15.0L;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2.0L, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2.0L, depth - 1);
}
}  // namespace detail

inline long double integrate(const std::function<long double(long double)>& f,
                             long double a, long double b, long double tol) {
    const long double m = 0.5L * (a + b);
    const long double fa = f(a), fm = f(m), fb = f(b);
    const long double whole = (b - a) / 6.0L * (fa + 4.0L * fm + fb);
    return detail::simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Integral-representation oracle for K_n.
inline double k_quadrature(int n, double x) {
    // upper limit: x cosh T - |n| T > 745 + margin kills the integrand
    long double T = acoshl((780.0L + 5.0L * n) / static_cast<long double>(x)) + 1.0L;
    auto f = [&](long double t) -> long double {
        const long double ct = coshl(t);
        const long double ex = -static_cast<long double>(x) * ct;
        if (ex < -11300.0L) return 0.0L;
        return expl(ex) * coshl(n * t);
    };
    // crude scale estimate for the absolute tolerance: coarse maximum of
    // the integrand (the asymptotic form is useless at small x)
    long double fmax = 0.0L;
    for (int i = 0; i <= 256; ++i) {
        const long double v = f(T * i / 256.0L);
        if (v > fmax) fmax = v;
    }
    if (fmax <= 0.0L) fmax = 1.0L;
    return static_cast<double>(integrate(f, 0.0L, T, 1e-17L * fmax * T));
}

}  // namespace bessel_oracle
