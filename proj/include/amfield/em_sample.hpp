#pragma once

#include <functional>
#include <vector>

#include "amfield/constants.hpp"
#include "amfield/types.hpp"

namespace amfield {

// Pointwise evaluation of an analytic EM source: fields plus every first
// derivative (and the A second derivatives) needed by the angular-momentum
// quantities.  Gradient convention: grad_F(i,j) = d_i F_j.
struct EMFieldSample {
    Vec3 position = Vec3::Zero();
    double time = 0.0;

    Vec3 E = Vec3::Zero();       // transverse electric field
    Vec3 B = Vec3::Zero();
    Vec3 A = Vec3::Zero();       // transverse vector potential

    // Longitudinal parts; identically zero for every shipped (source-free)
    // scenario but kept so the Eq. (8)/(11) terms can be written in full.
    Vec3 E_par = Vec3::Zero();
    Vec3 A_par = Vec3::Zero();
    Vec3 dt_E_par = Vec3::Zero();

    Tensor2 grad_E = Tensor2::Zero();
    Tensor2 grad_B = Tensor2::Zero();
    Tensor2 grad_A = Tensor2::Zero();
    Hess3 hess_A{};              // d_i d_j A_k
    Vec3 dt_E = Vec3::Zero();

    // Local permittivity at the sample point (eps0 everywhere except the
    // fiber core, where the macroscopic fields see eps0 n^2).
    double epsilon = 0.0;

    UnitSystem units = UnitSystem::SI();

    // Per-mode complex E phasors at the point, in mode order.
    std::vector<CVec3> mode_E_phasors;

    Vec3 dt_B() const {  // Faraday
        Vec3 curl_E(grad_E(1, 2) - grad_E(2, 1), grad_E(2, 0) - grad_E(0, 2),
                    grad_E(0, 1) - grad_E(1, 0));
        return -curl_E;
    }
    Vec3 dt_A() const { return -E; }
};

// Closed-form gauge function zeta: the constructor adds grad(zeta) to the
// raw potential and the transverse re-split removes it again, so observables
// agree with the unshifted construction to rounding.
struct GaugeFunction {
    std::function<Vec3(const Vec3&, double)> grad;      // d_k zeta
    std::function<Tensor2(const Vec3&, double)> grad2;  // d_i d_k zeta
    std::function<Hess3(const Vec3&, double)> grad3;    // d_i d_j d_k zeta
};

inline GaugeFunction gauge_zero() {
    return {[](const Vec3&, double) { return Vec3::Zero().eval(); },
            [](const Vec3&, double) { return Tensor2::Zero().eval(); },
            [](const Vec3&, double) { return Hess3{}; }};
}

// zeta = alpha . x (constant gradient, curl-free).
inline GaugeFunction gauge_linear(const Vec3& alpha) {
    return {[alpha](const Vec3&, double) { return alpha; },
            [](const Vec3&, double) { return Tensor2::Zero().eval(); },
            [](const Vec3&, double) { return Hess3{}; }};
}

// zeta = a sin(q x)/q.  The amplitude should be chosen comparable to the
// potential being shifted, so the roundtrip cancellation stays at the ulp
// level of the field itself.
inline GaugeFunction gauge_sin_x(double q, double a = 1.0) {
    return {[q, a](const Vec3& x, double) {
                return Vec3(a * std::cos(q * x.x()), 0.0, 0.0).eval();
            },
            [q, a](const Vec3& x, double) {
                Tensor2 t = Tensor2::Zero();
                t(0, 0) = -a * q * std::sin(q * x.x());
                return t;
            },
            [q, a](const Vec3& x, double) {
                Hess3 h{};
                h.comp[0](0, 0) = -a * q * q * std::cos(q * x.x());
                return h;
            }};
}

// Round-trips the sample's potential data through A + grad(zeta) and back.
inline void apply_gauge_roundtrip(EMFieldSample& s, const GaugeFunction& g) {
    const Vec3 gz = g.grad(s.position, s.time);
    const Tensor2 gz2 = g.grad2(s.position, s.time);
    const Hess3 gz3 = g.grad3(s.position, s.time);
    s.A = (s.A + gz) - gz;
    s.grad_A = (s.grad_A + gz2) - gz2;
    for (int k = 0; k < 3; ++k)
        s.hess_A.comp[k] = (s.hess_A.comp[k] + gz3.comp[k]) - gz3.comp[k];
}

}  // namespace amfield
