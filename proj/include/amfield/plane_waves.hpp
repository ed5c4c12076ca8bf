#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "amfield/em_sample.hpp"

namespace amfield {

// Monochromatic plane wave, field = Re{ amp e^{-i(omega t - k.x)} }.
// Transversality and vacuum dispersion are enforced at construction.
struct PlaneWaveMode {
    double omega;     // rad/s, > 0
    Vec3 k_vec;       // rad/m
    CVec3 amplitude;  // complex E phasor, V/m

    PlaneWaveMode(double omega_, const Vec3& k, const CVec3& amp,
                  const UnitSystem& u = UnitSystem::SI())
        : omega(omega_), k_vec(k), amplitude(amp) {
        if (!(omega > 0.0))
            throw std::invalid_argument("PlaneWaveMode: omega must be > 0");
        const double kn = k_vec.norm();
        if (std::abs(kn - omega / u.c) > 1e-12 * (omega / u.c))
            throw std::invalid_argument(
                "PlaneWaveMode: |k| must equal omega/c");
        const double an = amplitude.norm();
        if (an > 0.0 && std::abs(k_vec.cast<Complex>().dot(amplitude)) >
                            1e-12 * kn * an)
            throw std::invalid_argument("PlaneWaveMode: k . amp must vanish");
    }
};

// Circularly polarized mode propagating along +z: amp = E0 (x + i y)/sqrt(2).
inline PlaneWaveMode make_cp_mode_z(double omega, Complex e0,
                                    const UnitSystem& u = UnitSystem::SI()) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CVec3 amp(e0 * inv_sqrt2, Complex(0.0, 1.0) * e0 * inv_sqrt2, 0.0);
    return PlaneWaveMode(omega, Vec3(0, 0, omega / u.c), amp, u);
}

inline EMFieldSample eval_plane_waves(const std::vector<PlaneWaveMode>& modes,
                                      const Vec3& x, double t,
                                      const UnitSystem& u = UnitSystem::SI(),
                                      const GaugeFunction* gauge = nullptr) {
    EMFieldSample s;
    s.position = x;
    s.time = t;
    s.units = u;
    s.epsilon = u.eps0;
    s.mode_E_phasors.reserve(modes.size());

    for (const auto& m : modes) {
        const Complex i_unit(0.0, 1.0);
        const Complex ph = std::exp(i_unit * (m.k_vec.dot(x) - m.omega * t));
        const CVec3 e_ph = m.amplitude * ph;
        const CVec3 a_ph = e_ph / (i_unit * m.omega);
        // Eigen's cross() conjugates complex operands, so split the phasor
        // into real and imaginary parts before crossing with the real k.
        const CVec3 b_ph =
            (m.k_vec.cross(Vec3(e_ph.real())).cast<Complex>() +
             i_unit * m.k_vec.cross(Vec3(e_ph.imag())).cast<Complex>()) /
            m.omega;
        s.mode_E_phasors.push_back(e_ph);

        s.E += e_ph.real();
        s.A += a_ph.real();
        s.B += b_ph.real();
        s.dt_E += (-i_unit * m.omega * e_ph).real();
        for (int i = 0; i < 3; ++i) {
            const Complex iki = i_unit * m.k_vec[i];
            for (int j = 0; j < 3; ++j) {
                s.grad_E(i, j) += (iki * e_ph[j]).real();
                s.grad_B(i, j) += (iki * b_ph[j]).real();
                s.grad_A(i, j) += (iki * a_ph[j]).real();
                for (int k = 0; k < 3; ++k)
                    s.hess_A.comp[k](i, j) +=
                        (-m.k_vec[i] * m.k_vec[j] * a_ph[k]).real();
            }
        }
    }
    if (gauge) apply_gauge_roundtrip(s, *gauge);
    return s;
}

}  // namespace amfield
