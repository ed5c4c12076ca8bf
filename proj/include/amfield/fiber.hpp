#pragma once

#include <stdexcept>
#include <vector>

#include "amfield/em_sample.hpp"

namespace amfield {

struct NoGuidedMode : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateMatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FiberSpec {
    double radius = 50e-6;    // m
    double core_index = 1.5;
    double clad_index = 1.0;

    void validate() const {
        if (!(radius > 0.0))
            throw std::invalid_argument("FiberSpec: radius must be > 0");
        if (!(clad_index > 0.0) || !(core_index > clad_index))
            throw std::invalid_argument(
                "FiberSpec: need core_index > clad_index > 0");
    }
};

enum class FiberFamily { HE, EH, TE, TM };

// One term of a cylindrical phasor component: coef * Z_m(q rho) e^{i m phi},
// Z = J_m in the core, K_m in the cladding.  This family is closed under
// d/dx and d/dy through the Bessel recurrences, which is how every analytic
// gradient below is produced.
struct CylTerm {
    Complex coef;
    int m;
};
using TermList = std::vector<CylTerm>;

// Precomputed Cartesian phasor components and derivatives for one region.
// z-derivatives multiply by i*beta and are not tabulated.
struct RegionFields {
    TermList E[3], H[3];
    TermList dE[2][3];      // d_x, d_y of E components
    TermList dH[2][3];
    TermList d2E[2][2][3];  // d_a d_b E components, a,b in {x, y}
};

struct FiberMode {
    FiberSpec spec;
    FiberFamily family = FiberFamily::HE;
    int n = 1;          // azimuthal index
    int m = 1;          // radial branch, counted from the top beta downward
    double omega = 0.0;
    double beta = 0.0;
    double u = 0.0;     // core transverse wavenumber
    double w = 0.0;     // cladding decay constant
    double amplitude = 1.0;  // field scale, V/m at the interface

    RegionFields core, clad;
};

// Relative residual of the characteristic equation at (omega, beta).
double fiber_characteristic_residual(const FiberMode& mode);

FiberMode solve_fiber_dispersion(const FiberSpec& spec, double omega,
                                 FiberFamily family, int n, int m,
                                 double amplitude = 1.0);

// Finds omega2 near omega_guess such that the (family, n, m) branch has the
// same propagation constant as mode1.
FiberMode beta_match(const FiberSpec& spec, const FiberMode& mode1,
                     FiberFamily family, int n, int m, double omega_guess,
                     double amplitude = 1.0);

EMFieldSample eval_fiber_modes(const std::vector<FiberMode>& modes,
                               const Vec3& x, double t);

}  // namespace amfield
