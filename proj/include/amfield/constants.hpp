#pragma once

// Physical constants (SI) and the natural-units toggle used by the
// Dirac-side scenarios.

namespace amfield {

namespace si {
inline constexpr double c = 299792458.0;            // m/s, exact
inline constexpr double mu0 = 4.0e-7 * 3.14159265358979323846;
inline constexpr double eps0 = 1.0 / (mu0 * c * c);
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double e_charge = 1.602176634e-19; // C
inline constexpr double m_electron = 9.1093837015e-31; // kg
}  // namespace si

// All evaluators take their constants from a UnitSystem so that Dirac
// scenarios can run with hbar = c = 1 and O(1) magnitudes.  Residual
// tolerances are relative, so both systems pass identically.
struct UnitSystem {
    double c;
    double hbar;
    double mu0;
    double eps0;
    double e_charge;

    static UnitSystem SI() {
        return {si::c, si::hbar, si::mu0, si::eps0, si::e_charge};
    }
    static UnitSystem natural() {
        return {1.0, 1.0, 1.0, 1.0, 1.0};
    }
};

}  // namespace amfield
