#pragma once

#include "amfield/dirac.hpp"
#include "amfield/em_sample.hpp"

namespace amfield {

// EM-side densities and currents of the angular-momentum bookkeeping,
// evaluated at one sample point.  Signs are stored exactly as the summands
// appear in the total current tensor, so assembling T is a plain sum.
struct EMQuantities {
    Vec3 spin_density = Vec3::Zero();   // eps E x A
    Vec3 oam_density = Vec3::Zero();    // eps E_i (r x grad) A_i
    double helicity = 0.0;              // (1/mu0) A . B
    Tensor2 helicity_current = Tensor2::Zero();  // -(1/mu0) A_i B_j
    Tensor2 oam_current = Tensor2::Zero();
    Vec3 tau_em = Vec3::Zero();         // (1/mu0)(B.grad)A - eps0 dt_E_par x A
    double n_em = 0.0;                  // free-photon Lagrangian density
    Tensor2 N_tensor = Tensor2::Zero(); // eps_{ijk} r_k n_em, antisymmetric
    Vec3 rxgrad_n = Vec3::Zero();       // (r x grad) n_em = div N
};

EMQuantities em_quantities(const EMFieldSample& s, const Vec3& origin);

// The individual terms of the EM spin balance (the four Fig. 2 columns)
// and of the EM OAM balance, shared between groupings so the verification
// layer can check sum-consistency honestly.
struct EMBalanceTerms {
    // spin side: term1 + term2 + term3 - tau_em = 0
    Vec3 dt_spin = Vec3::Zero();        // eps d_t (E x A)
    Vec3 div_hcur = Vec3::Zero();       // div of -(1/mu0) A_i B_j
    Vec3 grad_hel = Vec3::Zero();       // (1/mu0) grad (A . B)
    Vec3 tau_em = Vec3::Zero();
    // OAM side: dt_oam + div_oam_current + rxgrad_n + tau_em = 0
    Vec3 dt_oam = Vec3::Zero();
    Vec3 div_oam_current = Vec3::Zero();
    Vec3 rxgrad_n = Vec3::Zero();

    Vec3 residual_9c() const { return dt_spin + div_hcur + grad_hel - tau_em; }
    Vec3 residual_9d() const {
        return dt_oam + div_oam_current + rxgrad_n + tau_em;
    }
    // Same eight terms grouped as Eq. (6): d_t M + div T, no tau.
    Vec3 residual_eq6() const {
        return (dt_spin + dt_oam) +
               (div_hcur + grad_hel + div_oam_current + rxgrad_n);
    }
    // Largest participating term, the per-point relative-residual scale.
    double term_scale() const;
};

EMBalanceTerms em_balance_terms(const EMFieldSample& s, const Vec3& origin);

// Total density M and current T = chi delta + J + N of the continuity law.
struct TotalAM {
    Vec3 M = Vec3::Zero();
    Tensor2 T = Tensor2::Zero();
    double chi = 0.0;  // c * Dirac chirality + EM helicity
};

TotalAM total_am(const DiracDensities* d, const EMQuantities& e,
                 const UnitSystem& units);

// Symmetrized (Belinfante) density and current.  EM part of the flux uses
// the Maxwell stress-tensor signs -eps0 E_i (r x E)_j - (1/mu0) B_i (r x B)_j;
// the absorbed spin flux reappears as the isotropic chi' and the field-energy
// curl term.
struct BelinfanteQuantities {
    Vec3 M_prime = Vec3::Zero();
    Tensor2 J_prime = Tensor2::Zero();
    double chi_prime = 0.0;  // (hbar c / 2) psi^dag gamma5 psi, 0 for EM-only
    double u_field = 0.0;    // (1/2)(eps E^2 + B^2/mu0)
};

BelinfanteQuantities belinfante_quantities(const EMFieldSample& s,
                                           const DiracDensities* d,
                                           const Vec3& origin);

// EM-only balance terms for d_t M' + div J' + (r x grad) U = 0
// (the grad chi' term is identically zero without a Dirac field).
struct BelinfanteBalance {
    Vec3 dt_M = Vec3::Zero();
    Vec3 div_J = Vec3::Zero();
    Vec3 rxgrad_u = Vec3::Zero();

    Vec3 residual() const { return dt_M + div_J + rxgrad_u; }
    double term_scale() const;
};

BelinfanteBalance belinfante_balance(const EMFieldSample& s,
                                     const Vec3& origin);

}  // namespace amfield
