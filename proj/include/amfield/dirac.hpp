#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "amfield/constants.hpp"
#include "amfield/types.hpp"

namespace amfield {

using CVec4 = Eigen::Vector4cd;
using CMat4 = Eigen::Matrix4cd;

// Gamma matrices in the Dirac (block-diagonal gamma^0) representation,
// metric signature (+,-,-,-), {gamma^mu, gamma^nu} = 2 eta^{mu nu}.
// Sigma_k = diag(sigma_k, sigma_k) carries no 1/2; spin density is
// (hbar/2) psi^dag Sigma psi.
struct GammaAlgebra {
    CMat4 gamma[4];
    CMat4 gamma5;
    CMat4 Sigma[3];

    GammaAlgebra();  // self-checks all algebra invariants, throws on failure

    // sigma^{mu nu} = (i/2)[gamma^mu, gamma^nu]
    CMat4 sigma_munu(int mu, int nu) const;

    static double eta(int mu, int nu) {
        if (mu != nu) return 0.0;
        return mu == 0 ? 1.0 : -1.0;
    }
};

// Shared, immutable instance.
const GammaAlgebra& gamma_algebra();

enum class SpinLabel { Up, Down };

// Positive-energy free plane-wave solution a u e^{-i(E t - p.x)/hbar}.
struct SpinorMode {
    Vec3 p = Vec3::Zero();
    SpinLabel spin = SpinLabel::Up;
    double mass = 0.0;
    Complex amplitude{1.0, 0.0};
    UnitSystem units = UnitSystem::natural();

    double energy = 0.0;  // +sqrt(p^2 c^2 + m^2 c^4)
    CVec4 u = CVec4::Zero();

    SpinorMode() = default;
    SpinorMode(const Vec3& p_, SpinLabel spin_, double mass_,
               Complex amplitude_,
               const UnitSystem& units_ = UnitSystem::natural());
};

// Pointwise field value with every derivative the Eq. (9a)/(9b) balances
// need (the OAM current divergence involves second derivatives).
struct SpinorSample {
    Vec3 position = Vec3::Zero();
    double time = 0.0;
    UnitSystem units = UnitSystem::natural();

    CVec4 psi = CVec4::Zero();
    CVec4 dt_psi = CVec4::Zero();
    std::array<CVec4, 3> grad_psi{CVec4::Zero(), CVec4::Zero(), CVec4::Zero()};
    std::array<CVec4, 3> dt_grad_psi{CVec4::Zero(), CVec4::Zero(),
                                     CVec4::Zero()};
    CVec4 hess_psi[3][3];  // d_i d_j psi

    SpinorSample() {
        for (auto& row : hess_psi)
            for (auto& h : row) h.setZero();
    }
};

SpinorSample eval_spinors(const std::vector<SpinorMode>& modes, const Vec3& x,
                          double t);

// Fig. 1c Dirac-row quantities at a point (A = 0 throughout this release).
struct DiracDensities {
    Vec3 spin_density = Vec3::Zero();   // (hbar/2) psi^dag Sigma psi
    double chirality = 0.0;             // (hbar/2) psi^dag gamma^5 psi
    Vec3 oam_density = Vec3::Zero();    // R{psi^dag (r x p) psi}
    Tensor2 oam_current = Tensor2::Zero();  // R{psibar gamma_i (r x p)_j psi}
    Vec3 tau_D = Vec3::Zero();          // -c R{psibar (gamma x p) psi}
    double charge_density = 0.0;        // e psi^dag psi
    Vec3 charge_current = Vec3::Zero(); // e c psibar gamma psi
};

DiracDensities dirac_densities(const SpinorSample& s, const GammaAlgebra& g,
                               const Vec3& origin);

// The individual terms of the decoupled Eq. (9a)/(9b) balances, evaluated
// once so the verification layer can reuse them in different groupings.
struct DiracBalanceTerms {
    Vec3 dt_spin = Vec3::Zero();          // d_t (hbar/2) psi^dag Sigma psi
    Vec3 grad_chi = Vec3::Zero();         // grad (hbar c/2) psi^dag g5 psi
    Vec3 tau_D = Vec3::Zero();
    Vec3 dt_oam = Vec3::Zero();           // d_t R{psi^dag (r x p) psi}
    Vec3 div_oam_current = Vec3::Zero();  // div_i c R{psibar g^i (r x p)_j psi}
    double dt_prob = 0.0;                 // d_t psi^dag psi
    double div_prob_current = 0.0;        // div c psibar gamma psi

    Vec3 residual_9a() const { return dt_spin + grad_chi - tau_D; }
    Vec3 residual_9b() const { return dt_oam + div_oam_current + tau_D; }
};

DiracBalanceTerms dirac_balance_terms(const SpinorSample& s,
                                      const GammaAlgebra& g,
                                      const Vec3& origin);

}  // namespace amfield
