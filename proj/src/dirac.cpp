#include "amfield/dirac.hpp"

#include <cmath>
#include <stdexcept>

namespace amfield {

namespace {

const Complex kI{0.0, 1.0};

Eigen::Matrix2cd pauli(int k) {
    Eigen::Matrix2cd s;
    switch (k) {
        case 0: s << 0, 1, 1, 0; break;
        case 1: s << 0, -kI, kI, 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

CMat4 off_diag_block(const Eigen::Matrix2cd& upper,
                     const Eigen::Matrix2cd& lower) {
    CMat4 m = CMat4::Zero();
    m.block<2, 2>(0, 2) = upper;
    m.block<2, 2>(2, 0) = lower;
    return m;
}

void require(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("GammaAlgebra: ") + what);
}

}  // namespace

GammaAlgebra::GammaAlgebra() {
    gamma[0] = CMat4::Zero();
    gamma[0].block<2, 2>(0, 0) = Eigen::Matrix2cd::Identity();
    gamma[0].block<2, 2>(2, 2) = -Eigen::Matrix2cd::Identity();
    for (int k = 0; k < 3; ++k)
        gamma[k + 1] = off_diag_block(pauli(k), -pauli(k));
    gamma5 = kI * gamma[0] * gamma[1] * gamma[2] * gamma[3];
    for (int k = 0; k < 3; ++k) {
        Sigma[k] = CMat4::Zero();
        Sigma[k].block<2, 2>(0, 0) = pauli(k);
        Sigma[k].block<2, 2>(2, 2) = pauli(k);
    }

    // Construction self-checks: the whole library leans on these.
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            CMat4 anti = gamma[mu] * gamma[nu] + gamma[nu] * gamma[mu];
            CMat4 expect = 2.0 * eta(mu, nu) * CMat4::Identity();
            require((anti - expect).cwiseAbs().maxCoeff() < 1e-14,
                    "Clifford relation failed");
        }
    require((gamma5 * gamma5 - CMat4::Identity()).cwiseAbs().maxCoeff() <
                1e-14,
            "gamma5 squared != identity");
    for (int k = 0; k < 3; ++k) {
        // Sigma_k = (1/2) eps_{kij} sigma^{ij} in this normalization.
        CMat4 s = CMat4::Zero();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                s += 0.5 * levi_civita(k, i, j) * sigma_munu(i + 1, j + 1);
        require((s - Sigma[k]).cwiseAbs().maxCoeff() < 1e-14,
                "Sigma does not match sigma^{ij}");
    }
}

CMat4 GammaAlgebra::sigma_munu(int mu, int nu) const {
    return 0.5 * kI * (gamma[mu] * gamma[nu] - gamma[nu] * gamma[mu]);
}

const GammaAlgebra& gamma_algebra() {
    static const GammaAlgebra g;
    return g;
}

SpinorMode::SpinorMode(const Vec3& p_, SpinLabel spin_, double mass_,
                       Complex amplitude_, const UnitSystem& units_)
    : p(p_), spin(spin_), mass(mass_), amplitude(amplitude_), units(units_) {
    if (!(mass > 0.0))
        throw std::invalid_argument("SpinorMode: mass must be > 0");
    const double c = units.c;
    energy = std::sqrt(p.squaredNorm() * c * c + mass * mass * c * c * c * c);

    Eigen::Vector2cd chi =
        spin == SpinLabel::Up ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1);
    Eigen::Matrix2cd sigma_p = Eigen::Matrix2cd::Zero();
    for (int k = 0; k < 3; ++k) sigma_p += p[k] * pauli(k);
    Eigen::Vector2cd lower = (c / (energy + mass * c * c)) * (sigma_p * chi);

    u.head<2>() = chi;
    u.tail<2>() = lower;
    u /= std::sqrt(u.squaredNorm());
}

SpinorSample eval_spinors(const std::vector<SpinorMode>& modes, const Vec3& x,
                          double t) {
    SpinorSample s;
    s.position = x;
    s.time = t;
    if (!modes.empty()) s.units = modes.front().units;

    for (const auto& m : modes) {
        const double hbar = m.units.hbar;
        const Complex phase =
            std::exp(-kI * (m.energy * t - m.p.dot(x)) / hbar);
        const CVec4 psi_m = m.amplitude * phase * m.u;
        const Complex i_omega = -kI * m.energy / hbar;  // d_t factor

        s.psi += psi_m;
        s.dt_psi += i_omega * psi_m;
        for (int i = 0; i < 3; ++i) {
            const Complex iki = kI * m.p[i] / hbar;  // d_i factor
            s.grad_psi[i] += iki * psi_m;
            s.dt_grad_psi[i] += i_omega * iki * psi_m;
            for (int j = 0; j < 3; ++j)
                s.hess_psi[i][j] += iki * (kI * m.p[j] / hbar) * psi_m;
        }
    }
    return s;
}

DiracDensities dirac_densities(const SpinorSample& s, const GammaAlgebra& g,
                               const Vec3& origin) {
    DiracDensities d;
    const double hbar = s.units.hbar;
    const double c = s.units.c;
    const double e = s.units.e_charge;
    const Vec3 r = s.position - origin;

    for (int k = 0; k < 3; ++k)
        d.spin_density[k] =
            0.5 * hbar * (s.psi.adjoint() * g.Sigma[k] * s.psi)(0).real();
    d.chirality = 0.5 * hbar * (s.psi.adjoint() * g.gamma5 * s.psi)(0).real();

    // (r x p)_j psi = eps_{jkl} r_k (-i hbar d_l psi)
    for (int j = 0; j < 3; ++j) {
        double lj = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                const int e_jkl = levi_civita(j, k, l);
                if (e_jkl == 0) continue;
                lj += e_jkl * r[k] * hbar *
                      (s.psi.adjoint() * s.grad_psi[l])(0).imag();
            }
        d.oam_density[j] = lj;
    }

    // psibar gamma^i X = psi^dag (gamma^0 gamma^i) X
    for (int i = 0; i < 3; ++i) {
        const CMat4 alpha_i = g.gamma[0] * g.gamma[i + 1];
        for (int j = 0; j < 3; ++j) {
            double oij = 0.0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    const int e_jkl = levi_civita(j, k, l);
                    if (e_jkl == 0) continue;
                    oij += e_jkl * r[k] * hbar *
                           (s.psi.adjoint() * alpha_i * s.grad_psi[l])(0)
                               .imag();
                }
            d.oam_current(i, j) = oij;
        }
        d.charge_current[i] =
            e * c * (s.psi.adjoint() * alpha_i * s.psi)(0).real();
    }

    for (int k = 0; k < 3; ++k) {
        double tk = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const int e_kij = levi_civita(k, i, j);
                if (e_kij == 0) continue;
                const CMat4 alpha_i = g.gamma[0] * g.gamma[i + 1];
                tk += e_kij * hbar *
                      (s.psi.adjoint() * alpha_i * s.grad_psi[j])(0).imag();
            }
        d.tau_D[k] = -c * tk;
    }

    d.charge_density = e * s.psi.squaredNorm();
    return d;
}

DiracBalanceTerms dirac_balance_terms(const SpinorSample& s,
                                      const GammaAlgebra& g,
                                      const Vec3& origin) {
    DiracBalanceTerms b;
    const double hbar = s.units.hbar;
    const double c = s.units.c;
    const Vec3 r = s.position - origin;

    for (int k = 0; k < 3; ++k)
        b.dt_spin[k] =
            hbar * (s.psi.adjoint() * g.Sigma[k] * s.dt_psi)(0).real();
    for (int i = 0; i < 3; ++i)
        b.grad_chi[i] =
            hbar * c * (s.psi.adjoint() * g.gamma5 * s.grad_psi[i])(0).real();

    CMat4 alpha[3];
    for (int i = 0; i < 3; ++i) alpha[i] = g.gamma[0] * g.gamma[i + 1];

    for (int k = 0; k < 3; ++k) {
        double tk = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const int e_kij = levi_civita(k, i, j);
                if (e_kij == 0) continue;
                tk += e_kij * hbar *
                      (s.psi.adjoint() * alpha[i] * s.grad_psi[j])(0).imag();
            }
        b.tau_D[k] = -c * tk;
    }

    for (int j = 0; j < 3; ++j) {
        double dt_lj = 0.0;
        double div_oj = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                const int e_jkl = levi_civita(j, k, l);
                if (e_jkl == 0) continue;
                dt_lj += e_jkl * r[k] * hbar *
                         ((s.dt_psi.adjoint() * s.grad_psi[l])(0) +
                          (s.psi.adjoint() * s.dt_grad_psi[l])(0))
                             .imag();
                // d_i [r_k Im{psibar alpha^i d_l psi}]: the i = k piece from
                // d_i r_k plus the transported gradient.
                double inner =
                    (s.psi.adjoint() * alpha[k] * s.grad_psi[l])(0).imag();
                for (int i = 0; i < 3; ++i)
                    inner += r[k] * ((s.grad_psi[i].adjoint() * alpha[i] *
                                      s.grad_psi[l])(0) +
                                     (s.psi.adjoint() * alpha[i] *
                                      s.hess_psi[i][l])(0))
                                        .imag();
                div_oj += e_jkl * hbar * inner;
            }
        b.dt_oam[j] = dt_lj;
        b.div_oam_current[j] = c * div_oj;
    }

    b.dt_prob = 2.0 * (s.psi.adjoint() * s.dt_psi)(0).real();
    double div_j = 0.0;
    for (int i = 0; i < 3; ++i)
        div_j += 2.0 * (s.psi.adjoint() * alpha[i] * s.grad_psi[i])(0).real();
    b.div_prob_current = c * div_j;

    return b;
}

}  // namespace amfield
