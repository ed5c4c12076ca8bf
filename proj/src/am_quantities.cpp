#include "amfield/am_quantities.hpp"

#include <algorithm>
#include <cmath>

namespace amfield {

namespace {

// (r x grad) f as a vector given r and the gradient of f.
Vec3 r_cross(const Vec3& r, const Vec3& grad_f) { return r.cross(grad_f); }

}  // namespace

EMQuantities em_quantities(const EMFieldSample& s, const Vec3& origin) {
    EMQuantities q;
    const Vec3 r = s.position - origin;
    const double eps = s.epsilon;
    const double eps0 = s.units.eps0;
    const double inv_mu0 = 1.0 / s.units.mu0;

    q.spin_density = eps * s.E.cross(s.A);

    // oam_j = eps E_i (r x grad)_j A_i,  (r x grad)_j = eps_{jkl} r_k d_l.
    for (int j = 0; j < 3; ++j) {
        double lj = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                const int e = levi_civita(j, k, l);
                if (e == 0) continue;
                for (int i = 0; i < 3; ++i)
                    lj += e * r[k] * s.E[i] * s.grad_A(l, i);
            }
        q.oam_density[j] = eps * lj;
    }

    // Helicity current first; helicity as the exact negative of its trace
    // so the trace identity holds to the last ulp by construction.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            q.helicity_current(i, j) = -(inv_mu0 * s.A[i]) * s.B[j];
    q.helicity = -(q.helicity_current(0, 0) + q.helicity_current(1, 1) +
                   q.helicity_current(2, 2));

    const Vec3 rxdtE_par = r.cross(s.dt_E_par);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double oij = 0.0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    const int e = levi_civita(i, k, l);
                    if (e == 0) continue;
                    for (int p = 0; p < 3; ++p)
                        for (int v = 0; v < 3; ++v) {
                            const int e2 = levi_civita(j, p, v);
                            if (e2 == 0) continue;
                            oij += e * e2 * s.B[k] * r[p] * s.grad_A(v, l);
                        }
                }
            q.oam_current(i, j) =
                -inv_mu0 * oij - eps0 * s.A[i] * rxdtE_par[j];
        }

    q.tau_em = inv_mu0 * (s.grad_A.transpose() * s.B) -
               eps0 * s.dt_E_par.cross(s.A);

    q.n_em = 0.5 * eps * s.E.squaredNorm() -
             0.5 * inv_mu0 * s.B.squaredNorm() + eps0 * s.dt_E_par.dot(s.A);
    q.N_tensor = eps_contract(r) * q.n_em;
    const Vec3 grad_n =
        eps * (s.grad_E * s.E) - inv_mu0 * (s.grad_B * s.B);
    q.rxgrad_n = r_cross(r, grad_n);
    return q;
}

EMBalanceTerms em_balance_terms(const EMFieldSample& s, const Vec3& origin) {
    EMBalanceTerms b;
    const Vec3 r = s.position - origin;
    const double eps = s.epsilon;
    const double eps0 = s.units.eps0;
    const double inv_mu0 = 1.0 / s.units.mu0;
    const Vec3 dt_A = s.dt_A();

    b.dt_spin = eps * (s.dt_E.cross(s.A) + s.E.cross(dt_A));
    b.div_hcur = -inv_mu0 *
                 (s.grad_A.trace() * s.B + s.grad_B.transpose() * s.A);
    b.grad_hel = inv_mu0 * (s.grad_A * s.B + s.grad_B * s.A);
    b.tau_em = inv_mu0 * (s.grad_A.transpose() * s.B) -
               eps0 * s.dt_E_par.cross(s.A);

    // d_t [eps E_i (r x grad)_j A_i] with d_t A = -E; the -E_i d_l E_i
    // piece is (r x grad) of -E^2/2.
    for (int j = 0; j < 3; ++j) {
        double dj = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                const int e = levi_civita(j, k, l);
                if (e == 0) continue;
                for (int i = 0; i < 3; ++i)
                    dj += e * r[k] *
                          (s.dt_E[i] * s.grad_A(l, i) -
                           s.E[i] * s.grad_E(l, i));
            }
        b.dt_oam[j] = eps * dj;
    }

    // d_i of -(1/mu0) eps_{ikl} B_k (r x grad)_j A_l: product rule over
    // grad B, the delta from d_i r_p, and the A Hessian.
    for (int j = 0; j < 3; ++j) {
        double dj = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
                for (int i = 0; i < 3; ++i) {
                    const int e = levi_civita(i, k, l);
                    if (e == 0) continue;
                    for (int p = 0; p < 3; ++p)
                        for (int v = 0; v < 3; ++v) {
                            const int e2 = levi_civita(j, p, v);
                            if (e2 == 0) continue;
                            double term =
                                s.grad_B(i, k) * r[p] * s.grad_A(v, l) +
                                s.B[k] * s.hess_A.comp[l](i, v) * r[p];
                            if (i == p)
                                term += s.B[k] * s.grad_A(v, l);
                            dj += e * e2 * term;
                        }
                }
        b.div_oam_current[j] = -inv_mu0 * dj;
    }

    const Vec3 grad_n =
        eps * (s.grad_E * s.E) - inv_mu0 * (s.grad_B * s.B);
    b.rxgrad_n = r.cross(grad_n);
    return b;
}

double EMBalanceTerms::term_scale() const {
    return std::max({dt_spin.cwiseAbs().maxCoeff(),
                     div_hcur.cwiseAbs().maxCoeff(),
                     grad_hel.cwiseAbs().maxCoeff(),
                     tau_em.cwiseAbs().maxCoeff(),
                     dt_oam.cwiseAbs().maxCoeff(),
                     div_oam_current.cwiseAbs().maxCoeff(),
                     rxgrad_n.cwiseAbs().maxCoeff(), 1e-30});
}

TotalAM total_am(const DiracDensities* d, const EMQuantities& e,
                 const UnitSystem& units) {
    TotalAM t;
    t.M = e.spin_density + e.oam_density;
    t.chi = e.helicity;
    Tensor2 j = e.helicity_current + e.oam_current;
    if (d) {
        t.M += d->spin_density + d->oam_density;
        t.chi += units.c * d->chirality;
        j += units.c * d->oam_current;
    }
    t.T = t.chi * Tensor2::Identity() + j + e.N_tensor;
    return t;
}

BelinfanteQuantities belinfante_quantities(const EMFieldSample& s,
                                           const DiracDensities* d,
                                           const Vec3& origin) {
    BelinfanteQuantities q;
    const Vec3 r = s.position - origin;
    const double eps = s.epsilon;
    const double inv_mu0 = 1.0 / s.units.mu0;

    q.M_prime = eps * r.cross(s.E.cross(s.B));
    const Vec3 rxE = r.cross(s.E);
    const Vec3 rxB = r.cross(s.B);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            q.J_prime(i, j) =
                -eps * s.E[i] * rxE[j] - inv_mu0 * s.B[i] * rxB[j];
    q.u_field = 0.5 * (eps * s.E.squaredNorm() +
                       inv_mu0 * s.B.squaredNorm());
    if (d) {
        q.M_prime += d->spin_density + d->oam_density;
        q.J_prime += s.units.c * d->oam_current;
        q.chi_prime = s.units.c * d->chirality;
    }
    return q;
}

BelinfanteBalance belinfante_balance(const EMFieldSample& s,
                                     const Vec3& origin) {
    BelinfanteBalance b;
    const Vec3 r = s.position - origin;
    const double eps = s.epsilon;
    const double inv_mu0 = 1.0 / s.units.mu0;
    const Vec3 dt_B = s.dt_B();

    b.dt_M = eps * r.cross(s.dt_E.cross(s.B) + s.E.cross(dt_B));

    const Vec3 rxE = r.cross(s.E);
    const Vec3 rxB = r.cross(s.B);
    // d_i [F_i (r x F)_j] = (div F)(r x F)_j + [r x ((F.grad)F)]_j
    // (the F x F piece cancels identically).
    b.div_J = -eps * (s.grad_E.trace() * rxE +
                      r.cross(s.grad_E.transpose() * s.E)) -
              inv_mu0 * (s.grad_B.trace() * rxB +
                         r.cross(s.grad_B.transpose() * s.B));

    const Vec3 grad_u =
        eps * (s.grad_E * s.E) + inv_mu0 * (s.grad_B * s.B);
    b.rxgrad_u = r.cross(grad_u);
    return b;
}

double BelinfanteBalance::term_scale() const {
    return std::max({dt_M.cwiseAbs().maxCoeff(), div_J.cwiseAbs().maxCoeff(),
                     rxgrad_u.cwiseAbs().maxCoeff(), 1e-30});
}

}  // namespace amfield
