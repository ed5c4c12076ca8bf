#include <doctest.h>

#include <cmath>
#include <random>

#include "amfield/am_quantities.hpp"
#include "amfield/plane_waves.hpp"

using namespace amfield;

namespace {

const double kUlp = std::numeric_limits<double>::epsilon();
const double w0 = 2.0 * M_PI * si::c / 1e-6;

std::vector<PlaneWaveMode> pair_modes() {
    return {make_cp_mode_z(w0, Complex(1.0, 0.2)),
            make_cp_mode_z(2.0 * w0, Complex(0.6, 0.8))};
}

// Co-propagating CP modes have (F.grad)F = 0 and eps E^2 = B^2/mu0
// pointwise, which makes several flux terms vanish identically; mix in a
// transverse-propagating linear mode for the divergence tests.
std::vector<PlaneWaveMode> mixed_modes() {
    auto modes = pair_modes();
    modes.emplace_back(0.8 * w0, Vec3(0.8 * w0 / si::c, 0.0, 0.0),
                       CVec3(0.0, 0.0, Complex(0.9, 0.0)));
    return modes;
}

}  // namespace

TEST_CASE("zero field gives all-zero quantities") {
    EMFieldSample s;
    s.units = UnitSystem::SI();
    s.epsilon = si::eps0;
    EMQuantities q = em_quantities(s, Vec3::Zero());
    CHECK(q.spin_density.norm() == 0.0);
    CHECK(q.helicity == 0.0);
    CHECK(q.helicity_current.norm() == 0.0);
    CHECK(q.tau_em.norm() == 0.0);
    CHECK(q.n_em == 0.0);
}

TEST_CASE("trace of helicity current is exactly minus the helicity") {
    auto modes = pair_modes();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1e-6, 1e-6);
    for (int i = 0; i < 500; ++i) {
        const Vec3 x(u(rng), u(rng), u(rng));
        EMFieldSample s = eval_plane_waves(modes, x, u(rng) * 1e-9);
        EMQuantities q = em_quantities(s, Vec3(0.1e-6, 0, 0));
        const double tr = q.helicity_current(0, 0) +
                          q.helicity_current(1, 1) +
                          q.helicity_current(2, 2);
        CHECK(std::abs(tr + q.helicity) <=
              2.0 * kUlp * std::abs(q.helicity));
    }
}

TEST_CASE("N tensor is antisymmetric and its divergence form matches") {
    auto modes = mixed_modes();
    EMFieldSample s =
        eval_plane_waves(modes, Vec3(0.3e-6, -0.2e-6, 0.5e-6), 0.8e-15);
    const Vec3 origin(0.05e-6, -0.03e-6, 0.0);
    EMQuantities q = em_quantities(s, origin);
    CHECK((q.N_tensor + q.N_tensor.transpose()).norm() == 0.0);

    // (r x grad) n_em equals the FD divergence of the N tensor
    const double h = 1e-11;
    Vec3 div_fd = Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
        Vec3 xp = s.position, xm = s.position;
        xp[i] += h;
        xm[i] -= h;
        EMQuantities qp =
            em_quantities(eval_plane_waves(modes, xp, s.time), origin);
        EMQuantities qm =
            em_quantities(eval_plane_waves(modes, xm, s.time), origin);
        div_fd +=
            (qp.N_tensor.row(i) - qm.N_tensor.row(i)).transpose() /
            (2.0 * h);
    }
    CHECK((div_fd - q.rxgrad_n).norm() < 1e-5 * q.rxgrad_n.norm());
}

TEST_CASE("single CP wave: tau_em vanishes, helicity closed form") {
    const double e0 = 1.7;
    std::vector<PlaneWaveMode> modes = {make_cp_mode_z(w0, e0)};
    EMFieldSample s =
        eval_plane_waves(modes, Vec3(0.2e-6, 0.4e-6, -0.1e-6), 1.3e-15);
    EMQuantities q = em_quantities(s, Vec3::Zero());
    const double k = w0 / si::c;
    const double hel_scale = q.helicity;
    CHECK(hel_scale ==
          doctest::Approx(k * e0 * e0 / (2.0 * w0 * w0 * si::mu0))
              .epsilon(1e-12));
    CHECK(q.tau_em.norm() <= 1e-12 * hel_scale * k);
}

TEST_CASE("spin balance terms close pointwise (Eq. 12 grouping)") {
    auto modes = pair_modes();
    const Vec3 origin(0.1e-6, 0.05e-6, -0.2e-6);
    for (double t : {0.0, 0.7e-15, 1.9e-15}) {
        for (const Vec3& x :
             {Vec3(0.3e-6, -0.2e-6, 0.5e-6), Vec3(-0.6e-6, 0.4e-6, 0.1e-6)}) {
            EMFieldSample s = eval_plane_waves(modes, x, t);
            EMBalanceTerms b = em_balance_terms(s, origin);
            const double scale = b.term_scale();
            CHECK(b.residual_9c().cwiseAbs().maxCoeff() <= 1e-12 * scale);
            CHECK(b.residual_9d().cwiseAbs().maxCoeff() <= 1e-12 * scale);
            CHECK(b.residual_eq6().cwiseAbs().maxCoeff() <= 1e-12 * scale);
            // grouping consistency
            CHECK(((b.residual_9c() + b.residual_9d()) - b.residual_eq6())
                      .cwiseAbs()
                      .maxCoeff() <= 8.0 * kUlp * scale);
        }
    }
}

TEST_CASE("total assembly: EM-only M and the chi diagonal") {
    auto modes = pair_modes();
    EMFieldSample s =
        eval_plane_waves(modes, Vec3(0.15e-6, 0.22e-6, 0.31e-6), 0.5e-15);
    EMQuantities q = em_quantities(s, Vec3::Zero());
    TotalAM tot = total_am(nullptr, q, s.units);
    CHECK((tot.M - (q.spin_density + q.oam_density)).norm() == 0.0);
    CHECK(tot.chi == q.helicity);
    // chi enters only on the diagonal
    Tensor2 offdiag = tot.T - q.helicity * Tensor2::Identity() -
                      q.helicity_current - q.oam_current - q.N_tensor;
    CHECK(offdiag.norm() <= 4.0 * kUlp * tot.T.norm());
}

TEST_CASE("gauge shift leaves every reported quantity within 2 ulp") {
    auto modes = pair_modes();
    const Vec3 x(0.27e-6, -0.33e-6, 0.12e-6);
    const double t = 1.1e-15;
    EMFieldSample plain = eval_plane_waves(modes, x, t);
    GaugeFunction g =
        gauge_sin_x(2.0 * M_PI / 0.9e-6, plain.A.norm());
    EMFieldSample shifted =
        eval_plane_waves(modes, x, t, UnitSystem::SI(), &g);
    const Vec3 origin(0.05e-6, 0.0, 0.0);
    EMQuantities qp = em_quantities(plain, origin);
    EMQuantities qs = em_quantities(shifted, origin);
    CHECK(std::abs(qp.helicity - qs.helicity) <=
          2.0 * kUlp * std::abs(qp.helicity));
    CHECK((qp.spin_density - qs.spin_density).cwiseAbs().maxCoeff() <=
          2.0 * kUlp * qp.spin_density.cwiseAbs().maxCoeff());
    CHECK((qp.tau_em - qs.tau_em).cwiseAbs().maxCoeff() <=
          4.0 * kUlp *
              std::max(qp.tau_em.cwiseAbs().maxCoeff(),
                       qp.helicity * (w0 / si::c)));
}

TEST_CASE("Belinfante: M' reduces to eps r x (E x B); residual closes") {
    auto modes = pair_modes();
    const Vec3 origin(0.0, 0.1e-6, 0.0);
    EMFieldSample s =
        eval_plane_waves(modes, Vec3(0.41e-6, 0.13e-6, -0.27e-6), 0.9e-15);
    BelinfanteQuantities q = belinfante_quantities(s, nullptr, origin);
    const Vec3 r = s.position - origin;
    CHECK((q.M_prime - si::eps0 * r.cross(s.E.cross(s.B))).norm() == 0.0);
    CHECK(q.chi_prime == 0.0);

    BelinfanteBalance b = belinfante_balance(s, origin);
    CHECK(b.residual().cwiseAbs().maxCoeff() <= 1e-12 * b.term_scale());
}

TEST_CASE("Belinfante flux divergence matches FD of J'") {
    auto modes = mixed_modes();
    const Vec3 origin = Vec3::Zero();
    const Vec3 x(0.19e-6, -0.08e-6, 0.33e-6);
    const double t = 0.6e-15;
    EMFieldSample s = eval_plane_waves(modes, x, t);
    BelinfanteBalance b = belinfante_balance(s, origin);
    const double h = 1e-11;
    Vec3 div_fd = Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
        Vec3 xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        BelinfanteQuantities qp = belinfante_quantities(
            eval_plane_waves(modes, xp, t), nullptr, origin);
        BelinfanteQuantities qm = belinfante_quantities(
            eval_plane_waves(modes, xm, t), nullptr, origin);
        div_fd += (qp.J_prime.row(i) - qm.J_prime.row(i)).transpose() /
                  (2.0 * h);
    }
    CHECK((div_fd - b.div_J).norm() < 1e-5 * b.div_J.norm());
}
