#include <doctest.h>

#include <cmath>

#include "amfield/plane_waves.hpp"

using namespace amfield;

namespace {

const UnitSystem u = UnitSystem::SI();
const double w0 = 2.0 * M_PI * si::c / 1e-6;

}  // namespace

TEST_CASE("mode construction enforces dispersion and transversality") {
    CHECK_NOTHROW(PlaneWaveMode(w0, Vec3(0, 0, w0 / si::c),
                                CVec3(1.0, 0.0, 0.0)));
    CHECK_THROWS_AS(PlaneWaveMode(w0, Vec3(0, 0, 1.01 * w0 / si::c),
                                  CVec3(1.0, 0.0, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(PlaneWaveMode(w0, Vec3(0, 0, w0 / si::c),
                                  CVec3(0.0, 0.0, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(PlaneWaveMode(-w0, Vec3(0, 0, -w0 / si::c),
                                  CVec3(1.0, 0.0, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("fields satisfy Maxwell structure at a point") {
    std::vector<PlaneWaveMode> modes = {make_cp_mode_z(w0, Complex(1.0, 0.3)),
                                        make_cp_mode_z(2.0 * w0, 0.7)};
    const Vec3 x(0.3e-6, -0.1e-6, 0.4e-6);
    const double t = 1.7e-15;
    EMFieldSample s = eval_plane_waves(modes, x, t);

    // div E = 0, div B = 0 from the analytic gradients
    CHECK(std::abs(s.grad_E.trace()) < 1e-12 * s.grad_E.cwiseAbs().maxCoeff());
    CHECK(std::abs(s.grad_B.trace()) < 1e-12 * s.grad_B.cwiseAbs().maxCoeff());

    // Faraday: curl E = -dt B, with dt_B reconstructed from a small step
    const double dt = 1e-19;
    EMFieldSample sp = eval_plane_waves(modes, x, t + dt);
    EMFieldSample sm = eval_plane_waves(modes, x, t - dt);
    const Vec3 dtB_fd = (sp.B - sm.B) / (2.0 * dt);
    CHECK((s.dt_B() - dtB_fd).norm() < 1e-7 * dtB_fd.norm());

    // Ampere (vacuum): curl B = mu0 eps0 dt E
    Vec3 curl_B(s.grad_B(1, 2) - s.grad_B(2, 1),
                s.grad_B(2, 0) - s.grad_B(0, 2),
                s.grad_B(0, 1) - s.grad_B(1, 0));
    CHECK((curl_B - u.mu0 * u.eps0 * s.dt_E).norm() <
          1e-12 * curl_B.norm());

    // E = -dt A
    const Vec3 dtA_fd = (sp.A - sm.A) / (2.0 * dt);
    CHECK((s.E + dtA_fd).norm() < 1e-7 * s.E.norm());

    // div A = 0 (Coulomb gauge)
    CHECK(std::abs(s.grad_A.trace()) <
          1e-12 * s.grad_A.cwiseAbs().maxCoeff());
}

TEST_CASE("analytic gradients match finite differences of the fields") {
    std::vector<PlaneWaveMode> modes = {make_cp_mode_z(w0, 1.0),
                                        make_cp_mode_z(2.0 * w0,
                                                       Complex(0.5, 0.5))};
    const Vec3 x(0.11e-6, 0.07e-6, -0.23e-6);
    const double t = 0.9e-15;
    EMFieldSample s = eval_plane_waves(modes, x, t);
    const double h = 1e-11;
    for (int i = 0; i < 3; ++i) {
        Vec3 xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        EMFieldSample sp = eval_plane_waves(modes, xp, t);
        EMFieldSample sm = eval_plane_waves(modes, xm, t);
        const Vec3 ge = (sp.E - sm.E) / (2.0 * h);
        const Vec3 ga = (sp.A - sm.A) / (2.0 * h);
        for (int j = 0; j < 3; ++j) {
            CHECK(s.grad_E(i, j) ==
                  doctest::Approx(ge[j]).epsilon(1e-5));
            CHECK(s.grad_A(i, j) ==
                  doctest::Approx(ga[j]).epsilon(1e-5));
        }
        // Hessian row against FD of the analytic gradient
        EMFieldSample s2p = eval_plane_waves(modes, xp, t);
        for (int jj = 0; jj < 3; ++jj)
            for (int k = 0; k < 3; ++k) {
                const double fd2 =
                    (s2p.grad_A(jj, k) - sm.grad_A(jj, k)) / (2.0 * h);
                CHECK(s.hess_A.comp[k](i, jj) ==
                      doctest::Approx(fd2).epsilon(1e-4));
            }
    }
}

TEST_CASE("CP mode helicity and spin closed forms") {
    const double e0 = 2.5;
    std::vector<PlaneWaveMode> modes = {make_cp_mode_z(w0, e0)};
    const double k = w0 / si::c;
    const double inv_mu0 = 1.0 / u.mu0;
    // averaged over phase these are constant; check at several points
    for (double z : {0.0, 0.3e-6, 0.77e-6}) {
        EMFieldSample s = eval_plane_waves(modes, Vec3(0.1e-6, 0.2e-6, z),
                                           0.3e-15);
        const double hel = inv_mu0 * s.A.dot(s.B);
        CHECK(hel == doctest::Approx(inv_mu0 * k / (2.0 * w0 * w0) * e0 * e0)
                         .epsilon(1e-12));
        const Vec3 spin = u.eps0 * s.E.cross(s.A);
        CHECK(spin.z() ==
              doctest::Approx(u.eps0 * e0 * e0 / (2.0 * w0)).epsilon(1e-12));
        CHECK(std::abs(spin.x()) < 1e-12 * spin.z());
        CHECK(std::abs(spin.y()) < 1e-12 * spin.z());
    }
}

TEST_CASE("gauge roundtrip leaves potentials unchanged to rounding") {
    std::vector<PlaneWaveMode> modes = {make_cp_mode_z(w0, 1.0),
                                        make_cp_mode_z(1.5 * w0, 0.4)};
    const Vec3 x(0.21e-6, -0.13e-6, 0.05e-6);
    const double t = 1.1e-15;
    const double q = 2.0 * M_PI / 0.7e-6;
    EMFieldSample plain = eval_plane_waves(modes, x, t);
    const double amp = plain.A.norm();  // gauge scale matched to the field
    GaugeFunction g = gauge_sin_x(q, amp);
    EMFieldSample shifted = eval_plane_waves(modes, x, t, UnitSystem::SI(),
                                             &g);
    const double ulp2 = 2.0 * std::numeric_limits<double>::epsilon();
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(shifted.A[i] - plain.A[i]) <= ulp2 * amp);
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(shifted.grad_A(i, j) - plain.grad_A(i, j)) <=
                  ulp2 * std::max(plain.grad_A.cwiseAbs().maxCoeff(),
                                  amp * q));
    }
}

TEST_CASE("empty mode list gives zero sample") {
    EMFieldSample s = eval_plane_waves({}, Vec3(1, 2, 3), 0.5);
    CHECK(s.E.norm() == 0.0);
    CHECK(s.B.norm() == 0.0);
    CHECK(s.A.norm() == 0.0);
    CHECK(s.grad_E.norm() == 0.0);
}
