#include "amfield/fiber.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "amfield/special_functions.hpp"

namespace amfield {

namespace {

const Complex kI{0.0, 1.0};

// Z_m with the negative-order continuation the recurrences assume:
// J_{-m} = (-1)^m J_m, K_{-m} = K_m.
double radial(bool is_k, int m, double arg) {
    const int am = m < 0 ? -m : m;
    if (is_k) return bessel_k(am, arg);
    const double j = bessel_j(am, arg);
    return (m < 0 && (am & 1)) ? -j : j;
}

TermList merged(TermList t) {
    std::sort(t.begin(), t.end(),
              [](const CylTerm& a, const CylTerm& b) { return a.m < b.m; });
    TermList out;
    for (const auto& term : t) {
        if (!out.empty() && out.back().m == term.m)
            out.back().coef += term.coef;
        else
            out.push_back(term);
    }
    return out;
}

// d/dx, d/dy of coef Z_m(q rho) e^{i m phi} via the ladder identities
// J_m' -/+ (m/x) J_m = -/+ J_{m +/- 1} and K_m' -/+ (m/x) K_m = -K_{m +/- 1}.
TermList deriv(const TermList& t, int axis, double q, bool is_k) {
    TermList out;
    out.reserve(2 * t.size());
    for (const auto& term : t) {
        Complex down, up;  // coefficients on m-1 and m+1
        if (axis == 0) {
            down = is_k ? Complex(-0.5 * q) : Complex(0.5 * q);
            up = Complex(-0.5 * q);
        } else {
            down = is_k ? -kI * (0.5 * q) : kI * (0.5 * q);
            up = kI * (0.5 * q);
        }
        out.push_back({term.coef * down, term.m - 1});
        out.push_back({term.coef * up, term.m + 1});
    }
    return merged(out);
}

TermList scaled(const TermList& t, Complex f) {
    TermList out = t;
    for (auto& term : out) term.coef *= f;
    return out;
}

TermList added(const TermList& a, const TermList& b) {
    TermList out = a;
    out.insert(out.end(), b.begin(), b.end());
    return merged(out);
}

Complex eval_terms(const TermList& t, bool is_k, double q, double rho,
                   double phi) {
    Complex sum = 0.0;
    for (const auto& term : t)
        sum += term.coef * radial(is_k, term.m, q * rho) *
               std::exp(kI * (static_cast<double>(term.m) * phi));
    return sum;
}

// Per-point cache: one Bessel evaluation and one angular phase per order m,
// shared across the ~100 term-list evaluations a field sample needs.
struct PointCache {
    bool is_k;
    double q, rho, phi;
    std::map<int, Complex> basis;  // m -> Z_m(q rho) e^{i m phi}

    Complex get(int m) {
        auto it = basis.find(m);
        if (it != basis.end()) return it->second;
        const Complex v =
            radial(is_k, m, q * rho) * std::polar(1.0, m * phi);
        basis.emplace(m, v);
        return v;
    }
};

Complex eval_terms_cached(const TermList& t, PointCache& c) {
    Complex sum = 0.0;
    for (const auto& term : t) sum += term.coef * c.get(term.m);
    return sum;
}

struct CharParams {
    FiberSpec spec;
    double omega = 0.0;
    FiberFamily family = FiberFamily::HE;
    int n = 0;
};

struct CharState {
    double u, w, X, Y, f, rel;
    bool valid;
};

CharState characteristic(const CharParams& p, double beta) {
    CharState s{};
    s.valid = false;
    const double k0 = p.omega / si::c;
    const double n1 = p.spec.core_index, n2 = p.spec.clad_index;
    const double a = p.spec.radius;
    const double u2 = n1 * n1 * k0 * k0 - beta * beta;
    const double w2 = beta * beta - n2 * n2 * k0 * k0;
    if (!(u2 > 0.0) || !(w2 > 0.0)) return s;
    s.u = std::sqrt(u2);
    s.w = std::sqrt(w2);
    const double ua = s.u * a, wa = s.w * a;
    if (ua > kBesselMaxArg || wa > kBesselMaxArg) return s;
    const double jn = bessel_j(p.n, ua);
    const double kn = bessel_k(p.n, wa);
    if (jn == 0.0 || kn == 0.0) return s;
    s.X = bessel_j_prime(p.n, ua) / (ua * jn);
    s.Y = bessel_k_prime(p.n, wa) / (wa * kn);

    double target;
    switch (p.family) {
        case FiberFamily::TE:
            s.f = s.X + s.Y;
            s.rel = std::abs(s.f) /
                    std::max({std::abs(s.X), std::abs(s.Y), 1e-30});
            s.valid = std::isfinite(s.f);
            return s;
        case FiberFamily::TM:
            s.f = n1 * n1 * s.X + n2 * n2 * s.Y;
            s.rel = std::abs(s.f) / std::max({n1 * n1 * std::abs(s.X),
                                              n2 * n2 * std::abs(s.Y), 1e-30});
            s.valid = std::isfinite(s.f);
            return s;
        default: {
            const double R = p.n * (beta / k0) *
                             (1.0 / (ua * ua) + 1.0 / (wa * wa));
            const double b = (n1 * n1 + n2 * n2) * s.Y;
            const double disc = (n1 * n1 - n2 * n2) * (n1 * n1 - n2 * n2) *
                                    s.Y * s.Y +
                                4.0 * n1 * n1 * R * R;
            const double sq = std::sqrt(disc);
            target = (p.family == FiberFamily::HE ? (-b - sq) : (-b + sq)) /
                     (2.0 * n1 * n1);
            s.f = s.X - target;
            s.rel = std::abs(s.f) /
                    std::max({std::abs(s.X), std::abs(target), 1e-30});
            s.valid = std::isfinite(s.f);
            return s;
        }
    }
}

// All guided roots of the characteristic function, ordered from the top
// beta downward.  Sign changes that bisect onto a pole of X are discarded
// by the residual test.
std::vector<double> branch_roots(const CharParams& p, int max_roots) {
    const double k0 = p.omega / si::c;
    const double lo = p.spec.clad_index * k0;
    const double hi = p.spec.core_index * k0;
    const double pad = (hi - lo) * 1e-9;
    const int nscan = 6000;
    std::vector<double> roots;

    double prev_beta = 0.0, prev_f = 0.0;
    bool have_prev = false;
    for (int i = 0; i <= nscan; ++i) {
        const double beta = hi - pad - (hi - lo - 2.0 * pad) * i / nscan;
        CharState s = characteristic(p, beta);
        if (!s.valid) {
            have_prev = false;
            continue;
        }
        if (have_prev && prev_f * s.f < 0.0) {
            double b1 = prev_beta, b2 = beta;  // b1 > b2
            double f1 = prev_f;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (b1 + b2);
                CharState sm = characteristic(p, mid);
                if (!sm.valid) break;
                if (sm.f * f1 <= 0.0) {
                    b2 = mid;
                } else {
                    b1 = mid;
                    f1 = sm.f;
                }
            }
            const double root = 0.5 * (b1 + b2);
            CharState sr = characteristic(p, root);
            if (sr.valid && sr.rel <= 1e-10) {
                roots.push_back(root);
                if (static_cast<int>(roots.size()) >= max_roots) return roots;
            }
        }
        prev_beta = beta;
        prev_f = s.f;
        have_prev = true;
    }
    return roots;
}

void build_region(RegionFields& r, bool is_k, double q, int n, double beta,
                  double omega, double eps, double mu0, Complex a_e,
                  Complex a_h) {
    // Longitudinal components Ez, Hz ~ Z_n(q rho) e^{i n phi}; transverse
    // components from the standard step-index curl relations with
    // q^2 = u^2 (core) or -w^2 (cladding).
    const Complex fq = is_k ? -kI / (q * q) : kI / (q * q);
    TermList ez{{a_e, n}}, hz{{a_h, n}};
    TermList dez[2] = {deriv(ez, 0, q, is_k), deriv(ez, 1, q, is_k)};
    TermList dhz[2] = {deriv(hz, 0, q, is_k), deriv(hz, 1, q, is_k)};

    r.E[0] = scaled(added(scaled(dez[0], beta), scaled(dhz[1], omega * mu0)),
                    fq);
    r.E[1] = scaled(added(scaled(dez[1], beta), scaled(dhz[0], -omega * mu0)),
                    fq);
    r.E[2] = ez;
    r.H[0] = scaled(added(scaled(dhz[0], beta), scaled(dez[1], -omega * eps)),
                    fq);
    r.H[1] = scaled(added(scaled(dhz[1], beta), scaled(dez[0], omega * eps)),
                    fq);
    r.H[2] = hz;

    for (int a = 0; a < 2; ++a)
        for (int j = 0; j < 3; ++j) {
            r.dE[a][j] = deriv(r.E[j], a, q, is_k);
            r.dH[a][j] = deriv(r.H[j], a, q, is_k);
        }
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int j = 0; j < 3; ++j)
                r.d2E[a][b][j] = deriv(r.dE[a][j], b, q, is_k);
}

// Tangential field vector (Ez, Hz, Ephi, Hphi) at rho = a, phi = 0 for a
// given region (at phi = 0, Ephi = Ey and Hphi = Hy).
Eigen::Vector4cd tangential_at_interface(const RegionFields& r, bool is_k,
                                         double q, double a) {
    Eigen::Vector4cd v;
    v[0] = eval_terms(r.E[2], is_k, q, a, 0.0);
    v[1] = eval_terms(r.H[2], is_k, q, a, 0.0);
    v[2] = eval_terms(r.E[1], is_k, q, a, 0.0);
    v[3] = eval_terms(r.H[1], is_k, q, a, 0.0);
    return v;
}

FiberMode assemble_mode(const FiberSpec& spec, FiberFamily family, int n,
                        int m, double omega, double beta, double u, double w,
                        double amplitude) {
    FiberMode mode;
    mode.spec = spec;
    mode.family = family;
    mode.n = n;
    mode.m = m;
    mode.omega = omega;
    mode.beta = beta;
    mode.u = u;
    mode.w = w;
    mode.amplitude = amplitude;

    const double eps1 = si::eps0 * spec.core_index * spec.core_index;
    const double eps2 = si::eps0 * spec.clad_index * spec.clad_index;

    // Continuity matrix on (Aez_core, Ahz_core, Aez_clad, Ahz_clad): each
    // column is the interface tangential response of one unit coefficient.
    Eigen::Matrix4cd M;
    for (int col = 0; col < 4; ++col) {
        RegionFields r;
        const bool is_k = col >= 2;
        const Complex a_e = (col % 2 == 0) ? 1.0 : 0.0;
        const Complex a_h = (col % 2 == 1) ? 1.0 : 0.0;
        build_region(r, is_k, is_k ? w : u, n, beta, omega,
                     is_k ? eps2 : eps1, si::mu0, a_e, a_h);
        Eigen::Vector4cd v = tangential_at_interface(r, is_k, is_k ? w : u,
                                                     spec.radius);
        M.col(col) = (is_k ? -1.0 : 1.0) * v;
    }

    Eigen::Vector4d col_scale, row_scale;
    for (int j = 0; j < 4; ++j) {
        col_scale[j] = M.col(j).cwiseAbs().maxCoeff();
        if (!(col_scale[j] > 0.0))
            throw NoConvergence("fiber mode: degenerate continuity column");
        M.col(j) /= col_scale[j];
    }
    for (int i = 0; i < 4; ++i) {
        row_scale[i] = M.row(i).cwiseAbs().maxCoeff();
        if (row_scale[i] > 0.0) M.row(i) /= row_scale[i];
    }

    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(
        M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(3) > 1e-8 * svd.singularValues()(0))
        throw NoConvergence(
            "fiber mode: continuity system has no null direction (beta off "
            "the dispersion curve)");
    Eigen::Vector4cd v = svd.matrixV().col(3);

    // Deterministic phase: rotate the largest component to the positive
    // real axis.
    int imax = 0;
    for (int j = 1; j < 4; ++j)
        if (std::abs(v[j]) > std::abs(v[imax])) imax = j;
    v *= std::conj(v[imax]) / std::abs(v[imax]);
    for (int j = 0; j < 4; ++j) v[j] /= col_scale[j];

    build_region(mode.core, false, u, n, beta, omega, eps1, si::mu0, v[0],
                 v[1]);
    build_region(mode.clad, true, w, n, beta, omega, eps2, si::mu0, v[2],
                 v[3]);

    // Field scale: |E| at the interface (core side, phi = 0) = amplitude.
    double enorm = 0.0;
    for (int j = 0; j < 3; ++j) {
        const Complex e = eval_terms(mode.core.E[j], false, u, spec.radius,
                                     0.0);
        enorm += std::norm(e);
    }
    enorm = std::sqrt(enorm);
    if (!(enorm > 0.0))
        throw NoConvergence("fiber mode: zero interface field");
    const Complex g = amplitude / enorm;
    build_region(mode.core, false, u, n, beta, omega, eps1, si::mu0, v[0] * g,
                 v[1] * g);
    build_region(mode.clad, true, w, n, beta, omega, eps2, si::mu0, v[2] * g,
                 v[3] * g);
    return mode;
}

void check_request(const FiberSpec& spec, double omega, FiberFamily family,
                   int n, int m) {
    spec.validate();
    if (!(omega > 0.0))
        throw std::invalid_argument("fiber: omega must be > 0");
    if (m < 1) throw std::invalid_argument("fiber: radial index m must be >= 1");
    const bool hybrid = family == FiberFamily::HE || family == FiberFamily::EH;
    if (hybrid && n < 1)
        throw std::invalid_argument("fiber: HE/EH need azimuthal index >= 1");
    if (!hybrid && n != 0)
        throw std::invalid_argument("fiber: TE/TM need azimuthal index 0");
    if (n > kBesselMaxOrder - 3)
        throw std::invalid_argument(
            "fiber: azimuthal index too large for the derivative ladder");
}

}  // namespace

double fiber_characteristic_residual(const FiberMode& mode) {
    CharParams p{mode.spec, mode.omega, mode.family, mode.n};
    CharState s = characteristic(p, mode.beta);
    return s.valid ? s.rel : 1.0;
}

FiberMode solve_fiber_dispersion(const FiberSpec& spec, double omega,
                                 FiberFamily family, int n, int m,
                                 double amplitude) {
    check_request(spec, omega, family, n, m);
    CharParams p{spec, omega, family, n};
    std::vector<double> roots = branch_roots(p, m);
    if (static_cast<int>(roots.size()) < m)
        throw NoGuidedMode(
            "fiber: requested branch not guided at this frequency");
    const double beta = roots[m - 1];
    CharState s = characteristic(p, beta);
    return assemble_mode(spec, family, n, m, omega, beta, s.u, s.w, amplitude);
}

FiberMode beta_match(const FiberSpec& spec, const FiberMode& mode1,
                     FiberFamily family, int n, int m, double omega_guess,
                     double amplitude) {
    check_request(spec, omega_guess, family, n, m);
    const double beta1 = mode1.beta;

    auto beta_at = [&](double om) -> double {
        CharParams p{spec, om, family, n};
        std::vector<double> roots = branch_roots(p, m);
        if (static_cast<int>(roots.size()) < m)
            throw NoGuidedMode("beta_match: branch below cutoff");
        return roots[m - 1];
    };

    auto g = [&](double om) { return beta_at(om) - beta1; };

    double w1 = omega_guess, g1;
    try {
        g1 = g(w1);
    } catch (const NoGuidedMode&) {
        throw NoConvergence("beta_match: branch not guided at the guess");
    }

    // Bracket by doubling steps around the guess; beta grows with omega.
    double w2 = w1, g2 = g1;
    double step = 1e-3 * omega_guess * (g1 > 0 ? -1.0 : 1.0);
    bool bracketed = false;
    for (int k = 0; k < 16 && !bracketed; ++k) {
        const double cand = w1 + step;
        if (cand <= 0.0) break;
        try {
            const double gc = g(cand);
            if (gc * g1 <= 0.0) {
                w2 = cand;
                g2 = gc;
                bracketed = true;
            } else {
                step *= 2.0;
            }
        } catch (const NoGuidedMode&) {
            step *= 0.5;
        }
    }
    if (!bracketed)
        throw NoConvergence("beta_match: could not bracket the frequency");

    double lo = std::min(w1, w2), hi = std::max(w1, w2);
    double glo = w1 < w2 ? g1 : g2;
    double omega2 = 0.5 * (lo + hi);
    bool done = false;
    for (int it = 0; it < 200; ++it) {
        omega2 = 0.5 * (lo + hi);
        const double gm = g(omega2);
        if (std::abs(gm) <= 1e-10 * beta1) {
            done = true;
            break;
        }
        if (gm * glo <= 0.0) {
            hi = omega2;
        } else {
            lo = omega2;
            glo = gm;
        }
    }
    if (!done) throw NoConvergence("beta_match: bisection stalled");
    if (std::abs(omega2 - mode1.omega) <= 1e-9 * mode1.omega)
        throw DegenerateMatch("beta_match: landed on the first mode");

    CharParams p{spec, omega2, family, n};
    const double beta = beta_at(omega2);
    CharState s = characteristic(p, beta);
    return assemble_mode(spec, family, n, m, omega2, beta, s.u, s.w,
                         amplitude);
}

EMFieldSample eval_fiber_modes(const std::vector<FiberMode>& modes,
                               const Vec3& x, double t) {
    EMFieldSample sample;
    sample.position = x;
    sample.time = t;
    sample.units = UnitSystem::SI();
    sample.epsilon = si::eps0;
    if (modes.empty()) return sample;

    const FiberSpec& spec = modes.front().spec;
    const double rho = std::hypot(x.x(), x.y());
    if (rho < 1e-9)
        throw std::domain_error(
            "eval_fiber_modes: evaluation excluded on the fiber axis");
    const double phi = std::atan2(x.y(), x.x());
    const bool core = rho < spec.radius;
    sample.epsilon = si::eps0 * (core ? spec.core_index * spec.core_index
                                      : spec.clad_index * spec.clad_index);

    for (const auto& mode : modes) {
        const RegionFields& r = core ? mode.core : mode.clad;
        const bool is_k = !core;
        const double q = core ? mode.u : mode.w;
        const Complex i_om = kI * mode.omega;
        const Complex ib = kI * mode.beta;

        CVec3 e_ph = CVec3::Zero(), h_ph = CVec3::Zero();
        Eigen::Matrix3cd de = Eigen::Matrix3cd::Zero(),
                        dh = Eigen::Matrix3cd::Zero();
        Complex d2e[3][3][3] = {};
        if (!(is_k && q * rho > kBesselMaxArg)) {  // beyond: K underflows
            const Complex phase =
                std::exp(kI * (mode.beta * x.z() - mode.omega * t));
            PointCache cache{is_k, q, rho, phi, {}};
            for (int j = 0; j < 3; ++j) {
                e_ph[j] = eval_terms_cached(r.E[j], cache) * phase;
                h_ph[j] = eval_terms_cached(r.H[j], cache) * phase;
            }
            for (int a = 0; a < 2; ++a)
                for (int j = 0; j < 3; ++j) {
                    de(a, j) = eval_terms_cached(r.dE[a][j], cache) * phase;
                    dh(a, j) = eval_terms_cached(r.dH[a][j], cache) * phase;
                }
            for (int j = 0; j < 3; ++j) {
                de(2, j) = ib * e_ph[j];
                dh(2, j) = ib * h_ph[j];
            }
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int j = 0; j < 3; ++j) {
                        if (a < 2 && b < 2)
                            d2e[a][b][j] =
                                eval_terms_cached(r.d2E[a][b][j], cache) *
                                phase;
                        else if (a == 2)
                            d2e[a][b][j] = ib * de(b, j);
                        else
                            d2e[a][b][j] = ib * de(a, j);
                    }
        }

        sample.mode_E_phasors.push_back(e_ph);
        sample.E += e_ph.real();
        sample.B += (si::mu0 * h_ph).real().eval();
        sample.A += (e_ph / i_om).real().eval();
        sample.dt_E += (-i_om * e_ph).real().eval();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                sample.grad_E(i, j) += de(i, j).real();
                sample.grad_B(i, j) += (si::mu0 * dh(i, j)).real();
                sample.grad_A(i, j) += (de(i, j) / i_om).real();
                for (int k = 0; k < 3; ++k)
                    sample.hess_A.comp[k](i, j) +=
                        (d2e[i][j][k] / i_om).real();
            }
    }
    return sample;
}

}  // namespace amfield
