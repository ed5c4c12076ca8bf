#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amfield/am_quantities.hpp"
#include "amfield/diff_ops.hpp"
#include "amfield/dirac.hpp"
#include "amfield/grid.hpp"
#include "amfield/plane_waves.hpp"

namespace amfield {

struct WrongScenario : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IncommensurateModes : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EquationId {
    TotalEq6,
    SpinDirac9a,
    OamDirac9b,
    SpinEM9c,
    OamEM9d,
    SourceFreeSpin12,
    PlaneWave14,
    Belinfante,
    SumConsistency,
};

const char* equation_name(EquationId id);

enum class DerivativeMode { Analytic, FD };

// Pointwise-residual statistics for one conservation law over one grid.
// max_rel uses the per-point scale: the largest participating term there,
// floored at 1e-30.
struct ResidualReport {
    EquationId equation = EquationId::TotalEq6;
    std::string scenario;
    double max_abs = 0.0;
    double max_rel = 0.0;
    double l2_rel = 0.0;
    double scale_at_max = 0.0;
    Vec3 worst_point = Vec3::Zero();
    double worst_time = 0.0;
    std::size_t points = 0;
    DerivativeMode mode = DerivativeMode::Analytic;
    int fd_order = 0;  // 0 in analytic mode
    double tolerance = 0.0;
    bool pass = false;
    bool exact = false;  // every sampled point had zero scale and residual
    std::string note;
};

// A pointwise-evaluable EM source.  The sampler must fill the analytic
// derivative entries; FD mode re-derives them by stencils on the same
// sampler.
struct EMScenario {
    std::string name;
    std::function<EMFieldSample(const Vec3&, double)> sample;
    Vec3 origin = Vec3::Zero();  // r-origin for all OAM quantities
};

struct DiracScenario {
    std::string name;
    std::vector<SpinorMode> modes;
    Vec3 origin = Vec3::Zero();
};

// Replaces every derivative entry of the analytic sample at (x, t) with a
// central-difference estimate from neighbouring sampler calls, leaving the
// field values themselves analytic.  The residual formulas downstream are
// shared between both modes.
EMFieldSample fd_resample(const EMScenario& sc, const Vec3& x, double t,
                          const Vec3& h, double dt, int order);

ResidualReport check_total_continuity(const EMScenario& sc,
                                      const GridSpec& grid,
                                      DerivativeMode mode, int fd_order,
                                      double tolerance);

// Returns {SpinEM9c, OamEM9d, SumConsistency} for an EM scenario.
std::vector<ResidualReport> check_spin_oam_exchange(const EMScenario& sc,
                                                    const GridSpec& grid,
                                                    DerivativeMode mode,
                                                    int fd_order,
                                                    double tolerance);

// Returns {SpinDirac9a, OamDirac9b, SumConsistency} plus the probability
// continuity residual folded into the 9a report's note.
std::vector<ResidualReport> check_spin_oam_exchange_dirac(
    const DiracScenario& sc, const GridSpec& grid, double tolerance);

// The four Fig. 2 columns in cylindrical components, rho/phi/z per term:
// term order is dt_spin, div_hcur, grad_hel, tau_em.
struct SpinTermMaps {
    GridSpec grid;
    ScalarGrid maps[4][3];
};

ResidualReport check_sourcefree_spin(const EMScenario& sc,
                                     const GridSpec& grid,
                                     DerivativeMode mode, int fd_order,
                                     double tolerance,
                                     SpinTermMaps* maps_out = nullptr);

// Eq. (14): both numerically evaluated sides against the closed form for
// two co-propagating circularly polarized plane waves along +z.
ResidualReport check_planewave_closedform(
    const std::vector<PlaneWaveMode>& modes, const GridSpec& grid,
    double tolerance);

ResidualReport check_belinfante(const EMScenario& sc, const GridSpec& grid,
                                DerivativeMode mode, int fd_order,
                                double tolerance);

struct GlobalIntegralReport {
    // |integral of dM/dt| / (L * max |dM/dt|): quadrature cancellation
    // relative to the integrand scale (dM/dt ~ omega M, so normalizing by
    // |M| itself would demand sub-ulp cancellation)
    double integral_rel = 0.0;
    double period = 0.0;        // common spatial period used
    bool pass = false;
};

GlobalIntegralReport global_integral_check(
    const std::vector<PlaneWaveMode>& modes, double time, double tolerance);

}  // namespace amfield
