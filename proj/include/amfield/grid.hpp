#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "amfield/types.hpp"

namespace amfield {

// Uniform Cartesian sampling lattice plus time samples.  Iteration order
// is row-major with x fastest; all exports and reductions follow it, so
// results are bit-stable across runs.
struct GridSpec {
    Vec3 origin = Vec3::Zero();     // position of node (0,0,0)
    Vec3 spacing = Vec3::Ones();    // h per axis, > 0
    int nx = 5, ny = 5, nz = 5;     // >= 5 each
    double t0 = 0.0;
    double dt = 1.0;
    int nt = 3;                     // >= 3

    void validate() const {
        if (nx < 5 || ny < 5 || nz < 5)
            throw std::invalid_argument("GridSpec: dims must be >= 5");
        if (nt < 3) throw std::invalid_argument("GridSpec: nt must be >= 3");
        if (!(spacing.x() > 0 && spacing.y() > 0 && spacing.z() > 0))
            throw std::invalid_argument("GridSpec: spacing must be positive");
    }

    std::size_t npoints() const {
        return static_cast<std::size_t>(nx) * ny * nz;
    }
    std::size_t index(int ix, int iy, int iz) const {
        return static_cast<std::size_t>(ix) +
               static_cast<std::size_t>(nx) *
                   (static_cast<std::size_t>(iy) +
                    static_cast<std::size_t>(ny) * iz);
    }
    Vec3 point(int ix, int iy, int iz) const {
        return origin + Vec3(ix * spacing.x(), iy * spacing.y(), iz * spacing.z());
    }
    double time(int it) const { return t0 + it * dt; }

    bool interior(int ix, int iy, int iz, int margin) const {
        return ix >= margin && ix < nx - margin && iy >= margin &&
               iy < ny - margin && iz >= margin && iz < nz - margin;
    }
};

template <typename T>
struct Grid {
    GridSpec spec;
    std::vector<T> data;

    Grid() = default;
    explicit Grid(const GridSpec& s) : spec(s), data(s.npoints()) {}

    T& at(int ix, int iy, int iz) { return data[spec.index(ix, iy, iz)]; }
    const T& at(int ix, int iy, int iz) const {
        return data[spec.index(ix, iy, iz)];
    }

    template <typename F>  // f(ix, iy, iz, x)
    void fill(F&& f) {
        for (int iz = 0; iz < spec.nz; ++iz)
            for (int iy = 0; iy < spec.ny; ++iy)
                for (int ix = 0; ix < spec.nx; ++ix)
                    at(ix, iy, iz) = f(ix, iy, iz, spec.point(ix, iy, iz));
    }
};

using ScalarGrid = Grid<double>;
using VecGrid = Grid<Vec3>;
using TensorGrid = Grid<Tensor2>;

}  // namespace amfield
