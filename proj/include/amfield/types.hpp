#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>
#include <complex>
#include <stdexcept>

// Vector/tensor core.  Rank-2 tensors use the index convention
// T(i,j): row i = current/transport direction, column j = angular-momentum
// direction.  Divergence always contracts the first index, (div T)_j =
// d_i T(i,j).

namespace amfield {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Tensor2 = Eigen::Matrix3d;
using CTensor2 = Eigen::Matrix3cd;
using Complex = std::complex<double>;

// d_i d_j F_k, stored as three tensors hess[k](i,j) per field component k.
struct Hess3 {
    Tensor2 comp[3];
    Hess3() {
        comp[0].setZero();
        comp[1].setZero();
        comp[2].setZero();
    }
};

inline bool all_finite(const Vec3& v) {
    return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z());
}

// result(i,j) = a_i b_j
inline Tensor2 outer(const Vec3& a, const Vec3& b) {
    return a * b.transpose();
}

inline double trace(const Tensor2& t) { return t.trace(); }

// eps(i,j,k) v_k: antisymmetric, eps_contract(v)(0,1) = v.z().
inline Tensor2 eps_contract(const Vec3& v) {
    Tensor2 t;
    t << 0.0, v.z(), -v.y(),
        -v.z(), 0.0, v.x(),
        v.y(), -v.x(), 0.0;
    return t;
}

// Levi-Civita symbol, for the occasional fully-indexed contraction.
inline int levi_civita(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace amfield
