#pragma once

#include <random>

#include "yuoh/qutrit.hpp"

namespace yuoh {

// Haar-ish random pure state: complex Gaussian 3-vector, normalized.
inline StateVector random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec3 v;
    for (auto& a : v.v) a = cplx(g(rng), g(rng));
    return StateVector(v);
}

// Random full-rank density operator via the Ginibre ensemble: ρ = GG†/Tr.
inline DensityOperator random_density(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat3 ginibre;
    for (auto& e : ginibre.m) e = cplx(g(rng), g(rng));
    Mat3 rho = ginibre * adjoint(ginibre);
    const double tr = std::real(trace(rho));
    rho = (1.0 / tr) * rho;
    // Symmetrize away rounding so the validating constructor accepts it.
    rho = 0.5 * (rho + adjoint(rho));
    return DensityOperator(rho);
}

}  // namespace yuoh
