// block_ode.hpp - Adaptive integration of coupled 2x2 block master equations
//
// Every block master equation handled here has the form
//   d rho_j/dt = u_j s+ rho_{j+1} s-  +  l_j s- rho_{j-1} s+
//              - a_j s+s- rho_j - a_j^* rho_j s+s- - b_j s-s+ rho_j - b_j^* rho_j s-s+
//              + i h_j [s3, rho_j] - d_j [s3, [s3, rho_j]]
// with time-dependent coefficients supplied by the caller.

#pragma once

#include "cspin/model.hpp"

#include <functional>
#include <vector>

namespace cspin {

struct BlockRates {
    std::vector<double> gain_from_upper;   // u_j
    std::vector<double> gain_from_lower;   // l_j
    std::vector<Complex> loss_plus;        // a_j
    std::vector<Complex> loss_minus;       // b_j
    std::vector<double> shift;             // h_j
    std::vector<double> dephasing;         // d_j

    explicit BlockRates(std::size_t n = 0)
        : gain_from_upper(n, 0.0), gain_from_lower(n, 0.0), loss_plus(n), loss_minus(n), shift(n, 0.0), dephasing(n, 0.0) {}
};

using RateFunction = std::function<void(double t, BlockRates& rates)>;

struct OdeTolerances {
    double relative{1e-10};
    double absolute{1e-12};
};

struct BlockTrajectory {
    std::vector<double> times;
    std::vector<std::vector<Block>> states;  // states[k][j]

    double population_plus(std::size_t k) const;
};

void block_derivative(const std::vector<Block>& rho, const BlockRates& rates, std::vector<Block>& drho);

BlockTrajectory integrate_block_system(const BlockDensity& initial, const std::vector<double>& times, const RateFunction& rates,
                                       const OdeTolerances& tol = {});

} // namespace cspin
