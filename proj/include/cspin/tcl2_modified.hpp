// tcl2_modified.hpp - TCL2 in the modified interaction picture H0 = (omega0/2) s3 + 2 A2 s3 J3
//
// Correlation functions collapse to single lines f_m = B+(m) e^{i Omega+(m) tau},
// g_m = B-(m) e^{i Omega-(m) tau}, which makes coherences and populations fully analytic.

#pragma once

#include "cspin/block_ode.hpp"
#include "cspin/model.hpp"
#include "cspin/trajectory.hpp"

#include <vector>

namespace cspin {

struct ModifiedPictureParams {
    int n_bath{0};
    double omega0{1.0};
    double a1{0.0};
    double a2{0.0};
    double beta{0.0};
    // indexed by sector j = N/2 + m
    std::vector<double> omega_plus;   // omega0 + 4 A2 (m + 1/2)
    std::vector<double> omega_minus;  // -omega0 + 4 A2 (-m + 1/2)
    std::vector<double> b_plus;       // 4 A2^2 (N/2 - m)
    std::vector<double> b_minus;      // 4 A2^2 (N/2 + m)

    double m_of(int j) const { return sector_m(n_bath, j); }
    // (N^2 - 4 m^2)/(N - 1) (A2^2 - A1^2); the prefactor of the inhomogeneous dephasing
    double dephasing_rate(int j) const;
};

ModifiedPictureParams modified_params(const CouplingProfile& profile);

Complex lambda_coh_mod(const ModifiedPictureParams& params, double m, double t);
double lambda_pop_mod(const ModifiedPictureParams& params, double m, double t);

// C(t) = C(0) sum_m N_m/2^N exp(-Lambda^coh_m(t)) for the unpolarized bath.
std::vector<Complex> coherence_mod(const ModifiedPictureParams& params, Complex c0, const std::vector<double>& times);
// Sector coherences C_m(0) taken from an arbitrary block initial state.
std::vector<Complex> coherence_mod(const ModifiedPictureParams& params, const BlockDensity& initial, const std::vector<double>& times);

// P_+(t) = sum_m N_m/2^N [ (N/2+m+1)/(N+1) + (N/2-m)/(N+1) exp(-Lambda^pop_m(t)) ] for P_+(0) = 1.
std::vector<double> population_mod(const ModifiedPictureParams& params, const std::vector<double>& times);
// General block initial state via P_m^+ + P_{m+1}^- conservation.
std::vector<double> population_mod(const ModifiedPictureParams& params, const BlockDensity& initial, const std::vector<double>& times);

// P_+(t) ~ 1 - beta^2 [1 - exp(-2 N A2^2 t^2) cos(omega0 t)]
std::vector<double> population_large_n(const CouplingProfile& profile, const std::vector<double>& times);

inline constexpr double large_n_beta_warning = 0.3;

TrajectoryRecord mod_trajectory(const ModifiedPictureParams& params, const CouplingProfile& profile, const BlockDensity& initial,
                                const std::vector<double>& times);

// Coherence columns are NaN: the large-N formula only describes the population.
TrajectoryRecord large_n_trajectory(const CouplingProfile& profile, const BlockDensity& initial, const std::vector<double>& times);

BlockTrajectory integrate_blocks_mod(const ModifiedPictureParams& params, const CouplingProfile& profile, const BlockDensity& initial,
                                     const std::vector<double>& times, const OdeTolerances& tol = {});

// Rotating-frame record: sector coherences pick up exp(-4 i A2 m t).
TrajectoryRecord mod_record_from_blocks(const ModifiedPictureParams& params, const CouplingProfile& profile, const BlockDensity& initial,
                                        const BlockTrajectory& traj, const char* method = "tcl2mod-ode");

} // namespace cspin
