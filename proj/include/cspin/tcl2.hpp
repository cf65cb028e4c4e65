// tcl2.hpp - Second-order TCL master equation with the correlated sector projection
//
// Block variables rho_m(t) = Tr_B{Pi_m rho(t)} in the interaction picture of
// H0 = (omega0/2) sigma_3 + 2 sigma_3 K_3. Coherences are reported in the rotating frame of the
// central spin, which multiplies sector coherences by <exp(-4 i K_3 t)>_m.

#pragma once

#include "cspin/block_ode.hpp"
#include "cspin/model.hpp"
#include "cspin/spectra.hpp"
#include "cspin/trajectory.hpp"

#include <memory>
#include <vector>

namespace cspin {

struct Tcl2Model {
    CouplingProfile profile;
    std::shared_ptr<const SectorCombs> combs;
    BlockDensity initial;
};

Tcl2Model make_tcl2_model(const CouplingProfile& profile, const BlockDensity& initial,
                          int enumeration_cap = default_enumeration_cap);

// Same combs, different initial condition.
Tcl2Model with_initial(const Tcl2Model& model, const BlockDensity& initial);

// int_0^t dt1 int_0^t1 dt2 [f_m(t2) + g_m^*(t2)]
Complex lambda_coh(const Tcl2Model& model, double m, double t);

// 2 Re int_0^t dt1 int_0^t1 dt2 [g_{m+1}(t2) + f_m(t2)]
double lambda_pop(const Tcl2Model& model, double m, double t);

// 2 Re int_0^t dtau g_{m+1}(tau)
double mu(const Tcl2Model& model, double m, double t);

// C(t) = sum_m C_m(0) <exp(-4iK3 t)>_m exp(-Lambda^coh_m(t))
std::vector<Complex> coherence_tcl2(const Tcl2Model& model, const std::vector<double>& times);

struct PopulationQuadrature {
    double step_frequency_product{0.1};  // h * omega_max of the initial grid
    double tolerance{1e-9};              // successive-halving stopping criterion
    int max_halvings{10};
};

// P_+(t) from the pairwise conservation P_m^+ + P_{m+1}^- = const. With P_-(0) = 0 this is
//   P_+(t) = sum_m P_m^+(0) e^{-Lambda^pop_m(t)} [1 + int_0^t e^{Lambda^pop_m} mu_m].
std::vector<double> population_tcl2(const Tcl2Model& model, const std::vector<double>& times,
                                    const PopulationQuadrature& quad = {});

TrajectoryRecord tcl2_trajectory(const Tcl2Model& model, const std::vector<double>& times);

// Direct ODE integration of the block system; valid for any block initial state.
BlockTrajectory integrate_blocks(const Tcl2Model& model, const std::vector<double>& times, const OdeTolerances& tol = {});

// Rotating-frame record from a block trajectory of integrate_blocks.
TrajectoryRecord tcl2_record_from_blocks(const Tcl2Model& model, const BlockTrajectory& traj, const char* method = "tcl2-ode");

} // namespace cspin
