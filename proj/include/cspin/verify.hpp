// verify.hpp - Independent reference computations used by the test and check suites

#pragma once

#include "cspin/comb.hpp"
#include "cspin/model.hpp"

#include <vector>

namespace cspin {

// Dense Hamiltonian on the full 2^(N+1) space built from Kronecker products of Pauli matrices.
// Ordering matches product_index: the central spin is the most significant factor, bath spin k is bit k-1.
Eigen::MatrixXcd dense_hamiltonian(const CouplingProfile& profile);

// rho_S(t) in the rotating frame from exp(-iHt) rho(0) exp(iHt) with a dense matrix exponential.
// Limited to N <= 3.
std::vector<Block> dense_reduced_evolution(const CouplingProfile& profile, const Block& rho_s, const BathSpec& bath,
                                           const std::vector<double>& times);

// N = 1 with |+> and an unpolarized bath spin:
// P_+(t) = 1 - 8 a^2/W^2 sin^2(W t/2), W = sqrt(omega0^2 + 16 a^2)
double rabi_population(double omega0, double alpha, double t);

// int_0^t dt1 int_0^t1 dt2 F(t2) by cumulative composite Simpson with step h = h_omega / max|omega|.
Complex nested_simpson_double_integral(const FrequencyComb& comb, double t, double h_omega = 5e-3);

} // namespace cspin
