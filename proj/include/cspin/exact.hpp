// exact.hpp - Numerically exact propagation of the full model in total-S_z sectors
//
// H = (omega0/2) sigma_3 + 2 sigma_3 K_3 + 2 (sigma_+ K_- + sigma_- K_+) is real symmetric in the
// product basis and conserves sigma_3/2 + J_3, so each sector with q up spins (central spin included)
// is diagonalized once and evaluated at arbitrary times.

#pragma once

#include "cspin/model.hpp"
#include "cspin/trajectory.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace cspin {

inline constexpr int default_exact_cap = 12;

struct ProductBasisState {
    bool central_up{true};
    std::uint32_t bath{0};
};

struct SectorHamiltonian {
    int excitations{0};     // q = number of up spins, central spin included
    double total_sz{0.0};   // q - (N+1)/2
    std::vector<ProductBasisState> basis;  // central-up states first, each group in ascending mask order
    int n_central_up{0};
    Eigen::MatrixXd matrix;
    Eigen::VectorXd energies;
    Eigen::MatrixXd vectors;  // columns are eigenvectors
};

struct ExactModel {
    CouplingProfile profile;
    std::vector<SectorHamiltonian> sectors;  // indexed by q = 0..N+1
    std::vector<int> row_of;                 // full product index -> row within its sector

    int n_bath() const { return profile.n_bath; }
    std::size_t dimension() const { return std::size_t{2} << profile.n_bath; }
};

// Full product-basis index: central |+> occupies [0, 2^N), central |-> occupies [2^N, 2^(N+1)).
inline std::size_t product_index(int n_bath, bool central_up, std::uint32_t bath) {
    return (central_up ? 0 : (std::size_t{1} << n_bath)) + bath;
}

ExactModel build_sector_hamiltonians(const CouplingProfile& profile, int cap = default_exact_cap);

enum class ExactStrategy {
    batched,     // ensemble sums folded into per-sector eigenbasis quadratic forms
    per_member,  // explicit propagation of every pure member of the initial mixture
};

struct ExactOptions {
    ExactStrategy strategy{ExactStrategy::batched};
    std::size_t time_chunk{256};
};

// Reduced central-spin density matrices in the rotating frame at the requested times.
std::vector<Block> evolve_exact_density(const ExactModel& model, const BlockDensity& initial,
                                        const std::vector<double>& times, const ExactOptions& options = {});

TrajectoryRecord evolve_exact(const ExactModel& model, const BlockDensity& initial, const std::vector<double>& times,
                              const ExactOptions& options = {});

// Pure-state utilities over the full 2^(N+1) product basis.
Eigen::VectorXcd product_state(int n_bath, const Eigen::Vector2cd& central, std::uint32_t bath_mask);
Eigen::VectorXcd propagate(const ExactModel& model, const Eigen::VectorXcd& psi, double t);
double energy(const ExactModel& model, const Eigen::VectorXcd& psi);
double total_sz(int n_bath, const Eigen::VectorXcd& psi);
Block reduce_to_central(int n_bath, const Eigen::VectorXcd& psi);  // Schroedinger picture

} // namespace cspin
