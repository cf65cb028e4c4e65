// model.hpp - Coupling profiles and bath sector bookkeeping for the central spin model
//
// Conventions used throughout the library:
//   * central spin basis index 0 = |+>, index 1 = |-> (sigma_3 eigenstates)
//   * bath spin k (1-based in the coupling profile) is bit k-1 of a configuration mask, set = up
//   * a bath sector is addressed by its index j = N/2 + m, i.e. the number of up bath spins

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace cspin {

using Complex = std::complex<double>;
using Block = Eigen::Matrix2cd;

inline constexpr int default_enumeration_cap = 16;

struct CouplingProfile {
    int n_bath{0};
    double omega0{1.0};
    double alpha0{0.0};
    double k0{0.0};
    double exponent{2.0};
    std::vector<double> alphas;  // alphas[k-1] = alpha_k
    double a1{0.0};              // arithmetic mean of alpha_k
    double a2{0.0};              // root mean square of alpha_k

    // beta = 2 sqrt(N) A2 / omega0
    double beta() const;
};

// Gaussian-type profile alpha_k = alpha0 exp(-(k/k0)^exponent), k = 1..N.
CouplingProfile build_couplings(int n_bath, double omega0, double alpha0, double k0, double exponent = 2.0);

// Profile from explicit coupling constants (uniform override, random couplings, ...).
// alpha0/k0/exponent are left at zero since no analytic profile generated the values.
CouplingProfile couplings_from_values(std::span<const double> alphas, double omega0);

// Dimension of the space of density matrices of the total system, 2^(2N+2) - 1.
std::uint64_t state_space_dimension(int n_bath);

// Sector label m for sector index j (j up spins out of N).
inline double sector_m(int n_bath, int j) { return j - 0.5 * n_bath; }

struct SectorEntry {
    double m{0.0};
    std::uint64_t degeneracy{0};
    std::vector<std::uint32_t> configs;
    std::vector<double> k3_values;  // (1/2) sum_k alpha_k s_k per config
};

struct SectorTable {
    int n_bath{0};
    std::vector<SectorEntry> sectors;  // indexed by j = N/2 + m

    const SectorEntry& at_m(double m) const;
    int index_of(double m) const;  // throws on an invalid label
};

double k3_value(const CouplingProfile& profile, std::uint32_t mask);

SectorTable build_sectors(const CouplingProfile& profile, int enumeration_cap = default_enumeration_cap);

std::uint64_t binomial(int n, int k);

// Family {rho_m}; reduced state is their sum.
struct BlockDensity {
    std::vector<Block> blocks;  // indexed by j = N/2 + m

    int n_bath() const { return static_cast<int>(blocks.size()) - 1; }
    Block reduced() const;
    double total_trace() const;
    Complex coherence() const { return reduced()(0, 1); }
    double population_plus() const { return reduced()(0, 0).real(); }
};

// Bath specification for product initial states rho_S (x) rho_B with rho_B block diagonal in the sectors.
struct BathSpec {
    enum class Kind { unpolarized, sector_weights };
    Kind kind{Kind::unpolarized};
    std::map<double, double> weights;  // m -> weight, used when kind == sector_weights

    static BathSpec unpolarized() { return {}; }
    static BathSpec sector(std::map<double, double> w) { return {Kind::sector_weights, std::move(w)}; }
};

// Normalized sector weights w_j for a bath spec (sum to 1).
std::vector<double> bath_sector_weights(int n_bath, const BathSpec& bath);

void validate_density_matrix(const Block& rho, const char* what);

BlockDensity initial_block_state(const Block& rho_s, int n_bath, const BathSpec& bath);

// Frequently used central-spin states.
Block excited_state();       // |+><+|
Block superposition_state(); // (|+> + |->)(<+| + <-|)/2

} // namespace cspin
