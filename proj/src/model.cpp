// model.cpp - Coupling profiles and sector enumeration

#include "cspin/model.hpp"
#include "cspin/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace cspin {

namespace {

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream os;
        os << "build_couplings: " << field << " must be positive and finite (got " << value << ")";
        fail(ErrorCode::invalid_argument, os.str());
    }
}

void fill_means(CouplingProfile& p) {
    const double n = static_cast<double>(p.alphas.size());
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double a : p.alphas) {
        sum += a;
        sum_sq += a * a;
    }
    p.a1 = sum / n;
    p.a2 = std::sqrt(sum_sq / n);
}

} // namespace

double CouplingProfile::beta() const { return 2.0 * std::sqrt(static_cast<double>(n_bath)) * a2 / omega0; }

CouplingProfile build_couplings(int n_bath, double omega0, double alpha0, double k0, double exponent) {
    if (n_bath < 1) {
        fail(ErrorCode::invalid_argument, "build_couplings: n_bath must be >= 1 (got " + std::to_string(n_bath) + ")");
    }
    require_positive(omega0, "omega0");
    require_positive(alpha0, "alpha0");
    require_positive(k0, "k0");
    require_positive(exponent, "exponent");

    CouplingProfile p;
    p.n_bath = n_bath;
    p.omega0 = omega0;
    p.alpha0 = alpha0;
    p.k0 = k0;
    p.exponent = exponent;
    p.alphas.resize(static_cast<std::size_t>(n_bath));
    for (int k = 1; k <= n_bath; ++k) {
        p.alphas[static_cast<std::size_t>(k - 1)] = alpha0 * std::exp(-std::pow(k / k0, exponent));
    }
    fill_means(p);
    return p;
}

CouplingProfile couplings_from_values(std::span<const double> alphas, double omega0) {
    if (alphas.empty()) fail(ErrorCode::invalid_argument, "couplings_from_values: need at least one coupling");
    if (!(omega0 > 0.0)) fail(ErrorCode::invalid_argument, "couplings_from_values: omega0 must be positive");
    CouplingProfile p;
    p.n_bath = static_cast<int>(alphas.size());
    p.omega0 = omega0;
    p.alphas.assign(alphas.begin(), alphas.end());
    for (double a : p.alphas) {
        if (!std::isfinite(a) || a < 0.0) fail(ErrorCode::invalid_argument, "couplings_from_values: alpha_k must be finite and >= 0");
    }
    fill_means(p);
    p.alpha0 = *std::max_element(p.alphas.begin(), p.alphas.end());
    return p;
}

std::uint64_t state_space_dimension(int n_bath) {
    if (n_bath < 0 || 2 * n_bath + 2 > 63) fail(ErrorCode::invalid_argument, "state_space_dimension: n_bath out of range");
    return (std::uint64_t{1} << (2 * n_bath + 2)) - 1;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

double k3_value(const CouplingProfile& profile, std::uint32_t mask) {
    double k3 = 0.0;
    for (int k = 0; k < profile.n_bath; ++k) {
        const double a = profile.alphas[static_cast<std::size_t>(k)];
        k3 += ((mask >> k) & 1u) ? a : -a;
    }
    return 0.5 * k3;
}

int SectorTable::index_of(double m) const {
    const double j = m + 0.5 * n_bath;
    const double jr = std::round(j);
    if (std::abs(j - jr) > 1e-9 || jr < 0 || jr > n_bath) {
        std::ostringstream os;
        os << "invalid sector label m = " << m << " for N = " << n_bath;
        fail(ErrorCode::invalid_argument, os.str());
    }
    return static_cast<int>(jr);
}

const SectorEntry& SectorTable::at_m(double m) const { return sectors[static_cast<std::size_t>(index_of(m))]; }

SectorTable build_sectors(const CouplingProfile& profile, int enumeration_cap) {
    const int n = profile.n_bath;
    if (n > enumeration_cap) {
        fail(ErrorCode::resource_limit, "build_sectors: N = " + std::to_string(n) + " exceeds the enumeration cap of " +
                                            std::to_string(enumeration_cap) +
                                            " bath spins (2^N configurations); raise the cap explicitly to proceed");
    }
    if (n > 30) fail(ErrorCode::resource_limit, "build_sectors: masks are limited to 30 bath spins");

    SectorTable table;
    table.n_bath = n;
    table.sectors.resize(static_cast<std::size_t>(n + 1));
    for (int j = 0; j <= n; ++j) {
        auto& s = table.sectors[static_cast<std::size_t>(j)];
        s.m = sector_m(n, j);
        s.degeneracy = binomial(n, j);
        s.configs.reserve(s.degeneracy);
        s.k3_values.reserve(s.degeneracy);
    }
    const std::uint32_t count = std::uint32_t{1} << n;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        auto& s = table.sectors[static_cast<std::size_t>(std::popcount(mask))];
        s.configs.push_back(mask);
        s.k3_values.push_back(k3_value(profile, mask));
    }
    return table;
}

Block BlockDensity::reduced() const {
    Block sum = Block::Zero();
    for (const auto& b : blocks) sum += b;
    return sum;
}

double BlockDensity::total_trace() const {
    double t = 0.0;
    for (const auto& b : blocks) t += b.trace().real();
    return t;
}

void validate_density_matrix(const Block& rho, const char* what) {
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (!rho.allFinite() || herm > 1e-12) fail(ErrorCode::validation, std::string(what) + ": matrix is not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-12) fail(ErrorCode::validation, std::string(what) + ": trace is not 1");
    Eigen::SelfAdjointEigenSolver<Block> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-12) fail(ErrorCode::validation, std::string(what) + ": matrix is not positive semidefinite");
}

std::vector<double> bath_sector_weights(int n_bath, const BathSpec& bath) {
    std::vector<double> w(static_cast<std::size_t>(n_bath + 1), 0.0);
    if (bath.kind == BathSpec::Kind::unpolarized) {
        const double scale = std::ldexp(1.0, -n_bath);
        for (int j = 0; j <= n_bath; ++j) w[static_cast<std::size_t>(j)] = scale * static_cast<double>(binomial(n_bath, j));
        return w;
    }
    SectorTable labels;
    labels.n_bath = n_bath;
    double total = 0.0;
    for (const auto& [m, weight] : bath.weights) {
        if (!(weight >= 0.0) || !std::isfinite(weight)) {
            fail(ErrorCode::validation, "bath weights must be finite and nonnegative");
        }
        const int j = labels.index_of(m);
        w[static_cast<std::size_t>(j)] += weight;
        total += weight;
    }
    if (std::abs(total - 1.0) > 1e-12) fail(ErrorCode::validation, "bath weights must sum to 1");
    return w;
}

BlockDensity initial_block_state(const Block& rho_s, int n_bath, const BathSpec& bath) {
    if (n_bath < 1) fail(ErrorCode::invalid_argument, "initial_block_state: n_bath must be >= 1");
    validate_density_matrix(rho_s, "initial_block_state");
    const auto w = bath_sector_weights(n_bath, bath);
    BlockDensity state;
    state.blocks.reserve(w.size());
    for (double wj : w) state.blocks.push_back(wj * rho_s);
    return state;
}

Block excited_state() {
    Block b = Block::Zero();
    b(0, 0) = 1.0;
    return b;
}

Block superposition_state() { return Block::Constant(Complex(0.5, 0.0)); }

} // namespace cspin
