// verify.cpp - Dense and quadrature reference computations

#include "cspin/verify.hpp"
#include "cspin/error.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <bit>
#include <cmath>

namespace cspin {

namespace {

using Mat = Eigen::MatrixXcd;

Mat pauli(char which) {
    Mat s(2, 2);
    const Complex i(0.0, 1.0);
    switch (which) {
    case 'x': s << 0.0, 1.0, 1.0, 0.0; break;
    case 'y': s << 0.0, -i, i, 0.0; break;
    // index 0 is spin up
    default: s << 1.0, 0.0, 0.0, -1.0; break;
    }
    return s;
}

// Operator op acting on factor `site` of `sites` two-level factors, site 0 most significant.
Mat embed(const Mat& op, int site, int sites) {
    Mat out = Mat::Identity(1, 1);
    for (int s = 0; s < sites; ++s) {
        const Mat f = (s == site) ? op : Mat::Identity(2, 2);
        Mat next = Eigen::kroneckerProduct(out, f).eval();
        out = std::move(next);
    }
    return out;
}

// Factor position of bath spin k (1-based): bit k-1 of the bath mask, with index 0 meaning "up".
// The dense basis stores factor bit value 0 for "up", so bath masks are complemented on read-out.
int bath_site(int n, int k) { return n - (k - 1); }

std::size_t dense_index(int n, bool central_up, std::uint32_t bath) {
    const std::uint32_t full = (n >= 32) ? 0xffffffffu : ((1u << n) - 1u);
    const std::size_t c = central_up ? 0 : 1;
    return (c << n) | static_cast<std::size_t>(~bath & full);
}

} // namespace

Eigen::MatrixXcd dense_hamiltonian(const CouplingProfile& profile) {
    const int n = profile.n_bath;
    const int sites = n + 1;
    const std::size_t dim = std::size_t{1} << sites;
    Mat h = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    h += 0.5 * profile.omega0 * embed(pauli('z'), 0, sites);
    for (int k = 1; k <= n; ++k) {
        const double a = profile.alphas[static_cast<std::size_t>(k - 1)];
        const int site = bath_site(n, k);
        for (char p : {'x', 'y', 'z'}) h += a * embed(pauli(p), 0, sites) * embed(pauli(p), site, sites);
    }
    return h;
}

std::vector<Block> dense_reduced_evolution(const CouplingProfile& profile, const Block& rho_s, const BathSpec& bath,
                                           const std::vector<double>& times) {
    const int n = profile.n_bath;
    if (n < 1 || n > 3) fail(ErrorCode::resource_limit, "dense_reduced_evolution: N must be in 1..3");
    validate_density_matrix(rho_s, "dense_reduced_evolution");
    const auto weights = bath_sector_weights(n, bath);
    const std::size_t dim = std::size_t{2} << n;
    const auto d = static_cast<Eigen::Index>(dim);

    Mat rho0 = Mat::Zero(d, d);
    const std::uint32_t configs = 1u << n;
    for (std::uint32_t mask = 0; mask < configs; ++mask) {
        const int j = std::popcount(mask);
        const double p = weights[static_cast<std::size_t>(j)] / static_cast<double>(binomial(n, j));
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                rho0(static_cast<Eigen::Index>(dense_index(n, a == 0, mask)), static_cast<Eigen::Index>(dense_index(n, b == 0, mask))) +=
                    p * rho_s(a, b);
            }
        }
    }

    const Mat h = dense_hamiltonian(profile);
    std::vector<Block> out;
    out.reserve(times.size());
    for (double t : times) {
        const Mat u = (Complex(0.0, -t) * h).exp();
        const Mat rho = u * rho0 * u.adjoint();
        Block r = Block::Zero();
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (std::uint32_t mask = 0; mask < configs; ++mask) {
                    r(a, b) += rho(static_cast<Eigen::Index>(dense_index(n, a == 0, mask)), static_cast<Eigen::Index>(dense_index(n, b == 0, mask)));
                }
            }
        }
        r(0, 1) *= std::polar(1.0, profile.omega0 * t);
        r(1, 0) *= std::polar(1.0, -profile.omega0 * t);
        out.push_back(r);
    }
    return out;
}

double rabi_population(double omega0, double alpha, double t) {
    const double w = std::sqrt(omega0 * omega0 + 16.0 * alpha * alpha);
    const double s = std::sin(0.5 * w * t);
    return 1.0 - 8.0 * alpha * alpha / (w * w) * s * s;
}

Complex nested_simpson_double_integral(const FrequencyComb& comb, double t, double h_omega) {
    if (t <= 0.0) return {0.0, 0.0};
    const double wmax = std::max(comb.max_abs_omega(), 1e-3);
    const auto n = static_cast<std::size_t>(std::ceil(t * wmax / h_omega));
    const std::size_t intervals = n + (n % 2);  // outer rule needs an even count
    const double h = t / static_cast<double>(intervals);

    // inner: G(t_i) = int_0^{t_i} F, one Simpson panel [t_i, t_i + h] with a midpoint sample
    std::vector<Complex> g(intervals + 1);
    g[0] = 0.0;
    Complex left = eval_comb(comb, 0.0);
    for (std::size_t i = 0; i < intervals; ++i) {
        const double a = h * static_cast<double>(i);
        const Complex mid = eval_comb(comb, a + 0.5 * h);
        const Complex right = eval_comb(comb, a + h);
        g[i + 1] = g[i] + h / 6.0 * (left + 4.0 * mid + right);
        left = right;
    }
    // outer: composite Simpson over the nodes
    Complex sum = g[0] + g[intervals];
    for (std::size_t i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * g[i];
    return sum * (h / 3.0);
}

} // namespace cspin
