// test_exact.cpp - sector diagonalization and exact propagation

#include "cspin/error.hpp"
#include "cspin/exact.hpp"
#include "cspin/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cspin;

TEST_CASE("N = 1 sector Hamiltonian by hand") {
    const double a = 0.07;
    const std::vector<double> v{a};
    const auto m = build_sector_hamiltonians(couplings_from_values(v, 1.0));
    REQUIRE(m.sectors.size() == 3);
    const auto& s = m.sectors[1];
    REQUIRE(s.basis.size() == 2);
    CHECK(s.basis[0].central_up);
    CHECK(s.basis[0].bath == 0u);
    CHECK_FALSE(s.basis[1].central_up);
    CHECK(s.basis[1].bath == 1u);
    Eigen::Matrix2d expected;
    expected << 0.5 - a, 2 * a, 2 * a, -0.5 - a;
    CHECK((s.matrix - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("sector dimensions cover the product basis") {
    for (int n : {1, 4, 7}) {
        const auto m = build_sector_hamiltonians(build_couplings(n, 1.0, 0.02, 0.5 * n));
        std::size_t total = 0;
        for (const auto& s : m.sectors) total += s.basis.size();
        CHECK(total == (std::size_t{2} << n));
    }
}

TEST_CASE("zero couplings leave only the free Hamiltonian") {
    const std::vector<double> zeros(3, 0.0);
    const auto p = couplings_from_values(zeros, 1.0);
    const auto m = build_sector_hamiltonians(p);
    for (const auto& s : m.sectors) {
        for (Eigen::Index r = 0; r < s.matrix.rows(); ++r) {
            for (Eigen::Index c = 0; c < s.matrix.cols(); ++c) {
                const double expect = (r == c) ? (s.basis[static_cast<std::size_t>(r)].central_up ? 0.5 : -0.5) : 0.0;
                CHECK(s.matrix(r, c) == doctest::Approx(expect));
            }
        }
    }
    const auto rec = evolve_exact(m, initial_block_state(superposition_state(), 3, BathSpec::unpolarized()), {0.0, 3.0, 1234.5});
    for (std::size_t k = 0; k < rec.size(); ++k) CHECK(std::abs(rec.coherence(k) - 0.5) < 1e-13);
}

TEST_CASE("exact cap") {
    try {
        build_sector_hamiltonians(build_couplings(13, 1.0, 0.01, 6.5));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::resource_limit);
    }
}

TEST_CASE("Rabi oscillation for one bath spin") {
    const double a = 0.05;
    const std::vector<double> v{a};
    const auto m = build_sector_hamiltonians(couplings_from_values(v, 1.0));
    // |+> with the bath spin down: full two-level Rabi amplitude
    const auto psi0 = product_state(1, Eigen::Vector2cd(1.0, 0.0), 0u);
    for (double t : {0.0, 1.0, 17.0, 600.0}) {
        const Block r = reduce_to_central(1, propagate(m, psi0, t));
        const double w = std::sqrt(0.25 + 4 * a * a);
        const double expect = 1.0 - 4 * a * a / (0.25 + 4 * a * a) * std::pow(std::sin(w * t), 2);
        CHECK(r(0, 0).real() == doctest::Approx(expect).epsilon(1e-12));
    }
    const auto rec = evolve_exact(m, initial_block_state(excited_state(), 1, BathSpec::unpolarized()), {0.0, 2.5, 100.0});
    for (std::size_t k = 0; k < rec.size(); ++k) CHECK(std::abs(rec.population[k] - rabi_population(1.0, a, rec.times[k])) < 1e-12);
}

TEST_CASE("batched and per-member strategies agree with the dense oracle") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.01, 0.3);
    for (int n = 1; n <= 3; ++n) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (auto& x : v) x = u(rng);
        const auto p = couplings_from_values(v, 1.0);
        Block rho;
        rho << 0.8, Complex(0.1, -0.3), Complex(0.1, 0.3), 0.2;
        const std::vector<double> times{0.0, 0.4, 9.0, 333.0};
        const auto ref = dense_reduced_evolution(p, rho, BathSpec::unpolarized(), times);
        const auto m = build_sector_hamiltonians(p);
        const auto init = initial_block_state(rho, n, BathSpec::unpolarized());
        for (auto strategy : {ExactStrategy::batched, ExactStrategy::per_member}) {
            ExactOptions opt;
            opt.strategy = strategy;
            opt.time_chunk = 3;  // exercise chunk boundaries
            const auto got = evolve_exact_density(m, init, times, opt);
            for (std::size_t k = 0; k < times.size(); ++k) CHECK((got[k] - ref[k]).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
}

TEST_CASE("batched path matches per-member propagation at N = 8") {
    const auto p = build_couplings(8, 1.0, 0.03, 4.0);
    const auto m = build_sector_hamiltonians(p);
    Block rho;
    rho << 0.6, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.4;
    const auto init = initial_block_state(rho, 8, BathSpec::sector({{-1.0, 0.3}, {0.0, 0.5}, {3.0, 0.2}}));
    const std::vector<double> times{0.0, 5.0, 120.0, 2000.0};
    const auto a = evolve_exact_density(m, init, times, {ExactStrategy::batched, 2});
    const auto b = evolve_exact_density(m, init, times, {ExactStrategy::per_member, 256});
    for (std::size_t k = 0; k < times.size(); ++k) CHECK((a[k] - b[k]).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("pure trajectories conserve norm and energy") {
    const int n = 6;
    const auto p = build_couplings(n, 1.0, 0.05, 3.0);
    const auto m = build_sector_hamiltonians(p);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    Eigen::VectorXcd psi(static_cast<Eigen::Index>(m.dimension()));
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = Complex(g(rng), g(rng));
    psi.normalize();
    const double e0 = energy(m, psi);
    const double s0 = total_sz(n, psi);
    for (double t : {0.1, 50.0, 2500.0}) {
        const auto pt = propagate(m, psi, t);
        CHECK(std::abs(pt.squaredNorm() - 1.0) < 1e-10);
        CHECK(std::abs(energy(m, pt) - e0) < 1e-10 * std::max(1.0, std::abs(e0)));
        CHECK(std::abs(total_sz(n, pt) - s0) < 1e-10 * std::max(1.0, std::abs(s0)));
        const Block r = reduce_to_central(n, pt);
        CHECK(std::abs(r.trace() - 1.0) < 1e-10);
        CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
    const double t1 = 13.7, t2 = 201.3;
    CHECK((propagate(m, propagate(m, psi, t1), t2) - propagate(m, psi, t1 + t2)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("exact trajectories carry method and fingerprint") {
    const auto p = build_couplings(4, 1.0, 0.02, 2.0);
    const auto init = initial_block_state(excited_state(), 4, BathSpec::unpolarized());
    const auto rec = evolve_exact(build_sector_hamiltonians(p), init, {0.0, 1.0});
    CHECK(rec.method == "exact");
    CHECK(rec.fingerprint == model_fingerprint(p, init));
    CHECK(rec.population[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(evolve_exact(build_sector_hamiltonians(p), init, {1.0, 0.5}), Error);
}

TEST_CASE("non-representable initial states are rejected") {
    const auto p = build_couplings(2, 1.0, 0.02, 1.0);
    BlockDensity bad;
    Block b;
    b << 0.5, 0.9, 0.9, 0.5;  // not positive semidefinite
    bad.blocks = {b * 0.25, b * 0.5, b * 0.25};
    try {
        evolve_exact(build_sector_hamiltonians(p), bad, {0.0});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unsupported_state);
    }
}
