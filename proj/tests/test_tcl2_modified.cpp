// test_tcl2_modified.cpp - modified interaction picture

#include "cspin/error.hpp"
#include "cspin/tcl2.hpp"
#include "cspin/tcl2_modified.hpp"

#include <doctest.h>

#include <cmath>

using namespace cspin;

namespace {

std::vector<double> grid(double t_max, int n) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = t_max * i / (n - 1);
    return t;
}

} // namespace

TEST_CASE("modified-picture parameters") {
    const auto p = build_couplings(10, 1.0, 0.01, 5.0);
    const auto mp = modified_params(p);
    CHECK(mp.b_plus.back() == 0.0);
    CHECK(mp.b_minus.front() == 0.0);
    CHECK(std::round(mp.beta * 100.0) / 100.0 == doctest::Approx(0.03));
    for (int j = 0; j <= 10; ++j) {
        const auto u = static_cast<std::size_t>(j);
        const auto mirror = static_cast<std::size_t>(10 - j);
        CHECK(mp.b_plus[u] == doctest::Approx(mp.b_minus[mirror]).epsilon(1e-15));
        // neighbouring sectors exchange one excitation: Omega-(m+1) = -Omega+(m)
        if (j < 10) CHECK(mp.omega_minus[u + 1] == doctest::Approx(-mp.omega_plus[u]).epsilon(1e-15));
    }
    const double c = 0.04;
    const std::vector<double> v(6, c);
    const auto mu = modified_params(couplings_from_values(v, 1.0));
    for (int j = 0; j <= 6; ++j) CHECK(mu.omega_plus[static_cast<std::size_t>(j)] == doctest::Approx(1.0 + 4 * c * (sector_m(6, j) + 0.5)));
    CHECK(mu.dephasing_rate(3) == doctest::Approx(0.0));
}

TEST_CASE("closed forms at t = 0 and basic bounds") {
    const auto p = build_couplings(10, 1.0, 0.01, 5.0);
    const auto mp = modified_params(p);
    CHECK(std::abs(coherence_mod(mp, Complex(0.5, 0.0), {0.0})[0] - 0.5) < 1e-15);
    CHECK(population_mod(mp, {0.0})[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(population_large_n(p, {0.0})[0] == 1.0);
    const double beta = p.beta();
    CHECK(population_large_n(p, {1e6})[0] == doctest::Approx(1.0 - beta * beta).epsilon(1e-12));
    for (double pv : population_mod(mp, grid(3000.0, 3001))) {
        CHECK(pv <= 1.0 + 1e-15);
        CHECK(pv >= 1.0 - 3.0 * beta * beta);
    }
    for (int j = 0; j <= 10; ++j) {
        for (double t : {0.3, 40.0, 2000.0}) CHECK(lambda_pop_mod(mp, sector_m(10, j), t) >= 0.0);
    }
    // top sector: the decaying term carries zero weight
    CHECK(lambda_pop_mod(mp, 5.0, 100.0) >= 0.0);
}

TEST_CASE("uniform couplings: pictures coincide") {
    const std::vector<double> v(6, 0.015);
    const auto p = couplings_from_values(v, 1.0);
    const auto mp = modified_params(p);
    for (const auto* st : {"superposition", "excited"}) {
        const Block rho = std::string(st) == "excited" ? excited_state() : superposition_state();
        const auto init = initial_block_state(rho, 6, BathSpec::unpolarized());
        const auto t = grid(3000.0, 601);
        const auto a = tcl2_trajectory(make_tcl2_model(p, init), t);
        const auto b = mod_trajectory(mp, p, init, t);
        for (std::size_t k = 0; k < t.size(); ++k) {
            CHECK(std::abs(a.coherence(k) - b.coherence(k)) < 1e-9);
            CHECK(std::abs(a.population[k] - b.population[k]) < 1e-7);
        }
        // block ODEs of the two pictures as well
        const auto ta = integrate_blocks(make_tcl2_model(p, init), t);
        const auto tb = integrate_blocks_mod(mp, p, init, t);
        for (std::size_t k = 0; k < t.size(); ++k) {
            for (std::size_t j = 0; j < ta.states[k].size(); ++j) {
                CHECK(std::abs(ta.states[k][j](0, 0) - tb.states[k][j](0, 0)) < 1e-7);
                CHECK(std::abs(ta.states[k][j](1, 1) - tb.states[k][j](1, 1)) < 1e-7);
            }
        }
    }
}

TEST_CASE("closed forms agree with the modified block ODE") {
    const auto p = build_couplings(8, 1.0, 0.02, 4.0);
    const auto mp = modified_params(p);
    Block rho;
    rho << 0.3, Complex(-0.2, 0.25), Complex(-0.2, -0.25), 0.7;
    const auto init = initial_block_state(rho, 8, BathSpec::sector({{-4.0, 0.1}, {0.0, 0.6}, {2.0, 0.3}}));
    const auto t = grid(800.0, 401);
    const auto closed = mod_trajectory(mp, p, init, t);
    const auto traj = integrate_blocks_mod(mp, p, init, t);
    const auto ode = mod_record_from_blocks(mp, p, init, traj);
    for (std::size_t k = 0; k < t.size(); ++k) {
        CHECK(std::abs(closed.coherence(k) - ode.coherence(k)) < 1e-7);
        CHECK(std::abs(closed.population[k] - ode.population[k]) < 1e-7);
        Complex tr{0.0, 0.0};
        for (const auto& b : traj.states[k]) tr += b.trace();
        CHECK(std::abs(tr - 1.0) < 1e-9);
    }
}

TEST_CASE("series switchover is smooth") {
    // tune omega0 so that one Omega+ sits near the small-phase threshold at t
    const auto base = build_couplings(4, 1.0, 0.1, 2.0);
    const double t = 10.0;
    for (double scale : {0.9, 1.1}) {
        auto p = base;
        const double target = scale * 1e-4 / t;
        // Omega+(m = -2) = omega0 + 4 A2 (-1.5)
        p.omega0 = target + 6.0 * p.a2;
        const auto mp = modified_params(p);
        const double w = mp.omega_plus[0];
        CHECK(std::abs(w - target) < 1e-12);
        // Taylor series of (1 - cos x)/w^2 to x^6, free of cancellation
        const double x2 = (w * t) * (w * t);
        const double expect = 8.0 * p.a2 * p.a2 * 5.0 * t * t * (0.5 - x2 / 24.0 + x2 * x2 / 720.0 - x2 * x2 * x2 / 40320.0);
        const double got = lambda_pop_mod(mp, -2.0, t);
        CHECK(std::abs(got - expect) < 1e-10 * std::max(1.0, expect));
    }
}

TEST_CASE("error paths") {
    const std::vector<double> one{0.02};
    const auto p1 = couplings_from_values(one, 1.0);
    const auto mp1 = modified_params(p1);
    const auto init1 = initial_block_state(excited_state(), 1, BathSpec::unpolarized());
    try {
        integrate_blocks_mod(mp1, p1, init1, {0.0, 1.0});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unsupported_state);
    }
    const auto p = build_couplings(4, 1.0, 0.01, 2.0);
    const auto sup = initial_block_state(superposition_state(), 4, BathSpec::unpolarized());
    CHECK_THROWS_AS(large_n_trajectory(p, sup, {0.0}), Error);
    const auto rec = large_n_trajectory(p, initial_block_state(excited_state(), 4, BathSpec::unpolarized()), {0.0, 1.0});
    CHECK(rec.method == "largen");
    CHECK(std::isnan(rec.coherence_re[1]));
    CHECK_THROWS_AS(lambda_coh_mod(modified_params(p), 0.5, 1.0), Error);
}
