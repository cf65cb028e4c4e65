// test_model.cpp - couplings and bath sectors

#include "cspin/error.hpp"
#include "cspin/model.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <set>

using namespace cspin;

TEST_CASE("gaussian profile values and moments") {
    const auto p = build_couplings(10, 1.0, 0.01, 5.0, 2.0);
    REQUIRE(p.alphas.size() == 10);
    CHECK(p.alphas[0] == doctest::Approx(0.01 * std::exp(-0.04)).epsilon(1e-15));
    CHECK(p.alphas[0] == doctest::Approx(0.0096079).epsilon(1e-5));
    CHECK(std::round(p.beta() * 100.0) / 100.0 == doctest::Approx(0.03));

    double mean = 0.0, sq = 0.0;
    for (double a : p.alphas) {
        mean += a;
        sq += a * a;
    }
    mean /= 10.0;
    sq /= 10.0;
    CHECK(std::abs(p.a1 - mean) <= 1e-14 * p.a1);
    CHECK(std::abs(p.a2 * p.a2 - sq) <= 1e-14 * p.a2 * p.a2);
}

TEST_CASE("uniform override gives a1 = a2") {
    const std::vector<double> v(7, 0.02);
    const auto p = couplings_from_values(v, 1.0);
    CHECK(p.a1 == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(p.a2 == doctest::Approx(0.02).epsilon(1e-15));
}

TEST_CASE("invalid profile parameters name the field") {
    auto message = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::invalid_argument);
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message([] { build_couplings(0, 1.0, 0.01, 5.0); }).find("n_bath") != std::string::npos);
    CHECK(message([] { build_couplings(4, -1.0, 0.01, 5.0); }).find("omega0") != std::string::npos);
    CHECK(message([] { build_couplings(4, 1.0, 0.0, 5.0); }).find("alpha0") != std::string::npos);
    CHECK(message([] { build_couplings(4, 1.0, 0.01, 0.0); }).find("k0") != std::string::npos);
    CHECK(message([] { build_couplings(4, 1.0, 0.01, 2.0, -2.0); }).find("exponent") != std::string::npos);
}

TEST_CASE("state space dimension") {
    CHECK(state_space_dimension(10) == 4194303ULL);
    CHECK(state_space_dimension(1) == 15ULL);
}

TEST_CASE("sector table bookkeeping") {
    const auto p4 = build_couplings(4, 1.0, 0.01, 2.0);
    const auto s4 = build_sectors(p4);
    CHECK(s4.at_m(0.0).degeneracy == 6);

    const auto p = build_couplings(10, 1.0, 0.01, 5.0);
    const auto s = build_sectors(p);
    std::uint64_t total = 0;
    std::set<std::uint32_t> seen;
    for (const auto& e : s.sectors) {
        total += e.degeneracy;
        CHECK(e.configs.size() == e.degeneracy);
        for (std::size_t c = 0; c < e.configs.size(); ++c) {
            CHECK(seen.insert(e.configs[c]).second);
            CHECK(std::popcount(e.configs[c]) - 5.0 == e.m);
            double k3 = 0.0;
            for (int k = 0; k < 10; ++k) k3 += 0.5 * p.alphas[static_cast<std::size_t>(k)] * ((e.configs[c] >> k & 1u) ? 1.0 : -1.0);
            CHECK(std::abs(k3 - e.k3_values[c]) <= 1e-15);
        }
    }
    CHECK(total == 1024);
    CHECK(seen.size() == 1024);
}

TEST_CASE("odd N uses half-integer sector labels") {
    const auto s = build_sectors(build_couplings(3, 1.0, 0.01, 1.5));
    CHECK(s.sectors.size() == 4);
    CHECK(s.sectors.front().m == -1.5);
    CHECK(s.index_of(0.5) == 2);
    CHECK_THROWS_AS(s.index_of(0.0), Error);
}

TEST_CASE("uniform couplings give k3 = c m") {
    const std::vector<double> v(6, 0.03);
    const auto s = build_sectors(couplings_from_values(v, 1.0));
    for (const auto& e : s.sectors) {
        for (double k3 : e.k3_values) CHECK(k3 == doctest::Approx(0.03 * e.m).epsilon(1e-14));
    }
}

TEST_CASE("enumeration cap raises a resource-limit error") {
    const auto p = build_couplings(17, 1.0, 0.01, 8.5);
    try {
        build_sectors(p);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::resource_limit);
        CHECK(std::string(e.what()).find("cap") != std::string::npos);
    }
    CHECK(build_sectors(p, 17).sectors.size() == 18);
}

TEST_CASE("initial block states") {
    SUBCASE("excited state, unpolarized bath") {
        const auto b = initial_block_state(excited_state(), 10, BathSpec::unpolarized());
        CHECK(b.blocks.back().trace().real() == doctest::Approx(1.0 / 1024.0));
        CHECK(b.total_trace() == doctest::Approx(1.0));
        CHECK(b.population_plus() == doctest::Approx(1.0));
    }
    SUBCASE("superposition with sector weights") {
        const auto b = initial_block_state(superposition_state(), 4, BathSpec::sector({{-1.0, 0.25}, {2.0, 0.75}}));
        CHECK(b.total_trace() == doctest::Approx(1.0));
        CHECK(std::abs(b.coherence() - Complex(0.5, 0.0)) < 1e-15);
    }
    SUBCASE("weight concentrated on m = 0") {
        const Block rho = superposition_state();
        const auto b = initial_block_state(rho, 4, BathSpec::sector({{0.0, 1.0}}));
        for (int j = 0; j <= 4; ++j) {
            if (j == 2) CHECK((b.blocks[2] - rho).norm() < 1e-15);
            else CHECK(b.blocks[static_cast<std::size_t>(j)].norm() == 0.0);
        }
    }
}

TEST_CASE("initial state validation") {
    Block bad_trace;
    bad_trace << 0.6, 0.0, 0.0, 0.6;
    Block not_psd;
    not_psd << 0.5, 0.8, 0.8, 0.5;
    Block not_hermitian;
    not_hermitian << 0.5, Complex(0.1, 0.1), Complex(0.1, 0.1), 0.5;
    for (const Block& r : {bad_trace, not_psd, not_hermitian}) {
        try {
            initial_block_state(r, 3, BathSpec::unpolarized());
            FAIL("expected a validation error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::validation);
        }
    }
    CHECK_THROWS_AS(initial_block_state(excited_state(), 3, BathSpec::sector({{0.5, -0.5}, {1.5, 1.5}})), Error);
    CHECK_THROWS_AS(initial_block_state(excited_state(), 3, BathSpec::sector({{0.5, 0.4}})), Error);
    CHECK_THROWS_AS(initial_block_state(excited_state(), 3, BathSpec::sector({{0.0, 1.0}})), Error);
}

TEST_CASE("random initial states satisfy the block invariants") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 6;
        const double p = u(rng);
        const double r = std::sqrt(p * (1 - p)) * u(rng);
        Block rho;
        rho << p, std::polar(r, 6.0 * u(rng)), 0.0, 1 - p;
        rho(1, 0) = std::conj(rho(0, 1));
        std::map<double, double> w;
        double tot = 0.0;
        for (int j = 0; j <= n; ++j) tot += (w[sector_m(n, j)] = u(rng));
        for (auto& [m, x] : w) x /= tot;
        const auto b = initial_block_state(rho, n, BathSpec::sector(w));
        CHECK(b.total_trace() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK((b.reduced() - rho).cwiseAbs().maxCoeff() < 1e-14);
        for (const auto& blk : b.blocks) {
            CHECK((blk - blk.adjoint()).norm() < 1e-15);
            CHECK(blk.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() > -1e-15);
        }
    }
}
