// block_ode.cpp - Dormand-Prince integration of block master equations via Boost.Odeint

#include "cspin/block_ode.hpp"
#include "cspin/error.hpp"
#include "cspin/trajectory.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cspin {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<Complex>;

void unpack(const State& x, std::vector<Block>& rho) {
    for (std::size_t j = 0; j < rho.size(); ++j) {
        rho[j] << x[4 * j], x[4 * j + 1], x[4 * j + 2], x[4 * j + 3];
    }
}

void pack(const std::vector<Block>& rho, State& x) {
    for (std::size_t j = 0; j < rho.size(); ++j) {
        x[4 * j] = rho[j](0, 0);
        x[4 * j + 1] = rho[j](0, 1);
        x[4 * j + 2] = rho[j](1, 0);
        x[4 * j + 3] = rho[j](1, 1);
    }
}

struct BlockSystem {
    const RateFunction* rates_fn;
    std::size_t n_blocks;
    BlockRates rates;
    std::vector<Block> rho;
    std::vector<Block> drho;
    double last_t{0.0};
    std::size_t evaluations{0};

    void operator()(const State& x, State& dxdt, double t) {
        last_t = t;
        ++evaluations;
        (*rates_fn)(t, rates);
        unpack(x, rho);
        block_derivative(rho, rates, drho);
        pack(drho, dxdt);
        for (const auto& v : dxdt) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::runtime_error("non-finite derivative");
        }
    }
};

} // namespace

double BlockTrajectory::population_plus(std::size_t k) const {
    double p = 0.0;
    for (const auto& b : states[k]) p += b(0, 0).real();
    return p;
}

void block_derivative(const std::vector<Block>& rho, const BlockRates& r, std::vector<Block>& drho) {
    const std::size_t n = rho.size();
    drho.resize(n);
    const Complex i{0.0, 1.0};
    for (std::size_t j = 0; j < n; ++j) {
        const Block& p = rho[j];
        const Complex a = r.loss_plus[j];
        const Complex b = r.loss_minus[j];
        const double upper = (j + 1 < n) ? r.gain_from_upper[j] * rho[j + 1](1, 1).real() : 0.0;
        const double lower = (j > 0) ? r.gain_from_lower[j] * rho[j - 1](0, 0).real() : 0.0;
        const Complex coh = -a - std::conj(b) + 2.0 * i * r.shift[j] - 4.0 * r.dephasing[j];
        const Complex coh_t = -b - std::conj(a) - 2.0 * i * r.shift[j] - 4.0 * r.dephasing[j];
        Block& d = drho[j];
        d(0, 0) = upper - 2.0 * a.real() * p(0, 0);
        d(1, 1) = lower - 2.0 * b.real() * p(1, 1);
        d(0, 1) = coh * p(0, 1);
        d(1, 0) = coh_t * p(1, 0);
    }
}

BlockTrajectory integrate_block_system(const BlockDensity& initial, const std::vector<double>& times, const RateFunction& rates,
                                       const OdeTolerances& tol) {
    validate_times(times, "integrate_blocks");
    const std::size_t n = initial.blocks.size();
    BlockTrajectory out;
    if (times.empty()) return out;

    BlockSystem sys{&rates, n, BlockRates(n), std::vector<Block>(n), std::vector<Block>(n)};
    State x(4 * n);
    pack(initial.blocks, x);

    // The trajectory starts at t = 0, where the initial block state is given.
    std::vector<double> grid;
    grid.reserve(times.size() + 1);
    if (times.front() > 0.0) grid.push_back(0.0);
    grid.insert(grid.end(), times.begin(), times.end());
    const bool skip_first = times.front() > 0.0;

    auto observer = [&](const State& s, double t) {
        out.times.push_back(t);
        std::vector<Block> blocks(n);
        unpack(s, blocks);
        out.states.push_back(std::move(blocks));
    };

    auto stepper = odeint::make_controlled(tol.absolute, tol.relative, odeint::runge_kutta_dopri5<State>());
    double dt0 = 1e-3;
    if (grid.size() > 1) dt0 = std::min(dt0, std::max(1e-6, (grid.back() - grid.front()) / 1e4));
    try {
        odeint::integrate_times(stepper, std::ref(sys), x, grid.begin(), grid.end(), dt0, observer,
                                odeint::max_step_checker(1000000));
    } catch (const std::exception& e) {
        std::ostringstream os;
        os << "integrate_blocks: integrator failure near t = " << sys.last_t << " after " << sys.evaluations
           << " right-hand-side evaluations (" << e.what() << ")";
        fail(ErrorCode::integrator_failure, os.str());
    }
    if (skip_first) {
        out.times.erase(out.times.begin());
        out.states.erase(out.states.begin());
    }
    return out;
}

} // namespace cspin
