// tcl2_modified.cpp - Analytic and ODE solutions in the modified interaction picture

#include "cspin/tcl2_modified.hpp"
#include "cspin/comb.hpp"
#include "cspin/error.hpp"

#include <cmath>
#include <limits>

namespace cspin {

namespace {

int sector_index(int n_bath, double m) {
    SectorTable labels;
    labels.n_bath = n_bath;
    return labels.index_of(m);
}

Complex lambda_coh_at(const ModifiedPictureParams& p, int j, double t) {
    const double m = p.m_of(j);
    const auto u = static_cast<std::size_t>(j);
    // B+/W+^2 (1 - e^{iW+ t}) + i t B+/W+  ==  B+ D(W+, t), likewise for the B- pair with -W-
    return Complex(0.0, 4.0 * p.a1 * m * t) + 2.0 * p.dephasing_rate(j) * t * t +
           p.b_plus[u] * phase_double_integral(p.omega_plus[u], t) + p.b_minus[u] * phase_double_integral(-p.omega_minus[u], t);
}

// (1 - cos(W t))/W^2 with its series below |W t| = 1e-4
double one_minus_cos_over_sq(double w, double t) {
    const double x = w * t;
    if (std::abs(x) < small_phase_threshold) {
        const double x2 = x * x;
        return t * t * (0.5 - x2 / 24.0 + x2 * x2 / 720.0);
    }
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s / (w * w);
}

double lambda_pop_at(const ModifiedPictureParams& p, int j, double t) {
    return 8.0 * p.a2 * p.a2 * (p.n_bath + 1) * one_minus_cos_over_sq(p.omega_plus[static_cast<std::size_t>(j)], t);
}

} // namespace

double ModifiedPictureParams::dephasing_rate(int j) const {
    if (n_bath < 2) return 0.0;
    const double m = m_of(j);
    const double n = n_bath;
    return (n * n - 4.0 * m * m) / (n - 1.0) * (a2 * a2 - a1 * a1);
}

ModifiedPictureParams modified_params(const CouplingProfile& profile) {
    ModifiedPictureParams p;
    p.n_bath = profile.n_bath;
    p.omega0 = profile.omega0;
    p.a1 = profile.a1;
    p.a2 = profile.a2;
    p.beta = profile.beta();
    const double half = 0.5 * profile.n_bath;
    for (int j = 0; j <= profile.n_bath; ++j) {
        const double m = sector_m(profile.n_bath, j);
        p.omega_plus.push_back(profile.omega0 + 4.0 * p.a2 * (m + 0.5));
        p.omega_minus.push_back(-profile.omega0 + 4.0 * p.a2 * (-m + 0.5));
        p.b_plus.push_back(4.0 * p.a2 * p.a2 * (half - m));
        p.b_minus.push_back(4.0 * p.a2 * p.a2 * (half + m));
    }
    return p;
}

Complex lambda_coh_mod(const ModifiedPictureParams& params, double m, double t) {
    return lambda_coh_at(params, sector_index(params.n_bath, m), t);
}

double lambda_pop_mod(const ModifiedPictureParams& params, double m, double t) {
    return lambda_pop_at(params, sector_index(params.n_bath, m), t);
}

std::vector<Complex> coherence_mod(const ModifiedPictureParams& params, Complex c0, const std::vector<double>& times) {
    BlockDensity init;
    const auto w = bath_sector_weights(params.n_bath, BathSpec::unpolarized());
    for (double wj : w) {
        Block b = Block::Zero();
        b(0, 1) = wj * c0;
        init.blocks.push_back(b);
    }
    return coherence_mod(params, init, times);
}

std::vector<Complex> coherence_mod(const ModifiedPictureParams& params, const BlockDensity& initial, const std::vector<double>& times) {
    validate_times(times, "coherence_mod");
    if (initial.n_bath() != params.n_bath) fail(ErrorCode::invalid_argument, "coherence_mod: initial state size does not match N");
    std::vector<Complex> out(times.size(), Complex(0.0, 0.0));
    for (int j = 0; j <= params.n_bath; ++j) {
        const Complex c0 = initial.blocks[static_cast<std::size_t>(j)](0, 1);
        if (c0 == Complex(0.0, 0.0)) continue;
        for (std::size_t k = 0; k < times.size(); ++k) out[k] += c0 * std::exp(-lambda_coh_at(params, j, times[k]));
    }
    return out;
}

std::vector<double> population_mod(const ModifiedPictureParams& params, const std::vector<double>& times) {
    return population_mod(params, initial_block_state(excited_state(), params.n_bath, BathSpec::unpolarized()), times);
}

std::vector<double> population_mod(const ModifiedPictureParams& params, const BlockDensity& initial, const std::vector<double>& times) {
    validate_times(times, "population_mod");
    const int n = params.n_bath;
    if (initial.n_bath() != n) fail(ErrorCode::invalid_argument, "population_mod: initial state size does not match N");
    std::vector<double> out(times.size(), 0.0);
    for (int j = 0; j <= n; ++j) {
        const double m = params.m_of(j);
        const double plus = initial.blocks[static_cast<std::size_t>(j)](0, 0).real();
        const double upper_minus = (j < n) ? initial.blocks[static_cast<std::size_t>(j + 1)](1, 1).real() : 0.0;
        const double paired = plus + upper_minus;
        if (paired == 0.0) continue;
        // stationary share of the pair that ends up in P_m^+
        const double ratio = (0.5 * n + m + 1.0) / (n + 1.0);
        const double stationary = paired * ratio;
        for (std::size_t k = 0; k < times.size(); ++k) {
            out[k] += stationary + (plus - stationary) * std::exp(-lambda_pop_at(params, j, times[k]));
        }
    }
    return out;
}

std::vector<double> population_large_n(const CouplingProfile& profile, const std::vector<double>& times) {
    validate_times(times, "population_large_n");
    const double beta = profile.beta();
    const double rate = 2.0 * profile.n_bath * profile.a2 * profile.a2;
    std::vector<double> out(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        out[k] = 1.0 - beta * beta * (1.0 - std::exp(-rate * t * t) * std::cos(profile.omega0 * t));
    }
    return out;
}

TrajectoryRecord mod_trajectory(const ModifiedPictureParams& params, const CouplingProfile& profile, const BlockDensity& initial,
                                const std::vector<double>& times) {
    const auto coh = coherence_mod(params, initial, times);
    const auto pop = population_mod(params, initial, times);
    TrajectoryRecord rec;
    rec.method = "tcl2mod";
    rec.fingerprint = model_fingerprint(profile, initial);
    rec.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        rec.times[k] = times[k];
        rec.set(k, coh[k], pop[k]);
    }
    return rec;
}

TrajectoryRecord large_n_trajectory(const CouplingProfile& profile, const BlockDensity& initial, const std::vector<double>& times) {
    const double p_minus = initial.reduced()(1, 1).real();
    if (std::abs(p_minus) > 1e-12) {
        fail(ErrorCode::unsupported_state, "population_large_n: the large-N formula requires P_+(0) = 1");
    }
    const auto pop = population_large_n(profile, times);
    TrajectoryRecord rec;
    rec.method = "largen";
    rec.fingerprint = model_fingerprint(profile, initial);
    rec.resize(times.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < times.size(); ++k) {
        rec.times[k] = times[k];
        rec.set(k, Complex(nan, nan), pop[k]);
    }
    return rec;
}

BlockTrajectory integrate_blocks_mod(const ModifiedPictureParams& params, const CouplingProfile& profile, const BlockDensity& initial,
                                     const std::vector<double>& times, const OdeTolerances& tol) {
    (void)profile;
    const int n = params.n_bath;
    if (n < 2) fail(ErrorCode::unsupported_state, "integrate_blocks_mod: requires N >= 2 (dephasing prefactor has N - 1 in the denominator)");
    if (initial.n_bath() != n) fail(ErrorCode::invalid_argument, "integrate_blocks_mod: initial state size does not match N");
    RateFunction rates = [params, n](double t, BlockRates& r) {
        for (int j = 0; j <= n; ++j) {
            const auto u = static_cast<std::size_t>(j);
            const Complex ep = phase_single_integral(params.omega_plus[u], t);
            const Complex em = phase_single_integral(params.omega_minus[u], t);
            r.loss_plus[u] = params.b_plus[u] * ep;
            r.loss_minus[u] = params.b_minus[u] * em;
            // B-(m+1) 2 cos(W+(m) tau) and B+(m-1) 2 cos(W-(m) tau)
            r.gain_from_upper[u] = (j < n) ? 2.0 * params.b_minus[u + 1] * ep.real() : 0.0;
            r.gain_from_lower[u] = (j > 0) ? 2.0 * params.b_plus[u - 1] * em.real() : 0.0;
            r.shift[u] = 2.0 * params.m_of(j) * (params.a2 - params.a1);
            r.dephasing[u] = params.dephasing_rate(j) * t;
        }
    };
    return integrate_block_system(initial, times, rates, tol);
}

TrajectoryRecord mod_record_from_blocks(const ModifiedPictureParams& params, const CouplingProfile& profile, const BlockDensity& initial,
                                        const BlockTrajectory& traj, const char* method) {
    TrajectoryRecord rec;
    rec.method = method;
    rec.fingerprint = model_fingerprint(profile, initial);
    rec.resize(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        Complex c{0.0, 0.0};
        double p = 0.0;
        for (std::size_t j = 0; j < traj.states[k].size(); ++j) {
            c += traj.states[k][j](0, 1) * std::polar(1.0, -4.0 * params.a2 * params.m_of(static_cast<int>(j)) * t);
            p += traj.states[k][j](0, 0).real();
        }
        rec.times[k] = t;
        rec.set(k, c, p);
    }
    return rec;
}

} // namespace cspin
