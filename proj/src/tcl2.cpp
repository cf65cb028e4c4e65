// tcl2.cpp - Closed-form and ODE solutions of the sector-projected TCL2 master equation

#include "cspin/tcl2.hpp"
#include "cspin/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cspin {

namespace {

int sector_index(const Tcl2Model& model, double m) {
    SectorTable labels;
    labels.n_bath = model.profile.n_bath;
    return labels.index_of(m);
}

// Lines of f_j (enter Lambda^pop only) and g_{j+1} (enter Lambda^pop and mu).
struct PopulationKernel {
    std::vector<double> omega;
    std::vector<Complex> weight;
    std::vector<bool> in_mu;
};

PopulationKernel population_kernel(const SectorCombs& combs, int j) {
    PopulationKernel k;
    for (const auto& l : combs.f_at(j).lines) {
        k.omega.push_back(l.omega);
        k.weight.push_back(l.weight);
        k.in_mu.push_back(false);
    }
    for (const auto& l : combs.g_at(j + 1).lines) {
        k.omega.push_back(l.omega);
        k.weight.push_back(l.weight);
        k.in_mu.push_back(true);
    }
    return k;
}

struct LambdaMu {
    double lambda{0.0};
    double mu{0.0};
};

// Evaluates Lambda^pop and mu on the nodes start + i*step, i < count, using a phase recurrence
// between nodes and the exact kernels wherever |omega t| < 1.
void evaluate_nodes(const PopulationKernel& k, double start, double step, std::size_t count, std::vector<LambdaMu>& out) {
    out.assign(count, {});
    std::vector<Complex> phase(k.omega.size());
    std::vector<Complex> advance(k.omega.size());
    for (std::size_t l = 0; l < k.omega.size(); ++l) {
        phase[l] = std::polar(1.0, k.omega[l] * start);
        advance[l] = std::polar(1.0, k.omega[l] * step);
    }
    for (std::size_t i = 0; i < count; ++i) {
        const double t = start + static_cast<double>(i) * step;
        double lam = 0.0;
        double mu_sum = 0.0;
        for (std::size_t l = 0; l < k.omega.size(); ++l) {
            const double w = k.omega[l];
            const double x = w * t;
            Complex dbl;
            Complex sgl;
            if (std::abs(x) < 1.0) {
                dbl = phase_double_integral(w, t);
                sgl = phase_single_integral(w, t);
            } else {
                const Complex p = phase[l];
                const double inv = 1.0 / w;
                dbl = Complex((1.0 - p.real()) * inv * inv, (x - p.imag()) * inv * inv);
                sgl = Complex(p.imag() * inv, (1.0 - p.real()) * inv);
            }
            lam += (k.weight[l] * dbl).real();
            if (k.in_mu[l]) mu_sum += (k.weight[l] * sgl).real();
            phase[l] *= advance[l];
        }
        out[i] = {2.0 * lam, 2.0 * mu_sum};
    }
}

struct SectorInitial {
    double plus{0.0};   // P_j^+(0)
    double paired{0.0}; // P_j^+(0) + P_{j+1}^-(0)
};

} // namespace

Tcl2Model make_tcl2_model(const CouplingProfile& profile, const BlockDensity& initial, int enumeration_cap) {
    if (initial.n_bath() != profile.n_bath) fail(ErrorCode::invalid_argument, "make_tcl2_model: initial state size does not match N");
    const auto sectors = build_sectors(profile, enumeration_cap);
    Tcl2Model model;
    model.profile = profile;
    model.combs = std::make_shared<const SectorCombs>(build_sector_combs(profile, sectors));
    model.initial = initial;
    return model;
}

Tcl2Model with_initial(const Tcl2Model& model, const BlockDensity& initial) {
    if (initial.n_bath() != model.profile.n_bath) fail(ErrorCode::invalid_argument, "with_initial: initial state size does not match N");
    Tcl2Model out = model;
    out.initial = initial;
    return out;
}

Complex lambda_coh(const Tcl2Model& model, double m, double t) {
    const int j = sector_index(model, m);
    return double_time_integral(model.combs->f_at(j), t) + std::conj(double_time_integral(model.combs->g_at(j), t));
}

double lambda_pop(const Tcl2Model& model, double m, double t) {
    const int j = sector_index(model, m);
    return 2.0 * (double_time_integral(model.combs->g_at(j + 1), t) + double_time_integral(model.combs->f_at(j), t)).real();
}

double mu(const Tcl2Model& model, double m, double t) {
    const int j = sector_index(model, m);
    return 2.0 * single_time_integral(model.combs->g_at(j + 1), t).real();
}

std::vector<Complex> coherence_tcl2(const Tcl2Model& model, const std::vector<double>& times) {
    validate_times(times, "coherence_tcl2");
    const int n = model.profile.n_bath;
    std::vector<Complex> out(times.size(), Complex(0.0, 0.0));
    for (int j = 0; j <= n; ++j) {
        const Complex c0 = model.initial.blocks[static_cast<std::size_t>(j)](0, 1);
        if (c0 == Complex(0.0, 0.0)) continue;
        const auto& f = model.combs->f_at(j);
        const auto& g = model.combs->g_at(j);
        const auto& deph = model.combs->dephasing[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double t = times[k];
            const Complex lambda = double_time_integral(f, t) + std::conj(double_time_integral(g, t));
            out[k] += c0 * eval_comb(deph, t) * std::exp(-lambda);
        }
    }
    return out;
}

std::vector<double> population_tcl2(const Tcl2Model& model, const std::vector<double>& times, const PopulationQuadrature& quad) {
    validate_times(times, "population_tcl2");
    const int n = model.profile.n_bath;
    const std::size_t nt = times.size();
    std::vector<double> result(nt, 0.0);
    if (nt == 0) return result;

    std::vector<SectorInitial> init(static_cast<std::size_t>(n + 1));
    for (int j = 0; j <= n; ++j) {
        const double plus = model.initial.blocks[static_cast<std::size_t>(j)](0, 0).real();
        const double upper_minus = (j < n) ? model.initial.blocks[static_cast<std::size_t>(j + 1)](1, 1).real() : 0.0;
        init[static_cast<std::size_t>(j)] = {plus, plus + upper_minus};
    }

    double omega_max = 0.0;
    std::vector<PopulationKernel> kernels;
    for (int j = 0; j <= n; ++j) {
        kernels.push_back(population_kernel(*model.combs, j));
        for (double w : kernels.back().omega) omega_max = std::max(omega_max, std::abs(w));
    }

    // Output intervals [times[i-1], times[i]] (the first one starts at 0), each split into an even
    // number of Simpson panels with step <= h0.
    std::vector<double> left(nt);
    for (std::size_t i = 0; i < nt; ++i) left[i] = (i == 0) ? 0.0 : times[i - 1];
    const double h0 = omega_max > 0.0 ? quad.step_frequency_product / omega_max : std::numeric_limits<double>::infinity();
    std::vector<std::size_t> panels(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        const double len = times[i] - left[i];
        const double want = std::isfinite(h0) ? std::ceil(len / (2.0 * h0)) : 1.0;
        panels[i] = 2 * std::max<std::size_t>(1, static_cast<std::size_t>(want));
    }

    for (int j = 0; j <= n; ++j) {
        const auto& si = init[static_cast<std::size_t>(j)];
        if (si.plus == 0.0 && si.paired == 0.0) continue;
        const auto& kernel = kernels[static_cast<std::size_t>(j)];

        // node values e^{Lambda} mu per interval, refined by halving
        std::vector<std::vector<double>> integrand(nt);
        std::vector<double> lambda_end(nt);
        std::vector<std::size_t> cur = panels;
        std::vector<LambdaMu> buf;
        for (std::size_t i = 0; i < nt; ++i) {
            const double h = (times[i] - left[i]) / static_cast<double>(cur[i]);
            evaluate_nodes(kernel, left[i], h, cur[i] + 1, buf);
            integrand[i].resize(cur[i] + 1);
            for (std::size_t q = 0; q <= cur[i]; ++q) integrand[i][q] = std::exp(buf[q].lambda) * buf[q].mu;
            lambda_end[i] = buf[cur[i]].lambda;
        }

        auto assemble = [&](std::vector<double>& pj) {
            pj.assign(nt, 0.0);
            double cumulative = 0.0;
            for (std::size_t i = 0; i < nt; ++i) {
                const auto& v = integrand[i];
                const double h = (times[i] - left[i]) / static_cast<double>(cur[i]);
                double s = v.front() + v.back();
                for (std::size_t q = 1; q < cur[i]; ++q) s += (q % 2 ? 4.0 : 2.0) * v[q];
                cumulative += s * h / 3.0;
                pj[i] = std::exp(-lambda_end[i]) * (si.plus + si.paired * cumulative);
            }
        };

        std::vector<double> previous;
        std::vector<double> current;
        assemble(current);
        bool converged = false;
        for (int level = 0; level < quad.max_halvings; ++level) {
            previous = current;
            for (std::size_t i = 0; i < nt; ++i) {
                const std::size_t np = 2 * cur[i];
                const double h = (times[i] - left[i]) / static_cast<double>(np);
                if (h == 0.0) {
                    integrand[i].assign(np + 1, integrand[i].front());
                    cur[i] = np;
                    continue;
                }
                evaluate_nodes(kernel, left[i] + h, 2.0 * h, cur[i], buf);
                std::vector<double> refined(np + 1);
                for (std::size_t q = 0; q <= cur[i]; ++q) refined[2 * q] = integrand[i][q];
                for (std::size_t q = 0; q < cur[i]; ++q) refined[2 * q + 1] = std::exp(buf[q].lambda) * buf[q].mu;
                integrand[i] = std::move(refined);
                cur[i] = np;
            }
            assemble(current);
            double diff = 0.0;
            for (std::size_t i = 0; i < nt; ++i) diff = std::max(diff, std::abs(current[i] - previous[i]));
            if (diff < quad.tolerance) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            fail(ErrorCode::integrator_failure, "population_tcl2: Simpson refinement did not reach tolerance in sector j = " + std::to_string(j));
        }
        for (std::size_t i = 0; i < nt; ++i) result[i] += current[i];
    }
    return result;
}

TrajectoryRecord tcl2_trajectory(const Tcl2Model& model, const std::vector<double>& times) {
    const auto coh = coherence_tcl2(model, times);
    const auto pop = population_tcl2(model, times);
    TrajectoryRecord rec;
    rec.method = "tcl2";
    rec.fingerprint = model_fingerprint(model.profile, model.initial);
    rec.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        rec.times[k] = times[k];
        rec.set(k, coh[k], pop[k]);
    }
    return rec;
}

BlockTrajectory integrate_blocks(const Tcl2Model& model, const std::vector<double>& times, const OdeTolerances& tol) {
    const int n = model.profile.n_bath;
    const auto combs = model.combs;
    RateFunction rates = [combs, n](double t, BlockRates& r) {
        std::vector<Complex> big_f(static_cast<std::size_t>(n + 1));
        std::vector<Complex> big_g(static_cast<std::size_t>(n + 1));
        for (int j = 0; j <= n; ++j) {
            big_f[static_cast<std::size_t>(j)] = single_time_integral(combs->f_at(j), t);
            big_g[static_cast<std::size_t>(j)] = single_time_integral(combs->g_at(j), t);
        }
        for (int j = 0; j <= n; ++j) {
            const auto u = static_cast<std::size_t>(j);
            r.loss_plus[u] = big_f[u];
            r.loss_minus[u] = big_g[u];
            r.gain_from_upper[u] = (j < n) ? 2.0 * big_g[u + 1].real() : 0.0;
            r.gain_from_lower[u] = (j > 0) ? 2.0 * big_f[u - 1].real() : 0.0;
        }
    };
    return integrate_block_system(model.initial, times, rates, tol);
}

TrajectoryRecord tcl2_record_from_blocks(const Tcl2Model& model, const BlockTrajectory& traj, const char* method) {
    TrajectoryRecord rec;
    rec.method = method;
    rec.fingerprint = model_fingerprint(model.profile, model.initial);
    rec.resize(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        Complex c{0.0, 0.0};
        double p = 0.0;
        for (std::size_t j = 0; j < traj.states[k].size(); ++j) {
            c += traj.states[k][j](0, 1) * eval_comb(model.combs->dephasing[j], t);
            p += traj.states[k][j](0, 0).real();
        }
        rec.times[k] = t;
        rec.set(k, c, p);
    }
    return rec;
}

} // namespace cspin
