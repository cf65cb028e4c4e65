// exact.cpp - Sector diagonalization and exact ensemble propagation

#include "cspin/exact.hpp"
#include "cspin/error.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace cspin {

namespace {

void validate_initial(const ExactModel& model, const BlockDensity& initial) {
    if (initial.n_bath() != model.n_bath()) {
        fail(ErrorCode::invalid_argument, "evolve_exact: initial state has " + std::to_string(initial.n_bath()) +
                                              " bath spins, model has " + std::to_string(model.n_bath()));
    }
    for (const auto& b : initial.blocks) {
        Eigen::SelfAdjointEigenSolver<Block> es(b);
        if ((b - b.adjoint()).cwiseAbs().maxCoeff() > 1e-12 || es.eigenvalues().minCoeff() < -1e-12) {
            fail(ErrorCode::unsupported_state,
                 "evolve_exact: initial blocks must be positive Hermitian to be representable as a mixture of product states");
        }
    }
    if (std::abs(initial.total_trace() - 1.0) > 1e-10) fail(ErrorCode::unsupported_state, "evolve_exact: initial state is not normalized");
}

// Per-mask central-spin density rho_{j(b)} / N_j of the product-state mixture.
Block member_density(const BlockDensity& initial, std::uint32_t mask) {
    const int j = std::popcount(mask);
    return initial.blocks[static_cast<std::size_t>(j)] / static_cast<double>(binomial(initial.n_bath(), j));
}

// acc(t) += c^T M c + s^T M s with c = cos(E t), s = sin(E t), i.e. sum_ab M_ab exp(-i(E_a - E_b) t).
void accumulate_real_form(const Eigen::MatrixXd& m, const Eigen::VectorXd& energies, const std::vector<double>& times,
                          std::size_t begin, std::size_t count, std::vector<double>& out) {
    const Eigen::Index d = energies.size();
    Eigen::MatrixXd c(d, static_cast<Eigen::Index>(count));
    Eigen::MatrixXd s(d, static_cast<Eigen::Index>(count));
    for (std::size_t k = 0; k < count; ++k) {
        const double t = times[begin + k];
        for (Eigen::Index a = 0; a < d; ++a) {
            c(a, static_cast<Eigen::Index>(k)) = std::cos(energies(a) * t);
            s(a, static_cast<Eigen::Index>(k)) = std::sin(energies(a) * t);
        }
    }
    const Eigen::MatrixXd mc = m * c;
    const Eigen::MatrixXd ms = m * s;
    for (std::size_t k = 0; k < count; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        out[begin + k] += c.col(kk).dot(mc.col(kk)) + s.col(kk).dot(ms.col(kk));
    }
}

std::vector<Block> evolve_batched(const ExactModel& model, const BlockDensity& initial, const std::vector<double>& times,
                                  const ExactOptions& options) {
    const int n = model.n_bath();
    const std::size_t nt = times.size();
    std::vector<double> p_plus(nt, 0.0);
    std::vector<double> p_minus(nt, 0.0);
    std::vector<Complex> coh(nt, Complex(0.0, 0.0));
    const std::size_t chunk = std::max<std::size_t>(1, options.time_chunk);

    for (const auto& sec : model.sectors) {
        const Eigen::Index d = static_cast<Eigen::Index>(sec.basis.size());
        const Eigen::Index nu = sec.n_central_up;
        Eigen::VectorXd w(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto& st = sec.basis[static_cast<std::size_t>(i)];
            const Block r = member_density(initial, st.bath);
            w(i) = st.central_up ? r(0, 0).real() : r(1, 1).real();
        }
        if (w.cwiseAbs().maxCoeff() == 0.0) continue;
        const Eigen::MatrixXd weighted = sec.vectors.transpose() * w.asDiagonal() * sec.vectors;
        const auto up = sec.vectors.topRows(nu);
        const auto down = sec.vectors.bottomRows(d - nu);
        const Eigen::MatrixXd m_plus = (up.transpose() * up).cwiseProduct(weighted);
        const Eigen::MatrixXd m_minus = (down.transpose() * down).cwiseProduct(weighted);
        for (std::size_t b = 0; b < nt; b += chunk) {
            const std::size_t cnt = std::min(chunk, nt - b);
            if (nu > 0) accumulate_real_form(m_plus, sec.energies, times, b, cnt, p_plus);
            if (d - nu > 0) accumulate_real_form(m_minus, sec.energies, times, b, cnt, p_minus);
        }
    }

    // Coherence couples the central-up rows of sector p+1 to the central-down rows of sector p
    // (same bath masks with p up spins).
    for (int p = 0; p <= n; ++p) {
        const auto& s1 = model.sectors[static_cast<std::size_t>(p + 1)];
        const auto& s0 = model.sectors[static_cast<std::size_t>(p)];
        const Eigen::Index nb = s1.n_central_up;
        const auto r1 = s1.vectors.topRows(nb);
        const auto r2 = s0.vectors.bottomRows(static_cast<Eigen::Index>(s0.basis.size()) - s0.n_central_up);
        Eigen::VectorXcd x(nb);
        for (Eigen::Index i = 0; i < nb; ++i) x(i) = member_density(initial, s1.basis[static_cast<std::size_t>(i)].bath)(0, 1);
        if (x.cwiseAbs().maxCoeff() == 0.0) continue;
        const Eigen::MatrixXd g = r1.transpose() * r2;
        const Eigen::MatrixXcd h = r1.transpose().cast<Complex>() * x.asDiagonal() * r2.cast<Complex>();
        const Eigen::MatrixXcd kernel = h.cwiseProduct(g.cast<Complex>());
        const Eigen::Index d1 = s1.energies.size();
        const Eigen::Index d0 = s0.energies.size();
        for (std::size_t b = 0; b < nt; b += chunk) {
            const std::size_t cnt = std::min(chunk, nt - b);
            const auto cc = static_cast<Eigen::Index>(cnt);
            Eigen::MatrixXcd z(cc, d1);
            Eigen::MatrixXcd wbar(cc, d0);
            for (Eigen::Index k = 0; k < cc; ++k) {
                const double t = times[b + static_cast<std::size_t>(k)];
                for (Eigen::Index a = 0; a < d1; ++a) z(k, a) = std::polar(1.0, -s1.energies(a) * t);
                for (Eigen::Index a = 0; a < d0; ++a) wbar(k, a) = std::polar(1.0, s0.energies(a) * t);
            }
            const Eigen::MatrixXcd zk = z * kernel;
            for (Eigen::Index k = 0; k < cc; ++k) coh[b + static_cast<std::size_t>(k)] += zk.row(k).cwiseProduct(wbar.row(k)).sum();
        }
    }

    std::vector<Block> out(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        const Complex c = coh[k] * std::polar(1.0, model.profile.omega0 * times[k]);
        out[k] << p_plus[k], c, std::conj(c), p_minus[k];
    }
    return out;
}

std::vector<Block> evolve_members(const ExactModel& model, const BlockDensity& initial, const std::vector<double>& times) {
    const int n = model.n_bath();
    std::vector<Block> out(times.size(), Block::Zero());
    const std::uint32_t count = std::uint32_t{1} << n;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        const Block r = member_density(initial, mask);
        Eigen::SelfAdjointEigenSolver<Block> es(r);
        for (int e = 0; e < 2; ++e) {
            const double weight = es.eigenvalues()(e);
            if (weight <= 0.0) continue;
            const Eigen::VectorXcd psi0 = product_state(n, es.eigenvectors().col(e), mask);
            for (std::size_t k = 0; k < times.size(); ++k) out[k] += weight * reduce_to_central(n, propagate(model, psi0, times[k]));
        }
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        const Complex phase = std::polar(1.0, model.profile.omega0 * times[k]);
        out[k](0, 1) *= phase;
        out[k](1, 0) *= std::conj(phase);
    }
    return out;
}

} // namespace

ExactModel build_sector_hamiltonians(const CouplingProfile& profile, int cap) {
    const int n = profile.n_bath;
    if (n > cap) {
        fail(ErrorCode::resource_limit, "build_sector_hamiltonians: N = " + std::to_string(n) + " exceeds the exact-propagation cap of " +
                                            std::to_string(cap) + " bath spins");
    }
    if (n < 1) fail(ErrorCode::invalid_argument, "build_sector_hamiltonians: N must be >= 1");

    ExactModel model;
    model.profile = profile;
    model.sectors.resize(static_cast<std::size_t>(n + 2));
    model.row_of.assign(std::size_t{2} << n, -1);
    const std::uint32_t count = std::uint32_t{1} << n;

    for (int q = 0; q <= n + 1; ++q) {
        auto& sec = model.sectors[static_cast<std::size_t>(q)];
        sec.excitations = q;
        sec.total_sz = q - 0.5 * (n + 1);
        for (int up = 1; up >= 0; --up) {
            const int pop = q - up;
            if (pop < 0 || pop > n) continue;
            for (std::uint32_t mask = 0; mask < count; ++mask) {
                if (std::popcount(mask) != pop) continue;
                model.row_of[product_index(n, up == 1, mask)] = static_cast<int>(sec.basis.size());
                sec.basis.push_back({up == 1, mask});
            }
            if (up == 1) sec.n_central_up = static_cast<int>(sec.basis.size());
        }
        const auto d = static_cast<Eigen::Index>(sec.basis.size());
        sec.matrix = Eigen::MatrixXd::Zero(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto& st = sec.basis[static_cast<std::size_t>(i)];
            const double s = st.central_up ? 1.0 : -1.0;
            sec.matrix(i, i) = s * (0.5 * profile.omega0 + 2.0 * k3_value(profile, st.bath));
            if (!st.central_up) continue;
            // flip-flop 2 alpha_k between |+, down_k> and |-, up_k>
            for (int k = 0; k < n; ++k) {
                if ((st.bath >> k) & 1u) continue;
                const int row = model.row_of[product_index(n, false, st.bath | (1u << k))];
                const double v = 2.0 * profile.alphas[static_cast<std::size_t>(k)];
                sec.matrix(i, row) = v;
                sec.matrix(row, i) = v;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sec.matrix);
        if (es.info() != Eigen::Success) fail(ErrorCode::integrator_failure, "build_sector_hamiltonians: eigendecomposition failed");
        sec.energies = es.eigenvalues();
        sec.vectors = es.eigenvectors();
    }
    return model;
}

std::vector<Block> evolve_exact_density(const ExactModel& model, const BlockDensity& initial, const std::vector<double>& times,
                                        const ExactOptions& options) {
    validate_initial(model, initial);
    validate_times(times, "evolve_exact");
    if (options.strategy == ExactStrategy::per_member) return evolve_members(model, initial, times);
    return evolve_batched(model, initial, times, options);
}

TrajectoryRecord evolve_exact(const ExactModel& model, const BlockDensity& initial, const std::vector<double>& times,
                              const ExactOptions& options) {
    const auto rho = evolve_exact_density(model, initial, times, options);
    TrajectoryRecord rec;
    rec.method = "exact";
    rec.fingerprint = model_fingerprint(model.profile, initial);
    rec.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        rec.times[k] = times[k];
        rec.set(k, rho[k](0, 1), rho[k](0, 0).real());
    }
    return rec;
}

Eigen::VectorXcd product_state(int n_bath, const Eigen::Vector2cd& central, std::uint32_t bath_mask) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{2} << n_bath));
    psi(static_cast<Eigen::Index>(product_index(n_bath, true, bath_mask))) = central(0);
    psi(static_cast<Eigen::Index>(product_index(n_bath, false, bath_mask))) = central(1);
    return psi;
}

Eigen::VectorXcd propagate(const ExactModel& model, const Eigen::VectorXcd& psi, double t) {
    const int n = model.n_bath();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
    for (const auto& sec : model.sectors) {
        const auto d = static_cast<Eigen::Index>(sec.basis.size());
        Eigen::VectorXcd local(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto& st = sec.basis[static_cast<std::size_t>(i)];
            local(i) = psi(static_cast<Eigen::Index>(product_index(n, st.central_up, st.bath)));
        }
        if (local.cwiseAbs().maxCoeff() == 0.0) continue;
        Eigen::VectorXcd coeff = sec.vectors.transpose().cast<Complex>() * local;
        for (Eigen::Index a = 0; a < d; ++a) coeff(a) *= std::polar(1.0, -sec.energies(a) * t);
        local = sec.vectors.cast<Complex>() * coeff;
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto& st = sec.basis[static_cast<std::size_t>(i)];
            out(static_cast<Eigen::Index>(product_index(n, st.central_up, st.bath))) = local(i);
        }
    }
    return out;
}

double energy(const ExactModel& model, const Eigen::VectorXcd& psi) {
    const int n = model.n_bath();
    double e = 0.0;
    for (const auto& sec : model.sectors) {
        const auto d = static_cast<Eigen::Index>(sec.basis.size());
        Eigen::VectorXcd local(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const auto& st = sec.basis[static_cast<std::size_t>(i)];
            local(i) = psi(static_cast<Eigen::Index>(product_index(n, st.central_up, st.bath)));
        }
        e += local.dot(sec.matrix.cast<Complex>() * local).real();
    }
    return e;
}

double total_sz(int n_bath, const Eigen::VectorXcd& psi) {
    const std::uint32_t count = std::uint32_t{1} << n_bath;
    double sz = 0.0;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        const double bath = std::popcount(mask) - 0.5 * n_bath;
        sz += std::norm(psi(static_cast<Eigen::Index>(product_index(n_bath, true, mask)))) * (bath + 0.5);
        sz += std::norm(psi(static_cast<Eigen::Index>(product_index(n_bath, false, mask)))) * (bath - 0.5);
    }
    return sz;
}

Block reduce_to_central(int n_bath, const Eigen::VectorXcd& psi) {
    const auto half = static_cast<Eigen::Index>(std::size_t{1} << n_bath);
    const auto up = psi.head(half);
    const auto down = psi.tail(half);
    Block r;
    r << up.squaredNorm(), down.dot(up), up.dot(down), down.squaredNorm();
    return r;
}

} // namespace cspin
