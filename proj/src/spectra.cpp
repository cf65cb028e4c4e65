// spectra.cpp - Enumeration of correlation-function combs over bath sectors

#include "cspin/spectra.hpp"

namespace cspin {

namespace {

double coupling_sum(const CouplingProfile& profile) {
    double s = 0.0;
    for (double a : profile.alphas) s += a;
    return s;
}

// Lines of 4 sum_k alpha_k^2 <P_k exp(i(sign*(omega0 + 4 K3) + 2 alpha_k) tau)>_m where
// P_k projects bath spin k onto `spin_up`.
FrequencyComb flip_comb(int j, const CouplingProfile& profile, const SectorTable& sectors, bool spin_up, double sign) {
    const auto& sector = sectors.sectors[static_cast<std::size_t>(j)];
    const double inv_deg = 1.0 / static_cast<double>(sector.degeneracy);
    std::vector<CombLine> lines;
    for (std::size_t c = 0; c < sector.configs.size(); ++c) {
        const std::uint32_t mask = sector.configs[c];
        const double base = sign * (profile.omega0 + 4.0 * sector.k3_values[c]);
        for (int k = 0; k < profile.n_bath; ++k) {
            if ((((mask >> k) & 1u) != 0) != spin_up) continue;
            const double a = profile.alphas[static_cast<std::size_t>(k)];
            lines.push_back({base + 2.0 * a, Complex(4.0 * a * a * inv_deg, 0.0)});
        }
    }
    return canonicalize(std::move(lines), comb_merge_tolerance, profile.omega0 + 4.0 * coupling_sum(profile));
}

const FrequencyComb& empty_comb() {
    static const FrequencyComb empty{};
    return empty;
}

} // namespace

FrequencyComb f_comb(double m, const CouplingProfile& profile, const SectorTable& sectors) {
    return flip_comb(sectors.index_of(m), profile, sectors, false, 1.0);
}

FrequencyComb g_comb(double m, const CouplingProfile& profile, const SectorTable& sectors) {
    return flip_comb(sectors.index_of(m), profile, sectors, true, -1.0);
}

FrequencyComb dephasing_comb(double m, const CouplingProfile& profile, const SectorTable& sectors) {
    const auto& sector = sectors.at_m(m);
    const double inv_deg = 1.0 / static_cast<double>(sector.degeneracy);
    std::vector<CombLine> lines;
    lines.reserve(sector.k3_values.size());
    for (double k3 : sector.k3_values) lines.push_back({-4.0 * k3, Complex(inv_deg, 0.0)});
    return canonicalize(std::move(lines), comb_merge_tolerance, 2.0 * coupling_sum(profile));
}

const FrequencyComb& SectorCombs::f_at(int j) const {
    if (j < 0 || j > n_bath) return empty_comb();
    return f[static_cast<std::size_t>(j)];
}

const FrequencyComb& SectorCombs::g_at(int j) const {
    if (j < 0 || j > n_bath) return empty_comb();
    return g[static_cast<std::size_t>(j)];
}

SectorCombs build_sector_combs(const CouplingProfile& profile, const SectorTable& sectors) {
    SectorCombs combs;
    combs.n_bath = profile.n_bath;
    for (int j = 0; j <= profile.n_bath; ++j) {
        const double m = sector_m(profile.n_bath, j);
        combs.f.push_back(f_comb(m, profile, sectors));
        combs.g.push_back(g_comb(m, profile, sectors));
        combs.dephasing.push_back(dephasing_comb(m, profile, sectors));
    }
    return combs;
}

} // namespace cspin
