// spectra.hpp - Exact frequency-comb representations of the sector-resolved bath correlation functions

#pragma once

#include "cspin/comb.hpp"
#include "cspin/model.hpp"

#include <vector>

namespace cspin {

// f_m(tau) = 4 sum_k alpha_k^2 < sigma_-^k sigma_+^k exp(i(omega0 + 4 K3 + 2 alpha_k) tau) >_m
FrequencyComb f_comb(double m, const CouplingProfile& profile, const SectorTable& sectors);

// g_m(tau) = 4 sum_k alpha_k^2 < sigma_+^k sigma_-^k exp(i(-omega0 - 4 K3 + 2 alpha_k) tau) >_m
FrequencyComb g_comb(double m, const CouplingProfile& profile, const SectorTable& sectors);

// < exp(-4 i K3 t) >_m
FrequencyComb dephasing_comb(double m, const CouplingProfile& profile, const SectorTable& sectors);

// All sector combs of one model, indexed by sector j = N/2 + m.
struct SectorCombs {
    int n_bath{0};
    std::vector<FrequencyComb> f;
    std::vector<FrequencyComb> g;
    std::vector<FrequencyComb> dephasing;

    // Empty comb outside 0..N, which truncates the coupled block system at the sector edges.
    const FrequencyComb& f_at(int j) const;
    const FrequencyComb& g_at(int j) const;
};

SectorCombs build_sector_combs(const CouplingProfile& profile, const SectorTable& sectors);

} // namespace cspin
