// trajectory.hpp - Time series of central-spin observables produced by every solver

#pragma once

#include "cspin/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cspin {

// Coherence C(t) is reported in the rotating frame of the central spin; population is P_+(t).
struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> coherence_re;
    std::vector<double> coherence_im;
    std::vector<double> population;
    std::string method;
    std::uint64_t fingerprint{0};

    std::size_t size() const { return times.size(); }
    void resize(std::size_t n);
    Complex coherence(std::size_t i) const { return {coherence_re[i], coherence_im[i]}; }
    void set(std::size_t i, Complex c, double p) {
        coherence_re[i] = c.real();
        coherence_im[i] = c.imag();
        population[i] = p;
    }
};

// FNV-1a hash over the coupling profile and the initial block state.
std::uint64_t model_fingerprint(const CouplingProfile& profile, const BlockDensity& initial);

// Rejects unsorted or negative time grids.
void validate_times(const std::vector<double>& times, const char* who);

} // namespace cspin
