// comb.hpp - Frequency combs F(tau) = sum_j w_j exp(i omega_j tau) and their closed-form time integrals

#pragma once

#include <complex>
#include <vector>

namespace cspin {

using Complex = std::complex<double>;

inline constexpr double comb_merge_tolerance = 1e-12;
inline constexpr double small_phase_threshold = 1e-4;

struct CombLine {
    double omega{0.0};
    Complex weight{0.0, 0.0};
};

struct FrequencyComb {
    std::vector<CombLine> lines;

    bool empty() const { return lines.empty(); }
    std::size_t size() const { return lines.size(); }
    Complex total_weight() const;  // F(0)
    double max_abs_omega() const;
};

// Sorts by frequency, merges lines whose frequencies agree to rel_tol (relative to the
// larger of the largest |omega| in the comb and frequency_scale) and drops exactly-zero weights.
// The scale floor matters when all frequencies are rounding noise around zero.
FrequencyComb canonicalize(std::vector<CombLine> lines, double rel_tol = comb_merge_tolerance, double frequency_scale = 0.0);

// F*(tau): frequencies negated, weights conjugated.
FrequencyComb conjugate(const FrequencyComb& comb);

// Pointwise sum of two correlation functions.
FrequencyComb combine(const FrequencyComb& a, const FrequencyComb& b);

Complex eval_comb(const FrequencyComb& comb, double tau);

// int_0^t dt1 int_0^t1 dt2 exp(i omega t2) = (e^{i omega t} - 1 - i omega t)/(i omega)^2
Complex phase_double_integral(double omega, double t);

// int_0^t dtau exp(i omega tau) = (e^{i omega t} - 1)/(i omega)
Complex phase_single_integral(double omega, double t);

// int_0^t dt1 int_0^t1 dt2 F(t2)
Complex double_time_integral(const FrequencyComb& comb, double t);

// int_0^t dtau F(tau)
Complex single_time_integral(const FrequencyComb& comb, double t);

} // namespace cspin
