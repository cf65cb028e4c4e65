// comb.cpp - Frequency comb algebra and integral kernels

#include "cspin/comb.hpp"

#include <algorithm>
#include <cmath>

namespace cspin {

namespace {

// x - sin(x) without cancellation for |x| < 1.
double x_minus_sin(double x) {
    if (std::abs(x) >= 1.0) return x - std::sin(x);
    const double x2 = x * x;
    double term = x * x2 / 6.0;
    double sum = term;
    for (int k = 2; k < 12; ++k) {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
    }
    return sum;
}

double one_minus_cos(double x) {
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s;
}

} // namespace

Complex FrequencyComb::total_weight() const {
    Complex sum{0.0, 0.0};
    for (const auto& l : lines) sum += l.weight;
    return sum;
}

double FrequencyComb::max_abs_omega() const {
    double w = 0.0;
    for (const auto& l : lines) w = std::max(w, std::abs(l.omega));
    return w;
}

FrequencyComb canonicalize(std::vector<CombLine> lines, double rel_tol, double frequency_scale) {
    std::erase_if(lines, [](const CombLine& l) { return l.weight == Complex(0.0, 0.0); });
    std::sort(lines.begin(), lines.end(), [](const CombLine& a, const CombLine& b) { return a.omega < b.omega; });
    double scale = frequency_scale;
    for (const auto& l : lines) scale = std::max(scale, std::abs(l.omega));
    const double tol = rel_tol * scale;

    FrequencyComb out;
    std::size_t i = 0;
    while (i < lines.size()) {
        std::size_t k = i;
        double omega_sum = 0.0;
        Complex weight_sum{0.0, 0.0};
        while (k < lines.size() && lines[k].omega - lines[i].omega <= tol) {
            omega_sum += lines[k].omega;
            weight_sum += lines[k].weight;
            ++k;
        }
        out.lines.push_back({omega_sum / static_cast<double>(k - i), weight_sum});
        i = k;
    }
    return out;
}

FrequencyComb conjugate(const FrequencyComb& comb) {
    FrequencyComb out;
    out.lines.reserve(comb.size());
    for (auto it = comb.lines.rbegin(); it != comb.lines.rend(); ++it) out.lines.push_back({-it->omega, std::conj(it->weight)});
    return out;
}

FrequencyComb combine(const FrequencyComb& a, const FrequencyComb& b) {
    std::vector<CombLine> lines(a.lines);
    lines.insert(lines.end(), b.lines.begin(), b.lines.end());
    return canonicalize(std::move(lines));
}

Complex eval_comb(const FrequencyComb& comb, double tau) {
    Complex sum{0.0, 0.0};
    for (const auto& l : comb.lines) sum += l.weight * std::polar(1.0, l.omega * tau);
    return sum;
}

Complex phase_double_integral(double omega, double t) {
    const double x = omega * t;
    if (std::abs(x) < small_phase_threshold) {
        const Complex y{0.0, x};
        return t * t * (0.5 + y * (1.0 / 6.0 + y * (1.0 / 24.0 + y / 120.0)));
    }
    const double inv = 1.0 / (omega * omega);
    return {one_minus_cos(x) * inv, x_minus_sin(x) * inv};
}

Complex phase_single_integral(double omega, double t) {
    const double x = omega * t;
    if (std::abs(x) < small_phase_threshold) {
        const Complex y{0.0, x};
        return t * (1.0 + y * (0.5 + y * (1.0 / 6.0 + y / 24.0)));
    }
    return {std::sin(x) / omega, one_minus_cos(x) / omega};
}

Complex double_time_integral(const FrequencyComb& comb, double t) {
    Complex sum{0.0, 0.0};
    for (const auto& l : comb.lines) sum += l.weight * phase_double_integral(l.omega, t);
    return sum;
}

Complex single_time_integral(const FrequencyComb& comb, double t) {
    Complex sum{0.0, 0.0};
    for (const auto& l : comb.lines) sum += l.weight * phase_single_integral(l.omega, t);
    return sum;
}

} // namespace cspin
