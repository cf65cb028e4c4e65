// trajectory.cpp

#include "cspin/trajectory.hpp"
#include "cspin/error.hpp"

#include <cmath>
#include <cstring>

namespace cspin {

namespace {

struct Fnv1a {
    std::uint64_t h{14695981039346656037ull};
    void bytes(const void* p, std::size_t n) {
        const auto* c = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= c[i];
            h *= 1099511628211ull;
        }
    }
    void real(double x) {
        if (x == 0.0) x = 0.0;  // fold -0.0
        bytes(&x, sizeof x);
    }
};

} // namespace

void TrajectoryRecord::resize(std::size_t n) {
    times.resize(n);
    coherence_re.resize(n);
    coherence_im.resize(n);
    population.resize(n);
}

std::uint64_t model_fingerprint(const CouplingProfile& profile, const BlockDensity& initial) {
    Fnv1a f;
    const std::int64_t n = profile.n_bath;
    f.bytes(&n, sizeof n);
    f.real(profile.omega0);
    for (double a : profile.alphas) f.real(a);
    for (const auto& b : initial.blocks) {
        for (int i = 0; i < 4; ++i) {
            f.real(b(i / 2, i % 2).real());
            f.real(b(i / 2, i % 2).imag());
        }
    }
    return f.h;
}

void validate_times(const std::vector<double>& times, const char* who) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] < 0.0) fail(ErrorCode::invalid_argument, std::string(who) + ": times must be finite and nonnegative");
        if (i > 0 && times[i] < times[i - 1]) fail(ErrorCode::invalid_argument, std::string(who) + ": times must be sorted");
    }
}

} // namespace cspin
