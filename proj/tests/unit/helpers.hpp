#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "baudsync/dsp.hpp"
#include "baudsync/types.hpp"

namespace testing {

using baudsync::Complex;

inline std::vector<Complex> random_complex(std::size_t n, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, scale);
    std::vector<Complex> v(n);
    for (auto& x : v)
        x = {g(rng), g(rng)};
    return v;
}

inline std::vector<double> random_real(std::size_t n, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, scale);
    std::vector<double> v(n);
    for (auto& x : v)
        x = g(rng);
    return v;
}

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Truncated RRC pulses leak a little energy all the way to Nyquist. Exactness checks
// need a signal that is band-limited for real, so strip it with a long Kaiser lowpass.
inline baudsync::SampleStream band_limit(const baudsync::SampleStream& x, double cutoff, int taps) {
    return baudsync::fir_filter(x, baudsync::design_lowpass(cutoff, taps, 14.0));
}

}  // namespace testing
