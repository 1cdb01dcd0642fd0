#pragma once

// Per-element bodies shared by the serial and OpenMP kernels.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>

#include "baudsync/kernels.hpp"

namespace baudsync::kernels::detail {

template <typename Tap>
inline Complex convolve_at(std::span<const Complex> x, std::span<const Tap> h, std::size_t n) {
    // y[n] = sum_k h[k] x[n-k], k over the overlap
    const std::size_t k_lo = n >= x.size() ? n - x.size() + 1 : 0;
    const std::size_t k_hi = n < h.size() ? n : h.size() - 1;
    Complex acc{0.0, 0.0};
    for (std::size_t k = k_lo; k <= k_hi; ++k)
        acc += h[k] * x[n - k];
    return acc;
}

inline Complex resample_at(std::span<const Complex> x, const ResampleGrid& grid,
                           const SincKernel& kernel, std::size_t k) {
    const double pos = grid.first + grid.step * static_cast<double>(k);
    const double base = std::floor(pos);
    const double frac = pos - base;
    const auto n0 = static_cast<long long>(base);
    const auto len = static_cast<long long>(x.size());
    if (frac == 0.0)
        return (n0 >= 0 && n0 < len) ? x[static_cast<std::size_t>(n0)] : Complex{};

    Complex acc{0.0, 0.0};
    for (int m = -kernel.half_length() + 1; m <= kernel.half_length(); ++m) {
        const long long n = n0 + m;
        if (n < 0 || n >= len)
            continue;
        acc += kernel(frac - m) * x[static_cast<std::size_t>(n)];
    }
    return acc;
}

inline double mix_to_real_at(std::span<const Complex> x, double f, double phase, std::size_t n) {
    const double arg = 2.0 * std::numbers::pi * f * static_cast<double>(n) + phase;
    return x[n].real() * std::cos(arg) - x[n].imag() * std::sin(arg);
}

inline Complex mix_to_complex_at(std::span<const double> x, double f, double phase, double gain,
                                 std::size_t n) {
    const double arg = phase - 2.0 * std::numbers::pi * f * static_cast<double>(n);
    return gain * x[n] * Complex{std::cos(arg), std::sin(arg)};
}

}  // namespace baudsync::kernels::detail
