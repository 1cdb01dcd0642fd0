#include "baudsync/kernels.hpp"

#include <cmath>
#include <numbers>

#include "kernel_detail.hpp"

namespace baudsync::kernels {

SincKernel::SincKernel(int half_length, double kaiser_beta)
    : half_length_(half_length), beta_(kaiser_beta) {
    const int points = half_length_ * kTableSteps + 3;
    table_.resize(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        table_[static_cast<std::size_t>(i)] = exact(static_cast<double>(i) / kTableSteps);
}

double SincKernel::exact(double t) const {
    const double half = static_cast<double>(half_length_);
    if (std::abs(t) >= half)
        return 0.0;
    const double sinc = t == 0.0 ? 1.0 : std::sin(std::numbers::pi * t) / (std::numbers::pi * t);
    const double r = t / half;
    const double window =
        std::cyl_bessel_i(0.0, beta_ * std::sqrt(1.0 - r * r)) / std::cyl_bessel_i(0.0, beta_);
    return sinc * window;
}

double SincKernel::operator()(double t) const {
    const double a = std::abs(t);
    if (a >= static_cast<double>(half_length_))
        return 0.0;
    // cubic Lagrange through table points i-1..i+2; the kernel is even, so
    // reflect the left neighbour at the origin
    const double pos = a * kTableSteps;
    const auto i = static_cast<std::size_t>(pos);
    const double u = pos - static_cast<double>(i);
    const double ym1 = i == 0 ? table_[1] : table_[i - 1];
    const double y0 = table_[i];
    const double y1 = table_[i + 1];
    const double y2 = table_[i + 2];
    const double c0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double c1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double c2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double c3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return c0 * ym1 + c1 * y0 + c2 * y1 + c3 * y2;
}

namespace serial {

namespace {

template <typename Tap>
std::vector<Complex> convolve_impl(std::span<const Complex> x, std::span<const Tap> h) {
    if (x.empty() || h.empty())
        return {};
    std::vector<Complex> y(x.size() + h.size() - 1);
    for (std::size_t n = 0; n < y.size(); ++n)
        y[n] = detail::convolve_at(x, h, n);
    return y;
}

}  // namespace

std::vector<Complex> convolve(std::span<const Complex> x, std::span<const double> h) {
    return convolve_impl(x, h);
}

std::vector<Complex> convolve(std::span<const Complex> x, std::span<const Complex> h) {
    return convolve_impl(x, h);
}

std::vector<Complex> resample(std::span<const Complex> x, const ResampleGrid& grid,
                              const SincKernel& kernel) {
    std::vector<Complex> y(grid.count);
    for (std::size_t k = 0; k < grid.count; ++k)
        y[k] = detail::resample_at(x, grid, kernel, k);
    return y;
}

std::vector<double> mix_to_real(std::span<const Complex> x, double cycles_per_sample,
                                double phase) {
    std::vector<double> y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        y[n] = detail::mix_to_real_at(x, cycles_per_sample, phase, n);
    return y;
}

std::vector<Complex> mix_to_complex(std::span<const double> x, double cycles_per_sample,
                                    double phase, double gain) {
    std::vector<Complex> y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        y[n] = detail::mix_to_complex_at(x, cycles_per_sample, phase, gain, n);
    return y;
}

}  // namespace serial
}  // namespace baudsync::kernels
