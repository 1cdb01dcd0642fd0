#include "baudsync/kernels.hpp"

#include "kernel_detail.hpp"

namespace baudsync::kernels::parallel {

namespace {

template <typename Tap>
std::vector<Complex> convolve_impl(std::span<const Complex> x, std::span<const Tap> h) {
    if (x.empty() || h.empty())
        return {};
    std::vector<Complex> y(x.size() + h.size() - 1);
    const auto n_out = static_cast<long long>(y.size());
#pragma omp parallel for schedule(static)
    for (long long n = 0; n < n_out; ++n)
        y[static_cast<std::size_t>(n)] = detail::convolve_at(x, h, static_cast<std::size_t>(n));
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
    const auto n_out = static_cast<long long>(grid.count);
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < n_out; ++k)
        y[static_cast<std::size_t>(k)] =
            detail::resample_at(x, grid, kernel, static_cast<std::size_t>(k));
    return y;
}

std::vector<double> mix_to_real(std::span<const Complex> x, double cycles_per_sample,
                                double phase) {
    std::vector<double> y(x.size());
    const auto n_out = static_cast<long long>(x.size());
#pragma omp parallel for schedule(static)
    for (long long n = 0; n < n_out; ++n)
        y[static_cast<std::size_t>(n)] =
            detail::mix_to_real_at(x, cycles_per_sample, phase, static_cast<std::size_t>(n));
    return y;
}

std::vector<Complex> mix_to_complex(std::span<const double> x, double cycles_per_sample,
                                    double phase, double gain) {
    std::vector<Complex> y(x.size());
    const auto n_out = static_cast<long long>(x.size());
#pragma omp parallel for schedule(static)
    for (long long n = 0; n < n_out; ++n)
        y[static_cast<std::size_t>(n)] = detail::mix_to_complex_at(
            x, cycles_per_sample, phase, gain, static_cast<std::size_t>(n));
    return y;
}

}  // namespace baudsync::kernels::parallel
