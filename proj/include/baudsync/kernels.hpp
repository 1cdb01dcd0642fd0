#pragma once

// Data-parallel inner loops of the signal chain.
//
// Every kernel has a plain serial version and an OpenMP version computing each
// output element with the same arithmetic in the same order, so the two agree
// bit for bit. The serial versions stay as the reference for tests and
// benchmarks; the rest of the library calls the parallel ones.

#include <cstddef>
#include <span>
#include <vector>

#include "baudsync/types.hpp"

namespace baudsync::kernels {

/// Kaiser-windowed sinc interpolation kernel used by the channel resampler.
///
/// The kernel is tabulated at construction and evaluated by cubic
/// interpolation of the table; `exact` evaluates the closed form.
class SincKernel {
public:
    explicit SincKernel(int half_length = 24, double kaiser_beta = 11.0);

    int half_length() const noexcept { return half_length_; }
    double kaiser_beta() const noexcept { return beta_; }

    double operator()(double t) const;
    double exact(double t) const;

private:
    static constexpr int kTableSteps = 1024;  // table points per unit of t

    int half_length_;
    double beta_;
    std::vector<double> table_;  // kernel at t = i / kTableSteps, t >= 0, plus guard points
};

/// Output sample k is the input evaluated at fractional index first + k * step.
struct ResampleGrid {
    double first = 0.0;
    double step = 1.0;
    std::size_t count = 0;
};

namespace serial {

/// Full linear convolution, length x.size() + h.size() - 1.
std::vector<Complex> convolve(std::span<const Complex> x, std::span<const double> h);
std::vector<Complex> convolve(std::span<const Complex> x, std::span<const Complex> h);

/// Band-limited resampling of x; samples outside x read as zero.
std::vector<Complex> resample(std::span<const Complex> x, const ResampleGrid& grid,
                              const SincKernel& kernel);

/// out[n] = Re{ x[n] * exp(j(2 pi f n + phase)) }, f in cycles per sample.
std::vector<double> mix_to_real(std::span<const Complex> x, double cycles_per_sample,
                                double phase);

/// out[n] = gain * x[n] * exp(-j(2 pi f n)) * exp(j phase).
std::vector<Complex> mix_to_complex(std::span<const double> x, double cycles_per_sample,
                                    double phase, double gain);

}  // namespace serial

namespace parallel {

std::vector<Complex> convolve(std::span<const Complex> x, std::span<const double> h);
std::vector<Complex> convolve(std::span<const Complex> x, std::span<const Complex> h);
std::vector<Complex> resample(std::span<const Complex> x, const ResampleGrid& grid,
                              const SincKernel& kernel);
std::vector<double> mix_to_real(std::span<const Complex> x, double cycles_per_sample,
                                double phase);
std::vector<Complex> mix_to_complex(std::span<const double> x, double cycles_per_sample,
                                    double phase, double gain);

}  // namespace parallel

}  // namespace baudsync::kernels
