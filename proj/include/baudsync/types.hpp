#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace baudsync {

using Complex = std::complex<double>;

/// Complex baseband samples at a declared rate.
///
/// `rate` is samples per symbol. `origin` is the symbol index of the first
/// sample, so sample k sits at symbol time origin + k / rate.
struct SampleStream {
    std::vector<Complex> samples;
    double rate = 1.0;
    double origin = 0.0;

    SampleStream() = default;
    SampleStream(std::vector<Complex> s, double r, double o = 0.0);

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
    const Complex& operator[](std::size_t k) const { return samples[k]; }
    Complex& operator[](std::size_t k) { return samples[k]; }
    std::span<const Complex> view() const noexcept { return samples; }

    /// Sub-stream [first, first+count). Origin moves by first / rate.
    SampleStream slice(std::size_t first, std::size_t count) const;
};

/// Throws ParameterError if any sample is NaN or infinite.
void require_finite(std::span<const Complex> samples);
void require_finite(std::span<const double> samples);

/// FIR filter with real taps. Group delay is (len - 1) / 2 samples.
struct FirFilter {
    std::vector<double> taps;

    FirFilter() = default;
    explicit FirFilter(std::vector<double> t);

    std::size_t size() const noexcept { return taps.size(); }
    double group_delay() const noexcept { return (static_cast<double>(taps.size()) - 1.0) / 2.0; }
};

}  // namespace baudsync
