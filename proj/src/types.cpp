#include "baudsync/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "baudsync/error.hpp"

namespace baudsync {

SampleStream::SampleStream(std::vector<Complex> s, double r, double o)
    : samples(std::move(s)), rate(r), origin(o) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw ParameterError("SampleStream rate must be positive, got " + std::to_string(rate));
}

SampleStream SampleStream::slice(std::size_t first, std::size_t count) const {
    first = std::min(first, samples.size());
    count = std::min(count, samples.size() - first);
    std::vector<Complex> part(samples.begin() + static_cast<std::ptrdiff_t>(first),
                              samples.begin() + static_cast<std::ptrdiff_t>(first + count));
    return SampleStream(std::move(part), rate, origin + static_cast<double>(first) / rate);
}

void require_finite(std::span<const Complex> samples) {
    for (std::size_t k = 0; k < samples.size(); ++k)
        if (!std::isfinite(samples[k].real()) || !std::isfinite(samples[k].imag()))
            throw ParameterError("non-finite sample at index " + std::to_string(k));
}

void require_finite(std::span<const double> samples) {
    for (std::size_t k = 0; k < samples.size(); ++k)
        if (!std::isfinite(samples[k]))
            throw ParameterError("non-finite sample at index " + std::to_string(k));
}

FirFilter::FirFilter(std::vector<double> t) : taps(std::move(t)) {
    if (taps.empty())
        throw ParameterError("FIR filter needs at least one tap");
}

DivergenceError::DivergenceError(std::size_t symbol_index, double tap_energy)
    : std::runtime_error("equalizer diverged at symbol " + std::to_string(symbol_index) +
                         " (tap energy " + std::to_string(tap_energy) + ")"),
      symbol_index_(symbol_index),
      tap_energy_(tap_energy) {}

IoError::IoError(const std::string& path, const std::string& what)
    : std::runtime_error(path + ": " + what), path_(path) {}

NonFiniteSampleError::NonFiniteSampleError(const std::string& path, std::size_t sample_index)
    : IoError(path, "non-finite sample at index " + std::to_string(sample_index)),
      sample_index_(sample_index) {}

}  // namespace baudsync
