#include "baudsync/dsp.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "baudsync/error.hpp"
#include "baudsync/kernels.hpp"

namespace baudsync {

namespace {

constexpr double kPi = std::numbers::pi;

// RRC impulse response at t (in symbols), unnormalized. The removable
// singularities at t = 0 and |t| = 1/(4 beta) use their analytic limits.
double rrc_at(double t, double beta) {
    if (t == 0.0)
        return 1.0 - beta + 4.0 * beta / kPi;
    if (beta > 0.0 && std::abs(std::abs(t) - 1.0 / (4.0 * beta)) < 1e-12) {
        const double a = kPi / (4.0 * beta);
        return beta / std::numbers::sqrt2 *
               ((1.0 + 2.0 / kPi) * std::sin(a) + (1.0 - 2.0 / kPi) * std::cos(a));
    }
    const double num = std::sin(kPi * t * (1.0 - beta)) + 4.0 * beta * t * std::cos(kPi * t * (1.0 + beta));
    const double den = kPi * t * (1.0 - 16.0 * beta * beta * t * t);
    return num / den;
}

}  // namespace

FirFilter design_rrc(double rolloff, int span_symbols, int sps) {
    if (!(rolloff >= 0.0 && rolloff <= 1.0))
        throw ParameterError("RRC rolloff must be in [0, 1], got " + std::to_string(rolloff));
    if (span_symbols <= 0)
        throw ParameterError("RRC span must be positive");
    if (sps <= 0)
        throw ParameterError("RRC samples per symbol must be positive");

    const int n_taps = span_symbols * sps + 1;
    const int center = n_taps / 2;
    std::vector<double> taps(static_cast<std::size_t>(n_taps));
    // fill one half and mirror so the response is symmetric bit for bit
    for (int k = 0; k <= center; ++k) {
        const double t = static_cast<double>(k - center) / sps;
        taps[static_cast<std::size_t>(k)] = rrc_at(t, rolloff);
        taps[static_cast<std::size_t>(n_taps - 1 - k)] = taps[static_cast<std::size_t>(k)];
    }
    double energy = 0.0;
    for (double h : taps)
        energy += h * h;
    const double scale = 1.0 / std::sqrt(energy);
    for (double& h : taps)
        h *= scale;
    return FirFilter(std::move(taps));
}

FirFilter design_lowpass(double cutoff, int num_taps, double kaiser_beta) {
    if (!(cutoff > 0.0 && cutoff < 0.5))
        throw ParameterError("lowpass cutoff must be in (0, 0.5) cycles/sample");
    if (num_taps < 1 || num_taps % 2 == 0)
        throw ParameterError("lowpass tap count must be odd and positive");
    if (!(kaiser_beta >= 0.0))
        throw ParameterError("Kaiser beta must be >= 0");

    const int center = num_taps / 2;
    std::vector<double> taps(static_cast<std::size_t>(num_taps));
    double sum = 0.0;
    for (int k = 0; k < num_taps; ++k) {
        const double n = k - center;
        const double ideal = n == 0 ? 2.0 * cutoff : std::sin(2.0 * kPi * cutoff * n) / (kPi * n);
        const double x = center == 0 ? 0.0 : n / center;
        const double window = std::cyl_bessel_i(0.0, kaiser_beta * std::sqrt(1.0 - x * x)) /
                              std::cyl_bessel_i(0.0, kaiser_beta);
        taps[static_cast<std::size_t>(k)] = ideal * window;
        sum += taps[static_cast<std::size_t>(k)];
    }
    for (double& h : taps)
        h /= sum;
    return FirFilter(std::move(taps));
}

SampleStream fir_filter(const SampleStream& x, const FirFilter& f, FilterAlignment align) {
    if (x.empty())
        throw ParameterError("fir_filter: empty input stream");
    require_finite(x.view());
    auto y = kernels::parallel::convolve(x.view(), std::span<const double>(f.taps));
    double origin = x.origin;
    if (align == FilterAlignment::Centered)
        origin -= f.group_delay() / x.rate;
    return SampleStream(std::move(y), x.rate, origin);
}

SampleStream upsample(const SampleStream& x, int factor) {
    if (factor < 1)
        throw ParameterError("upsample factor must be >= 1");
    const auto step = static_cast<std::size_t>(factor);
    std::vector<Complex> y(x.size() * step);
    for (std::size_t k = 0; k < x.size(); ++k)
        y[k * step] = x[k];
    return SampleStream(std::move(y), x.rate * factor, x.origin);
}

SampleStream downsample(const SampleStream& x, int factor, int phase) {
    if (factor < 1)
        throw ParameterError("downsample factor must be >= 1");
    if (phase < 0 || phase >= factor)
        throw ParameterError("downsample phase must be in [0, factor)");
    std::vector<Complex> y;
    y.reserve(x.size() / static_cast<std::size_t>(factor) + 1);
    for (std::size_t k = static_cast<std::size_t>(phase); k < x.size(); k += static_cast<std::size_t>(factor))
        y.push_back(x[k]);
    return SampleStream(std::move(y), x.rate / factor, x.origin + phase / x.rate);
}

}  // namespace baudsync
