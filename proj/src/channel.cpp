#include "baudsync/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "baudsync/error.hpp"

namespace baudsync {

namespace {

// Independent generator streams derived from one user seed.
enum class RngStream : std::uint32_t { PhaseNoise = 1, Awgn = 2 };

std::mt19937_64 make_rng(std::uint64_t seed, RngStream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

}  // namespace

void ImpairmentSpec::validate() const {
    if (!(std::abs(tau0) <= 0.5))
        throw ParameterError("tau0 must lie in [-0.5, 0.5], got " + std::to_string(tau0));
    if (!std::isfinite(clock_ppm) || !std::isfinite(cfo_hz))
        throw ParameterError("clock_ppm and cfo_hz must be finite");
    if (!(pn_linewidth_hz >= 0.0) || !std::isfinite(pn_linewidth_hz))
        throw ParameterError("phase-noise linewidth must be >= 0");
    if (std::isnan(snr_db))
        throw ParameterError("snr_db is NaN");
    for (const auto& t : isi_taps)
        if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
            throw ParameterError("ISI taps must be finite");
}

const kernels::SincKernel& channel_resampler_kernel() {
    static const kernels::SincKernel kernel(24, 11.0);
    return kernel;
}

SampleStream apply_timing(const SampleStream& x, double tau0, double clock_ppm) {
    if (!(std::abs(tau0) <= 0.5))
        throw ParameterError("tau0 must lie in [-0.5, 0.5], got " + std::to_string(tau0));
    if (x.rate < 2.0)
        throw ParameterError("apply_timing needs at least 2 samples per symbol");
    require_finite(x.view());
    if (x.empty())
        return x;

    kernels::ResampleGrid grid;
    grid.first = tau0 * x.rate;
    grid.step = 1.0 + clock_ppm * 1e-6;
    const double last = static_cast<double>(x.size() - 1);
    grid.count = grid.first > last ? 0 : static_cast<std::size_t>(std::floor((last - grid.first) / grid.step)) + 1;
    auto y = kernels::parallel::resample(x.view(), grid, channel_resampler_kernel());
    return SampleStream(std::move(y), x.rate, x.origin);
}

std::vector<double> carrier_phase(std::size_t count, double fs_hz, double cfo_hz,
                                  double linewidth_hz, std::uint64_t seed) {
    std::vector<double> phase(count);
    const double w = 2.0 * std::numbers::pi * cfo_hz / fs_hz;
    const double sigma = std::sqrt(2.0 * std::numbers::pi * linewidth_hz / fs_hz);
    auto rng = make_rng(seed, RngStream::PhaseNoise);
    std::normal_distribution<double> normal(0.0, 1.0);
    double wiener = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
        phase[n] = w * static_cast<double>(n) + wiener;
        if (linewidth_hz > 0.0)
            wiener += sigma * normal(rng);
    }
    return phase;
}

SampleStream apply_cfo_pn(const SampleStream& x, double symbol_rate_hz, double cfo_hz,
                          double linewidth_hz, std::uint64_t seed) {
    if (cfo_hz == 0.0 && linewidth_hz == 0.0)
        return x;
    if (!(symbol_rate_hz > 0.0))
        throw ParameterError("symbol rate must be positive");
    const auto phase = carrier_phase(x.size(), x.rate * symbol_rate_hz, cfo_hz, linewidth_hz, seed);
    SampleStream y = x;
    for (std::size_t n = 0; n < y.size(); ++n)
        y[n] *= std::polar(1.0, phase[n]);
    return y;
}

SampleStream apply_awgn(const SampleStream& x, double snr_db, std::uint64_t seed) {
    if (x.empty())
        throw ParameterError("apply_awgn: empty stream");
    if (std::isinf(snr_db) && snr_db > 0.0)
        return x;
    double power = 0.0;
    for (const auto& v : x.samples)
        power += std::norm(v);
    power /= static_cast<double>(x.size());
    const double variance = power * x.rate / std::pow(10.0, snr_db / 10.0);
    const double sigma = std::sqrt(variance / 2.0);

    auto rng = make_rng(seed, RngStream::Awgn);
    std::normal_distribution<double> normal(0.0, 1.0);
    SampleStream y = x;
    for (auto& v : y.samples) {
        const double re = normal(rng);
        const double im = normal(rng);
        v += sigma * Complex{re, im};
    }
    return y;
}

SampleStream apply_isi(const SampleStream& x, const std::vector<Complex>& taps) {
    if (taps.empty())
        throw ParameterError("apply_isi: empty tap vector");
    if (taps.size() == 1 && taps[0] == Complex{1.0, 0.0})
        return x;
    const double rate = std::round(x.rate);
    if (std::abs(rate - x.rate) > 1e-12 || rate < 1.0)
        throw ParameterError("apply_isi needs an integer samples-per-symbol rate");
    if (x.empty())
        return x;
    const auto sps = static_cast<std::size_t>(rate);
    std::vector<Complex> h((taps.size() - 1) * sps + 1);
    for (std::size_t k = 0; k < taps.size(); ++k)
        h[k * sps] = taps[k];
    auto y = kernels::parallel::convolve(x.view(), std::span<const Complex>(h));
    y.resize(x.size());
    return SampleStream(std::move(y), x.rate, x.origin);
}

ChannelOutput apply_impairments(const SampleStream& x, const ImpairmentSpec& spec,
                                double symbol_rate_hz) {
    spec.validate();
    ChannelOutput out;
    out.signal = apply_timing(x, spec.tau0, spec.clock_ppm);
    out.phase = carrier_phase(out.signal.size(), out.signal.rate * symbol_rate_hz, spec.cfo_hz,
                              spec.pn_linewidth_hz, spec.seed);
    if (spec.cfo_hz != 0.0 || spec.pn_linewidth_hz != 0.0)
        for (std::size_t n = 0; n < out.signal.size(); ++n)
            out.signal[n] *= std::polar(1.0, out.phase[n]);
    if (!spec.isi_taps.empty())
        out.signal = apply_isi(out.signal, spec.isi_taps);
    if (!out.signal.empty())
        out.signal = apply_awgn(out.signal, spec.snr_db, spec.seed);
    return out;
}

}  // namespace baudsync
