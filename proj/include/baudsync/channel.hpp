#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "baudsync/kernels.hpp"
#include "baudsync/types.hpp"

namespace baudsync {

/// Link impairments applied by the channel simulator.
struct ImpairmentSpec {
    double tau0 = 0.0;             ///< static timing offset, fraction of T, in [-0.5, 0.5]
    double clock_ppm = 0.0;        ///< receiver sample-clock offset
    double cfo_hz = 0.0;           ///< carrier frequency offset
    double pn_linewidth_hz = 0.0;  ///< Wiener phase-noise 3 dB linewidth
    double snr_db = std::numeric_limits<double>::infinity();  ///< symbol-rate SNR
    std::vector<Complex> isi_taps;  ///< symbol-spaced channel; empty means identity
    std::uint64_t seed = 1;

    void validate() const;
};

/// The kernel used by apply_timing (48 taps, Kaiser beta 11).
const kernels::SincKernel& channel_resampler_kernel();

/// Resamples x at t_k = k (1 + ppm 1e-6) / sps + tau0 (symbol units), so the
/// timing error grows linearly with time.
SampleStream apply_timing(const SampleStream& x, double tau0, double clock_ppm);

/// Carrier phase trajectory 2 pi cfo n / fs + phi[n], with phi a Wiener
/// process whose increments have variance 2 pi linewidth / fs.
std::vector<double> carrier_phase(std::size_t count, double fs_hz, double cfo_hz,
                                  double linewidth_hz, std::uint64_t seed);

/// x[n] * exp(j * carrier_phase[n]); fs = x.rate * symbol_rate_hz.
SampleStream apply_cfo_pn(const SampleStream& x, double symbol_rate_hz, double cfo_hz,
                          double linewidth_hz, std::uint64_t seed);

/// Circular complex Gaussian noise; per-sample variance is mean|x|^2 * rate / snr,
/// i.e. the SNR at the output of a unit-energy matched filter.
SampleStream apply_awgn(const SampleStream& x, double snr_db, std::uint64_t seed);

/// Symbol-spaced FIR channel run at the stream rate: taps are zero-stuffed to
/// the stream rate and convolved causally; the output keeps the input length.
/// Requires an integer rate.
SampleStream apply_isi(const SampleStream& x, const std::vector<Complex>& taps);

struct ChannelOutput {
    SampleStream signal;
    std::vector<double> phase;  ///< carrier phase applied to each output sample
};

/// Full channel in the fixed order timing -> CFO/PN -> ISI -> AWGN.
ChannelOutput apply_impairments(const SampleStream& x, const ImpairmentSpec& spec,
                                double symbol_rate_hz);

}  // namespace baudsync
