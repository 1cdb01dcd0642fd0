#pragma once

#include <cstddef>

#include "baudsync/types.hpp"

namespace baudsync {

/// Unit-energy root-raised-cosine filter, span_symbols * sps + 1 taps
/// (odd length, true centre tap). rolloff in [0, 1].
FirFilter design_rrc(double rolloff, int span_symbols, int sps);

/// Kaiser-windowed sinc lowpass with unit DC gain. `cutoff` is in cycles
/// per sample, in (0, 0.5); num_taps must be odd. beta = 13 gives roughly
/// 120 dB of stopband attenuation.
FirFilter design_lowpass(double cutoff, int num_taps, double kaiser_beta = 13.0);

enum class FilterAlignment {
    Full,      ///< plain linear convolution, origin unchanged
    Centered,  ///< same samples; origin shifted back by the group delay
};

/// Linear convolution, output length x.size() + f.size() - 1, same rate.
SampleStream fir_filter(const SampleStream& x, const FirFilter& f,
                        FilterAlignment align = FilterAlignment::Full);

/// Zero-stuffing: factor - 1 zeros after every sample; rate * factor.
SampleStream upsample(const SampleStream& x, int factor);

/// Keeps samples phase, phase + factor, ...; rate / factor.
SampleStream downsample(const SampleStream& x, int factor, int phase = 0);

}  // namespace baudsync
