#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "baudsync/types.hpp"

namespace baudsync {

using Bits = std::vector<std::uint8_t>;

/// Gray-labelled rectangular QAM (4, 16 or 64 points) scaled to unit mean power.
///
/// A symbol's label is split in half: the high bits select the in-phase level,
/// the low bits the quadrature level, each through a reflected Gray code over
/// the PAM levels -(L-1), ..., -1, 1, ..., L-1 (L = sqrt(order)).
class Constellation {
public:
    explicit Constellation(int order);

    static Constellation from_name(const std::string& name);  // "qpsk", "16qam", "64qam"

    int order() const noexcept { return order_; }
    int bits_per_symbol() const noexcept { return bits_per_symbol_; }
    int levels_per_axis() const noexcept { return levels_; }
    double scale() const noexcept { return scale_; }
    std::string name() const;

    /// Point for a bit label (0 .. order-1).
    Complex point(unsigned label) const { return points_[label]; }
    const std::vector<Complex>& points() const noexcept { return points_; }

    /// Label of the nearest point (minimum Euclidean distance).
    unsigned nearest_label(Complex y) const;
    Complex nearest_point(Complex y) const { return points_[nearest_label(y)]; }

    /// Smallest distance between two distinct points.
    double min_distance() const noexcept { return 2.0 * scale_; }

    /// E{|c|^2} and E{|c|^4} over equiprobable points.
    double mean_power() const;
    double fourth_moment() const;
    /// E{c^4}, the fourth-power phase detector reference (negative real for square QAM).
    Complex fourth_power_mean() const;

private:
    int order_;
    int bits_per_symbol_;
    int levels_;
    double scale_;
    std::vector<Complex> points_;
};

/// One symbol per bits_per_symbol bits, MSB first. Rate-1 stream.
SampleStream map_bits(std::span<const std::uint8_t> bits, const Constellation& c);

/// Hard decisions back to bits (inverse of map_bits).
Bits demap_symbols(std::span<const Complex> y, const Constellation& c);
inline Bits demap_symbols(const SampleStream& y, const Constellation& c) {
    return demap_symbols(y.view(), c);
}

/// Upsample by sps then filter with g.
SampleStream shape_pulse(const SampleStream& symbols, const FirFilter& g, int sps);

/// IF stage geometry: a real carrier at f_if_hz sampled at fs_hz.
struct IfConfig {
    double f_if_hz = 5e9;
    double fs_hz = 160e9;
    double symbol_rate_hz = 5e9;
    double phi_bb = 0.0;               ///< receiver baseband mixing phase, rad
    double signal_bandwidth_hz = 0.0;  ///< two-sided occupied bandwidth of the baseband signal

    double samples_per_symbol() const { return fs_hz / symbol_rate_hz; }
    double cycles_per_sample() const { return f_if_hz / fs_hz; }
    /// Throws ParameterError when the real IF signal would alias.
    void validate() const;
};

/// s_if[n] = Re{ bb[n] exp(j 2 pi f_if n / fs) }.
std::vector<double> if_upconvert(const SampleStream& bb, const IfConfig& cfg);

/// 2 * lowpass{ pb[n] exp(-j 2 pi f_if n / fs) } * exp(j phi_bb).
///
/// `lowpass` rejects the image at 2 f_if. The output keeps the full
/// convolution length; its origin is shifted back by the filter group delay.
SampleStream if_downconvert(std::span<const double> pb, const IfConfig& cfg,
                            const FirFilter& lowpass);

}  // namespace baudsync
