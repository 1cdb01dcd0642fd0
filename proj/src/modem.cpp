#include "baudsync/modem.hpp"

#include <algorithm>
#include <cmath>

#include "baudsync/dsp.hpp"
#include "baudsync/error.hpp"
#include "baudsync/kernels.hpp"

namespace baudsync {

namespace {

unsigned gray_encode(unsigned v) { return v ^ (v >> 1); }

unsigned gray_decode(unsigned g) {
    unsigned v = 0;
    for (; g != 0; g >>= 1)
        v ^= g;
    return v;
}

}  // namespace

Constellation::Constellation(int order) : order_(order) {
    switch (order) {
    case 4: bits_per_symbol_ = 2; levels_ = 2; break;
    case 16: bits_per_symbol_ = 4; levels_ = 4; break;
    case 64: bits_per_symbol_ = 6; levels_ = 8; break;
    default: throw ParameterError("constellation order must be 4, 16 or 64");
    }
    // E|c|^2 of the raw odd-integer lattice is 2 (L^2 - 1) / 3
    const double raw_power = 2.0 * (levels_ * levels_ - 1) / 3.0;
    scale_ = 1.0 / std::sqrt(raw_power);

    const int half_bits = bits_per_symbol_ / 2;
    const unsigned axis_mask = (1u << half_bits) - 1u;
    points_.resize(static_cast<std::size_t>(order_));
    for (unsigned label = 0; label < static_cast<unsigned>(order_); ++label) {
        const unsigned i_level = gray_decode(label >> half_bits);
        const unsigned q_level = gray_decode(label & axis_mask);
        const double re = 2.0 * i_level - (levels_ - 1);
        const double im = 2.0 * q_level - (levels_ - 1);
        points_[label] = scale_ * Complex{re, im};
    }
}

Constellation Constellation::from_name(const std::string& name) {
    if (name == "qpsk" || name == "4qam")
        return Constellation(4);
    if (name == "16qam")
        return Constellation(16);
    if (name == "64qam")
        return Constellation(64);
    throw ParameterError("unknown constellation '" + name + "'");
}

std::string Constellation::name() const {
    switch (order_) {
    case 4: return "qpsk";
    case 16: return "16qam";
    default: return "64qam";
    }
}

unsigned Constellation::nearest_label(Complex y) const {
    const auto axis = [&](double v) {
        const double idx = std::round((v / scale_ + (levels_ - 1)) / 2.0);
        const double clamped = std::clamp(idx, 0.0, static_cast<double>(levels_ - 1));
        return gray_encode(static_cast<unsigned>(clamped));
    };
    const int half_bits = bits_per_symbol_ / 2;
    return (axis(y.real()) << half_bits) | axis(y.imag());
}

double Constellation::mean_power() const {
    double acc = 0.0;
    for (const auto& p : points_)
        acc += std::norm(p);
    return acc / order_;
}

double Constellation::fourth_moment() const {
    double acc = 0.0;
    for (const auto& p : points_)
        acc += std::norm(p) * std::norm(p);
    return acc / order_;
}

Complex Constellation::fourth_power_mean() const {
    Complex acc{0.0, 0.0};
    for (const auto& p : points_)
        acc += (p * p) * (p * p);
    return acc / static_cast<double>(order_);
}

SampleStream map_bits(std::span<const std::uint8_t> bits, const Constellation& c) {
    const auto k = static_cast<std::size_t>(c.bits_per_symbol());
    if (bits.size() % k != 0)
        throw ParameterError("bit count " + std::to_string(bits.size()) +
                             " is not a multiple of " + std::to_string(k));
    std::vector<Complex> symbols(bits.size() / k);
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        unsigned label = 0;
        for (std::size_t b = 0; b < k; ++b)
            label = (label << 1) | (bits[s * k + b] & 1u);
        symbols[s] = c.point(label);
    }
    return SampleStream(std::move(symbols), 1.0);
}

Bits demap_symbols(std::span<const Complex> y, const Constellation& c) {
    const int k = c.bits_per_symbol();
    Bits bits;
    bits.reserve(y.size() * static_cast<std::size_t>(k));
    for (const auto& v : y) {
        const unsigned label = c.nearest_label(v);
        for (int b = k - 1; b >= 0; --b)
            bits.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
    }
    return bits;
}

SampleStream shape_pulse(const SampleStream& symbols, const FirFilter& g, int sps) {
    return fir_filter(upsample(symbols, sps), g);
}

void IfConfig::validate() const {
    if (!(fs_hz > 0.0))
        throw ParameterError("IF sample rate must be positive");
    if (!(symbol_rate_hz > 0.0))
        throw ParameterError("symbol rate must be positive");
    if (!(f_if_hz >= 0.0))
        throw ParameterError("IF carrier must be non-negative");
    if (!(fs_hz > 2.0 * (f_if_hz + signal_bandwidth_hz / 2.0)))
        throw ParameterError("IF signal aliases: fs must exceed 2 (f_if + bandwidth / 2)");
}

std::vector<double> if_upconvert(const SampleStream& bb, const IfConfig& cfg) {
    cfg.validate();
    require_finite(bb.view());
    return kernels::parallel::mix_to_real(bb.view(), cfg.cycles_per_sample(), 0.0);
}

SampleStream if_downconvert(std::span<const double> pb, const IfConfig& cfg,
                            const FirFilter& lowpass) {
    cfg.validate();
    require_finite(pb);
    auto mixed = kernels::parallel::mix_to_complex(pb, cfg.cycles_per_sample(), cfg.phi_bb, 2.0);
    const double sps = cfg.samples_per_symbol();
    if (mixed.empty())
        return SampleStream({}, sps);
    return fir_filter(SampleStream(std::move(mixed), sps), lowpass, FilterAlignment::Centered);
}

}  // namespace baudsync
