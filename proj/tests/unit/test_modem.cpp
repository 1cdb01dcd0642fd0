#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "baudsync/channel.hpp"
#include "baudsync/dsp.hpp"
#include "baudsync/error.hpp"
#include "baudsync/metrics.hpp"
#include "baudsync/modem.hpp"
#include "baudsync/prbs.hpp"
#include "helpers.hpp"

using namespace baudsync;

namespace {

Bits random_bits(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Bits b(n);
    for (auto& x : b)
        x = static_cast<std::uint8_t>(rng() & 1u);
    return b;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

IfConfig default_if_config() {
    IfConfig cfg;  // 5 GHz IF, 160 GSa/s, 5 GBd
    cfg.signal_bandwidth_hz = 1.25 * cfg.symbol_rate_hz;
    return cfg;
}

}  // namespace

TEST_CASE("constellations have unit mean power and Gray neighbours") {
    for (int order : {4, 16, 64}) {
        const Constellation c(order);
        CHECK(c.mean_power() == doctest::Approx(1.0).epsilon(1e-12));
        const double d = c.min_distance();
        for (unsigned a = 0; a < static_cast<unsigned>(order); ++a)
            for (unsigned b = a + 1; b < static_cast<unsigned>(order); ++b)
                if (std::abs(c.point(a) - c.point(b)) < d * 1.0001)
                    CHECK(std::popcount(a ^ b) == 1);
    }
}

TEST_CASE("16-QAM scale comes from the raw lattice power") {
    // enumerate the raw {+-1, +-3}^2 lattice
    double raw = 0.0;
    for (int i : {-3, -1, 1, 3})
        for (int q : {-3, -1, 1, 3})
            raw += i * i + q * q;
    raw /= 16.0;
    CHECK(raw == 10.0);
    CHECK(Constellation(16).scale() == doctest::Approx(1.0 / std::sqrt(raw)).epsilon(1e-15));
}

TEST_CASE("all 16 four-bit words map to 16 distinct points") {
    const Constellation c(16);
    Bits bits;
    for (unsigned w = 0; w < 16; ++w)
        for (int b = 3; b >= 0; --b)
            bits.push_back(static_cast<std::uint8_t>((w >> b) & 1u));
    const SampleStream s = map_bits(bits, c);
    REQUIRE(s.size() == 16);
    double p = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
        p += std::norm(s[i]);
        for (std::size_t j = i + 1; j < 16; ++j)
            CHECK(std::abs(s[i] - s[j]) > 0.1);
    }
    CHECK(p / 16.0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.rate == 1.0);
}

TEST_CASE("map/demap round trip and decision regions") {
    for (int order : {4, 16, 64}) {
        const Constellation c(order);
        const Bits bits = random_bits(600 * static_cast<std::size_t>(c.bits_per_symbol()), 3);
        const SampleStream s = map_bits(bits, c);
        CHECK(demap_symbols(s, c) == bits);
        // perturb each point by just under half the minimum distance
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
        std::vector<Complex> y(s.samples);
        for (auto& v : y)
            v += std::polar(0.49 * c.min_distance() / std::numbers::sqrt2, ang(rng));
        CHECK(demap_symbols(y, c) == bits);
    }
    CHECK_THROWS_AS(map_bits(Bits(5, 0), Constellation(16)), ParameterError);
}

TEST_CASE("AWGN BER matches the Gray 16-QAM approximation") {
    const Constellation c(16);
    const double ebn0_db = 12.0;
    const std::size_t nbits = 1'000'000;
    const Bits bits = Prbs23(7).bits(nbits);
    const SampleStream tx = map_bits(bits, c);
    const double esn0_db = ebn0_db + 10.0 * std::log10(4.0);
    const SampleStream rx = apply_awgn(tx, esn0_db, 11);
    const BerResult r = ber(bits, demap_symbols(rx, c), 0, c);

    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    const double p = 0.75 * q_function(std::sqrt(0.8 * ebn0));
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(nbits));
    CHECK(std::abs(r.ber - p) < 3.0 * sigma);
}

TEST_CASE("shape_pulse: impulse, superposition and matched-filter recovery") {
    const FirFilter g = design_rrc(0.25, 16, 4);
    const SampleStream one = shape_pulse(SampleStream({1}, 1.0), g, 4);
    REQUIRE(one.size() >= g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
        CHECK(one[k].real() == g.taps[k]);
    CHECK(one.rate == 4.0);

    const SampleStream two = shape_pulse(SampleStream({1, 1}, 1.0), g, 4);
    for (std::size_t k = 0; k < two.size(); ++k) {
        const double a = k < g.size() ? g.taps[k] : 0.0;
        const double b = k >= 4 && k - 4 < g.size() ? g.taps[k - 4] : 0.0;
        CHECK(two[k].real() == doctest::Approx(a + b).epsilon(1e-14));
    }

    const Constellation c(16);
    const SampleStream sym = map_bits(Prbs23(3).bits(4 * 400), c);
    const SampleStream mf = fir_filter(shape_pulse(sym, g, 4), g);
    const std::size_t delay = g.size() - 1;
    // oracle: the g*g cascade at symbol spacing. Each interferer stays below 1e-3 of the
    // main tap, and for white symbols the rms error is the root-sum-square of all of them.
    std::vector<double> casc(2 * g.size() - 1, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            casc[i + j] += g.taps[i] * g.taps[j];
    const std::size_t mid = g.size() - 1;
    double worst = 0.0, rss = std::pow(casc[mid] - 1.0, 2);
    for (std::size_t m = 4; m <= mid; m += 4) {
        worst = std::max({worst, std::abs(casc[mid + m]), std::abs(casc[mid - m])});
        rss += casc[mid + m] * casc[mid + m] + casc[mid - m] * casc[mid - m];
    }
    CHECK(worst / casc[mid] < 1e-3);

    double err = 0.0, pow = 0.0;
    for (std::size_t k = 20; k + 20 < sym.size(); ++k) {
        err += std::norm(mf[delay + 4 * k] - sym[k]);
        pow += std::norm(sym[k]);
    }
    MESSAGE("rms ISI error " << std::sqrt(err / pow) << ", oracle " << std::sqrt(rss));
    CHECK(std::sqrt(err / pow) == doctest::Approx(std::sqrt(rss)).epsilon(0.15));
}

TEST_CASE("IF upconversion of constant envelopes") {
    const IfConfig cfg = default_if_config();
    const double f = cfg.cycles_per_sample();
    const auto re = if_upconvert(SampleStream(std::vector<Complex>(100, {1, 0}), 32.0), cfg);
    const auto im = if_upconvert(SampleStream(std::vector<Complex>(100, {0, 1}), 32.0), cfg);
    for (std::size_t n = 0; n < 100; ++n) {
        CHECK(re[n] == doctest::Approx(std::cos(2 * std::numbers::pi * f * n)));
        CHECK(im[n] == doctest::Approx(-std::sin(2 * std::numbers::pi * f * n)));
    }
}

TEST_CASE("IfConfig alias check") {
    IfConfig cfg = default_if_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.f_if_hz = 78e9;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

namespace {

// band-limited 16-QAM at 32 samples/symbol
SampleStream shaped_signal(std::size_t symbols, std::uint64_t seed) {
    const Constellation c(16);
    return shape_pulse(map_bits(Prbs23(seed).bits(4 * symbols), c), design_rrc(0.25, 16, 32), 32);
}

}  // namespace

TEST_CASE("IF round trip preserves the envelope") {
    IfConfig cfg = default_if_config();
    const SampleStream x = testing::band_limit(shaped_signal(300, 1), 0.021, 1201);
    const FirFilter lp = design_lowpass(0.031, 1201);
    const SampleStream y = if_downconvert(if_upconvert(x, cfg), cfg, lp);
    const auto gd = static_cast<std::size_t>(lp.group_delay());
    double err = 0.0, ref = 0.0;
    for (std::size_t n = 500; n + 500 < x.size(); ++n) {
        err = std::max(err, std::abs(y[n + gd] - x[n]));
        ref = std::max(ref, std::abs(x[n]));
    }
    CHECK(err / ref < 1e-3);
    CHECK(y.origin == doctest::Approx(-lp.group_delay() / 32.0));
}

TEST_CASE("BB rotation commutes with the IF chain") {
    IfConfig cfg = default_if_config();
    const SampleStream x = testing::band_limit(shaped_signal(200, 2), 0.021, 1201);
    const double theta = 0.7;
    SampleStream xr = x;
    for (auto& v : xr.samples)
        v *= std::polar(1.0, theta);
    const FirFilter lp = design_lowpass(0.031, 1201);
    const SampleStream a = if_downconvert(if_upconvert(x, cfg), cfg, lp);
    const SampleStream b = if_downconvert(if_upconvert(xr, cfg), cfg, lp);
    double worst = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n)
        worst = std::max(worst, std::abs(b[n] - a[n] * std::polar(1.0, theta)));
    CHECK(worst < 1e-6);
}

TEST_CASE("downconversion phase and constant carrier") {
    IfConfig cfg = default_if_config();
    const FirFilter lp = design_lowpass(0.031, 401);
    std::vector<double> carrier(3000);
    for (std::size_t n = 0; n < carrier.size(); ++n)
        carrier[n] = std::cos(2 * std::numbers::pi * cfg.cycles_per_sample() * n);
    const SampleStream a = if_downconvert(carrier, cfg, lp);
    CHECK(std::abs(a[1500] - Complex{1, 0}) < 1e-6);
    cfg.phi_bb = std::numbers::pi / 2;
    const SampleStream b = if_downconvert(carrier, cfg, lp);
    for (std::size_t n = 0; n < a.size(); n += 37)
        CHECK(std::abs(b[n] - a[n] * Complex{0, 1}) < 1e-12);
}

TEST_CASE("full IF loopback at perfect timing has EVM below 1%") {
    const IfConfig cfg = default_if_config();
    const Constellation c(16);
    const SampleStream sym = map_bits(Prbs23(9).bits(4 * 2000), c);
    const FirFilter g = design_rrc(0.25, 16, 32);
    const SampleStream pbb = shape_pulse(sym, g, 32);
    const SampleStream rx = if_downconvert(if_upconvert(pbb, cfg), cfg, g);
    const std::size_t delay = g.size() - 1;
    std::vector<Complex> y;
    for (std::size_t k = 0; k < sym.size(); ++k)
        y.push_back(rx[delay + 32 * k]);
    CHECK(evm(std::span<const Complex>(y).subspan(50, 1900), c, 0) < 1.0);
}
