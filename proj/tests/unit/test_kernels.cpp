#include <doctest.h>

#include <cmath>
#include <numbers>

#include "baudsync/kernels.hpp"
#include "helpers.hpp"

using namespace baudsync;
namespace k = baudsync::kernels;

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
    const auto x = testing::random_complex(5000, 1);
    const auto hr = testing::random_real(97, 2);
    const auto hc = testing::random_complex(33, 3);
    CHECK(k::serial::convolve(x, hr) == k::parallel::convolve(x, hr));
    CHECK(k::serial::convolve(x, hc) == k::parallel::convolve(x, hc));

    const k::SincKernel kern;
    const k::ResampleGrid grid{3.3, 1.0 + 5e-5, 4000};
    CHECK(k::serial::resample(x, grid, kern) == k::parallel::resample(x, grid, kern));

    CHECK(k::serial::mix_to_real(x, 0.03125, 0.4) == k::parallel::mix_to_real(x, 0.03125, 0.4));
    const auto pb = testing::random_real(5000, 4);
    CHECK(k::serial::mix_to_complex(pb, 0.03125, -0.2, 2.0) == k::parallel::mix_to_complex(pb, 0.03125, -0.2, 2.0));
}

TEST_CASE("convolution matches the textbook double sum") {
    const auto x = testing::random_complex(40, 5);
    const auto h = testing::random_real(7, 6);
    const auto y = k::serial::convolve(x, h);
    REQUIRE(y.size() == x.size() + h.size() - 1);
    for (std::size_t n = 0; n < y.size(); ++n) {
        Complex acc{};
        for (std::size_t m = 0; m < h.size(); ++m)
            if (n >= m && n - m < x.size())
                acc += h[m] * x[n - m];
        CHECK(std::abs(y[n] - acc) < 1e-12);
    }
}

TEST_CASE("tabulated sinc kernel tracks the exact kernel") {
    const k::SincKernel kern;
    double worst = 0.0;
    for (double t = -24.0; t <= 24.0; t += 0.0137)
        worst = std::max(worst, std::abs(kern(t) - kern.exact(t)));
    CHECK(worst < 1e-9);
    CHECK(kern(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(kern(3.0)) < 1e-12);
    CHECK(kern(30.0) == 0.0);
}

TEST_CASE("integer-grid resampling is an exact copy") {
    const auto x = testing::random_complex(200, 7);
    const auto y = k::serial::resample(x, {5.0, 1.0, 100}, k::SincKernel{});
    for (std::size_t n = 0; n < y.size(); ++n)
        CHECK(y[n] == x[n + 5]);
}

TEST_CASE("mixers follow the complex-envelope conventions") {
    std::vector<Complex> one(64, Complex{1, 0});
    const double f = 0.1;
    const auto re = k::serial::mix_to_real(one, f, 0.0);
    for (std::size_t n = 0; n < re.size(); ++n)
        CHECK(re[n] == doctest::Approx(std::cos(2 * std::numbers::pi * f * n)));
    std::vector<double> c(64);
    for (std::size_t n = 0; n < c.size(); ++n)
        c[n] = std::cos(2 * std::numbers::pi * f * n);
    const auto bb = k::serial::mix_to_complex(c, f, 0.0, 2.0);
    // 2 cos(wn) e^{-jwn} = 1 + e^{-2jwn}
    for (std::size_t n = 0; n < bb.size(); ++n)
        CHECK(std::abs(bb[n] - (1.0 + std::polar(1.0, -4 * std::numbers::pi * f * n))) < 1e-12);
}
