#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "baudsync/error.hpp"
#include "baudsync/io.hpp"

using namespace baudsync;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("baudsync_io_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_bytes(const fs::path& p, const std::vector<unsigned char>& bytes) {
    std::ofstream os(p, std::ios::binary);
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

CaptureMeta complex_meta() {
    CaptureMeta m;
    m.sample_rate_hz = 40e9;
    m.center_freq_hz = 140e9;
    m.description = "unit test";
    m.capture_time = "2026-01-01T00:00:00Z";
    return m;
}

}  // namespace

TEST_CASE("complex capture round trip is bit exact") {
    TempDir dir;
    std::mt19937 rng(1);
    std::uniform_int_distribution<std::uint32_t> bits;
    Capture cap;
    cap.meta = complex_meta();
    for (int n = 0; n < 500; ++n) {
        float re, im;
        do {
            re = std::bit_cast<float>(bits(rng));
            im = std::bit_cast<float>(bits(rng));
        } while (!std::isfinite(re) || !std::isfinite(im));
        cap.iq.emplace_back(re, im);
    }
    cap.iq.emplace_back(-0.0f, std::numeric_limits<float>::denorm_min());
    const fs::path p = dir.path / "a.iq";
    write_capture(p, cap);
    CHECK(fs::file_size(p) == 8 * cap.iq.size());
    const Capture back = read_capture(p);
    CHECK(back.meta == cap.meta);
    REQUIRE(back.iq.size() == cap.iq.size());
    for (std::size_t n = 0; n < cap.iq.size(); ++n) {
        CHECK(std::bit_cast<std::uint32_t>(back.iq[n].real()) == std::bit_cast<std::uint32_t>(cap.iq[n].real()));
        CHECK(std::bit_cast<std::uint32_t>(back.iq[n].imag()) == std::bit_cast<std::uint32_t>(cap.iq[n].imag()));
    }
}

TEST_CASE("payload is little-endian float32") {
    TempDir dir;
    Capture cap;
    cap.meta = complex_meta();
    cap.iq = {{1.0f, -2.0f}};
    const fs::path p = dir.path / "le.iq";
    write_capture(p, cap);
    std::ifstream is(p, std::ios::binary);
    std::vector<unsigned char> b{std::istreambuf_iterator<char>(is), {}};
    // 1.0f = 0x3F800000, -2.0f = 0xC0000000
    CHECK(b == std::vector<unsigned char>{0x00, 0x00, 0x80, 0x3F, 0x00, 0x00, 0x00, 0xC0});
}

TEST_CASE("empty and real-mode captures") {
    TempDir dir;
    Capture empty;
    empty.meta = complex_meta();
    write_capture(dir.path / "e.iq", empty);
    CHECK(fs::file_size(dir.path / "e.iq") == 0);
    const Capture e = read_capture(dir.path / "e.iq");
    CHECK(e.iq.empty());
    CHECK(e.meta == empty.meta);

    CaptureMeta m;
    m.sample_rate_hz = 160e9;
    m.center_freq_hz = 5e9;
    m.format = CaptureFormat::Real;
    const Capture r = make_real_capture(std::vector<double>{0.5, -0.25, 1e-3}, m);
    write_capture(dir.path / "r.iq", r);
    const Capture back = read_capture(dir.path / "r.iq");
    CHECK(back.meta.format == CaptureFormat::Real);
    CHECK(back.meta.sample_rate_hz == 160e9);
    CHECK(back.real == r.real);
    CHECK(fs::file_size(dir.path / "r.iq") == 12);
}

TEST_CASE("read errors are distinct") {
    TempDir dir;
    const std::string good_side = R"({"format":"complex","sample_rate_hz":1e9})";

    write_bytes(dir.path / "one.iq", {0, 0, 0x80, 0x3F, 0, 0, 0, 0});
    write_text(dir.path / "one.iq.json", good_side);
    CHECK(read_capture(dir.path / "one.iq").iq.size() == 1);

    write_bytes(dir.path / "t.iq", std::vector<unsigned char>(7, 0));
    write_text(dir.path / "t.iq.json", good_side);
    CHECK_THROWS_AS(read_capture(dir.path / "t.iq"), TruncatedPayloadError);

    write_bytes(dir.path / "m.iq", std::vector<unsigned char>(8, 0));
    write_text(dir.path / "m.iq.json", R"({"format":"complex")");
    CHECK_THROWS_AS(read_capture(dir.path / "m.iq"), MalformedSidecarError);
    write_text(dir.path / "m.iq.json", R"({"format":"iq","sample_rate_hz":1e9})");
    CHECK_THROWS_AS(read_capture(dir.path / "m.iq"), MalformedSidecarError);
    write_text(dir.path / "m.iq.json", R"({"format":"complex","sample_rate_hz":-1})");
    CHECK_THROWS_AS(read_capture(dir.path / "m.iq"), MalformedSidecarError);

    // NaN in the imaginary part of sample 1
    std::vector<unsigned char> nan_bytes(16, 0);
    nan_bytes[12] = 0x00;
    nan_bytes[13] = 0x00;
    nan_bytes[14] = 0xC0;
    nan_bytes[15] = 0x7F;
    write_bytes(dir.path / "n.iq", nan_bytes);
    write_text(dir.path / "n.iq.json", good_side);
    try {
        read_capture(dir.path / "n.iq");
        FAIL("expected NonFiniteSampleError");
    } catch (const NonFiniteSampleError& e) {
        CHECK(e.sample_index() == 1);
        CHECK(e.path() == (dir.path / "n.iq").string());
    }

    CHECK_THROWS_AS(read_capture(dir.path / "missing.iq"), IoError);
}

TEST_CASE("write errors carry the path") {
    Capture cap;
    cap.meta = complex_meta();
    const fs::path p = "/nonexistent-dir/x.iq";
    try {
        write_capture(p, cap);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(e.path() == p.string());
    }
}
