#include "baudsync/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "baudsync/error.hpp"

namespace baudsync {

namespace {

using nlohmann::json;

void put_f32(std::vector<char>& out, float v) {
    const auto u = std::bit_cast<std::uint32_t>(v);
    for (int b = 0; b < 4; ++b)
        out.push_back(static_cast<char>((u >> (8 * b)) & 0xFFu));
}

float get_f32(const unsigned char* p) {
    const std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                            (static_cast<std::uint32_t>(p[2]) << 16) |
                            (static_cast<std::uint32_t>(p[3]) << 24);
    return std::bit_cast<float>(u);
}

const char* format_name(CaptureFormat f) { return f == CaptureFormat::Complex ? "complex" : "real"; }

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& payload) {
    auto p = payload;
    p += ".json";
    return p;
}

void write_capture(const std::filesystem::path& path, const Capture& capture) {
    const auto& m = capture.meta;
    if (!(m.sample_rate_hz > 0.0))
        throw IoError(path.string(), "sample_rate_hz must be positive");

    std::vector<char> payload;
    if (m.format == CaptureFormat::Complex) {
        payload.reserve(capture.iq.size() * 8);
        for (const auto& v : capture.iq) {
            put_f32(payload, v.real());
            put_f32(payload, v.imag());
        }
    } else {
        payload.reserve(capture.real.size() * 4);
        for (float v : capture.real)
            put_f32(payload, v);
    }

    std::ofstream bin(path, std::ios::binary | std::ios::trunc);
    if (!bin)
        throw IoError(path.string(), "cannot open payload for writing");
    bin.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!bin)
        throw IoError(path.string(), "payload write failed");

    json side = {
        {"format", format_name(m.format)},
        {"sample_rate_hz", m.sample_rate_hz},
        {"center_freq_hz", m.center_freq_hz},
        {"description", m.description},
        {"capture_time", m.capture_time},
    };
    const auto side_path = sidecar_path(path);
    std::ofstream js(side_path, std::ios::trunc);
    if (!js)
        throw IoError(side_path.string(), "cannot open sidecar for writing");
    js << side.dump(2) << '\n';
    if (!js)
        throw IoError(side_path.string(), "sidecar write failed");
}

Capture read_capture(const std::filesystem::path& path) {
    const auto side_path = sidecar_path(path);
    std::ifstream js(side_path);
    if (!js)
        throw IoError(side_path.string(), "cannot open sidecar");

    Capture cap;
    try {
        const json side = json::parse(js);
        const std::string fmt = side.at("format").get<std::string>();
        if (fmt == "complex")
            cap.meta.format = CaptureFormat::Complex;
        else if (fmt == "real")
            cap.meta.format = CaptureFormat::Real;
        else
            throw MalformedSidecarError(side_path.string(), "unknown format '" + fmt + "'");
        cap.meta.sample_rate_hz = side.at("sample_rate_hz").get<double>();
        cap.meta.center_freq_hz = side.value("center_freq_hz", 0.0);
        cap.meta.description = side.value("description", std::string{});
        cap.meta.capture_time = side.value("capture_time", std::string{});
    } catch (const json::exception& e) {
        throw MalformedSidecarError(side_path.string(), e.what());
    }
    if (!(cap.meta.sample_rate_hz > 0.0) || !std::isfinite(cap.meta.sample_rate_hz))
        throw MalformedSidecarError(side_path.string(), "sample_rate_hz must be positive");

    std::ifstream bin(path, std::ios::binary);
    if (!bin)
        throw IoError(path.string(), "cannot open payload");
    const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(bin),
                                           std::istreambuf_iterator<char>()};
    const std::size_t frame = cap.meta.format == CaptureFormat::Complex ? 8 : 4;
    if (bytes.size() % frame != 0)
        throw TruncatedPayloadError(path.string(), "payload of " + std::to_string(bytes.size()) +
                                                       " bytes is not a multiple of " +
                                                       std::to_string(frame));
    const std::size_t n = bytes.size() / frame;
    if (cap.meta.format == CaptureFormat::Complex) {
        cap.iq.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const float re = get_f32(&bytes[k * 8]);
            const float im = get_f32(&bytes[k * 8 + 4]);
            if (!std::isfinite(re) || !std::isfinite(im))
                throw NonFiniteSampleError(path.string(), k);
            cap.iq[k] = {re, im};
        }
    } else {
        cap.real.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const float v = get_f32(&bytes[k * 4]);
            if (!std::isfinite(v))
                throw NonFiniteSampleError(path.string(), k);
            cap.real[k] = v;
        }
    }
    return cap;
}

Capture make_complex_capture(std::span<const Complex> samples, CaptureMeta meta) {
    Capture cap;
    meta.format = CaptureFormat::Complex;
    cap.meta = std::move(meta);
    cap.iq.reserve(samples.size());
    for (const auto& v : samples)
        cap.iq.emplace_back(static_cast<float>(v.real()), static_cast<float>(v.imag()));
    return cap;
}

Capture make_real_capture(std::span<const double> samples, CaptureMeta meta) {
    Capture cap;
    meta.format = CaptureFormat::Real;
    cap.meta = std::move(meta);
    cap.real.reserve(samples.size());
    for (double v : samples)
        cap.real.push_back(static_cast<float>(v));
    return cap;
}

}  // namespace baudsync
