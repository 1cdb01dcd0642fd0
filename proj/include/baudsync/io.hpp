#pragma once

#include <complex>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "baudsync/types.hpp"

namespace baudsync {

enum class CaptureFormat { Complex, Real };

/// Sidecar metadata of an IQ capture (`<payload>.json`).
struct CaptureMeta {
    double sample_rate_hz = 0.0;
    double center_freq_hz = 0.0;
    CaptureFormat format = CaptureFormat::Complex;
    std::string description;
    std::string capture_time;

    bool operator==(const CaptureMeta&) const = default;
};

/// Samples as stored: float32, interleaved I/Q in complex mode.
struct Capture {
    CaptureMeta meta;
    std::vector<std::complex<float>> iq;  ///< complex mode
    std::vector<float> real;              ///< real (passband) mode

    std::size_t size() const { return meta.format == CaptureFormat::Complex ? iq.size() : real.size(); }
};

std::filesystem::path sidecar_path(const std::filesystem::path& payload);

/// Writes the little-endian float32 payload and the JSON sidecar.
void write_capture(const std::filesystem::path& path, const Capture& capture);

/// Reads and validates a capture. Throws TruncatedPayloadError,
/// MalformedSidecarError, NonFiniteSampleError or IoError.
Capture read_capture(const std::filesystem::path& path);

/// Rounds samples to float32, the precision of the capture format.
Capture make_complex_capture(std::span<const Complex> samples, CaptureMeta meta);
Capture make_real_capture(std::span<const double> samples, CaptureMeta meta);

}  // namespace baudsync
