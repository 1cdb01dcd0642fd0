#pragma once

#include <cstdint>
#include <vector>

namespace baudsync {

/// PRBS-23 (x^23 + x^18 + 1) bit generator. The register is seeded from a
/// 64-bit value; a zero register is replaced by all ones.
class Prbs23 {
public:
    explicit Prbs23(std::uint64_t seed);

    std::uint8_t next();
    std::vector<std::uint8_t> bits(std::size_t count);

private:
    std::uint32_t state_;
};

/// Symbol-parallel PRBS: bit j of every symbol comes from its own PRBS-23 lane,
/// each lane a different phase of the sequence. A single serial stream packed into
/// symbols carries its recurrence (lags 18 and 23 bits) into the equalizer window,
/// and CMA is sensitive to it. Output is `symbols * lanes` bits, symbol-major.
std::vector<std::uint8_t> prbs23_lanes(std::uint64_t seed, int lanes, std::size_t symbols);

}  // namespace baudsync
