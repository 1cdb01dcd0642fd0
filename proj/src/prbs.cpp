#include "baudsync/prbs.hpp"

namespace baudsync {

namespace {
constexpr std::uint32_t kMask = (1u << 23) - 1u;
}

Prbs23::Prbs23(std::uint64_t seed) {
    // splitmix64 finaliser spreads small seeds over the register
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    state_ = static_cast<std::uint32_t>(z) & kMask;
    if (state_ == 0)
        state_ = kMask;
}

std::uint8_t Prbs23::next() {
    const std::uint32_t bit = ((state_ >> 22) ^ (state_ >> 17)) & 1u;
    state_ = ((state_ << 1) | bit) & kMask;
    return static_cast<std::uint8_t>(bit);
}

std::vector<std::uint8_t> Prbs23::bits(std::size_t count) {
    std::vector<std::uint8_t> out(count);
    for (auto& b : out)
        b = next();
    return out;
}

std::vector<std::uint8_t> prbs23_lanes(std::uint64_t seed, int lanes, std::size_t symbols) {
    std::vector<Prbs23> gen;
    for (int j = 0; j < lanes; ++j)
        gen.emplace_back(seed + (static_cast<std::uint64_t>(j) << 40));
    std::vector<std::uint8_t> out(symbols * static_cast<std::size_t>(lanes));
    for (std::size_t k = 0; k < symbols; ++k)
        for (int j = 0; j < lanes; ++j)
            out[k * lanes + j] = gen[j].next();
    return out;
}

}  // namespace baudsync
