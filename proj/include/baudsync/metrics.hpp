#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "baudsync/modem.hpp"
#include "baudsync/sync.hpp"
#include "baudsync/types.hpp"

namespace baudsync {

/// Measurement window skip shipped as default, in symbols.
inline constexpr std::size_t kDefaultSkipSymbols = 2000;

struct BerResult {
    double ber = 0.0;
    std::size_t errors = 0;
    std::size_t bits = 0;
    int rotation_quadrants = 0;  ///< k such that rx was rotated by k * pi/2 relative to tx
    bool conjugated = false;
};

/// Bit error ratio after the first `skip_symbols` symbols.
///
/// The receiver is blind, so its output carries the square-QAM symmetry
/// ambiguity. Every rotation by k pi/2 (and, if requested, conjugation) of the
/// rx labels is tried and the one with the fewest errors is counted.
BerResult ber(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits,
              std::size_t skip_symbols, const Constellation& c, bool resolve_conjugation = false);

/// RMS error to the nearest constellation point over the post-skip window,
/// normalised by the RMS of the reference constellation, in percent.
double evm(std::span<const Complex> y, const Constellation& c, std::size_t skip_symbols);

/// Off-centre tap energy over total tap energy.
double residual_isi(std::span<const Complex> w);

struct OpCount {
    int multiplications = 0;
    int additions = 0;
    bool operator==(const OpCount&) const = default;
};

/// Real multiplications and additions per symbol for each detector.
OpCount op_count(TedKind kind, int p);

/// Absolute half-width floor of the convergence band.
inline constexpr double kConvergenceFloor = 1e-3;

/// First symbol from which the ISI trajectory stays within
/// max(0.5 * final, kConvergenceFloor) of its final value for `hold`
/// consecutive symbols (or to the end, if shorter). Returns the trajectory
/// length when that never happens.
std::size_t convergence_symbol(std::span<const double> isi_trajectory, std::size_t hold = 1000);

/// Lag (rx index minus tx index) in [0, max_lag] maximising the magnitude of
/// the rx/tx cross-correlation after `skip` rx symbols. Phase-blind.
std::size_t align_lag(std::span<const Complex> rx, std::span<const Complex> tx,
                      std::size_t max_lag, std::size_t skip);

struct ScurvePoint {
    double tau = 0.0;
    double mean_eps = 0.0;
    std::size_t samples = 0;
};

struct ScurveSummary {
    double zero_crossing = 0.0;  ///< NaN when the curve never changes sign
    double slope = 0.0;          ///< d(mean eps)/d(tau) at the crossing, or at the point nearest 0
};

/// Zero crossing nearest tau = 0 and its local slope.
ScurveSummary summarize_scurve(std::span<const ScurvePoint> curve);

/// Per-run record written by the simulate/analyze commands.
struct RunReport {
    std::string status = "ok";  ///< ok | diverged | loss_of_lock
    std::string message;
    double ber = 0.0;
    std::size_t bit_errors = 0;
    std::size_t bits_measured = 0;
    double evm_percent = 0.0;
    double residual_isi = 0.0;
    std::size_t symbols_measured = 0;
    std::size_t symbols_received = 0;
    std::size_t convergence_symbol = 0;
    std::size_t lag = 0;
    int rotation_quadrants = 0;
    bool conjugated = false;
    OpCount ops;
    std::int64_t nco_skips = 0;
    std::int64_t nco_stalls = 0;
    std::string config_echo;  ///< serialized RunConfig (JSON text)
};

}  // namespace baudsync
