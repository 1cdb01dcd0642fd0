#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "baudsync/types.hpp"

namespace baudsync {

/// Timing error detectors. The first three read the CMA tap vector; the rest
/// read interpolated samples.
enum class TedKind {
    CmaFull,      ///< -sum of Re{w_k} over the off-centre taps
    CmaComplex,   ///< -(sum Re{w_k} + sum Im{w_k}) over the off-centre taps
    CmaModified,  ///< -(Re{w_{c-1}} + Re{w_{c+1}})
    Gardner,
    Abs,
    SignMM,
    ModifiedAbs,
};

inline constexpr std::array<TedKind, 7> kAllTeds = {
    TedKind::CmaFull, TedKind::CmaComplex, TedKind::CmaModified, TedKind::Gardner,
    TedKind::Abs,     TedKind::SignMM,     TedKind::ModifiedAbs,
};

std::string_view ted_name(TedKind kind);
TedKind parse_ted(std::string_view name);  // throws ParameterError

/// True for the detectors driven by the equalizer taps.
constexpr bool ted_uses_taps(TedKind kind) {
    return kind == TedKind::CmaFull || kind == TedKind::CmaComplex || kind == TedKind::CmaModified;
}

/// True for detectors that need the half-symbol sample.
constexpr bool ted_uses_midpoint(TedKind kind) {
    return kind == TedKind::Gardner || kind == TedKind::Abs || kind == TedKind::ModifiedAbs;
}

/// Loop step shipped as default: 1.3e-4 for the tap-driven detectors, 1e-2 otherwise.
double default_alpha_c(TedKind kind);

/// Cubic Lagrange interpolation in Farrow form.
///
/// `history` holds four consecutive input samples; the result is the signal at
/// history[1] + mu input intervals. Exact for polynomials up to degree 3.
Complex farrow_interp(std::span<const Complex, 4> history, double mu);

/// First-order timing loop with an NCO that skips or stalls one input sample
/// whenever the fractional delay leaves [0, 1).
struct TimingLoopState {
    double mu = 0.0;              ///< fractional delay, input-sample units
    std::int64_t base_index = 0;  ///< input index of the sample interpolated from
    double alpha_c = 0.0;
    double eps_prev = 0.0;        ///< TED output of the last produced symbol
    std::int64_t skips = 0;
    std::int64_t stalls = 0;
};

/// Advances the loop by one symbol given the TED output of the symbol just
/// produced: eps becomes eps_prev, mu += alpha_c * eps_prev, base_index += 2,
/// then mu is folded back into [0, 1) with skips/stalls.
TimingLoopState loop_filter_update(TimingLoopState state, double eps);

double ted_cma_full(std::span<const Complex> w);
double ted_cma_complex(std::span<const Complex> w);
double ted_cma_modified(std::span<const Complex> w);

/// Re{(y_prev - y_curr) conj(y_mid)}; y_mid sits half a symbol before y_curr.
double ted_gardner(Complex y_prev, Complex y_mid, Complex y_curr);

/// Symbol-rate sign Mueller-Muller, I and Q arms summed.
double ted_sign_mm(Complex y_prev, Complex y_curr);

/// Magnitude Gardner form: sum over arms of |p + m| - |c + m|.
double ted_abs(Complex y_prev, Complex y_mid, Complex y_curr);

/// Sign Gardner form: sum over arms of sgn(p - c) * m.
double ted_modified_abs(Complex y_prev, Complex y_mid, Complex y_curr);

/// Dispatch for the sample-domain detectors. Throws ParameterError for a
/// tap-driven kind.
double ted_baseline(TedKind kind, Complex y_prev, Complex y_mid, Complex y_curr);

/// Dispatch for the tap-driven detectors.
double ted_from_taps(TedKind kind, std::span<const Complex> w);

/// One symbol out of the clock-recovery loop.
struct SyncOutput {
    Complex symbol;         ///< Baud-spaced interpolant r(n)
    Complex mid;            ///< half-symbol interpolant before r(n)
    double eps = 0.0;       ///< TED output for this symbol
    double mu = 0.0;        ///< fractional delay used for this symbol
    std::int64_t base = 0;  ///< base index used for this symbol
    double position() const { return static_cast<double>(base) + mu; }
};

/// Clock recovery over a 2-samples/symbol input.
///
/// Each step interpolates r(n) at base_index + mu (and the mid sample one
/// input interval earlier), evaluates the detector and advances the loop.
/// Tap-driven detectors output 0 for the first `gate_symbols` symbols.
class ClockRecovery {
public:
    ClockRecovery(TedKind ted, double alpha_c, std::size_t gate_symbols = 500);

    /// nullopt when the input does not yet hold the interpolator history.
    std::optional<SyncOutput> step(std::span<const Complex> input,
                                   std::span<const Complex> eq_taps = {});

    const TimingLoopState& state() const noexcept { return state_; }
    TedKind ted() const noexcept { return ted_; }
    std::size_t symbols() const noexcept { return symbols_; }

private:
    TedKind ted_;
    std::size_t gate_symbols_;
    TimingLoopState state_;
    Complex prev_symbol_{};
    std::size_t symbols_ = 0;
};

}  // namespace baudsync
