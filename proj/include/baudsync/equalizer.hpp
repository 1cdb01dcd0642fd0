#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "baudsync/modem.hpp"
#include "baudsync/types.hpp"

namespace baudsync {

/// Tap energy above which the equalizer is declared diverged.
inline constexpr double kDivergenceTapEnergy = 1e3;

/// Baud-spaced CMA equalizer state.
///
/// r_buf[0] is the newest input r(n), r_buf[k] is r(n-k); the output is the
/// unconjugated inner product sum_k w[k] r_buf[k].
struct EqualizerState {
    std::vector<Complex> w;
    std::vector<Complex> r_buf;
    double alpha_e = 0.0;
    double dispersion = 1.0;  ///< R = E|c|^4 / E|c|^2
    std::size_t symbols = 0;  ///< inputs filtered so far

    std::size_t length() const noexcept { return w.size(); }
    std::size_t center() const noexcept { return w.size() / 2; }
    double tap_energy() const;
};

/// Centre-spike initialisation; p must be odd, alpha_e >= 0 (0 freezes the taps).
EqualizerState cma_init(int p, double alpha_e, const Constellation& constellation);

/// Pushes r_n into the delay line and returns w^T r(n).
Complex cma_filter(EqualizerState& state, Complex r_n);

/// w <- w - alpha_e (|y|^2 - R) y conj(r(n)), with y the phase-corrected output
/// for the current delay line. Throws DivergenceError when the tap energy
/// exceeds kDivergenceTapEnergy.
void cma_update(EqualizerState& state, Complex y_n);

}  // namespace baudsync
