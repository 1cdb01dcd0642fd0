#pragma once

#include "baudsync/modem.hpp"
#include "baudsync/types.hpp"

namespace baudsync {

enum class PhaseDetector {
    FourthPower,     ///< non-data-aided, Im{y^4 conj(E c^4)}
    DecisionRegion,  ///< Im{y conj(d)} / |d|^2 against the nearest point d
};

/// Second-order (PI) DPLL correcting the equalizer output phase.
struct DpllState {
    double theta_hat = 0.0;  ///< wrapped to (-pi, pi]
    double freq_acc = 0.0;   ///< rad/symbol
    double kp = 0.0;
    double ki = 0.0;
    PhaseDetector detector = PhaseDetector::FourthPower;
};

/// Phase error of y against the constellation, in radians for small errors.
double phase_error(Complex y, const Constellation& c, PhaseDetector detector);

/// y = x exp(-j theta_hat), then one PI update of theta_hat and freq_acc.
Complex dpll_step(DpllState& state, Complex x_n, const Constellation& c);

/// Wraps an angle to (-pi, pi].
double wrap_phase(double theta);

}  // namespace baudsync
