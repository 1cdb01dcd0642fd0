#include "baudsync/carrier.hpp"

#include <cmath>
#include <numbers>

namespace baudsync {

double wrap_phase(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    theta = std::remainder(theta, two_pi);
    if (theta <= -std::numbers::pi)
        theta += two_pi;
    return theta;
}

double phase_error(Complex y, const Constellation& c, PhaseDetector detector) {
    if (detector == PhaseDetector::DecisionRegion) {
        const Complex d = c.nearest_point(y);
        return (y * std::conj(d)).imag() / std::norm(d);
    }
    // y = c e^{j phi}: E{y^4 conj(m4)} = |m4|^2 e^{j 4 phi}
    const Complex m4 = c.fourth_power_mean();
    const Complex y2 = y * y;
    return (y2 * y2 * std::conj(m4)).imag() / (4.0 * std::norm(m4));
}

Complex dpll_step(DpllState& state, Complex x_n, const Constellation& c) {
    const Complex y = x_n * std::polar(1.0, -state.theta_hat);
    if (state.kp == 0.0 && state.ki == 0.0)
        return y;
    const double e = phase_error(y, c, state.detector);
    state.freq_acc += state.ki * e;
    state.theta_hat = wrap_phase(state.theta_hat + state.freq_acc + state.kp * e);
    return y;
}

}  // namespace baudsync
