#include "baudsync/equalizer.hpp"

#include <cmath>
#include <string>

#include "baudsync/error.hpp"

namespace baudsync {

double EqualizerState::tap_energy() const {
    double e = 0.0;
    for (const auto& t : w)
        e += std::norm(t);
    return e;
}

EqualizerState cma_init(int p, double alpha_e, const Constellation& constellation) {
    if (p < 1 || p % 2 == 0)
        throw ParameterError("CMA filter length must be odd and positive, got " + std::to_string(p));
    if (!(alpha_e >= 0.0) || !std::isfinite(alpha_e))
        throw ParameterError("CMA step size must be finite and >= 0");
    EqualizerState s;
    s.w.assign(static_cast<std::size_t>(p), Complex{});
    s.w[s.center()] = 1.0;
    s.r_buf.assign(static_cast<std::size_t>(p), Complex{});
    s.alpha_e = alpha_e;
    s.dispersion = constellation.fourth_moment() / constellation.mean_power();
    return s;
}

Complex cma_filter(EqualizerState& state, Complex r_n) {
    for (std::size_t k = state.r_buf.size() - 1; k > 0; --k)
        state.r_buf[k] = state.r_buf[k - 1];
    state.r_buf[0] = r_n;
    ++state.symbols;

    Complex x{0.0, 0.0};
    for (std::size_t k = 0; k < state.w.size(); ++k)
        x += state.w[k] * state.r_buf[k];
    return x;
}

void cma_update(EqualizerState& state, Complex y_n) {
    const Complex g = state.alpha_e * (std::norm(y_n) - state.dispersion) * y_n;
    for (std::size_t k = 0; k < state.w.size(); ++k)
        state.w[k] -= g * std::conj(state.r_buf[k]);
    const double energy = state.tap_energy();
    if (!(energy <= kDivergenceTapEnergy))
        throw DivergenceError(state.symbols == 0 ? 0 : state.symbols - 1, energy);
}

}  // namespace baudsync
