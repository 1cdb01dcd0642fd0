#include "baudsync/receiver.hpp"

#include "baudsync/equalizer.hpp"
#include "baudsync/error.hpp"
#include "baudsync/metrics.hpp"

namespace baudsync {

ReceiverOutput run_receiver(std::span<const Complex> input, const Constellation& c,
                            const ReceiverSettings& settings, const PhaseOracle& oracle) {
    if (settings.carrier == CarrierMode::Oracle && !oracle)
        throw ParameterError("oracle carrier mode needs the channel phase");

    ClockRecovery sync(settings.ted, settings.alpha_c, settings.ted_gate_symbols);
    EqualizerState eq = cma_init(settings.eq_taps, settings.alpha_e, c);
    DpllState dpll;
    if (settings.carrier == CarrierMode::Blind || settings.carrier == CarrierMode::Decision) {
        dpll.kp = settings.dpll_kp;
        dpll.ki = settings.dpll_ki;
        dpll.detector = settings.carrier == CarrierMode::Blind ? PhaseDetector::FourthPower
                                                               : PhaseDetector::DecisionRegion;
    }

    ReceiverOutput out;
    out.symbols.reserve(input.size() / 2);
    out.isi_trajectory.reserve(input.size() / 2);
    while (auto s = sync.step(input, eq.w)) {
        Complex x, y;
        if (settings.carrier == CarrierMode::Oracle) {
            // the known phase comes off the equalizer input, so the taps never see it
            x = cma_filter(eq, s->symbol * std::polar(1.0, -oracle(s->position())));
            y = x;
        } else {
            x = cma_filter(eq, s->symbol);
            y = dpll_step(dpll, x, c);
        }

        // Tap update in the DPLL's frame: y r~* with r~ = r e^{-j theta} equals x r*.
        // Pairing y with the unrotated r* turns the update around once |theta| > pi/2.
        cma_update(eq, x);

        out.symbols.push_back(y);
        out.isi_trajectory.push_back(residual_isi(eq.w));
        if (settings.keep_trace)
            out.trace.push_back({s->mu, s->eps, dpll.theta_hat, s->base});
        if (settings.tap_snapshot_every > 0 && eq.symbols % settings.tap_snapshot_every == 0)
            out.tap_snapshots.push_back(eq.w);
    }
    out.final_taps = eq.w;
    out.skips = sync.state().skips;
    out.stalls = sync.state().stalls;
    return out;
}

}  // namespace baudsync
