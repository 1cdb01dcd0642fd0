#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "baudsync/carrier.hpp"
#include "baudsync/modem.hpp"
#include "baudsync/sync.hpp"
#include "baudsync/types.hpp"

namespace baudsync {

enum class CarrierMode {
    Blind,     ///< DPLL with the fourth-power detector
    Decision,  ///< DPLL with the decision-region detector
    Oracle,    ///< the known channel phase is removed directly
    Off,       ///< no phase correction
};

struct ReceiverSettings {
    TedKind ted = TedKind::CmaFull;
    double alpha_c = 1.3e-4;
    std::size_t ted_gate_symbols = 500;
    int eq_taps = 21;
    double alpha_e = 9e-4;
    CarrierMode carrier = CarrierMode::Blind;
    double dpll_kp = 5e-3;
    double dpll_ki = 1e-5;
    bool keep_trace = false;
    std::size_t tap_snapshot_every = 0;  ///< 0 disables snapshots
};

/// Per-symbol loop trace.
struct TraceRow {
    double mu = 0.0;
    double eps = 0.0;
    double theta = 0.0;
    std::int64_t base = 0;
};

struct ReceiverOutput {
    std::vector<Complex> symbols;  ///< phase-corrected equalizer output y(n)
    std::vector<double> isi_trajectory;
    std::vector<Complex> final_taps;
    std::vector<std::vector<Complex>> tap_snapshots;
    std::vector<TraceRow> trace;
    std::int64_t skips = 0;
    std::int64_t stalls = 0;
};

/// Carrier phase at a fractional index of the 2-samples/symbol input.
using PhaseOracle = std::function<double(double position)>;

/// Runs the joint clock-recovery / CMA / DPLL chain over a 2-samples/symbol
/// stream until the input is exhausted. Throws DivergenceError.
ReceiverOutput run_receiver(std::span<const Complex> input, const Constellation& c,
                            const ReceiverSettings& settings, const PhaseOracle& oracle = {});

}  // namespace baudsync
