#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "baudsync/config.hpp"
#include "baudsync/io.hpp"
#include "baudsync/metrics.hpp"
#include "baudsync/receiver.hpp"

namespace baudsync {

struct SimulationResult {
    RunReport report;
    ReceiverOutput rx;
    Capture capture;  ///< digitised channel output, as `simulate --dump` writes it
};

/// Transmit chain -> impairments -> digitiser -> receiver -> metrics.
/// Deterministic in (config, seeds). Divergence and loss of lock are reported
/// through RunReport::status, not thrown.
SimulationResult simulate(const RunConfig& cfg);

/// Runs the receiver on a stored capture. Transmitted bits are regenerated
/// from the PRBS-23 reference seeded by cfg.seed. Throws ConfigError when the
/// capture rate or format does not match the config.
SimulationResult analyze(const Capture& capture, const RunConfig& cfg);

/// Open-loop mean TED output per static timing offset (alpha_c forced to 0).
/// Points run in parallel on `threads` workers; the result order follows `taus`.
std::vector<ScurvePoint> scurve(const RunConfig& base, TedKind ted, std::span<const double> taus,
                                int threads = 1);

enum class SweepAxis { Ted, Snr, Tau, Ppm, Seed };

SweepAxis parse_sweep_axis(const std::string& name);
std::string_view sweep_axis_name(SweepAxis axis);

struct SweepRow {
    std::size_t point = 0;
    std::string value;
    RunReport report;
    TedKind ted = TedKind::CmaFull;
};

/// One simulate() per axis value on `threads` workers, rows in input order.
/// A failing point is recorded in its row and the sweep continues.
std::vector<SweepRow> sweep(const RunConfig& base, SweepAxis axis, const std::vector<std::string>& values,
                            int threads = 1);

nlohmann::json report_to_json(const RunReport& report);
std::string report_text(const RunReport& report);  ///< pretty JSON plus newline
std::string sweep_csv(SweepAxis axis, std::span<const SweepRow> rows);
std::string scurve_csv(std::span<const ScurvePoint> curve);
std::string trace_csv(std::span<const TraceRow> trace);

}  // namespace baudsync
