#include "baudsync/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "baudsync/channel.hpp"
#include "baudsync/dsp.hpp"
#include "baudsync/error.hpp"
#include "baudsync/prbs.hpp"

namespace baudsync {

using nlohmann::json;

namespace {

// Residual ISI above this means the centre tap no longer dominates.
constexpr double kLossOfLockIsi = 0.5;

struct Transmit {
    Bits bits;
    std::vector<Complex> symbols;
};

Transmit transmit_symbols(const RunConfig& cfg, const Constellation& c) {
    Transmit tx;
    tx.bits = prbs23_lanes(cfg.seed, c.bits_per_symbol(), cfg.symbols);
    tx.symbols = map_bits(tx.bits, c).samples;
    return tx;
}

CaptureMeta capture_meta(const RunConfig& cfg) {
    CaptureMeta m;
    m.sample_rate_hz = cfg.sample_rate_hz();
    m.center_freq_hz = cfg.mode == FrontEndMode::If ? 0.0 : cfg.f_if_hz;
    m.format = cfg.mode == FrontEndMode::If ? CaptureFormat::Real : CaptureFormat::Complex;
    m.description = "baudsync simulated capture";
    return m;
}

// Matched filter (or IQ demodulation + matched filter) and decimation to
// 2 samples/symbol. Symbol k of the transmitter lands on index 2 (k + span).
SampleStream front_end(const Capture& cap, const RunConfig& cfg) {
    const FirFilter g = design_rrc(cfg.rrc_rolloff, cfg.rrc_span, cfg.sps);
    SampleStream filtered;
    if (cap.meta.format == CaptureFormat::Real) {
        std::vector<double> pb(cap.real.begin(), cap.real.end());
        if (pb.empty())
            throw ConfigError("capture holds no samples");
        filtered = if_downconvert(pb, cfg.if_config(), g);
    } else {
        std::vector<Complex> bb(cap.iq.size());
        std::transform(cap.iq.begin(), cap.iq.end(), bb.begin(),
                       [](std::complex<float> v) { return Complex{v.real(), v.imag()}; });
        if (bb.empty())
            throw ConfigError("capture holds no samples");
        filtered = fir_filter(SampleStream(std::move(bb), cfg.sps), g);
    }
    return downsample(filtered, cfg.sps / 2);
}

SimulationResult receive(const Capture& cap, const RunConfig& cfg, const Transmit& tx,
                         const Constellation& c, const PhaseOracle& oracle) {
    SimulationResult res;
    RunReport& rep = res.report;
    // output paths do not touch the signal path and would make reports of equal runs differ
    json echo = to_json(cfg);
    echo.erase("outputs");
    rep.config_echo = echo.dump();
    rep.ops = op_count(cfg.ted, cfg.eq_taps);

    const SampleStream x2 = front_end(cap, cfg);
    try {
        res.rx = run_receiver(x2.view(), c, cfg.receiver_settings(), oracle);
    } catch (const DivergenceError& e) {
        rep.status = "diverged";
        rep.message = e.what();
        rep.convergence_symbol = e.symbol_index();
        return res;
    }

    const auto& y = res.rx.symbols;
    rep.symbols_received = y.size();
    rep.nco_skips = res.rx.skips;
    rep.nco_stalls = res.rx.stalls;
    rep.residual_isi = residual_isi(res.rx.final_taps);
    rep.convergence_symbol = convergence_symbol(res.rx.isi_trajectory);

    // measurement window: rx indices [skip, end) that have a tx counterpart
    rep.lag = align_lag(y, tx.symbols, cfg.max_lag, cfg.skip);
    const std::size_t first = std::max(cfg.skip, rep.lag);
    const std::size_t last = std::min(y.size(), tx.symbols.size() + rep.lag);
    if (last <= first) {
        rep.status = "loss_of_lock";
        rep.message = "no symbols in the measurement window";
        return res;
    }
    const std::span<const Complex> window(y.data() + first, last - first);
    const Bits rx_bits = demap_symbols(window, c);
    const auto k = static_cast<std::size_t>(c.bits_per_symbol());
    const std::span<const std::uint8_t> tx_bits(tx.bits.data() + (first - rep.lag) * k, window.size() * k);
    const BerResult b = ber(tx_bits, rx_bits, 0, c);

    rep.ber = b.ber;
    rep.bit_errors = b.errors;
    rep.bits_measured = b.bits;
    rep.rotation_quadrants = b.rotation_quadrants;
    rep.conjugated = b.conjugated;
    rep.symbols_measured = window.size();
    rep.evm_percent = evm(window, c, 0);
    if (rep.residual_isi > kLossOfLockIsi) {
        rep.status = "loss_of_lock";
        rep.message = "residual ISI above " + std::to_string(kLossOfLockIsi);
    }
    return res;
}

}  // namespace

SimulationResult simulate(const RunConfig& cfg) {
    cfg.validate();
    const Constellation c = Constellation::from_name(cfg.constellation);
    const Transmit tx = transmit_symbols(cfg, c);

    const FirFilter g = design_rrc(cfg.rrc_rolloff, cfg.rrc_span, cfg.sps);
    const SampleStream shaped = shape_pulse(SampleStream(tx.symbols, 1.0), g, cfg.sps);
    const ChannelOutput ch = apply_impairments(shaped, cfg.impairments, cfg.symbol_rate_hz);

    Capture cap;
    if (cfg.mode == FrontEndMode::If)
        cap = make_real_capture(if_upconvert(ch.signal, cfg.if_config()), capture_meta(cfg));
    else
        cap = make_complex_capture(ch.signal.view(), capture_meta(cfg));

    PhaseOracle oracle;
    if (cfg.carrier == CarrierMode::Oracle) {
        // 2-sps index i sits at channel sample i * sps/2 - span * sps/2
        const double half_sps = cfg.sps / 2.0;
        const double delay = cfg.rrc_span * half_sps;
        const double phi_bb = cfg.mode == FrontEndMode::If ? cfg.phi_bb : 0.0;
        oracle = [phase = ch.phase, half_sps, delay, phi_bb](double pos) {
            if (phase.empty())
                return phi_bb;
            const double m = std::clamp(pos * half_sps - delay, 0.0, static_cast<double>(phase.size() - 1));
            const auto i = static_cast<std::size_t>(m);
            const double f = m - static_cast<double>(i);
            const double p1 = i + 1 < phase.size() ? phase[i + 1] : phase[i];
            return phase[i] + f * (p1 - phase[i]) + phi_bb;
        };
    }

    SimulationResult res = receive(cap, cfg, tx, c, oracle);
    res.capture = std::move(cap);
    return res;
}

SimulationResult analyze(const Capture& capture, const RunConfig& cfg) {
    cfg.validate();
    if (cfg.carrier == CarrierMode::Oracle)
        throw ConfigError("oracle carrier mode needs the simulated channel phase; use blind or decision");
    const bool want_real = cfg.mode == FrontEndMode::If;
    if (want_real != (capture.meta.format == CaptureFormat::Real))
        throw ConfigError(std::string("capture format is ") +
                          (capture.meta.format == CaptureFormat::Real ? "real" : "complex") +
                          " but config mode is " + (want_real ? "if" : "bb"));
    const double expected = cfg.sample_rate_hz();
    if (std::abs(capture.meta.sample_rate_hz - expected) > 1e-9 * expected)
        throw ConfigError("capture sample rate " + std::to_string(capture.meta.sample_rate_hz) +
                          " Hz does not match config rate " + std::to_string(expected) + " Hz");
    const Constellation c = Constellation::from_name(cfg.constellation);
    const Transmit tx = transmit_symbols(cfg, c);
    SimulationResult res = receive(capture, cfg, tx, c, {});
    res.capture = capture;
    return res;
}

std::vector<ScurvePoint> scurve(const RunConfig& base, TedKind ted, std::span<const double> taus, int threads) {
    std::vector<ScurvePoint> out(taus.size());
    std::vector<std::string> errors(taus.size());
    const auto n = static_cast<long long>(taus.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(threads, 1))
    for (long long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        RunConfig cfg = base;
        cfg.ted = ted;
        cfg.alpha_c = 0.0;
        cfg.impairments.tau0 = taus[idx];
        cfg.trace_path = "scurve";  // keeps the per-symbol trace
        out[idx].tau = taus[idx];
        try {
            const SimulationResult r = simulate(cfg);
            double acc = 0.0;
            std::size_t count = 0;
            for (std::size_t s = cfg.skip; s < r.rx.trace.size(); ++s) {
                acc += r.rx.trace[s].eps;
                ++count;
            }
            out[idx].mean_eps = count ? acc / static_cast<double>(count) : 0.0;
            out[idx].samples = count;
        } catch (const std::exception& e) {
            errors[idx] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty())
            throw std::runtime_error("scurve: " + e);
    return out;
}

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "ted") return SweepAxis::Ted;
    if (name == "snr") return SweepAxis::Snr;
    if (name == "tau") return SweepAxis::Tau;
    if (name == "ppm") return SweepAxis::Ppm;
    if (name == "seed") return SweepAxis::Seed;
    throw ConfigError("unknown sweep axis '" + name + "' (ted|snr|tau|ppm|seed)");
}

std::string_view sweep_axis_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::Ted: return "ted";
    case SweepAxis::Snr: return "snr";
    case SweepAxis::Tau: return "tau";
    case SweepAxis::Ppm: return "ppm";
    case SweepAxis::Seed: return "seed";
    }
    return "ted";
}

namespace {

RunConfig sweep_point(const RunConfig& base, SweepAxis axis, const std::string& value) {
    RunConfig cfg = base;
    try {
        switch (axis) {
        case SweepAxis::Ted:
            cfg.ted = parse_ted(value);
            if (base.alpha_c)  // a pinned alpha_c does not carry across detector families
                cfg.alpha_c.reset();
            break;
        case SweepAxis::Snr: cfg.impairments.snr_db = value == "inf" ? INFINITY : std::stod(value); break;
        case SweepAxis::Tau: cfg.impairments.tau0 = std::stod(value); break;
        case SweepAxis::Ppm: cfg.impairments.clock_ppm = std::stod(value); break;
        case SweepAxis::Seed:
            cfg.seed = std::stoull(value);
            cfg.impairments.seed = cfg.seed;
            break;
        }
    } catch (const std::logic_error& e) {
        throw ConfigError("bad sweep value '" + value + "': " + e.what());
    }
    cfg.report_path.clear();
    cfg.trace_path.clear();
    cfg.validate();
    return cfg;
}

}  // namespace

std::vector<SweepRow> sweep(const RunConfig& base, SweepAxis axis, const std::vector<std::string>& values,
                            int threads) {
    if (values.empty())
        throw ConfigError("sweep axis has no values");
    std::vector<SweepRow> rows(values.size());
    const auto n = static_cast<long long>(values.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(threads, 1))
    for (long long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        SweepRow& row = rows[idx];
        row.point = idx;
        row.value = values[idx];
        row.ted = base.ted;
        try {
            const RunConfig cfg = sweep_point(base, axis, values[idx]);
            row.ted = cfg.ted;
            row.report = simulate(cfg).report;
        } catch (const std::exception& e) {
            row.report.status = "error";
            row.report.message = e.what();
        }
    }
    return rows;
}

json report_to_json(const RunReport& r) {
    return json{
        {"status", r.status},
        {"message", r.message},
        {"ber", r.ber},
        {"bit_errors", r.bit_errors},
        {"bits_measured", r.bits_measured},
        {"evm_percent", r.evm_percent},
        {"residual_isi", r.residual_isi},
        {"symbols_measured", r.symbols_measured},
        {"symbols_received", r.symbols_received},
        {"convergence_symbol", r.convergence_symbol},
        {"lag", r.lag},
        {"ambiguity", {{"rotation_quadrants", r.rotation_quadrants}, {"conjugated", r.conjugated}}},
        {"ops", {{"multiplications", r.ops.multiplications}, {"additions", r.ops.additions}}},
        {"nco", {{"skips", r.nco_skips}, {"stalls", r.nco_stalls}}},
        {"config", r.config_echo.empty() ? json(nullptr) : json::parse(r.config_echo)},
    };
}

std::string report_text(const RunReport& report) { return report_to_json(report).dump(2) + "\n"; }

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

}  // namespace

std::string sweep_csv(SweepAxis axis, std::span<const SweepRow> rows) {
    std::ostringstream os;
    os << "ted,ber,evm_percent,residual_isi,axis,value,status,convergence_symbol,symbols_measured\n";
    for (const auto& r : rows) {
        os << ted_name(r.ted) << ',' << fmt(r.report.ber) << ',' << fmt(r.report.evm_percent) << ','
           << fmt(r.report.residual_isi) << ',' << sweep_axis_name(axis) << ',' << r.value << ','
           << r.report.status << ','
           << r.report.convergence_symbol << ',' << r.report.symbols_measured << '\n';
    }
    return os.str();
}

std::string scurve_csv(std::span<const ScurvePoint> curve) {
    std::ostringstream os;
    os << "tau,mean_eps,samples\n";
    for (const auto& p : curve)
        os << fmt(p.tau) << ',' << fmt(p.mean_eps) << ',' << p.samples << '\n';
    return os.str();
}

std::string trace_csv(std::span<const TraceRow> trace) {
    std::ostringstream os;
    os << "symbol,base,mu,eps,theta\n";
    for (std::size_t n = 0; n < trace.size(); ++n)
        os << n << ',' << trace[n].base << ',' << fmt(trace[n].mu) << ',' << fmt(trace[n].eps) << ','
           << fmt(trace[n].theta) << '\n';
    return os.str();
}

}  // namespace baudsync
