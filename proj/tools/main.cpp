// baudsync command-line driver.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "baudsync/config.hpp"
#include "baudsync/error.hpp"
#include "baudsync/io.hpp"
#include "baudsync/simulation.hpp"

namespace bs = baudsync;

namespace {

enum Exit { kOk = 0, kConfig = 2, kLock = 3, kIo = 4 };

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;
};

bs::RunConfig resolve_config(const Common& c) {
    nlohmann::json j = c.config_path.empty() ? bs::to_json(bs::RunConfig{}) : bs::to_json(bs::load_config(c.config_path));
    for (const auto& o : c.overrides)
        bs::apply_override(j, o);
    bs::RunConfig cfg = bs::config_from_json(j);
    cfg.validate();
    return cfg;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw bs::IoError(path, "cannot open for writing");
    os << text;
    if (!os)
        throw bs::IoError(path, "write failed");
}

std::string taps_csv(const std::vector<std::vector<bs::Complex>>& snaps, std::size_t every) {
    std::ostringstream os;
    os.precision(10);
    os << "symbol,tap,re,im\n";
    for (std::size_t s = 0; s < snaps.size(); ++s)
        for (std::size_t k = 0; k < snaps[s].size(); ++k)
            os << (s + 1) * every << ',' << k << ',' << snaps[s][k].real() << ',' << snaps[s][k].imag() << '\n';
    return os.str();
}

int emit_run(const bs::RunConfig& cfg, const bs::SimulationResult& r) {
    write_text(cfg.report_path, bs::report_text(r.report));
    if (!cfg.trace_path.empty()) {
        write_text(cfg.trace_path, bs::trace_csv(r.rx.trace));
        if (cfg.tap_snapshot_every > 0)
            write_text(cfg.trace_path + ".taps.csv", taps_csv(r.rx.tap_snapshots, cfg.tap_snapshot_every));
    }
    if (r.report.status != "ok") {
        std::cerr << "baudsync: " << r.report.status << ": " << r.report.message << '\n';
        return kLock;
    }
    return kOk;
}

// "a:step:b" expands to an inclusive grid; anything else is a comma list.
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    const auto c1 = spec.find(':');
    if (c1 != std::string::npos) {
        const auto c2 = spec.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw bs::ConfigError("grid must be start:step:stop, got '" + spec + "'");
        const double a = std::stod(spec.substr(0, c1));
        const double step = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        const double b = std::stod(spec.substr(c2 + 1));
        if (!(step > 0.0) || b < a)
            throw bs::ConfigError("grid needs step > 0 and stop >= start");
        const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
        for (long i = 0; i <= n; ++i)
            out.push_back(a + static_cast<double>(i) * step);
        return out;
    }
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty())
            out.push_back(std::stod(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Baud-spaced blind receiver: joint clock recovery and CMA equalisation"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", common.config_path, "JSON run config");
        sub->add_option("-s,--set", common.overrides, "override, e.g. impairments.tau0=0.3 (repeatable)");
    };

    std::string dump_path, report_path, trace_path;
    auto* sim = app.add_subcommand("simulate", "simulate one link and print the run report");
    add_common(sim);
    sim->add_option("--dump", dump_path, "also write the digitised channel output as a capture");
    sim->add_option("--report", report_path, "report path (default stdout)");
    sim->add_option("--trace", trace_path, "per-symbol loop trace CSV");

    std::string axis, values, out_path;
    int threads = 1;
    auto* sw = app.add_subcommand("sweep", "run one simulation per axis value, print CSV");
    add_common(sw);
    sw->add_option("--axis", axis, "ted|snr|tau|ppm|seed")->required();
    sw->add_option("--values", values, "comma list, or start:step:stop for numeric axes; 'all' for ted")->required();
    sw->add_option("-j,--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sw->add_option("-o,--out", out_path, "CSV path (default stdout)");

    std::string ted_name = "gardner", taus = "-0.4:0.05:0.4";
    auto* sc = app.add_subcommand("scurve", "open-loop mean TED output against static timing offset");
    add_common(sc);
    sc->add_option("--ted", ted_name, "detector");
    sc->add_option("--taus", taus, "comma list or start:step:stop, symbols");
    sc->add_option("-j,--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sc->add_option("-o,--out", out_path, "CSV path (default stdout)");

    std::string capture_path;
    auto* an = app.add_subcommand("analyze", "run the receiver on a stored capture");
    add_common(an);
    an->add_option("capture", capture_path, "payload path (sidecar is <payload>.json)")->required();
    an->add_option("--report", report_path, "report path (default stdout)");
    an->add_option("--trace", trace_path, "per-symbol loop trace CSV");

    auto* dc = app.add_subcommand("dump-config", "print the resolved config as JSON");
    add_common(dc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        bs::RunConfig cfg = resolve_config(common);
        if (!report_path.empty())
            cfg.report_path = report_path;
        if (!trace_path.empty())
            cfg.trace_path = trace_path;

        if (*sim) {
            const bs::SimulationResult r = bs::simulate(cfg);
            if (!dump_path.empty())
                bs::write_capture(dump_path, r.capture);
            return emit_run(cfg, r);
        }
        if (*an) {
            const bs::Capture cap = bs::read_capture(capture_path);
            return emit_run(cfg, bs::analyze(cap, cfg));
        }
        if (*sw) {
            const bs::SweepAxis ax = bs::parse_sweep_axis(axis);
            std::vector<std::string> vals;
            if (ax == bs::SweepAxis::Ted && values == "all") {
                for (bs::TedKind k : bs::kAllTeds)
                    vals.emplace_back(bs::ted_name(k));
            } else if (ax != bs::SweepAxis::Ted && values.find(':') != std::string::npos) {
                std::ostringstream os;
                for (double v : parse_grid(values)) {
                    os.str("");
                    os << v;
                    vals.push_back(os.str());
                }
            } else {
                std::stringstream ss(values);
                for (std::string item; std::getline(ss, item, ',');)
                    if (!item.empty())
                        vals.push_back(item);
            }
            const auto rows = bs::sweep(cfg, ax, vals, threads);
            write_text(out_path, bs::sweep_csv(ax, rows));
            return kOk;
        }
        if (*sc) {
            const std::vector<double> grid = parse_grid(taus);
            if (grid.empty())
                throw bs::ConfigError("empty tau grid");
            const auto curve = bs::scurve(cfg, bs::parse_ted(ted_name), grid, threads);
            write_text(out_path, bs::scurve_csv(curve));
            return kOk;
        }
        if (*dc) {
            std::cout << bs::to_json(cfg).dump(2) << '\n';
            return kOk;
        }
    } catch (const bs::IoError& e) {
        std::cerr << "baudsync: I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const bs::DivergenceError& e) {
        std::cerr << "baudsync: " << e.what() << '\n';
        return kLock;
    } catch (const bs::ConfigError& e) {
        std::cerr << "baudsync: config error: " << e.what() << '\n';
        return kConfig;
    } catch (const bs::ParameterError& e) {
        std::cerr << "baudsync: config error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "baudsync: config error: " << e.what() << '\n';
        return kConfig;
    }
    return kOk;
}
