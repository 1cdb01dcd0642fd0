#include "baudsync/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "baudsync/error.hpp"

namespace baudsync {

using nlohmann::json;

namespace {

CarrierMode parse_carrier(const std::string& s) {
    if (s == "blind") return CarrierMode::Blind;
    if (s == "decision") return CarrierMode::Decision;
    if (s == "oracle") return CarrierMode::Oracle;
    if (s == "off") return CarrierMode::Off;
    throw ConfigError("unknown carrier mode '" + s + "'");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object())
        throw ConfigError(where + " must be an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key))
            throw ConfigError("unknown key '" + where + key + "'");
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key))
        out = j.at(key).get<T>();
}

}  // namespace

std::string_view carrier_mode_name(CarrierMode m) {
    switch (m) {
    case CarrierMode::Blind: return "blind";
    case CarrierMode::Decision: return "decision";
    case CarrierMode::Oracle: return "oracle";
    case CarrierMode::Off: return "off";
    }
    return "blind";
}

IfConfig RunConfig::if_config() const {
    IfConfig c;
    c.f_if_hz = f_if_hz;
    c.fs_hz = sample_rate_hz();
    c.symbol_rate_hz = symbol_rate_hz;
    c.phi_bb = phi_bb;
    c.signal_bandwidth_hz = (1.0 + rrc_rolloff) * symbol_rate_hz;
    return c;
}

ReceiverSettings RunConfig::receiver_settings() const {
    ReceiverSettings s;
    s.ted = ted;
    s.alpha_c = effective_alpha_c();
    s.ted_gate_symbols = ted_gate_symbols;
    s.eq_taps = eq_taps;
    s.alpha_e = alpha_e;
    s.carrier = carrier;
    s.dpll_kp = dpll_kp;
    s.dpll_ki = dpll_ki;
    s.keep_trace = !trace_path.empty();
    s.tap_snapshot_every = tap_snapshot_every;
    return s;
}

void RunConfig::validate() const {
    try {
        Constellation::from_name(constellation);
        impairments.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    if (!(rrc_rolloff >= 0.0 && rrc_rolloff <= 1.0))
        throw ConfigError("rrc.rolloff must be in [0, 1]");
    if (rrc_span <= 0)
        throw ConfigError("rrc.span must be positive");
    if (sps < 2 || sps % 2 != 0)
        throw ConfigError("sps must be an even integer >= 2");
    if (!(symbol_rate_hz > 0.0))
        throw ConfigError("symbol_rate_hz must be positive");
    if (mode == FrontEndMode::If) {
        try {
            if_config().validate();
        } catch (const ParameterError& e) {
            throw ConfigError(e.what());
        }
    }
    if (alpha_c && !std::isfinite(*alpha_c))
        throw ConfigError("alpha_c must be finite");
    if (eq_taps < 3 || eq_taps % 2 == 0)
        throw ConfigError("equalizer.taps must be odd and >= 3");
    if (!(alpha_e >= 0.0) || !std::isfinite(alpha_e))
        throw ConfigError("equalizer.alpha_e must be >= 0");
    if (!(dpll_kp >= 0.0 && dpll_ki >= 0.0))
        throw ConfigError("carrier gains must be >= 0");
    if (symbols == 0)
        throw ConfigError("symbols must be positive");
    if (skip >= symbols)
        throw ConfigError("skip must be smaller than symbols");
}

json to_json(const RunConfig& c) {
    json isi = json::array();
    for (const auto& t : c.impairments.isi_taps)
        isi.push_back({t.real(), t.imag()});
    const auto& imp = c.impairments;
    return json{
        {"constellation", c.constellation},
        {"rrc", {{"rolloff", c.rrc_rolloff}, {"span", c.rrc_span}}},
        {"mode", c.mode == FrontEndMode::If ? "if" : "bb"},
        {"sps", c.sps},
        {"symbol_rate_hz", c.symbol_rate_hz},
        {"if", {{"f_if_hz", c.f_if_hz}, {"phi_bb", c.phi_bb}}},
        {"impairments",
         {{"tau0", imp.tau0},
          {"clock_ppm", imp.clock_ppm},
          {"cfo_hz", imp.cfo_hz},
          {"pn_linewidth_hz", imp.pn_linewidth_hz},
          {"snr_db", std::isinf(imp.snr_db) ? json(nullptr) : json(imp.snr_db)},
          {"isi_taps", isi},
          {"seed", imp.seed}}},
        {"ted", std::string(ted_name(c.ted))},
        {"alpha_c", c.alpha_c ? json(*c.alpha_c) : json(nullptr)},
        {"alpha_c_effective", c.effective_alpha_c()},
        {"ted_gate_symbols", c.ted_gate_symbols},
        {"equalizer", {{"taps", c.eq_taps}, {"alpha_e", c.alpha_e}}},
        {"carrier", {{"mode", std::string(carrier_mode_name(c.carrier))}, {"kp", c.dpll_kp}, {"ki", c.dpll_ki}}},
        {"symbols", c.symbols},
        {"skip", c.skip},
        {"seed", c.seed},
        {"max_lag", c.max_lag},
        {"outputs",
         {{"report", c.report_path}, {"trace", c.trace_path}, {"tap_snapshot_every", c.tap_snapshot_every}}},
    };
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    try {
        reject_unknown(j,
                       {"constellation", "rrc", "mode", "sps", "symbol_rate_hz", "if", "impairments", "ted",
                        "alpha_c", "alpha_c_effective", "ted_gate_symbols", "equalizer", "carrier", "symbols", "skip", "seed",
                        "max_lag", "outputs"},
                       "");
        read(j, "constellation", c.constellation);
        if (j.contains("rrc")) {
            const auto& r = j.at("rrc");
            reject_unknown(r, {"rolloff", "span"}, "rrc.");
            read(r, "rolloff", c.rrc_rolloff);
            read(r, "span", c.rrc_span);
        }
        if (j.contains("mode")) {
            const auto m = j.at("mode").get<std::string>();
            if (m == "bb")
                c.mode = FrontEndMode::Baseband;
            else if (m == "if")
                c.mode = FrontEndMode::If;
            else
                throw ConfigError("mode must be 'bb' or 'if'");
            if (c.mode == FrontEndMode::If && !j.contains("sps"))
                c.sps = 32;
        }
        read(j, "sps", c.sps);
        read(j, "symbol_rate_hz", c.symbol_rate_hz);
        if (j.contains("if")) {
            const auto& f = j.at("if");
            reject_unknown(f, {"f_if_hz", "phi_bb"}, "if.");
            read(f, "f_if_hz", c.f_if_hz);
            read(f, "phi_bb", c.phi_bb);
        }
        if (j.contains("impairments")) {
            const auto& m = j.at("impairments");
            reject_unknown(m, {"tau0", "clock_ppm", "cfo_hz", "pn_linewidth_hz", "snr_db", "isi_taps", "seed"},
                           "impairments.");
            auto& imp = c.impairments;
            read(m, "tau0", imp.tau0);
            read(m, "clock_ppm", imp.clock_ppm);
            read(m, "cfo_hz", imp.cfo_hz);
            read(m, "pn_linewidth_hz", imp.pn_linewidth_hz);
            if (m.contains("snr_db"))
                imp.snr_db = m.at("snr_db").is_null() ? std::numeric_limits<double>::infinity()
                                                      : m.at("snr_db").get<double>();
            if (m.contains("isi_taps")) {
                imp.isi_taps.clear();
                for (const auto& t : m.at("isi_taps")) {
                    if (t.is_number())
                        imp.isi_taps.emplace_back(t.get<double>(), 0.0);
                    else if (t.is_array() && t.size() == 2)
                        imp.isi_taps.emplace_back(t[0].get<double>(), t[1].get<double>());
                    else
                        throw ConfigError("isi_taps entries must be numbers or [re, im] pairs");
                }
            }
            read(m, "seed", imp.seed);
        }
        if (j.contains("ted"))
            c.ted = parse_ted(j.at("ted").get<std::string>());
        // alpha_c_effective is an echo of the resolved step size; it is never read back
        if (j.contains("alpha_c") && !j.at("alpha_c").is_null())
            c.alpha_c = j.at("alpha_c").get<double>();
        read(j, "ted_gate_symbols", c.ted_gate_symbols);
        if (j.contains("equalizer")) {
            const auto& e = j.at("equalizer");
            reject_unknown(e, {"taps", "alpha_e"}, "equalizer.");
            read(e, "taps", c.eq_taps);
            read(e, "alpha_e", c.alpha_e);
        }
        if (j.contains("carrier")) {
            const auto& k = j.at("carrier");
            reject_unknown(k, {"mode", "kp", "ki"}, "carrier.");
            if (k.contains("mode"))
                c.carrier = parse_carrier(k.at("mode").get<std::string>());
            read(k, "kp", c.dpll_kp);
            read(k, "ki", c.dpll_ki);
        }
        read(j, "symbols", c.symbols);
        read(j, "skip", c.skip);
        read(j, "seed", c.seed);
        read(j, "max_lag", c.max_lag);
        if (j.contains("outputs")) {
            const auto& o = j.at("outputs");
            reject_unknown(o, {"report", "trace", "tap_snapshot_every"}, "outputs.");
            read(o, "report", c.report_path);
            read(o, "trace", c.trace_path);
            read(o, "tap_snapshot_every", c.tap_snapshot_every);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError(path, "cannot open config");
    try {
        return config_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void apply_override(json& j, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must look like key.path=value: '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    std::string pointer;
    for (char ch : key)
        pointer += ch == '.' ? '/' : ch;
    try {
        j[json::json_pointer("/" + pointer)] = value;
    } catch (const json::exception& e) {
        throw ConfigError("bad override '" + assignment + "': " + e.what());
    }
}

}  // namespace baudsync
