#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "baudsync/channel.hpp"
#include "baudsync/modem.hpp"
#include "baudsync/receiver.hpp"
#include "baudsync/sync.hpp"

namespace baudsync {

enum class FrontEndMode {
    Baseband,  ///< complex baseband at `sps`, no IF stage
    If,        ///< real IF at fs = sps * symbol rate, digital IQ demodulation
};

/// Everything that shapes one simulated or analysed run.
struct RunConfig {
    std::string constellation = "16qam";
    double rrc_rolloff = 0.25;
    int rrc_span = 16;
    FrontEndMode mode = FrontEndMode::Baseband;
    int sps = 8;  ///< transmit/channel samples per symbol; 32 in IF mode
    double symbol_rate_hz = 5e9;
    double f_if_hz = 5e9;
    double phi_bb = 0.0;

    ImpairmentSpec impairments;

    TedKind ted = TedKind::CmaFull;
    std::optional<double> alpha_c;  ///< unset: default for the detector
    std::size_t ted_gate_symbols = 500;
    int eq_taps = 21;
    double alpha_e = 9e-4;
    CarrierMode carrier = CarrierMode::Blind;
    double dpll_kp = 5e-3;
    double dpll_ki = 1e-5;

    std::size_t symbols = 21010;
    std::size_t skip = 2000;
    std::uint64_t seed = 1;
    std::size_t max_lag = 96;  ///< rx/tx alignment search range, symbols

    std::string report_path;
    std::string trace_path;
    std::size_t tap_snapshot_every = 0;

    double effective_alpha_c() const { return alpha_c ? *alpha_c : default_alpha_c(ted); }
    double sample_rate_hz() const { return symbol_rate_hz * sps; }
    IfConfig if_config() const;
    ReceiverSettings receiver_settings() const;

    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

nlohmann::json to_json(const RunConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);

RunConfig load_config(const std::string& path);

/// Applies "a.b.c=value" overrides; value is parsed as JSON, else taken as a string.
void apply_override(nlohmann::json& j, const std::string& assignment);

std::string_view carrier_mode_name(CarrierMode m);

}  // namespace baudsync
