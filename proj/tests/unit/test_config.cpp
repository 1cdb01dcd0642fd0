#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "baudsync/config.hpp"
#include "baudsync/error.hpp"

using namespace baudsync;
using nlohmann::json;

TEST_CASE("defaults carry the table values") {
    const RunConfig c;
    CHECK(c.eq_taps == 21);
    CHECK(c.alpha_e == 9e-4);
    CHECK(c.effective_alpha_c() == 1.3e-4);
    CHECK(c.symbols == 21010);
    CHECK(c.skip == 2000);
    CHECK_NOTHROW(c.validate());
    RunConfig g;
    g.ted = TedKind::Gardner;
    CHECK(g.effective_alpha_c() == 1e-2);
}

TEST_CASE("config JSON round trip") {
    RunConfig c;
    c.constellation = "qpsk";
    c.impairments.tau0 = -0.2;
    c.impairments.snr_db = 21.5;
    c.impairments.isi_taps = {1.0, {0.2, 0.1}};
    c.impairments.cfo_hz = 1e6;
    c.ted = TedKind::SignMM;
    c.alpha_c = 3e-3;
    c.carrier = CarrierMode::Decision;
    c.seed = 99;
    const RunConfig back = config_from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));
    CHECK(back.impairments.isi_taps == c.impairments.isi_taps);
    CHECK(*back.alpha_c == 3e-3);

    const RunConfig d = config_from_json(to_json(RunConfig{}));
    CHECK_FALSE(d.alpha_c.has_value());
    CHECK(std::isinf(d.impairments.snr_db));
}

TEST_CASE("detector default step size survives a round trip") {
    json j = to_json(RunConfig{});
    apply_override(j, "ted=gardner");
    CHECK(config_from_json(j).effective_alpha_c() == 1e-2);
}

TEST_CASE("IF mode defaults to 32 samples per symbol") {
    const RunConfig c = config_from_json(json{{"mode", "if"}});
    CHECK(c.mode == FrontEndMode::If);
    CHECK(c.sps == 32);
    CHECK(c.sample_rate_hz() == 160e9);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(config_from_json(json{{"bogus", 1}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"rrc", {{"rolloff", 2.0}}}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"equalizer", {{"taps", 20}}}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"ted", "nope"}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"impairments", {{"tau0", 0.9}}}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"symbols", 100}, {"skip", 200}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"constellation", "8psk"}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"sps", "eight"}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"mode", "if"}, {"if", {{"f_if_hz", 100e9}}}}), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("dotted overrides") {
    json j = to_json(RunConfig{});
    apply_override(j, "impairments.tau0=0.3");
    apply_override(j, "equalizer.taps=11");
    apply_override(j, "constellation=64qam");
    const RunConfig c = config_from_json(j);
    CHECK(c.impairments.tau0 == 0.3);
    CHECK(c.eq_taps == 11);
    CHECK(c.constellation == "64qam");
    CHECK_THROWS_AS(apply_override(j, "no-equals-sign"), ConfigError);
}

TEST_CASE("load_config reads a file") {
    const auto p = std::filesystem::temp_directory_path() / "baudsync_cfg_test.json";
    std::ofstream(p) << R"({"ted": "gardner", "impairments": {"tau0": 0.25}})";
    const RunConfig c = load_config(p.string());
    CHECK(c.ted == TedKind::Gardner);
    CHECK(c.impairments.tau0 == 0.25);
    std::ofstream(p) << "{ not json";
    CHECK_THROWS_AS(load_config(p.string()), ConfigError);
    std::filesystem::remove(p);
}
