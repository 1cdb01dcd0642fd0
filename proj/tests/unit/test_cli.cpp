#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(BAUDSYNC_CLI) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("baudsync_cli_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const std::string kShort = "-s symbols=3000 -s skip=1000 ";

}  // namespace

TEST_CASE("cli exit codes") {
    TempDir dir;
    CHECK(run("dump-config") == 0);
    CHECK(run("dump-config -s equalizer.taps=20") == 2);
    CHECK(run("dump-config -s nosuchkey=1") == 2);
    CHECK(run("dump-config --config " + (dir.path / "missing.json").string()) == 4);
    CHECK(run("analyze " + (dir.path / "missing.iq").string()) == 4);
    CHECK(run("simulate " + kShort + "-s equalizer.alpha_e=5 --report " + (dir.path / "r.json").string()) == 3);
    CHECK(run("sweep --axis snr --values ''") == 2);
    CHECK(run("sweep --axis bogus --values 1") == 2);
    CHECK(run("frobnicate") == 2);
}

TEST_CASE("cli simulate --dump then analyze gives the same report") {
    TempDir dir;
    const auto iq = (dir.path / "cap.iq").string();
    const auto r1 = (dir.path / "sim.json").string();
    const auto r2 = (dir.path / "ana.json").string();
    const std::string common = kShort + "-s ted=gardner -s impairments.tau0=0.2 -s impairments.snr_db=25 ";
    REQUIRE(run("simulate " + common + "--dump " + iq + " --report " + r1) == 0);
    CHECK(fs::file_size(iq) == 8 * (fs::file_size(iq) / 8));
    CHECK(fs::exists(iq + ".json"));
    REQUIRE(run("analyze " + iq + " " + common + "--report " + r2) == 0);
    CHECK(slurp(r1) == slurp(r2));
    CHECK(run("analyze " + iq + " " + common + "-s symbol_rate_hz=4e9") == 2);
}

TEST_CASE("cli config file, sweep and scurve outputs") {
    TempDir dir;
    const auto cfg = dir.path / "run.json";
    std::ofstream(cfg) << R"({"symbols": 3000, "skip": 1000, "impairments": {"snr_db": 20}})";
    const auto csv = dir.path / "sweep.csv";
    REQUIRE(run("sweep --config " + cfg.string() + " --axis ted --values all -j 2 -o " + csv.string()) == 0);
    const std::string text = slurp(csv);
    CHECK(std::count(text.begin(), text.end(), '\n') == 8);

    const auto sc = dir.path / "s.csv";
    REQUIRE(run("scurve --config " + cfg.string() + " --ted gardner --taus=-0.4:0.05:0.4 -o " + sc.string()) == 0);
    const std::string s = slurp(sc);
    CHECK(std::count(s.begin(), s.end(), '\n') == 18);

    const auto trace = dir.path / "t.csv";
    REQUIRE(run("simulate --config " + cfg.string() + " -s outputs.tap_snapshot_every=500 --trace " + trace.string() +
                " --report " + (dir.path / "r.json").string()) == 0);
    const std::string t = slurp(trace);
    CHECK(std::count(t.begin(), t.end(), '\n') > 3000);
    CHECK(fs::exists(trace.string() + ".taps.csv"));
}
