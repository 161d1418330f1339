#include <doctest.h>

#include <sys/wait.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "standby/report.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    static int counter = 0;
    fs::path log = fs::temp_directory_path() / ("standby-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::string cmd = std::string(STANDBY_CLI) + " " + args + " > " + log.string() + " 2>&1";
    int raw = std::system(cmd.c_str());
    Run r{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, standby::read_file(log)};
    fs::remove(log);
    return r;
}

fs::path scratch(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("standby-cli-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string example_cfg() { return support::config_path("paper-example.json"); }
std::string toy_cfg() { return support::config_path("toy-n1.json"); }

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate prints the layout") {
    fs::path d = scratch("validate");
    Run r = run("validate " + example_cfg() + " --layout-csv " + (d / "layout.csv").string());
    CHECK(r.code == 0);
    CHECK(r.out.find("1972") != std::string::npos);
    CHECK(fs::exists(d / "layout.csv"));
    fs::remove_all(d);
}

TEST_CASE("config errors exit with 2 and name the field") {
    fs::path d = scratch("bad");
    std::string text = standby::read_file(example_cfg());
    auto doc = nlohmann::json::parse(text);
    doc["unit"]["T"][2][2] = doc["unit"]["T"][2][2].get<double>() + 0.3;
    std::ofstream(d / "bad.json") << doc.dump();
    Run r = run("validate " + (d / "bad.json").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("unit.T row 3") != std::string::npos);
    fs::remove_all(d);
}

TEST_CASE("missing file exits with 3") {
    CHECK(run("measures /nonexistent/model.json").code == 3);
}

TEST_CASE("measures writes every report") {
    fs::path d = scratch("measures");
    Run r = run("measures " + toy_cfg() + " --horizon 0 --out " + d.string());
    CHECK(r.code == 0);
    for (const char* f : {"stationary_report.txt", "stationary_report.csv", "transient.csv", "reliability.csv", "profit.csv"})
        CHECK(fs::exists(d / f));
    std::string rel = standby::read_file(d / "reliability.csv");
    CHECK(line_count(rel) == 2);
    CHECK(rel.find("\n0,1\n") != std::string::npos);
    CHECK(line_count(standby::read_file(d / "transient.csv")) == 2);
    fs::remove_all(d);
}

TEST_CASE("single point optimize") {
    fs::path d = scratch("opt");
    Run r = run("optimize " + example_cfg() + " --family erlang2 --grid 0.67 --R 3 --out " + (d / "sweep.csv").string());
    CHECK(r.code == 0);
    CHECK(r.out.find("p1=0.67 p2=0.67 R=3") != std::string::npos);
    CHECK(line_count(standby::read_file(d / "sweep.csv")) == 2);
    CHECK(run("optimize " + example_cfg() + " --grid 0:2:0.5").code == 2);
    fs::remove_all(d);
}

TEST_CASE("simulation output is fixed by the seed") {
    fs::path a = scratch("sim-a"), b = scratch("sim-b");
    std::string common = "simulate " + toy_cfg() + " --steps 20000 --reps 2 --warmup 100 --replacement-samples 10 --seed 7";
    CHECK(run(common + " --out " + a.string()).code == 0);
    CHECK(run(common + " --out " + b.string()).code == 0);
    CHECK(standby::read_file(a / "sim_report.csv") == standby::read_file(b / "sim_report.csv"));
    CHECK(fs::exists(a / "comparison.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("unknown subcommand or flag") {
    CHECK(run("frobnicate").code == 2);
    CHECK(run("measures " + toy_cfg() + " --horizon -3").code == 2);
}

}
