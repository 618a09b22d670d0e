#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(EBITSIM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("entropy command") {
    auto r = run_cli("entropy --a2 0.5 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1\n");

    auto j = nlohmann::json::parse(run_cli("entropy --a2 0.25").out);
    CHECK(j["entropy"].get<double>() == doctest::Approx(0.811278).epsilon(1e-6));

    auto general = nlohmann::json::parse(run_cli("entropy --probs 0.5,0.25,0.25").out);
    CHECK(general["entropy"].get<double>() == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("dilute command reports the worked small case") {
    auto r = run_cli("dilute --a2 0.25 --N 4 --c 1 --mode exact");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["d"] == 0);
    CHECK(j["delta_dim"] == "14");
    CHECK(j["cbits"] == 8);
    CHECK(j["singlets_consumed"] == 4);
    CHECK(j["fidelity"].get<double>() == doctest::Approx(87.0 / 128.0).epsilon(1e-12));
}

TEST_CASE("sweep command is byte-identical across runs") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto f1 = dir / "ebitsim_sweep_run1.csv";
    const auto f2 = dir / "ebitsim_sweep_run2.csv";
    const std::string args = "sweep --a2 0.25 --N 100,1000,10000 --c 3 --format csv --out ";
    CHECK(run_cli(args + f1.string()).exit_code == 0);
    CHECK(run_cli(args + f2.string()).exit_code == 0);
    const std::string csv = slurp(f1);
    CHECK(csv == slurp(f2));
    CHECK(csv.rfind("N,c,S,d,delta_dim,cbits,singlets,fidelity,bits_per_ebit\n", 0) == 0);
    std::filesystem::remove(f1);
    std::filesystem::remove(f2);

    auto j = nlohmann::json::parse(run_cli("sweep --a2 0.25 --N 100,1000,10000 --c 3").out);
    REQUIRE(j.contains("fit"));
    CHECK(std::abs(j["fit"]["slope"].get<double>() + 0.5) < 0.1);
}

TEST_CASE("concentrate command") {
    auto r = run_cli("concentrate --a2 0.25 --N 2 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("k,probability,yield_ebits\n", 0) == 0);
    CHECK(r.out.find("0,0.5625,0\n") != std::string::npos);

    auto j = nlohmann::json::parse(run_cli("concentrate --a2 0.25 --N 4 --samples 10 --seed 7").out);
    CHECK(j["samples"].size() == 10);
    CHECK(j["transcript"]["cbits_sent"] == 0);
}

TEST_CASE("demo commands self-check") {
    auto tele = nlohmann::json::parse(run_cli("teleport-demo --seed 5").out);
    for (const auto& c : tele["checks"]) CHECK(c["pass"] == true);
    CHECK(tele["transcript"]["cbits_sent"] == 8);  // 4 branches x 2 cbits

    auto dense = nlohmann::json::parse(run_cli("densecode-demo").out);
    CHECK(dense["all_decoded"] == true);

    auto lemma = nlohmann::json::parse(run_cli("lemma-demo --a2 0.8 --n 2 --scramble "
                                               "--scramble-seed 17")
                                           .out);
    CHECK(lemma["r"] == 1);
    CHECK(lemma["cbits"] == 2);
    CHECK(lemma["fidelity"].get<double>() >= 1.0 - 1e-10);
}

TEST_CASE("oracle-check passes on a small instance") {
    CHECK(run_cli("oracle-check --a2 0.25 --N 5").exit_code == 0);
}

TEST_CASE("invalid invocations exit nonzero") {
    CHECK(run_cli("dilute --N 4").exit_code != 0);             // no spectrum given
    CHECK(run_cli("dilute --a2 0.25").exit_code != 0);         // no N
    CHECK(run_cli("entropy --a2 1.5").exit_code != 0);         // invalid probability
    CHECK(run_cli("entropy --format yaml --a2 0.5").exit_code != 0);
    CHECK(run_cli("no-such-command").exit_code != 0);
}
