#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <memory>

#include "critorb/cli.hpp"

using critorb::cli::run;
using critorb::cli::Status;

namespace {

const std::string kData = CRITORB_TEST_DATA;

struct Process {
    int exit_code;
    std::string out;
};

Process spawn(const std::string& args) {
    const char* exe = std::getenv("CRITORB_CLI");
    REQUIRE(exe != nullptr);
    const std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe.release());
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("orbit") {
    const auto r = run({"orbit", "--c", "3", "--p", "5", "--t", "3"});
    CHECK(r.status == Status::Ok);
    CHECK(r.payload["tail"] == 2);
    CHECK(r.payload["period"] == 10);
}

TEST_CASE("lift and obstruction") {
    auto r = run({"lift", "--n", "3", "--p", "5", "--c0", "1", "--precision", "3"});
    CHECK(r.status == Status::Ok);
    CHECK(r.payload["value"] == "16");
    r = run({"lift", "--n", "5", "--p", "13", "--c0", "3"});
    CHECK(r.status == Status::InvalidInput);
    CHECK(r.payload["kind"] == "hensel_hypothesis_fails");
}

TEST_CASE("gleason and discriminant") {
    auto r = run({"disc", "--n", "3"});
    CHECK(r.status == Status::Ok);
    CHECK(r.payload.dump().find("-23") != std::string::npos);
    r = run({"disc", "--coeffs", "-11,1,0,-7,3"});
    CHECK(r.payload.dump().find("-15569492") != std::string::npos);
}

TEST_CASE("verify and construct") {
    const std::string spec = kData + "/six_constraints.json";
    auto r = run({"verify", "--c", "24351981847787737533052341852056330671894786203451391", "--spec", spec});
    CHECK(r.status == Status::Ok);
    CHECK(r.payload["ok"] == true);
    r = run({"verify", "--c", "1168184310110489945509811544546782641527527693907326", "--spec", spec});
    CHECK(r.status == Status::VerificationFailed);
    r = run({"--threads", "2", "construct", "--spec", spec});
    CHECK(r.status == Status::Ok);
}

TEST_CASE("invalid input maps to exit code 2") {
    CHECK(run({"orbit", "--c", "3", "--p", "6"}).exit_code() == 2);
    CHECK(run({"orbit", "--d", "1", "--c", "3", "--p", "5"}).exit_code() == 2);
    CHECK(run({"bound", "--n", "3", "--c", "-1"}).exit_code() == 2);
    CHECK(run({"nonsense"}).exit_code() == 2);
    CHECK(run({"verify", "--spec", kData + "/missing.json", "--c", "1"}).exit_code() == 2);
}

TEST_CASE("failed certificates and exhausted searches") {
    // a_2 = 12 = 2^2 * 3 has no admissible witness
    CHECK(run({"certify", "--c", "3", "--m", "2", "--limit", "50"}).exit_code() == 1);
    const std::string spec = kData + "/auto_iterate3.json";
    CHECK(run({"construct", "--spec", spec, "--limit", "10"}).exit_code() == 3);
    const auto r = run({"construct", "--spec", spec});
    CHECK(r.exit_code() == 0);
}

TEST_CASE("density csv") {
    const auto r = run({"density", "--n", "3", "--limit", "30", "--csv"});
    CHECK(r.text.rfind("p,has_root\n3,0\n5,1\n7,1\n", 0) == 0);
}

TEST_CASE("pcf census") {
    const auto r = run({"pcf", "--d", "3", "--p", "5"});
    CHECK(r.payload["periodic"].size() == 5);
    CHECK(r.payload["periodic"]["1"]["n"] == 4);
    CHECK(r.payload["condition_star_star"] == true);
}

TEST_CASE("standalone executable") {
    Process p = spawn("lift --n 3 --p 5 --c0 1 --precision 3");
    CHECK(p.exit_code == 0);
    CHECK(nlohmann::json::parse(p.out)["value"] == "16");
    p = spawn("lift --n 5 --p 13 --c0 3");
    CHECK(p.exit_code == 2);
    p = spawn("--seed 5 primitive --c 3/2 --n 3 --p 83");
    CHECK(p.exit_code == 0);
    CHECK(nlohmann::json::parse(p.out)["primitive"] == true);
}
