#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "edwalk/record.hpp"

using namespace edwalk;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out, err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CmdResult run_cli(const std::string& args) {
    const char* bin = std::getenv("EDWALK_BIN");
    REQUIRE(bin != nullptr);
    static int counter = 0;
    ++counter;
    const std::string outf = "cli_stdout_" + std::to_string(counter) + ".tmp";
    const std::string errf = "cli_stderr_" + std::to_string(counter) + ".tmp";
    const std::string cmd =
        std::string("\"") + bin + "\" " + args + " > " + outf + " 2> " + errf;
    const int rc = std::system(cmd.c_str());
    CmdResult res;
    REQUIRE(rc != -1);
    if (WIFEXITED(rc)) res.exit_code = WEXITSTATUS(rc);
    res.out = slurp(outf);
    res.err = slurp(errf);
    std::remove(outf.c_str());
    std::remove(errf.c_str());
    return res;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("solve emits the parameter set") {
    CmdResult r = run_cli("solve --n 5 --json");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 1);
    const nlohmann::json j = nlohmann::json::parse(ls[0]);
    CHECK(j.at("N").get<long long>() == 5);
    CHECK(j.at("r").get<long long>() == 2);
    CHECK(j.at("ct2").get<long long>() == 30);
    CHECK(std::abs(j.at("d").get<double>() - 0.30013) < 1e-3);
    CHECK(j.at("query_count").get<long long>() == 362);
    CHECK(j.at("mode").get<std::string>() == "solve");

    CmdResult human = run_cli("solve --n 5");
    CHECK(human.exit_code == 0);
    CHECK(human.out.find("queries=362") != std::string::npos);
    CHECK(human.out.find("rad") != std::string::npos);
    CHECK(human.out.find("deg") == std::string::npos);

    CmdResult deg = run_cli("solve --n 5 --degrees");
    CHECK(deg.exit_code == 0);
    CHECK(deg.out.find("deg") != std::string::npos);

    CmdResult range = run_cli("solve --n 5..7 --json");
    CHECK(range.exit_code == 0);
    auto rls = lines_of(range.out);
    REQUIRE(rls.size() == 3);
    for (size_t i = 0; i < rls.size(); ++i)
        CHECK(nlohmann::json::parse(rls[i]).at("N").get<long long>() ==
              static_cast<long long>(5 + i));
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("solve --n 4").exit_code == 2);
    CHECK(run_cli("solve").exit_code == 2);
    CHECK(run_cli("solve --n 5 --definitely-not-a-flag").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate --n 5").exit_code == 2);
    CHECK(run_cli("solve --n zebra").exit_code == 2);
    CHECK(run_cli("solve --n 5 --c 7").exit_code == 2);  // odd multiplier
}

TEST_CASE("verify reports one verdict per size") {
    CmdResult r = run_cli("verify --n 5..8 --mode both");
    CHECK(r.exit_code == 0);
    size_t passes = 0, pos = 0;
    while ((pos = r.out.find("PASS", pos)) != std::string::npos) {
        ++passes;
        pos += 4;
    }
    CHECK(passes == 4);
    CHECK(r.out.find("FAIL") == std::string::npos);

    CmdResult quick = run_cli("verify --n 200 --mode reduced");
    CHECK(quick.exit_code == 0);
    CHECK(quick.out.find("PASS") != std::string::npos);
}

TEST_CASE("verify surfaces resource limits as exit 3") {
    CmdResult r = run_cli("verify --n 20 --mode full --cap 1000");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("cap") != std::string::npos);
}

TEST_CASE("sweep output is deterministic and well-formed") {
    const std::string args = "sweep --n 5..12";
    CmdResult a = run_cli(args);
    CmdResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);

    auto ls = lines_of(a.out);
    REQUIRE(ls.size() == 9);
    CHECK(ls[0] == kSweepCsvHeader);
    long long prev_n = 0;
    for (size_t i = 1; i < ls.size(); ++i) {
        RunRecord rec = record_from_csv_row(ls[i]);
        CHECK(rec.params.N == static_cast<long long>(4 + i));
        CHECK(rec.params.N > prev_n);
        prev_n = rec.params.N;
        CHECK(rec.query_count > 0);
        CHECK(*rec.success_prob > 1.0 - 1e-8);
    }

    CmdResult stepped = run_cli("sweep --n 5..13 --step 4");
    auto sls = lines_of(stepped.out);
    REQUIRE(sls.size() == 4);  // header + N = 5, 9, 13
    CHECK(record_from_csv_row(sls[1]).params.N == 5);
    CHECK(record_from_csv_row(sls[2]).params.N == 9);
    CHECK(record_from_csv_row(sls[3]).params.N == 13);
}

TEST_CASE("sweep writes to a file when asked") {
    const std::string path = "sweep_out_test.csv";
    CmdResult r = run_cli("sweep --n 5..7 --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    const std::string content = slurp(path);
    std::remove(path.c_str());
    auto ls = lines_of(content);
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == kSweepCsvHeader);

    CmdResult bad = run_cli("sweep --n 5..6 --out /no/such/directory/x.csv");
    CHECK(bad.exit_code == 3);
}

TEST_CASE("measure samples the planted collision") {
    CmdResult r = run_cli("measure --n 5 --seed 7 --samples 400 --json");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 1);
    const nlohmann::json j = nlohmann::json::parse(ls[0]);
    CHECK(j.at("seed").get<long long>() == 7);
    CHECK(j.at("samples").get<long long>() == 400);
    CHECK(j.at("reported_pair").get<long long>() == 400);
    CHECK(j.at("correct").get<long long>() == 400);
    CHECK(!j.at("colliding_pair").is_null());

    CmdResult d = run_cli("measure --n 5 --seed 11 --samples 300 --distinct --json");
    CHECK(d.exit_code == 0);
    const nlohmann::json jd = nlohmann::json::parse(lines_of(d.out)[0]);
    CHECK(jd.at("reported_distinct").get<long long>() == 300);
    CHECK(jd.at("correct").get<long long>() == 0);
    CHECK(jd.at("colliding_pair").is_null());

    CHECK(run_cli("measure --n 5 --samples 10").exit_code == 2);  // seed required
}

TEST_CASE("the million-entry size solves in closed form") {
    CmdResult r = run_cli("solve --n 1000000 --json");
    CHECK(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(lines_of(r.out)[0]);
    CHECK(j.at("r").get<long long>() == 10000);
    CHECK(j.at("t2").get<long long>() == 158);
    CHECK(std::abs(j.at("d").get<double>() - std::sqrt(7.0) / 5.0) < 0.01);
    CHECK(j.at("query_count").get<long long>() == 566160);
}
