#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <charconv>
#include <string>

#include <json.hpp>

#include "edwalk/record.hpp"
#include "edwalk/solver.hpp"

using namespace edwalk;

namespace {

RunRecord sample_record() {
    RunRecord rec;
    rec.params = solve_all(7).params;
    rec.mode = "both";
    rec.residual_inner = 3.2e-16;
    rec.residual_outer = 1.1e-13;
    rec.residual_walk_power = 4.4e-12;
    rec.success_prob = 1.0 - 2.5e-11;
    rec.leakage = 7.7e-15;
    rec.h0_dev = 2.1e-14;
    rec.query_count = query_count(rec.params);
    rec.wall_time = 0.125;
    return rec;
}

}  // namespace

TEST_CASE("shortest double formatting round-trips hard cases") {
    auto parse = [](const std::string& s) {
        // from_chars, unlike stod, returns subnormals instead of raising
        double v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        REQUIRE(res.ec == std::errc{});
        REQUIRE(res.ptr == s.data() + s.size());
        return v;
    };
    for (double x : {0.1 + 0.2, 1e-300, 1e300, -1.0 / 3.0, 3.141592653589793,
                     5e-324, 0.0}) {
        CHECK(parse(format_double(x)) == x);
    }
    const double back = parse(format_double(-0.0));
    CHECK(back == 0.0);
    CHECK(std::signbit(back));
}

TEST_CASE("json serialization is stable and complete") {
    RunRecord rec = sample_record();
    const std::string text = to_json(rec);
    CHECK(to_json(record_from_json(text)) == text);

    const nlohmann::json j = nlohmann::json::parse(text);
    for (const char* key :
         {"N", "r", "c", "t2", "ct2", "t1", "d", "beta", "lam", "phi0", "theta1",
          "theta2", "alpha1", "alpha2", "mode", "residual_inner", "residual_outer",
          "residual_walk_power", "success_prob", "leakage", "h0_dev", "query_count",
          "wall_time"})
        CHECK(j.contains(key));
    CHECK(j.at("N").get<long long>() == 7);
    CHECK(j.at("mode").get<std::string>() == "both");
    CHECK(j.at("d").get<double>() == rec.params.d);

    // a solve-only record leaves the simulator fields null
    RunRecord bare;
    bare.params = rec.params;
    const nlohmann::json jb = nlohmann::json::parse(to_json(bare));
    CHECK(jb.at("residual_walk_power").is_null());
    CHECK(jb.at("success_prob").is_null());
    CHECK(jb.at("leakage").is_null());
    CHECK(jb.at("h0_dev").is_null());
    RunRecord parsed = record_from_json(to_json(bare));
    CHECK(!parsed.success_prob.has_value());
    CHECK(!parsed.residual_walk_power.has_value());
    CHECK(parsed.params.theta1 == rec.params.theta1);
}

TEST_CASE("json parsing rejects missing fields") {
    RunRecord rec = sample_record();
    nlohmann::json j = nlohmann::json::parse(to_json(rec));
    j.erase("beta");
    CHECK_THROWS((void)record_from_json(j.dump()));
    CHECK_THROWS((void)record_from_json("not json at all"));
}

TEST_CASE("sweep csv header and row round-trip") {
    CHECK(std::string(kSweepCsvHeader) ==
          "N,r,t2,ct2,t1,d,beta,alpha1,alpha2,success_prob,query_count,"
          "queries_over_N23");

    RunRecord rec = sample_record();
    const std::string row = to_csv_row(rec);
    RunRecord back = record_from_csv_row(row);
    CHECK(back.params.N == rec.params.N);
    CHECK(back.params.r == rec.params.r);
    CHECK(back.params.t1 == rec.params.t1);
    CHECK(back.params.d == rec.params.d);
    CHECK(back.params.beta == rec.params.beta);
    CHECK(back.params.alpha1 == rec.params.alpha1);
    CHECK(back.params.alpha2 == rec.params.alpha2);
    CHECK(back.success_prob == rec.success_prob);
    CHECK(back.query_count == rec.query_count);
    CHECK(back.mode == "reduced");
    CHECK(to_csv_row(back) == row);

    long long commas = 0;
    for (char ch : row) commas += ch == ',';
    CHECK(commas == 11);
}

TEST_CASE("csv parsing rejects malformed rows") {
    RunRecord rec = sample_record();
    const std::string row = to_csv_row(rec);
    CHECK_THROWS_AS((void)record_from_csv_row(row + ",extra"), std::invalid_argument);
    CHECK_THROWS_AS((void)record_from_csv_row("1,2,3"), std::invalid_argument);
    std::string bad = row;
    bad[0] = 'x';
    CHECK_THROWS_AS((void)record_from_csv_row(bad), std::invalid_argument);
    CHECK_THROWS_AS((void)record_from_csv_row(std::string(kSweepCsvHeader)),
                    std::invalid_argument);
}

TEST_CASE("query scaling column") {
    RunRecord rec;
    rec.params.N = 1000;
    rec.query_count = 5860;
    CHECK(std::abs(queries_over_n23(rec) - 58.6) < 1e-12);
}
