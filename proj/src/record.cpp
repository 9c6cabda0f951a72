#include "edwalk/record.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace edwalk {

const char* const kSweepCsvHeader =
    "N,r,t2,ct2,t1,d,beta,alpha1,alpha2,success_prob,query_count,queries_over_N23";

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double queries_over_n23(const RunRecord& rec) {
    const double n = static_cast<double>(rec.params.N);
    return static_cast<double>(rec.query_count) / std::cbrt(n * n);
}

namespace {

nlohmann::json optional_field(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

}  // namespace

std::string to_json(const RunRecord& rec) {
    nlohmann::json j;
    const AlgorithmParams& p = rec.params;
    j["N"] = p.N;
    j["r"] = p.r;
    j["c"] = p.c;
    j["t2"] = p.t2;
    j["ct2"] = p.ct2;
    j["t1"] = p.t1;
    j["d"] = p.d;
    j["beta"] = p.beta;
    j["lam"] = p.lam;
    j["phi0"] = p.phi0;
    j["theta1"] = p.theta1;
    j["theta2"] = p.theta2;
    j["alpha1"] = p.alpha1;
    j["alpha2"] = p.alpha2;
    j["mode"] = rec.mode;
    j["residual_inner"] = rec.residual_inner;
    j["residual_outer"] = rec.residual_outer;
    j["residual_walk_power"] = optional_field(rec.residual_walk_power);
    j["success_prob"] = optional_field(rec.success_prob);
    j["leakage"] = optional_field(rec.leakage);
    j["h0_dev"] = optional_field(rec.h0_dev);
    j["query_count"] = rec.query_count;
    j["wall_time"] = rec.wall_time;
    return j.dump();
}

RunRecord record_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    RunRecord rec;
    AlgorithmParams& p = rec.params;
    p.N = j.at("N").get<long long>();
    p.r = j.at("r").get<long long>();
    p.c = j.at("c").get<int>();
    p.t2 = j.at("t2").get<long long>();
    p.ct2 = j.at("ct2").get<long long>();
    p.t1 = j.at("t1").get<long long>();
    p.d = j.at("d").get<double>();
    p.beta = j.at("beta").get<double>();
    p.lam = j.at("lam").get<double>();
    p.phi0 = j.at("phi0").get<double>();
    p.theta1 = j.at("theta1").get<double>();
    p.theta2 = j.at("theta2").get<double>();
    p.alpha1 = j.at("alpha1").get<double>();
    p.alpha2 = j.at("alpha2").get<double>();
    rec.mode = j.at("mode").get<std::string>();
    rec.residual_inner = j.at("residual_inner").get<double>();
    rec.residual_outer = j.at("residual_outer").get<double>();
    auto opt = [&j](const char* key) -> std::optional<double> {
        if (j.at(key).is_null()) return std::nullopt;
        return j.at(key).get<double>();
    };
    rec.residual_walk_power = opt("residual_walk_power");
    rec.success_prob = opt("success_prob");
    rec.leakage = opt("leakage");
    rec.h0_dev = opt("h0_dev");
    rec.query_count = j.at("query_count").get<long long>();
    rec.wall_time = j.at("wall_time").get<double>();
    return rec;
}

std::string to_csv_row(const RunRecord& rec) {
    const AlgorithmParams& p = rec.params;
    std::ostringstream row;
    row << p.N << ',' << p.r << ',' << p.t2 << ',' << p.ct2 << ',' << p.t1 << ','
        << format_double(p.d) << ',' << format_double(p.beta) << ','
        << format_double(p.alpha1) << ',' << format_double(p.alpha2) << ','
        << format_double(rec.success_prob.value_or(0.0)) << ',' << rec.query_count << ','
        << format_double(queries_over_n23(rec));
    return row.str();
}

RunRecord record_from_csv_row(const std::string& row) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(row);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (cells.size() != 12) throw std::invalid_argument("csv row: expected 12 columns");

    auto as_ll = [](const std::string& s) {
        long long v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
            throw std::invalid_argument("csv row: bad integer '" + s + "'");
        return v;
    };
    auto as_d = [](const std::string& s) {
        double v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
            throw std::invalid_argument("csv row: bad number '" + s + "'");
        return v;
    };

    RunRecord rec;
    rec.mode = "reduced";
    rec.params.N = as_ll(cells[0]);
    rec.params.r = as_ll(cells[1]);
    rec.params.t2 = as_ll(cells[2]);
    rec.params.ct2 = as_ll(cells[3]);
    rec.params.t1 = as_ll(cells[4]);
    rec.params.d = as_d(cells[5]);
    rec.params.beta = as_d(cells[6]);
    rec.params.alpha1 = as_d(cells[7]);
    rec.params.alpha2 = as_d(cells[8]);
    rec.success_prob = as_d(cells[9]);
    rec.query_count = as_ll(cells[10]);
    as_d(cells[11]);  // derived column, validated but recomputed on write
    return rec;
}

}  // namespace edwalk
