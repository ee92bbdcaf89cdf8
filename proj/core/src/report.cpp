#include "noncollide/report.hpp"

#include <cstdio>
#include <limits>

#include <nlohmann/json.hpp>

namespace noncollide::experiments {

using nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

bool ExperimentReport::passed() const {
    for (const Verdict& v : verdicts)
        if (!v.pass) return false;
    return true;
}

void ExperimentReport::param(const std::string& key, double v) { parameters[key] = fmt(v); }
void ExperimentReport::param(const std::string& key, long long v) { parameters[key] = std::to_string(v); }

void ExperimentReport::check_le(const std::string& name, double value, double critical) {
    statistics.push_back({name, value, std::nullopt, critical});
    verdicts.push_back({name, value <= critical});
}

void ExperimentReport::stat(const std::string& name, double value, double std_error) {
    statistics.push_back({name, value, std_error, std::nullopt});
}

namespace {

ordered_json encode(const ExperimentReport& r) {
    ordered_json j;
    j["experiment_id"] = r.experiment_id;
    j["parameters"] = ordered_json::object();
    for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
    j["seed"] = r.seed;
    j["streams"] = r.streams;
    j["statistics"] = ordered_json::array();
    for (const Statistic& s : r.statistics) {
        ordered_json e;
        e["name"] = s.name;
        e["value"] = s.value;
        if (s.std_error) e["stderr"] = *s.std_error;
        if (s.critical_value) e["critical_value"] = *s.critical_value;
        j["statistics"].push_back(e);
    }
    j["verdict"] = ordered_json::array();
    for (const Verdict& v : r.verdicts) j["verdict"].push_back({{"criterion", v.criterion}, {"pass", v.pass}});
    j["passed"] = r.passed();
    if (r.wall_time) j["wall_time"] = *r.wall_time;
    return j;
}

// non-finite values are written as null by the library; read them back as NaN
double number(const ordered_json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

ExperimentReport decode(const ordered_json& j) {
    ExperimentReport r;
    r.experiment_id = j.at("experiment_id").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) r.parameters[k] = v.get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.streams = j.at("streams").get<std::vector<std::uint64_t>>();
    for (const auto& e : j.at("statistics")) {
        Statistic s;
        s.name = e.at("name").get<std::string>();
        s.value = number(e.at("value"));
        if (e.contains("stderr")) s.std_error = number(e.at("stderr"));
        if (e.contains("critical_value")) s.critical_value = number(e.at("critical_value"));
        r.statistics.push_back(s);
    }
    for (const auto& v : j.at("verdict")) r.verdicts.push_back({v.at("criterion").get<std::string>(), v.at("pass").get<bool>()});
    if (j.contains("wall_time")) r.wall_time = j.at("wall_time").get<double>();
    return r;
}

}  // namespace

std::string to_json(const ExperimentReport& r, int indent) { return encode(r).dump(indent); }

std::string to_json(const std::vector<ExperimentReport>& rs, const std::string& suite, std::uint64_t seed,
                    const std::map<std::string, std::string>& config, int indent) {
    ordered_json j;
    j["suite"] = suite;
    j["seed"] = seed;
    if (!config.empty()) j["config"] = config;
    bool all = true;
    j["reports"] = ordered_json::array();
    for (const ExperimentReport& r : rs) {
        all = all && r.passed();
        j["reports"].push_back(encode(r));
    }
    j["passed"] = all;
    return j.dump(indent);
}

ExperimentReport report_from_json(const std::string& text) { return decode(ordered_json::parse(text)); }

std::vector<ExperimentReport> reports_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    std::vector<ExperimentReport> out;
    for (const auto& e : j.at("reports")) out.push_back(decode(e));
    return out;
}

}  // namespace noncollide::experiments
