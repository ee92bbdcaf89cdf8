#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace noncollide::experiments {

struct Statistic {
    std::string name;
    double value = 0.0;
    std::optional<double> std_error;
    std::optional<double> critical_value;
};

struct Verdict {
    std::string criterion;
    bool pass = false;
};

struct ExperimentReport {
    std::string experiment_id;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> streams;
    std::vector<Statistic> statistics;
    std::vector<Verdict> verdicts;
    std::optional<double> wall_time;

    bool passed() const;
    void param(const std::string& key, double v);
    void param(const std::string& key, long long v);
    void param(const std::string& key, const std::string& v) { parameters[key] = v; }
    // statistic plus the verdict "value <= critical"
    void check_le(const std::string& name, double value, double critical);
    void stat(const std::string& name, double value, double std_error);
    void verdict(const std::string& criterion, bool pass) { verdicts.push_back({criterion, pass}); }
};

std::string to_json(const ExperimentReport& r, int indent = 2);
// config: resolved run settings echoed into the document
std::string to_json(const std::vector<ExperimentReport>& rs, const std::string& suite, std::uint64_t seed,
                    const std::map<std::string, std::string>& config = {}, int indent = 2);
ExperimentReport report_from_json(const std::string& text);
std::vector<ExperimentReport> reports_from_json(const std::string& text);

// %.17g
std::string fmt(double v);
// %g, for names
std::string label(double v);

}  // namespace noncollide::experiments
