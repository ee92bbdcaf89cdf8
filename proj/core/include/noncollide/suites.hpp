#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "noncollide/report.hpp"

namespace noncollide::experiments {

struct SuiteOptions {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    double dt_max = 1e-3;
    bool timing = false;  // wall_time is left out of the reports unless set
};

// densities km ensembles sde kernels fredholm bridge hc, then "all"
const std::vector<std::string>& suite_names();

std::vector<ExperimentReport> run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace noncollide::experiments
