#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noncollide/errors.hpp"
#include "noncollide/rng.hpp"

namespace noncollide {

enum class Chamber { A, C, D };

std::string to_string(Chamber c);

class OrderedConfiguration {
public:
    OrderedConfiguration() = default;

    std::size_t size() const noexcept { return values_.size(); }
    int n() const noexcept { return int(values_.size()); }
    Chamber chamber() const noexcept { return chamber_; }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& vector() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    friend OrderedConfiguration validate_chamber(std::span<const double>, Chamber);
    std::vector<double> values_;
    Chamber chamber_ = Chamber::A;
};

// Throws ChamberViolation (index of the first failing inequality) or NonFinite.
OrderedConfiguration validate_chamber(std::span<const double> x, Chamber chamber);
inline OrderedConfiguration validate_chamber(std::initializer_list<double> x, Chamber chamber) {
    return validate_chamber(std::span<const double>(x.begin(), x.size()), chamber);
}

class TimeGrid {
public:
    TimeGrid() = default;
    TimeGrid(std::vector<double> times, std::optional<double> horizon = std::nullopt);

    static TimeGrid uniform(double t_end, int steps, std::optional<double> horizon = std::nullopt);

    std::size_t size() const noexcept { return times_.size(); }
    double operator[](std::size_t i) const { return times_[i]; }
    const std::vector<double>& times() const noexcept { return times_; }
    std::optional<double> horizon() const noexcept { return horizon_; }

private:
    std::vector<double> times_;
    std::optional<double> horizon_;
};

// Monte Carlo-capable quantities.  std_error is 0 for deterministic routes.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    bool monte_carlo = false;
};

struct McOptions {
    std::size_t samples = 20000;
    int steps = 256;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    unsigned threads = 0;  // 0: hardware concurrency
};

unsigned resolve_threads(unsigned requested);

}  // namespace noncollide
