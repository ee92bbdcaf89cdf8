#include <cmath>
#include <thread>

#include "noncollide/core.hpp"

namespace noncollide {

std::string to_string(Chamber c) {
    switch (c) {
        case Chamber::A: return "A";
        case Chamber::C: return "C";
        case Chamber::D: return "D";
    }
    return "?";
}

OrderedConfiguration validate_chamber(std::span<const double> x, Chamber chamber) {
    if (x.empty()) throw DomainError("configuration must be nonempty");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i])) throw NonFinite("non-finite coordinate at index " + std::to_string(i));

    auto fail = [](std::size_t i, const char* rule) {
        throw ChamberViolation(i, std::string("chamber inequality ") + rule + " fails at index " +
                                      std::to_string(i));
    };
    switch (chamber) {
        case Chamber::A:
            break;
        case Chamber::C:
            if (!(x[0] > 0.0)) fail(0, "0 < x1");
            break;
        case Chamber::D:
            if (x.size() > 1 && !(std::abs(x[0]) < x[1])) fail(1, "|x1| < x2");
            break;
    }
    std::size_t start = chamber == Chamber::D ? 2 : 1;
    for (std::size_t i = start; i < x.size(); ++i)
        if (!(x[i - 1] < x[i])) fail(i, "x(i-1) < x(i)");

    OrderedConfiguration cfg;
    cfg.values_.assign(x.begin(), x.end());
    cfg.chamber_ = chamber;
    return cfg;
}

TimeGrid::TimeGrid(std::vector<double> times, std::optional<double> horizon)
    : times_(std::move(times)), horizon_(horizon) {
    if (times_.empty()) throw DomainError("time grid must be nonempty");
    for (double t : times_)
        if (!std::isfinite(t)) throw NonFinite("non-finite grid time");
    if (times_[0] < 0.0) throw DomainError("grid times must be nonnegative");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i - 1] < times_[i])) throw TimeOrdering("grid times must increase strictly");
    if (horizon_) {
        if (!(*horizon_ > 0.0)) throw DomainError("horizon must be positive");
        if (times_.back() > *horizon_) throw TimeOrdering("grid extends past the horizon");
    }
}

TimeGrid TimeGrid::uniform(double t_end, int steps, std::optional<double> horizon) {
    if (steps < 1 || !(t_end > 0.0)) throw DomainError("uniform grid needs steps >= 1 and t_end > 0");
    std::vector<double> t(steps);
    for (int k = 0; k < steps; ++k) t[k] = t_end * double(k + 1) / steps;
    t.back() = t_end;
    return TimeGrid(std::move(t), horizon);
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace noncollide
