#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ulpt {

/// A scheduling instance on uniform processors: m processor speeds and
/// n task sizes, both kept in non-increasing order. Instances are plain
/// values; every operation returns a fresh one.
struct Instance {
    std::vector<double> speeds;
    std::vector<double> sizes;
    std::string name;

    int m() const { return static_cast<int>(speeds.size()); }
    int n() const { return static_cast<int>(sizes.size()); }

    bool operator==(const Instance& other) const {
        return speeds == other.speeds && sizes == other.sizes && name == other.name;
    }
};

/// Collects every invariant violation instead of stopping at the first.
inline std::vector<std::string> validate(const Instance& inst) {
    std::vector<std::string> errors;
    if (inst.speeds.empty()) errors.push_back("m must be >= 1");
    if (inst.sizes.empty()) errors.push_back("n must be >= 1");
    for (double s : inst.speeds) {
        if (!std::isfinite(s)) {
            errors.push_back("speeds must be finite");
            break;
        }
    }
    for (double t : inst.sizes) {
        if (!std::isfinite(t)) {
            errors.push_back("sizes must be finite");
            break;
        }
    }
    for (std::size_t p = 0; p < inst.speeds.size(); ++p) {
        if (std::isfinite(inst.speeds[p]) && inst.speeds[p] <= 0.0) {
            errors.push_back("speeds must be positive");
            break;
        }
    }
    for (std::size_t p = 0; p + 1 < inst.speeds.size(); ++p) {
        if (inst.speeds[p] < inst.speeds[p + 1]) {
            errors.push_back("speeds not non-increasing");
            break;
        }
    }
    for (std::size_t i = 0; i < inst.sizes.size(); ++i) {
        if (std::isfinite(inst.sizes[i]) && inst.sizes[i] < 0.0) {
            errors.push_back("sizes must be non-negative");
            break;
        }
    }
    for (std::size_t i = 0; i + 1 < inst.sizes.size(); ++i) {
        if (inst.sizes[i] < inst.sizes[i + 1]) {
            errors.push_back("sizes not non-increasing");
            break;
        }
    }
    return errors;
}

inline bool is_valid(const Instance& inst) { return validate(inst).empty(); }

inline void require_valid(const Instance& inst) {
    auto errors = validate(inst);
    if (errors.empty()) return;
    std::ostringstream msg;
    msg << "invalid instance";
    if (!inst.name.empty()) msg << " '" << inst.name << "'";
    msg << ":";
    for (const auto& e : errors) msg << " " << e << ";";
    throw std::invalid_argument(msg.str());
}

/// Rescales sizes so the smallest task has size 1 (speeds untouched).
/// Instances with a zero-size smallest task are degenerate and rejected.
inline Instance normalize_sizes(const Instance& inst) {
    require_valid(inst);
    double smallest = inst.sizes.back();
    if (smallest <= 0.0)
        throw std::invalid_argument("degenerate instance: smallest task size must be positive");
    Instance out = inst;
    for (double& t : out.sizes) t /= smallest;
    out.sizes.back() = 1.0;
    return out;
}

/// Rescales speeds by the instance's optimal makespan so the rescaled
/// instance has optimal makespan 1. The caller supplies opt (from the
/// exact solver); sizes are untouched.
inline Instance normalize_opt(const Instance& inst, double opt) {
    require_valid(inst);
    if (!(opt > 0.0) || !std::isfinite(opt))
        throw std::invalid_argument("normalize_opt: opt must be a positive finite real");
    Instance out = inst;
    for (double& s : out.speeds) s *= opt;
    return out;
}

}  // namespace ulpt
