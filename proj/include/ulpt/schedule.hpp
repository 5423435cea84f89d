#pragma once

#include <stdexcept>
#include <vector>

#include "ulpt/instance.hpp"

namespace ulpt {

/// A complete task-to-processor assignment together with the derived
/// per-processor workloads, finish times and the makespan.
struct Schedule {
    std::vector<int> assignment;    // task index -> processor index (0-based)
    std::vector<double> loads;      // sum of assigned task sizes per processor
    std::vector<double> finish_times;  // loads[p] / speeds[p]
    double makespan = 0.0;
};

// Every module derives loads and makespans through these two functions so
// that equal assignments always produce bit-identical numbers: loads are
// accumulated in ascending task order, finish times are plain divisions,
// and the max scans processors in ascending order.
inline std::vector<double> loads_of(const Instance& inst, const std::vector<int>& assignment) {
    if (assignment.size() != inst.sizes.size())
        throw std::invalid_argument("assignment length does not match task count");
    std::vector<double> loads(inst.speeds.size(), 0.0);
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        int p = assignment[i];
        if (p < 0 || p >= inst.m())
            throw std::invalid_argument("assignment refers to a processor out of range");
        loads[static_cast<std::size_t>(p)] += inst.sizes[i];
    }
    return loads;
}

inline double makespan_of_loads(const Instance& inst, const std::vector<double>& loads) {
    double makespan = 0.0;
    for (std::size_t p = 0; p < loads.size(); ++p) {
        double finish = loads[p] / inst.speeds[p];
        if (finish > makespan) makespan = finish;
    }
    return makespan;
}

inline double makespan_of(const Instance& inst, const std::vector<int>& assignment) {
    return makespan_of_loads(inst, loads_of(inst, assignment));
}

inline Schedule schedule_from_assignment(const Instance& inst, std::vector<int> assignment) {
    Schedule sched;
    sched.loads = loads_of(inst, assignment);
    sched.assignment = std::move(assignment);
    sched.finish_times.resize(sched.loads.size());
    for (std::size_t p = 0; p < sched.loads.size(); ++p)
        sched.finish_times[p] = sched.loads[p] / inst.speeds[p];
    sched.makespan = 0.0;
    for (double f : sched.finish_times)
        if (f > sched.makespan) sched.makespan = f;
    return sched;
}

}  // namespace ulpt
