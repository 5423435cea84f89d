#pragma once

#include <vector>

#include "ulpt/instance.hpp"
#include "ulpt/schedule.hpp"

namespace ulpt {

/// Longest-processing-time list scheduling on uniform processors.
///
/// Tasks are consumed in the instance's non-increasing size order. Each
/// task goes to the processor that minimizes its resulting finish time
/// w(p) + t(i)/s(p), where w(p) is the running finish time of p. Both
/// tie kinds (equal sizes, equal candidate finish times) resolve to the
/// lowest index, so the result is fully deterministic.
inline Schedule lpt_schedule(const Instance& inst) {
    require_valid(inst);
    const int m = inst.m();
    const int n = inst.n();
    std::vector<double> running_finish(static_cast<std::size_t>(m), 0.0);
    std::vector<int> assignment(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const double t = inst.sizes[static_cast<std::size_t>(i)];
        int best = 0;
        double best_finish = running_finish[0] + t / inst.speeds[0];
        for (int p = 1; p < m; ++p) {
            double finish = running_finish[static_cast<std::size_t>(p)] +
                            t / inst.speeds[static_cast<std::size_t>(p)];
            if (finish < best_finish) {
                best = p;
                best_finish = finish;
            }
        }
        assignment[static_cast<std::size_t>(i)] = best;
        running_finish[static_cast<std::size_t>(best)] = best_finish;
    }
    // The running finish times drive the placement decisions only; the
    // reported schedule is recomputed from the assignment.
    return schedule_from_assignment(inst, std::move(assignment));
}

inline double lpt_makespan(const Instance& inst) { return lpt_schedule(inst).makespan; }

}  // namespace ulpt
