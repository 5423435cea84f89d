#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ulpt/instance.hpp"
#include "ulpt/lpt.hpp"
#include "ulpt/schedule.hpp"

namespace ulpt {

/// Result of an exact makespan minimization. The witness assignment is
/// relabeled so the per-processor loads come out non-increasing; its
/// recomputed makespan is bit-identical to `makespan`.
struct OptResult {
    double makespan = 0.0;
    std::vector<int> assignment;
    std::vector<double> loads;
    long long nodes_explored = 0;
    bool proven = false;
};

struct EnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Moving a larger load onto a faster (lower-index) processor never
// increases any finish time, so sorting task sets by load keeps the
// makespan unchanged. Float divisions are monotone, hence the relabeled
// witness reproduces the makespan bit-exactly.
inline void canonicalize_witness(const Instance& inst, OptResult& result) {
    const int m = inst.m();
    std::vector<double> raw_loads = loads_of(inst, result.assignment);
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return raw_loads[static_cast<std::size_t>(a)] > raw_loads[static_cast<std::size_t>(b)];
    });
    std::vector<int> rank(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
    for (int& p : result.assignment) p = rank[static_cast<std::size_t>(p)];

    result.loads = loads_of(inst, result.assignment);
    double recomputed = makespan_of_loads(inst, result.loads);
    if (result.proven && recomputed != result.makespan)
        throw std::logic_error("witness relabeling changed the optimal makespan");
    result.makespan = recomputed;
}

inline void check_lower_bounds(const Instance& inst, double makespan) {
    double total_work = 0.0;
    for (double t : inst.sizes) total_work += t;
    double total_speed = 0.0;
    for (double s : inst.speeds) total_speed += s;
    double lb = std::max(total_work / total_speed, inst.sizes[0] / inst.speeds[0]);
    if (makespan < lb - 1e-9 * std::max(1.0, lb))
        throw std::logic_error("exact solve violated a trivial lower bound");
}

class ExhaustiveSearch {
  public:
    explicit ExhaustiveSearch(const Instance& inst)
        : inst_(inst),
          m_(inst.m()),
          n_(inst.n()),
          loads_(static_cast<std::size_t>(inst.m()), 0.0),
          finishes_(static_cast<std::size_t>(inst.m()), 0.0),
          current_(static_cast<std::size_t>(inst.n()), 0),
          best_assign_(static_cast<std::size_t>(inst.n()), 0) {}

    OptResult run() {
        best_ = std::numeric_limits<double>::infinity();
        leaves_ = 0;
        descend(0);
        OptResult result;
        result.makespan = best_;
        result.assignment = best_assign_;
        result.nodes_explored = leaves_;
        result.proven = true;
        return result;
    }

  private:
    void descend(int task) {
        if (task == n_) {
            ++leaves_;
            double makespan = 0.0;
            for (double f : finishes_)
                if (f > makespan) makespan = f;
            if (makespan < best_) {
                best_ = makespan;
                best_assign_ = current_;
            }
            return;
        }
        const double t = inst_.sizes[static_cast<std::size_t>(task)];
        for (int p = 0; p < m_; ++p) {
            const auto pu = static_cast<std::size_t>(p);
            const double saved_load = loads_[pu];
            const double saved_finish = finishes_[pu];
            loads_[pu] = saved_load + t;
            finishes_[pu] = loads_[pu] / inst_.speeds[pu];
            current_[static_cast<std::size_t>(task)] = p;
            descend(task + 1);
            loads_[pu] = saved_load;
            finishes_[pu] = saved_finish;
        }
    }

    const Instance& inst_;
    int m_, n_;
    std::vector<double> loads_, finishes_;
    std::vector<int> current_, best_assign_;
    double best_ = 0.0;
    long long leaves_ = 0;
};

class BranchAndBound {
  public:
    BranchAndBound(const Instance& inst, long long node_budget)
        : inst_(inst),
          m_(inst.m()),
          n_(inst.n()),
          budget_(node_budget),
          loads_(static_cast<std::size_t>(inst.m()), 0.0),
          current_(static_cast<std::size_t>(inst.n()), 0),
          task_bound_(static_cast<std::size_t>(inst.n()), 0.0) {
        double total_work = 0.0;
        for (double t : inst.sizes) total_work += t;
        double total_speed = 0.0;
        for (double s : inst.speeds) total_speed += s;
        // Shrink the average-work bound by a hair so float rounding can
        // never push it above a genuinely better leaf (keeps bit-exact
        // agreement with exhaustive enumeration).
        average_bound_ = (total_work / total_speed) * (1.0 - 1e-12);
        for (int i = 0; i < n_; ++i)
            task_bound_[static_cast<std::size_t>(i)] =
                inst.sizes[static_cast<std::size_t>(i)] / inst.speeds[0];
    }

    OptResult run() {
        Schedule lpt = lpt_schedule(inst_);
        incumbent_ = lpt.makespan;
        best_assign_ = lpt.assignment;
        nodes_ = 0;
        out_of_budget_ = false;
        if (average_bound_ < incumbent_) descend(0, 0.0);
        OptResult result;
        result.makespan = incumbent_;
        result.assignment = best_assign_;
        result.nodes_explored = nodes_;
        result.proven = !out_of_budget_;
        return result;
    }

  private:
    void descend(int task, double partial_makespan) {
        if (out_of_budget_) return;
        if (++nodes_ > budget_) {
            out_of_budget_ = true;
            return;
        }
        if (task == n_) {
            if (partial_makespan < incumbent_) {
                incumbent_ = partial_makespan;
                best_assign_ = current_;
            }
            return;
        }
        const double t = inst_.sizes[static_cast<std::size_t>(task)];
        const double remaining_bound =
            std::max(average_bound_, task_bound_[static_cast<std::size_t>(task)]);
        for (int p = 0; p < m_; ++p) {
            const auto pu = static_cast<std::size_t>(p);
            // Equal-speed processors that are both still empty are
            // interchangeable; only the lowest-indexed one receives.
            if (p > 0 && loads_[pu] == 0.0 && loads_[pu - 1] == 0.0 &&
                inst_.speeds[pu] == inst_.speeds[pu - 1])
                continue;
            const double saved_load = loads_[pu];
            loads_[pu] = saved_load + t;
            const double finish = loads_[pu] / inst_.speeds[pu];
            const double child_makespan = std::max(partial_makespan, finish);
            if (std::max(child_makespan, remaining_bound) < incumbent_) {
                current_[static_cast<std::size_t>(task)] = p;
                descend(task + 1, child_makespan);
            }
            loads_[pu] = saved_load;
            if (out_of_budget_) return;
        }
    }

    const Instance& inst_;
    int m_, n_;
    long long budget_;
    std::vector<double> loads_;
    std::vector<int> current_, best_assign_;
    std::vector<double> task_bound_;
    double average_bound_ = 0.0;
    double incumbent_ = 0.0;
    long long nodes_ = 0;
    bool out_of_budget_ = false;
};

}  // namespace detail

constexpr long long kDefaultNodeBudget = 20'000'000;
constexpr double kDefaultEnumerationCap = 1e8;

/// Evaluates all m^n assignments. Refuses instances whose search space
/// exceeds `max_assignments`; use opt_bnb for those.
inline OptResult opt_enumerate(const Instance& inst, double max_assignments = kDefaultEnumerationCap) {
    require_valid(inst);
    long double space = 1.0L;
    for (int i = 0; i < inst.n(); ++i) {
        space *= inst.m();
        if (space > static_cast<long double>(max_assignments))
            throw EnumerationCapExceeded("m^n exceeds the enumeration cap; use opt_bnb");
    }
    detail::ExhaustiveSearch search(inst);
    OptResult result = search.run();
    if (result.makespan > lpt_makespan(inst))
        throw std::logic_error("enumeration found a minimum above the LPT makespan");
    detail::canonicalize_witness(inst, result);
    detail::check_lower_bounds(inst, result.makespan);
    return result;
}

/// Depth-first branch and bound over tasks in non-increasing size order,
/// processors in index order, seeded with the LPT schedule as incumbent.
/// Exceeding `node_budget` yields proven = false with the best incumbent;
/// the result is deterministic either way.
inline OptResult opt_bnb(const Instance& inst, long long node_budget = kDefaultNodeBudget) {
    require_valid(inst);
    detail::BranchAndBound search(inst, node_budget);
    OptResult result = search.run();
    detail::canonicalize_witness(inst, result);
    if (result.proven) detail::check_lower_bounds(inst, result.makespan);
    return result;
}

}  // namespace ulpt
