#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulpt/analysis.hpp"
#include "ulpt/exact.hpp"
#include "ulpt/instance.hpp"
#include "ulpt/io.hpp"
#include "ulpt/lpt.hpp"

namespace ulpt {

// Comparison slack for all certification checks, applied on the side that
// avoids spurious "fails" verdicts from float noise.
constexpr double kCertifyEps = 1e-9;

enum class ConditionStatus { holds, fails, inapplicable };

struct ConditionResult {
    std::string name;
    ConditionStatus status = ConditionStatus::inapplicable;
    std::string detail;
};

inline const char* to_string(ConditionStatus status) {
    switch (status) {
        case ConditionStatus::holds: return "holds";
        case ConditionStatus::fails: return "fails";
        default: return "inapplicable";
    }
}

/// The LPT schedule with the final (smallest, index n) task removed from
/// its processor: task sets T'(p) and workloads w'(p).
struct TruncatedLpt {
    Schedule schedule;                   // full LPT schedule
    std::vector<std::vector<int>> tasks; // T'(p), ascending task indices
    std::vector<double> loads;           // w'(p)
    int removed_from = -1;               // processor that lost the final task
};

inline TruncatedLpt lpt_minus_last(const Instance& inst) {
    TruncatedLpt out;
    out.schedule = lpt_schedule(inst);
    out.tasks.resize(static_cast<std::size_t>(inst.m()));
    const int last = inst.n() - 1;
    for (int i = 0; i < last; ++i)
        out.tasks[static_cast<std::size_t>(out.schedule.assignment[static_cast<std::size_t>(i)])]
            .push_back(i);
    out.removed_from = out.schedule.assignment[static_cast<std::size_t>(last)];
    out.loads.assign(static_cast<std::size_t>(inst.m()), 0.0);
    for (int p = 0; p < inst.m(); ++p)
        for (int i : out.tasks[static_cast<std::size_t>(p)])
            out.loads[static_cast<std::size_t>(p)] += inst.sizes[static_cast<std::size_t>(i)];
    return out;
}

/// Everything the condition checks need, computed once: the normalized
/// instance (smallest size 1, optimal makespan 1), its LPT schedule and
/// truncation, an optimal witness with non-increasing loads, and rho_I.
struct CertifyContext {
    Instance normalized;
    TruncatedLpt truncated;
    OptResult opt;
    std::vector<std::vector<int>> opt_tasks;  // T*(p), ascending task indices
    double opt_makespan = 0.0;                // ~1 after normalization
    double rho_I = 0.0;
};

namespace detail {

inline CertifyContext context_from_normalized(Instance normalized, OptResult opt) {
    CertifyContext ctx;
    ctx.normalized = std::move(normalized);
    ctx.opt = std::move(opt);
    ctx.opt.makespan = makespan_of(ctx.normalized, ctx.opt.assignment);
    ctx.opt.loads = loads_of(ctx.normalized, ctx.opt.assignment);
    ctx.opt_tasks.resize(static_cast<std::size_t>(ctx.normalized.m()));
    for (int i = 0; i < ctx.normalized.n(); ++i)
        ctx.opt_tasks[static_cast<std::size_t>(ctx.opt.assignment[static_cast<std::size_t>(i)])]
            .push_back(i);
    ctx.truncated = lpt_minus_last(ctx.normalized);
    ctx.opt_makespan = ctx.opt.makespan;
    ctx.rho_I = ctx.truncated.schedule.makespan / ctx.opt_makespan;
    return ctx;
}

}  // namespace detail

/// Normalizes the instance (sizes then speeds) and solves it exactly.
/// Throws SolveUnproven when the node budget is insufficient.
inline CertifyContext certify_context(const Instance& inst, long long node_budget = kDefaultNodeBudget) {
    require_valid(inst);
    if (inst.sizes.back() <= 0.0)
        throw std::invalid_argument("certify: degenerate instance (smallest task size 0)");
    Instance by_size = normalize_sizes(inst);
    OptResult opt = opt_bnb(by_size, node_budget);
    if (!opt.proven) throw SolveUnproven("certify: exact solver exhausted its node budget");
    Instance normalized = normalize_opt(by_size, opt.makespan);
    return detail::context_from_normalized(std::move(normalized), std::move(opt));
}

/// Same, for callers that already hold a normalized instance (smallest
/// size 1, optimal makespan 1). Anything else is rejected.
inline CertifyContext certify_context_prenormalized(const Instance& inst,
                                                    long long node_budget = kDefaultNodeBudget) {
    require_valid(inst);
    if (std::fabs(inst.sizes.back() - 1.0) > 1e-12)
        throw std::invalid_argument("certify: instance is not size-normalized (t(n) != 1)");
    OptResult opt = opt_bnb(inst, node_budget);
    if (!opt.proven) throw SolveUnproven("certify: exact solver exhausted its node budget");
    if (std::fabs(opt.makespan - 1.0) > kCertifyEps)
        throw std::invalid_argument("certify: instance is not OPT-normalized (OPT != 1)");
    return detail::context_from_normalized(inst, std::move(opt));
}

// ---------------------------------------------------------------------------
// Workload bound: a minimal instance satisfies (w'(p) + 1)/s(p) >= rho_I
// on every processor.

inline ConditionResult check_workload_bound(const CertifyContext& ctx) {
    ConditionResult result{"workload-bound", ConditionStatus::holds, ""};
    double worst_value = std::numeric_limits<double>::infinity();
    int worst_p = -1;
    for (int p = 0; p < ctx.normalized.m(); ++p) {
        double value = (ctx.truncated.loads[static_cast<std::size_t>(p)] + 1.0) /
                       ctx.normalized.speeds[static_cast<std::size_t>(p)];
        if (value < worst_value) {
            worst_value = value;
            worst_p = p;
        }
    }
    std::ostringstream detail;
    detail << "min over p of (w'(p)+1)/s(p) = " << worst_value << " at p=" << worst_p + 1
           << ", rho_I = " << ctx.rho_I;
    result.detail = detail.str();
    if (worst_value < ctx.rho_I - kCertifyEps) result.status = ConditionStatus::fails;
    return result;
}

inline ConditionResult check_workload_bound(const Instance& inst, bool opt_normalized,
                                            long long node_budget = kDefaultNodeBudget) {
    if (!opt_normalized)
        throw std::invalid_argument("check_workload_bound: caller must normalize (OPT = 1, t(n) = 1)");
    return check_workload_bound(certify_context_prenormalized(inst, node_budget));
}

// ---------------------------------------------------------------------------
// Domination (principle of domination): p dominates q when p is no faster
// and every optimal task of q can be packed onto truncated-LPT tasks of p
// without exceeding any target task's size.

struct DominationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Backtracking packing check: can every item be mapped to a target so
/// that each target's mapped total stays within its capacity (+eps)?
/// Exhaustive over all |targets|^|items| mappings, with pruning that never
/// discards a feasible one. Monotone: growing any capacity keeps it true.
inline bool mapping_feasible(std::vector<double> target_capacities, std::vector<double> items,
                             double eps = kCertifyEps, long long node_cap = 10'000'000) {
    if (items.empty()) return true;
    if (target_capacities.empty()) return false;
    double cap_check = 1.0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        cap_check *= static_cast<double>(target_capacities.size());
        if (cap_check > 1e9)
            throw DominationCapExceeded("domination check: mapping space exceeds the cap");
    }
    for (double& c : target_capacities) c += eps;
    std::sort(items.begin(), items.end(), std::greater<>());

    long long nodes = 0;
    std::vector<double> remaining = target_capacities;
    std::function<bool(std::size_t)> place = [&](std::size_t item) -> bool {
        if (item == items.size()) return true;
        if (++nodes > node_cap)
            throw DominationCapExceeded("domination check: node cap exceeded");
        std::vector<double> tried_here;
        for (std::size_t t = 0; t < remaining.size(); ++t) {
            if (remaining[t] < items[item]) continue;
            // Targets with identical remaining capacity are interchangeable.
            bool duplicate = false;
            for (double seen : tried_here)
                if (seen == remaining[t]) {
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;
            tried_here.push_back(remaining[t]);
            remaining[t] -= items[item];
            if (place(item + 1)) return true;
            remaining[t] += items[item];
        }
        return false;
    };
    return place(0);
}

inline bool dominates(const CertifyContext& ctx, int p, int q) {
    const int m = ctx.normalized.m();
    if (p < 0 || p >= m || q < 0 || q >= m)
        throw std::invalid_argument("dominates: processor index out of range");
    if (ctx.normalized.speeds[static_cast<std::size_t>(p)] >
        ctx.normalized.speeds[static_cast<std::size_t>(q)] + kCertifyEps)
        return false;
    std::vector<double> capacities, items;
    for (int i : ctx.truncated.tasks[static_cast<std::size_t>(p)])
        capacities.push_back(ctx.normalized.sizes[static_cast<std::size_t>(i)]);
    for (int j : ctx.opt_tasks[static_cast<std::size_t>(q)])
        items.push_back(ctx.normalized.sizes[static_cast<std::size_t>(j)]);
    return mapping_feasible(std::move(capacities), std::move(items));
}

inline bool dominates(const Instance& inst, int p, int q,
                      long long node_budget = kDefaultNodeBudget) {
    return dominates(certify_context(inst, node_budget), p, q);
}

inline ConditionResult check_no_domination(const CertifyContext& ctx) {
    ConditionResult result{"no-domination", ConditionStatus::holds, "no dominating pair"};
    bool refused = false;
    std::string refusal_reason;
    for (int p = 0; p < ctx.normalized.m(); ++p) {
        for (int q = 0; q < ctx.normalized.m(); ++q) {
            bool dom;
            try {
                dom = dominates(ctx, p, q);
            } catch (const DominationCapExceeded& e) {
                refused = true;
                refusal_reason = e.what();
                continue;
            }
            if (dom) {
                result.status = ConditionStatus::fails;
                std::ostringstream detail;
                detail << "processor " << p + 1 << " dominates processor " << q + 1;
                result.detail = detail.str();
                return result;
            }
        }
    }
    if (refused) {
        result.status = ConditionStatus::inapplicable;
        result.detail = "undecided pairs: " + refusal_reason;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Structural conditions: no empty processor in the optimal witness, no
// empty T'(p) while rho_I > 1, and at least two optimal tasks on the
// fastest processor.

inline std::vector<ConditionResult> check_structural(const CertifyContext& ctx) {
    std::vector<ConditionResult> results;

    ConditionResult empty_proc{"empty-processor", ConditionStatus::holds,
                               "no empty processor in the solver's witness (other optimal "
                               "schedules are not examined)"};
    for (int p = 0; p < ctx.normalized.m(); ++p) {
        if (ctx.opt_tasks[static_cast<std::size_t>(p)].empty()) {
            empty_proc.status = ConditionStatus::fails;
            empty_proc.detail =
                "witness leaves processor " + std::to_string(p + 1) + " empty";
            break;
        }
    }
    results.push_back(std::move(empty_proc));

    ConditionResult truncated{"truncated-lpt-nonempty", ConditionStatus::holds,
                              "every T'(p) nonempty or rho_I = 1"};
    if (ctx.rho_I > 1.0 + kCertifyEps) {
        for (int p = 0; p < ctx.normalized.m(); ++p) {
            if (ctx.truncated.tasks[static_cast<std::size_t>(p)].empty()) {
                truncated.status = ConditionStatus::fails;
                truncated.detail = "T'(" + std::to_string(p + 1) + ") empty while rho_I > 1";
                break;
            }
        }
    }
    results.push_back(std::move(truncated));

    ConditionResult fastest{"fastest-two-tasks", ConditionStatus::holds, ""};
    if (ctx.normalized.m() < 2) {
        fastest.status = ConditionStatus::inapplicable;
        fastest.detail = "requires m >= 2";
    } else {
        std::size_t count = ctx.opt_tasks[0].size();
        fastest.detail = "|T*(1)| = " + std::to_string(count);
        if (count <= 1) fastest.status = ConditionStatus::fails;
    }
    results.push_back(std::move(fastest));

    return results;
}

// ---------------------------------------------------------------------------
// Task-count bound: n <= sum of sizes <= (m-1)/(rho_I - 1).

inline double task_count_upper_bound(int m, double rho_I) {
    return (m - 1) / (rho_I - 1.0);
}

inline ConditionResult check_task_count(const CertifyContext& ctx) {
    ConditionResult result{"task-count", ConditionStatus::holds, ""};
    if (ctx.rho_I <= 1.0 + kCertifyEps) {
        result.status = ConditionStatus::inapplicable;
        result.detail = "rho_I = 1";
        return result;
    }
    double total = 0.0;
    for (double t : ctx.normalized.sizes) total += t;
    double upper = task_count_upper_bound(ctx.normalized.m(), ctx.rho_I);
    std::ostringstream detail;
    detail << "n = " << ctx.normalized.n() << ", sum t = " << total << ", (m-1)/(rho_I-1) = "
           << upper;
    result.detail = detail.str();
    if (static_cast<double>(ctx.normalized.n()) > total + kCertifyEps ||
        total > upper + kCertifyEps)
        result.status = ConditionStatus::fails;
    return result;
}

// ---------------------------------------------------------------------------
// Ratio-regime conditions: fast processors must be loaded beyond their
// speed (w'(p) > s(p) whenever s(p) > 1/(rho_I - 1)), and no minimal
// instance with n = m + 2 and m >= 3 reaches ratio 1.5.

namespace detail {

inline ConditionResult evaluate_ratio_cap(int m, int n, double rho_I) {
    ConditionResult result{"ratio-below-1.5", ConditionStatus::holds, ""};
    if (n != m + 2 || m < 3) {
        result.status = ConditionStatus::inapplicable;
        result.detail = "applies to n = m + 2 with m >= 3";
        return result;
    }
    std::ostringstream detail;
    detail << "rho_I = " << rho_I;
    result.detail = detail.str();
    if (rho_I >= 1.5 + kCertifyEps) result.status = ConditionStatus::fails;
    return result;
}

}  // namespace detail

inline std::vector<ConditionResult> check_ratio_regime(const CertifyContext& ctx) {
    std::vector<ConditionResult> results;

    ConditionResult regime{"speed-workload-regime", ConditionStatus::holds, ""};
    if (ctx.rho_I <= 1.0 + kCertifyEps) {
        regime.status = ConditionStatus::inapplicable;
        regime.detail = "rho_I = 1";
    } else {
        double threshold = 1.0 / (ctx.rho_I - 1.0);
        regime.detail = "1/(rho_I-1) = " + std::to_string(threshold) + "; no fast processor underloaded";
        for (int p = 0; p < ctx.normalized.m(); ++p) {
            double s = ctx.normalized.speeds[static_cast<std::size_t>(p)];
            double w = ctx.truncated.loads[static_cast<std::size_t>(p)];
            if (s > threshold + kCertifyEps && w < s - kCertifyEps) {
                regime.status = ConditionStatus::fails;
                std::ostringstream detail;
                detail << "s(" << p + 1 << ") = " << s << " > 1/(rho_I-1) = " << threshold
                       << " but w'(" << p + 1 << ") = " << w << " <= s(" << p + 1 << ")";
                regime.detail = detail.str();
                break;
            }
        }
    }
    results.push_back(std::move(regime));
    results.push_back(detail::evaluate_ratio_cap(ctx.normalized.m(), ctx.normalized.n(), ctx.rho_I));
    return results;
}

// ---------------------------------------------------------------------------
// Full certification pipeline.

struct CertificationReport {
    std::vector<ConditionResult> conditions;
    std::string verdict;
    double rho_I = std::numeric_limits<double>::quiet_NaN();
};

inline CertificationReport certify(const Instance& inst, long long node_budget = kDefaultNodeBudget) {
    CertificationReport report;
    CertifyContext ctx;
    try {
        ctx = certify_context(inst, node_budget);
    } catch (const SolveUnproven& e) {
        static const char* names[] = {"workload-bound",      "empty-processor",
                                      "truncated-lpt-nonempty", "fastest-two-tasks",
                                      "no-domination",       "task-count",
                                      "speed-workload-regime", "ratio-below-1.5"};
        for (const char* name : names)
            report.conditions.push_back({name, ConditionStatus::inapplicable, e.what()});
        report.verdict = "consistent-with-minimality";
        return report;
    }
    report.rho_I = ctx.rho_I;
    report.conditions.push_back(check_workload_bound(ctx));
    for (auto& r : check_structural(ctx)) report.conditions.push_back(std::move(r));
    report.conditions.push_back(check_no_domination(ctx));
    report.conditions.push_back(check_task_count(ctx));
    for (auto& r : check_ratio_regime(ctx)) report.conditions.push_back(std::move(r));

    bool any_fail = false;
    for (const auto& c : report.conditions)
        if (c.status == ConditionStatus::fails) any_fail = true;
    report.verdict = any_fail ? "certified-non-minimal" : "consistent-with-minimality";
    return report;
}

inline std::string certification_report_to_json(const CertificationReport& report) {
    std::ostringstream out;
    out << "{\"verdict\": \"" << report.verdict << "\", \"rho_I\": ";
    if (std::isnan(report.rho_I))
        out << "null";
    else
        out << format_number(report.rho_I);
    out << ", \"conditions\": [";
    for (std::size_t i = 0; i < report.conditions.size(); ++i) {
        const auto& c = report.conditions[i];
        if (i) out << ", ";
        out << "{\"name\": " << nlohmann::json(c.name).dump()
            << ", \"status\": \"" << to_string(c.status) << "\""
            << ", \"detail\": " << nlohmann::json(c.detail).dump() << "}";
    }
    out << "]}";
    return out.str();
}

}  // namespace ulpt
