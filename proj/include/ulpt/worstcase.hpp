#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulpt/analysis.hpp"
#include "ulpt/instance.hpp"
#include "ulpt/parallel.hpp"
#include "ulpt/rng.hpp"

namespace ulpt {

struct ConstructionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The tight lower-bound family: m processors, m+1 tasks, approximation
/// ratio exactly rho(m). Speeds follow s(1) = 2, s(p+1) = rho*s(p) - 1;
/// the sizes are s(2..m) followed by two unit tasks. Each instance is
/// re-verified on construction (OPT = 1, ratio = rho(m)) and the call
/// fails loudly if the numbers do not come out.
inline Instance generate_gis_instance(int m, long long node_budget = kDefaultNodeBudget) {
    if (m < 2 || m > 8)
        throw std::invalid_argument("generate_gis_instance: m must be in [2, 8]");
    const double r = rho(m);
    Instance inst;
    inst.name = "gis-m" + std::to_string(m);
    inst.speeds.resize(static_cast<std::size_t>(m));
    inst.speeds[0] = 2.0;
    for (int p = 1; p < m; ++p)
        inst.speeds[static_cast<std::size_t>(p)] = r * inst.speeds[static_cast<std::size_t>(p - 1)] - 1.0;
    inst.sizes.assign(inst.speeds.begin() + 1, inst.speeds.end());
    inst.sizes.push_back(1.0);
    inst.sizes.push_back(1.0);

    for (int p = 0; p + 1 < m; ++p)
        if (inst.speeds[static_cast<std::size_t>(p)] <= inst.speeds[static_cast<std::size_t>(p + 1)])
            throw ConstructionFailure("gis construction: speeds not strictly decreasing");
    for (std::size_t i = 0; i + 1 < inst.sizes.size(); ++i)
        if (inst.sizes[i] < inst.sizes[i + 1])
            throw ConstructionFailure("gis construction: sizes not non-increasing");
    if (inst.sizes.back() != 1.0)
        throw ConstructionFailure("gis construction: smallest size must be 1");

    RatioReport report = approx_ratio(inst, node_budget);
    if (std::fabs(report.opt - 1.0) > 1e-9)
        throw ConstructionFailure("gis construction: optimal makespan is not 1");
    if (std::fabs(report.ratio - r) > 1e-6)
        throw ConstructionFailure("gis construction: ratio does not reproduce rho(m)");
    return inst;
}

/// Random instance with speeds and sizes drawn uniformly from [lo, hi]
/// and sorted non-increasing. With pin_min_size the sizes are rescaled so
/// the smallest is exactly 1.
inline Instance random_instance(Rng& rng, int m, int n, double lo = 1.0, double hi = 4.0,
                                bool identical_speeds = false, bool pin_min_size = false) {
    Instance inst;
    inst.speeds.resize(static_cast<std::size_t>(m));
    inst.sizes.resize(static_cast<std::size_t>(n));
    if (identical_speeds) {
        std::fill(inst.speeds.begin(), inst.speeds.end(), 1.0);
    } else {
        for (double& s : inst.speeds) s = rng.uniform(lo, hi);
        std::sort(inst.speeds.begin(), inst.speeds.end(), std::greater<>());
    }
    for (double& t : inst.sizes) t = rng.uniform(lo, hi);
    std::sort(inst.sizes.begin(), inst.sizes.end(), std::greater<>());
    if (pin_min_size) {
        double smallest = inst.sizes.back();
        for (double& t : inst.sizes) t /= smallest;
        inst.sizes.back() = 1.0;
    }
    return inst;
}

struct SearchConfig {
    int m = 2;
    int n_min = 1;
    int n_max = 3;
    int restarts = 100;
    int steps_per_restart = 300;
    double step_scale = 0.25;
    std::uint64_t seed = 0;
    long long solver_node_budget = kDefaultNodeBudget;
    bool include_gis = false;  // start restart 0 from the tight instance
    unsigned threads = 0;      // 0 = hardware concurrency

    void check() const {
        if (m < 1 || n_min < 1 || n_max < n_min || restarts < 1 || steps_per_restart < 1)
            throw std::invalid_argument("search config: counts must be positive and n_max >= n_min");
        if (!(step_scale > 0.0) || step_scale > 1.0)
            throw std::invalid_argument("search config: step_scale must be in (0, 1]");
    }
};

struct SearchResult {
    Instance best_instance;
    double best_ratio = 0.0;
    double ratio_bound = 0.0;  // rho(m)
    bool exceeded = false;
    long long instances_evaluated = 0;
    int best_restart = -1;
};

namespace detail {

struct RestartOutcome {
    double ratio = -1.0;
    Instance instance;
    long long evaluated = 0;
};

// One hill-climbing restart: random start, multiplicative single-coordinate
// perturbations, accept strict ratio improvements only. Candidates the
// solver cannot certify within budget are skipped (still counted).
inline RestartOutcome hill_climb_restart(const SearchConfig& config, std::uint64_t restart_seed,
                                         const Instance* start) {
    Rng rng(restart_seed);
    RestartOutcome out;
    Instance current;
    if (start != nullptr) {
        current = *start;
    } else {
        int n = config.n_min + rng.uniform_int(config.n_max - config.n_min + 1);
        current = random_instance(rng, config.m, n, 1.0, 4.0, false, true);
    }

    double current_ratio = -1.0;
    ++out.evaluated;
    try {
        current_ratio = approx_ratio(current, config.solver_node_budget).ratio;
    } catch (const SolveUnproven&) {
        current_ratio = -1.0;
    }

    for (int step = 0; step < config.steps_per_restart; ++step) {
        Instance candidate = current;
        int coord = rng.uniform_int(candidate.m() + candidate.n());
        double delta = rng.uniform(-config.step_scale, config.step_scale);
        if (coord < candidate.m()) {
            double& s = candidate.speeds[static_cast<std::size_t>(coord)];
            s = std::max(s * (1.0 + delta), 1e-9);
            std::sort(candidate.speeds.begin(), candidate.speeds.end(), std::greater<>());
        } else {
            double& t = candidate.sizes[static_cast<std::size_t>(coord - candidate.m())];
            t = std::max(t * (1.0 + delta), 1e-9);
            std::sort(candidate.sizes.begin(), candidate.sizes.end(), std::greater<>());
            double smallest = candidate.sizes.back();
            for (double& v : candidate.sizes) v /= smallest;
            candidate.sizes.back() = 1.0;
        }
        ++out.evaluated;
        double candidate_ratio;
        try {
            candidate_ratio = approx_ratio(candidate, config.solver_node_budget).ratio;
        } catch (const SolveUnproven&) {
            continue;
        }
        if (candidate_ratio > current_ratio) {
            current = std::move(candidate);
            current_ratio = candidate_ratio;
        }
    }
    out.ratio = current_ratio;
    out.instance = std::move(current);
    return out;
}

}  // namespace detail

/// Multi-restart hill climbing for high-ratio instances. Restart r derives
/// its generator from seed XOR r, so the outcome does not depend on the
/// thread count; restarts merge by best ratio with ties to the lowest
/// restart index.
inline SearchResult search_worst(const SearchConfig& config) {
    config.check();
    Instance gis;
    bool have_gis = false;
    if (config.include_gis && config.m >= 2 && config.m <= 8 && config.m + 1 >= config.n_min &&
        config.m + 1 <= config.n_max) {
        gis = generate_gis_instance(config.m, config.solver_node_budget);
        have_gis = true;
    }

    struct Best {
        double ratio = -1.0;
        int restart = -1;
        Instance instance;
        long long evaluated = 0;
    };
    Best best = parallel_chunked(
        config.restarts, config.threads, Best{},
        [&](long long begin, long long end, Best& acc) {
            for (long long r = begin; r < end; ++r) {
                std::uint64_t restart_seed = mix_seed(config.seed, static_cast<std::uint64_t>(r));
                const Instance* start = (r == 0 && have_gis) ? &gis : nullptr;
                auto outcome = detail::hill_climb_restart(config, restart_seed, start);
                acc.evaluated += outcome.evaluated;
                if (outcome.ratio > acc.ratio) {
                    acc.ratio = outcome.ratio;
                    acc.restart = static_cast<int>(r);
                    acc.instance = std::move(outcome.instance);
                }
            }
        },
        [](Best& total, const Best& acc) {
            total.evaluated += acc.evaluated;
            if (acc.ratio > total.ratio || (acc.ratio == total.ratio && acc.restart >= 0 &&
                                            (total.restart < 0 || acc.restart < total.restart))) {
                total.ratio = acc.ratio;
                total.restart = acc.restart;
                total.instance = acc.instance;
            }
        });

    SearchResult result;
    result.best_instance = std::move(best.instance);
    result.best_ratio = best.ratio;
    result.best_restart = best.restart;
    result.ratio_bound = rho(config.m);
    result.exceeded = best.ratio > result.ratio_bound + 1e-9;
    result.instances_evaluated = best.evaluated;
    return result;
}

struct CeilingReport {
    int m = 0;
    int n = 0;
    long long samples = 0;
    double max_ratio = 0.0;
    double bound = 0.0;  // rho(m) + 1e-9
    long long violations = 0;
    long long skipped = 0;  // solver budget refusals
    bool ok = false;
    Instance worst_instance;
};

/// Draws `samples` random instances with the given shape, measures every
/// ratio, and reports the maximum against rho(m). Solver refusals are
/// counted, never hidden.
inline CeilingReport ratio_ceiling_check(int m, int n, long long samples, std::uint64_t seed,
                                         long long node_budget = kDefaultNodeBudget,
                                         unsigned threads = 0) {
    if (m < 1 || n < 1 || samples < 1)
        throw std::invalid_argument("ratio_ceiling_check: m, n, samples must be positive");
    struct Acc {
        double max_ratio = -1.0;
        long long index = -1;
        Instance argmax;
        long long violations = 0;
        long long skipped = 0;
    };
    const double bound = rho(m) + 1e-9;
    Acc acc = parallel_chunked(
        samples, threads, Acc{},
        [&](long long begin, long long end, Acc& a) {
            for (long long k = begin; k < end; ++k) {
                Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
                Instance inst = random_instance(rng, m, n, 1.0, 4.0, false, true);
                double ratio;
                try {
                    ratio = approx_ratio(inst, node_budget).ratio;
                } catch (const SolveUnproven&) {
                    ++a.skipped;
                    continue;
                }
                if (ratio > bound) ++a.violations;
                if (ratio > a.max_ratio || (ratio == a.max_ratio && k < a.index)) {
                    a.max_ratio = ratio;
                    a.index = k;
                    a.argmax = std::move(inst);
                }
            }
        },
        [](Acc& total, const Acc& a) {
            total.violations += a.violations;
            total.skipped += a.skipped;
            if (a.max_ratio > total.max_ratio ||
                (a.max_ratio == total.max_ratio && a.index >= 0 &&
                 (total.index < 0 || a.index < total.index))) {
                total.max_ratio = a.max_ratio;
                total.index = a.index;
                total.argmax = a.argmax;
            }
        });

    CeilingReport report;
    report.m = m;
    report.n = n;
    report.samples = samples;
    report.max_ratio = acc.max_ratio;
    report.bound = bound;
    report.violations = acc.violations;
    report.skipped = acc.skipped;
    report.ok = acc.violations == 0;
    report.worst_instance = std::move(acc.argmax);
    return report;
}

}  // namespace ulpt
